// SPDX-License-Identifier: Apache-2.0
//
// Brute-force maximizer over the feasible (alpha, T_d) region. Test authority
// for the closed-form and search-based solvers; not a production path.

#pragma once

#include "trainopt/sinr_model.hpp"

namespace trainopt {

struct GridSpec {
  double alpha_step = 1e-3;
  double td_step = 0.05;
  int refine_iters = 3;  ///< local grid-shrink passes, factor 10 each
};

struct GridPoint2D {
  double alpha;
  double T_d;
  double rate;
};

/// Exhaustive scan of the feasible grid (interval endpoints included in every
/// row), followed by refine_iters shrinking local passes around the incumbent.
/// Ties break toward the lexicographically smallest (alpha, T_d); the result
/// does not depend on evaluation order.
GridPoint2D grid_argmax(const SystemConfig& cfg, ReceiverKind rx, const GridSpec& spec);

struct GridPoint1D {
  double alpha;
  double rate;
};

/// 1-D specialization over the clipped alpha interval at a fixed T_d.
GridPoint1D grid_argmax_fixed_td(double T_d, const SystemConfig& cfg, ReceiverKind rx,
                                 const GridSpec& spec);

}  // namespace trainopt
