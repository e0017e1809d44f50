// SPDX-License-Identifier: Apache-2.0
//
// Optimal training-energy fraction alpha for a fixed data duration T_d,
// without and with the peak-power constraint.

#pragma once

#include "trainopt/sinr_model.hpp"

namespace trainopt {

/// Admissible alpha range for a fixed T_d: the intersection of the two
/// peak-power half-planes with 0 <= alpha <= 1,
///
///   [max(0, rho_max T_tau/(rho T) + 1 - rho_max/rho), min(1, rho_max T_tau/(rho T))].
///
/// Collapses to the single point T_tau/T when rho_max == rho.
struct FeasibleInterval {
  double lo;
  double hi;

  bool empty() const { return lo > hi; }
  bool single_point() const { return lo == hi; }
  bool contains(double alpha) const { return alpha >= lo && alpha <= hi; }
};

FeasibleInterval feasible_alpha(double T_d, const SystemConfig& cfg);

/// Stationary point of the MRC SINR over alpha in (0,1), ignoring the peak
/// constraint. Exactly 1/2 when |T_d - K| < 1e-9; otherwise the interior root
/// of (1-a1) alpha^2 - 2 b1 alpha + b1 = 0, computed in the conjugate form
/// 1/(1 + sqrt(B/A)), A = rho T K + T_d, B = T_d (1 + rho T), which avoids
/// the 0/0 of the printed radical at T_d == K. Rejects K == 1 (the rewrite
/// divides by K-1); alpha_star_unconstrained covers that case numerically.
double alpha_star_mrc_unconstrained(double T_d, const SystemConfig& cfg);

/// ZF analogue: 1/2 at T_d == K, else -gamma +/- sqrt(gamma(gamma+1)) with
/// the sign chosen by the sign of T_d - K; same stable kernel as MRC.
double alpha_star_zf_unconstrained(double T_d, const SystemConfig& cfg);

/// Receiver dispatch; falls back to a golden-section maximization of the
/// direct SINR form for MRC with K == 1 (unimodality holds there as well).
double alpha_star_unconstrained(double T_d, const SystemConfig& cfg, ReceiverKind rx);

struct FixedTdSolution {
  double alpha_star;
  double sinr_at_star;
  bool clipped;  ///< peak-power boundary was binding
};

/// Unconstrained optimum clipped onto feasible_alpha(T_d): by concavity the
/// constrained maximizer is the nearer interval endpoint whenever the
/// stationary point falls outside.
FixedTdSolution solve_fixed_td(double T_d, const SystemConfig& cfg, ReceiverKind rx);

}  // namespace trainopt
