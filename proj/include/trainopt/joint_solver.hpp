// SPDX-License-Identifier: Apache-2.0
//
// Joint optimization of (alpha, T_d) under the average and peak power
// constraints. The optimum falls into one of three cases determined by the
// thresholds alpha1, alpha2 and the unconstrained optimum alpha_dag at
// T_d = T-K; only the pilot-peak-limited case needs a 1-D search, and that
// objective is quasiconcave.

#pragma once

#include <optional>
#include <vector>

#include "trainopt/alpha_solver.hpp"
#include "trainopt/sinr_model.hpp"

namespace trainopt {

enum class CaseLabel { PilotPeakLimited, DataPeakLimited, Unconstrained };

const char* to_string(CaseLabel label);

/// alpha1: where the pilot-peak line T_d = -rho T alpha / rho_max + T crosses
/// T_d = T-K; alpha2: same crossing for the data-peak line
/// T_d = -rho T alpha / rho_max + rho T / rho_max; alpha_dag: unconstrained
/// optimal alpha at T_d = T-K. Always alpha2 <= alpha1, with equality iff
/// rho_max == rho.
struct CaseThresholds {
  double alpha1;
  double alpha2;
  double alpha_dag;
};

CaseThresholds thresholds(const SystemConfig& cfg, ReceiverKind rx);

/// Sum rate on the pilot-peak boundary, evaluated by substituting
/// T_d(alpha) = -rho T alpha / rho_max + T directly into the SINR and rate
/// expressions. Returns 0 where the line leaves T_d > 0 (alpha -> 1 with
/// rho_max == rho).
double case1_line_rate(double alpha, const SystemConfig& cfg, ReceiverKind rx);

struct Case1Point {
  double alpha;
  double T_d;
  double rate;
  bool scan_unimodal;  ///< pre-scan saw no dip beyond tolerance
};

/// Maximizer of case1_line_rate over [alpha1, 1] by golden-section search to
/// |dalpha| <= 1e-9. A 1e3-point pre-scan checks unimodality; a violation
/// beyond 1e-12 is flagged (non-fatal) and the search falls back to a local
/// refinement of the pre-scan argmax. Requires alpha1 < alpha_dag.
Case1Point search_case1(const SystemConfig& cfg, ReceiverKind rx);

struct IntegerRefinement {
  int T_tau;
  double alpha;
  double T_d;
  double rate;
  bool clipped;
};

struct OptimizationResult {
  double alpha_star;
  double T_d_star;
  double T_tau_star;
  double rate_star;
  CaseLabel case_label;
  ReceiverKind receiver;
  bool case1_scan_unimodal = true;
  std::optional<IntegerRefinement> integerized;
};

/// Three-case solve. Case 1 (alpha1 < alpha_dag): pilot peak binds, 1-D
/// search along the boundary. Case 2 (alpha2 > alpha_dag): data peak binds,
/// optimum (alpha2, T-K). Case 3 (alpha2 <= alpha_dag <= alpha1): optimum
/// (alpha_dag, T-K). Boundary equalities resolve to the Case-3 formula (all
/// branches coincide there). The returned point is feasible and its rate is
/// recomputed from the model.
OptimizationResult optimize(const SystemConfig& cfg, ReceiverKind rx);

/// optimize() plus an exhaustive pass over integer T_tau in {K, ..., T-1}
/// (alpha re-optimized and clipped per candidate); the best candidate is
/// attached as `integerized`. Its rate is bounded above by the continuous
/// optimum and below by the continuous solution evaluated at the rounded
/// T_tau.
OptimizationResult optimize_integer(const SystemConfig& cfg, ReceiverKind rx);

/// Denominator coefficients of the MRC SINR restricted to the pilot-peak
/// line, SINR(alpha) = alpha(alpha-1) rho^2 T^2 (M-1) / (a2 alpha^2 - b2
/// alpha - c2). Exposed as a cross-check target for tests; the production
/// path substitutes T_d(alpha) directly. Requires K >= 2.
struct Case1SinrCoefficients {
  double a2;
  double b2;
  double c2;
};

Case1SinrCoefficients case1_sinr_coefficients(const SystemConfig& cfg);

namespace detail {
/// True when values rise (weakly, within tol) to their global argmax and fall
/// (weakly, within tol) after it.
bool scan_is_unimodal(const std::vector<double>& values, double tol);
}  // namespace detail

}  // namespace trainopt
