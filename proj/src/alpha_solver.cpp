// SPDX-License-Identifier: Apache-2.0

#include "trainopt/alpha_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "golden_section.hpp"

namespace trainopt {

namespace {

void check_td(double T_d, const SystemConfig& cfg) {
  if (!(T_d > 0.0) || T_d > cfg.T - cfg.K + 1e-9)
    throw std::invalid_argument("T_d must lie in (0, T-K]");
}

// Shared closed form for both receivers: the interior stationary point of
// alpha(1-alpha)/(quadratic) reduces to 1/(1 + sqrt(B/A)) after multiplying
// the radical expression by its conjugate.
double stable_alpha(double T_d, double rho_block, int K) {
  if (std::abs(T_d - K) < 1e-9) return 0.5;
  const double A = rho_block * K + T_d;
  const double B = T_d * (1.0 + rho_block);
  return 1.0 / (1.0 + std::sqrt(B / A));
}

}  // namespace

FeasibleInterval feasible_alpha(double T_d, const SystemConfig& cfg) {
  check_td(T_d, cfg);
  const double T_tau = cfg.T - T_d;
  const double u = cfg.rho_max * T_tau / cfg.block_energy();
  return {std::max(0.0, u + 1.0 - cfg.rho_max / cfg.rho), std::min(1.0, u)};
}

double alpha_star_mrc_unconstrained(double T_d, const SystemConfig& cfg) {
  if (cfg.K < 2)
    throw std::invalid_argument(
        "alpha_star_mrc_unconstrained requires K >= 2; use alpha_star_unconstrained");
  if (!(T_d > 0.0)) throw std::invalid_argument("T_d must be positive");
  return stable_alpha(T_d, cfg.block_energy(), cfg.K);
}

double alpha_star_zf_unconstrained(double T_d, const SystemConfig& cfg) {
  if (!(T_d > 0.0)) throw std::invalid_argument("T_d must be positive");
  return stable_alpha(T_d, cfg.block_energy(), cfg.K);
}

double alpha_star_unconstrained(double T_d, const SystemConfig& cfg, ReceiverKind rx) {
  if (rx == ReceiverKind::MRC && cfg.K == 1) {
    if (!(T_d > 0.0)) throw std::invalid_argument("T_d must be positive");
    return detail::golden_section_max(
        [&](double a) { return sinr_at(a, T_d, cfg, ReceiverKind::MRC); }, 0.0, 1.0, 1e-10);
  }
  return rx == ReceiverKind::MRC ? alpha_star_mrc_unconstrained(T_d, cfg)
                                 : alpha_star_zf_unconstrained(T_d, cfg);
}

FixedTdSolution solve_fixed_td(double T_d, const SystemConfig& cfg, ReceiverKind rx) {
  const FeasibleInterval box = feasible_alpha(T_d, cfg);
  const double unc = alpha_star_unconstrained(T_d, cfg, rx);

  FixedTdSolution sol;
  if (box.single_point()) {
    sol.alpha_star = box.lo;
    sol.clipped = unc != box.lo;
  } else if (unc < box.lo) {
    sol.alpha_star = box.lo;
    sol.clipped = true;
  } else if (unc > box.hi) {
    sol.alpha_star = box.hi;
    sol.clipped = true;
  } else {
    sol.alpha_star = unc;
    sol.clipped = false;
  }
  sol.sinr_at_star = sinr_at(sol.alpha_star, T_d, cfg, rx);
  return sol;
}

}  // namespace trainopt
