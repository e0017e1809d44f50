// SPDX-License-Identifier: Apache-2.0

#include "trainopt/joint_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "golden_section.hpp"

namespace trainopt {

namespace {

constexpr double kGoldenTol = 1e-9;
constexpr double kTdFloorFraction = 1e-6;  // solver never returns T_d below this * T

void verify_feasible(const PowerSplit& s, const SystemConfig& cfg) {
  const double peak_tol = cfg.rho_max * 1e-9 + 1e-15;
  if (s.rho_tau > cfg.rho_max + peak_tol || s.rho_d > cfg.rho_max + peak_tol)
    throw std::logic_error("optimizer produced a peak-power-infeasible point");
}

}  // namespace

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::PilotPeakLimited: return "PilotPeakLimited";
    case CaseLabel::DataPeakLimited: return "DataPeakLimited";
    default: return "Unconstrained";
  }
}

CaseThresholds thresholds(const SystemConfig& cfg, ReceiverKind rx) {
  const double block = cfg.block_energy();
  CaseThresholds th;
  th.alpha1 = cfg.rho_max * cfg.K / block;
  th.alpha2 = 1.0 - cfg.rho_max * (cfg.T - cfg.K) / block;
  th.alpha_dag = alpha_star_unconstrained(static_cast<double>(cfg.T - cfg.K), cfg, rx);
  return th;
}

double case1_line_rate(double alpha, const SystemConfig& cfg, ReceiverKind rx) {
  const double block = cfg.block_energy();
  const double T_d = cfg.T - block * alpha / cfg.rho_max;
  if (T_d <= 0.0) return 0.0;
  const double e_tau = alpha * block;
  const double rho_d = (block - e_tau) / T_d;
  const double s = rx == ReceiverKind::MRC ? sinr_mrc(e_tau, rho_d, cfg.M, cfg.K)
                                           : sinr_zf(e_tau, rho_d, cfg.M, cfg.K);
  return T_d / cfg.T * cfg.K * std::log2(1.0 + s);
}

namespace detail {

bool scan_is_unimodal(const std::vector<double>& values, double tol) {
  if (values.size() < 3) return true;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[peak]) peak = i;
  for (std::size_t i = 0; i < peak; ++i)
    if (values[i + 1] < values[i] - tol) return false;
  for (std::size_t i = peak; i + 1 < values.size(); ++i)
    if (values[i + 1] > values[i] + tol) return false;
  return true;
}

}  // namespace detail

Case1Point search_case1(const SystemConfig& cfg, ReceiverKind rx) {
  const CaseThresholds th = thresholds(cfg, rx);
  if (!(th.alpha1 < th.alpha_dag))
    throw std::invalid_argument("search_case1 requires alpha1 < alpha_dag");

  const double block = cfg.block_energy();
  const double td_floor = kTdFloorFraction * cfg.T;
  const double hi = std::min(1.0, cfg.rho_max * (cfg.T - td_floor) / block);
  const double lo = std::min(th.alpha1, hi);
  const auto f = [&](double a) { return case1_line_rate(a, cfg, rx); };

  constexpr int kScanPoints = 1000;
  std::vector<double> vals(kScanPoints + 1);
  std::size_t scan_best = 0;
  for (int i = 0; i <= kScanPoints; ++i) {
    vals[i] = f(lo + (hi - lo) * i / kScanPoints);
    if (vals[i] > vals[scan_best]) scan_best = i;
  }
  const double scan_tol = 1e-12 * std::max(1.0, vals[scan_best]);
  const bool unimodal = detail::scan_is_unimodal(vals, scan_tol);

  double alpha;
  if (unimodal) {
    alpha = detail::golden_section_max(f, lo, hi, kGoldenTol);
  } else {
    const double step = (hi - lo) / kScanPoints;
    const double x = lo + (hi - lo) * scan_best / kScanPoints;
    alpha = detail::golden_section_max(f, std::max(lo, x - step), std::min(hi, x + step),
                                       kGoldenTol);
  }

  double best_rate = f(alpha);
  for (double endpoint : {lo, hi}) {
    const double r = f(endpoint);
    if (r > best_rate) {
      alpha = endpoint;
      best_rate = r;
    }
  }

  const double T_d =
      std::min(static_cast<double>(cfg.T - cfg.K), cfg.T - block * alpha / cfg.rho_max);
  return {alpha, T_d, best_rate, unimodal};
}

OptimizationResult optimize(const SystemConfig& cfg, ReceiverKind rx) {
  const CaseThresholds th = thresholds(cfg, rx);
  const double td_full = static_cast<double>(cfg.T - cfg.K);

  double alpha;
  double T_d;
  CaseLabel label;
  bool unimodal = true;
  if (th.alpha_dag == th.alpha1 || th.alpha_dag == th.alpha2) {
    // all case formulas coincide at the boundary
    alpha = th.alpha_dag;
    T_d = td_full;
    label = CaseLabel::Unconstrained;
  } else if (th.alpha1 < th.alpha_dag) {
    const Case1Point p = search_case1(cfg, rx);
    alpha = p.alpha;
    T_d = p.T_d;
    label = CaseLabel::PilotPeakLimited;
    unimodal = p.scan_unimodal;
  } else if (th.alpha2 > th.alpha_dag) {
    alpha = th.alpha2;
    T_d = td_full;
    label = CaseLabel::DataPeakLimited;
  } else {
    alpha = th.alpha_dag;
    T_d = td_full;
    label = CaseLabel::Unconstrained;
  }

  const PowerSplit split = PowerSplit::from_alpha_td(alpha, T_d, cfg);
  verify_feasible(split, cfg);

  // re-assert the fired predicate
  switch (label) {
    case CaseLabel::PilotPeakLimited:
      if (!(th.alpha1 < th.alpha_dag)) throw std::logic_error("case-1 predicate violated");
      break;
    case CaseLabel::DataPeakLimited:
      if (!(th.alpha2 > th.alpha_dag)) throw std::logic_error("case-2 predicate violated");
      break;
    case CaseLabel::Unconstrained: {
      const bool inside = th.alpha2 <= th.alpha_dag && th.alpha_dag <= th.alpha1;
      const bool tie = th.alpha_dag == th.alpha1 || th.alpha_dag == th.alpha2;
      if (!inside && !tie) throw std::logic_error("case-3 predicate violated");
      break;
    }
  }

  OptimizationResult res;
  res.alpha_star = split.alpha;
  res.T_d_star = split.T_d;
  res.T_tau_star = split.T_tau;
  res.rate_star = rate(split, cfg, rx);
  res.case_label = label;
  res.receiver = rx;
  res.case1_scan_unimodal = unimodal;
  return res;
}

OptimizationResult optimize_integer(const SystemConfig& cfg, ReceiverKind rx) {
  OptimizationResult res = optimize(cfg, rx);
  IntegerRefinement best{};
  double best_rate = -std::numeric_limits<double>::infinity();
  for (int T_tau = cfg.K; T_tau <= cfg.T - 1; ++T_tau) {
    const double T_d = cfg.T - T_tau;
    const FixedTdSolution sol = solve_fixed_td(T_d, cfg, rx);
    const double r = T_d / cfg.T * cfg.K * std::log2(1.0 + sol.sinr_at_star);
    if (r > best_rate) {
      best_rate = r;
      best = {T_tau, sol.alpha_star, T_d, r, sol.clipped};
    }
  }
  res.integerized = best;
  return res;
}

Case1SinrCoefficients case1_sinr_coefficients(const SystemConfig& cfg) {
  if (cfg.K < 2) throw std::invalid_argument("case1_sinr_coefficients requires K >= 2");
  const double rt = cfg.block_energy();  // rho * T
  Case1SinrCoefficients c;
  c.a2 = rt * rt * (cfg.K - 1) + rt * rt / cfg.rho_max;
  c.b2 = rt * rt * (cfg.K - 1) + rt * cfg.T - rt * cfg.K - rt / cfg.rho_max;
  c.c2 = cfg.K * rt + cfg.T;
  return c;
}

}  // namespace trainopt
