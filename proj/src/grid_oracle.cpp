// SPDX-License-Identifier: Apache-2.0

#include "trainopt/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "trainopt/alpha_solver.hpp"

namespace trainopt {

namespace {

double rate_at(double alpha, double T_d, const SystemConfig& cfg, ReceiverKind rx) {
  return T_d / cfg.T * cfg.K * std::log2(1.0 + sinr_at(alpha, T_d, cfg, rx));
}

// Strict total order: higher rate wins, then smaller alpha, then smaller T_d.
// Merging partial bests under this order is associative, so the argmax is
// independent of how the grid is partitioned across workers.
bool better(const GridPoint2D& a, const GridPoint2D& b) {
  if (a.rate != b.rate) return a.rate > b.rate;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.T_d < b.T_d;
}

void check_spec(const GridSpec& spec) {
  if (!(spec.alpha_step > 0.0) || !(spec.td_step > 0.0) || spec.refine_iters < 0)
    throw std::invalid_argument("grid spec requires positive steps and refine_iters >= 0");
}

// alpha samples covering [window_lo, window_hi] clipped to the feasible box,
// with both clipped endpoints always present.
std::vector<double> alpha_samples(const FeasibleInterval& box, double window_lo,
                                  double window_hi, double step) {
  const double lo = std::max(box.lo, window_lo);
  const double hi = std::min(box.hi, window_hi);
  std::vector<double> xs;
  if (lo > hi) return xs;
  xs.push_back(lo);
  for (double x = lo + step; x < hi; x += step) xs.push_back(x);
  if (hi > lo) xs.push_back(hi);
  return xs;
}

GridPoint2D best_in_row(double T_d, const SystemConfig& cfg, ReceiverKind rx,
                        double window_lo, double window_hi, double step) {
  const FeasibleInterval box = feasible_alpha(T_d, cfg);
  GridPoint2D best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
  for (double a : alpha_samples(box, window_lo, window_hi, step)) {
    GridPoint2D p{a, T_d, rate_at(a, T_d, cfg, rx)};
    if (better(p, best)) best = p;
  }
  return best;
}

GridPoint2D scan_rows(const std::vector<double>& tds, const SystemConfig& cfg,
                      ReceiverKind rx, double alpha_step) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
  GridPoint2D best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
  if (workers <= 1 || tds.size() < 16) {
    for (double td : tds) {
      GridPoint2D p = best_in_row(td, cfg, rx, 0.0, 1.0, alpha_step);
      if (better(p, best)) best = p;
    }
    return best;
  }
  std::vector<std::future<GridPoint2D>> futs;
  futs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&, w] {
      GridPoint2D local{0.0, 0.0, -std::numeric_limits<double>::infinity()};
      for (std::size_t i = w; i < tds.size(); i += workers) {
        GridPoint2D p = best_in_row(tds[i], cfg, rx, 0.0, 1.0, alpha_step);
        if (better(p, local)) local = p;
      }
      return local;
    }));
  }
  for (auto& f : futs) {
    GridPoint2D p = f.get();
    if (better(p, best)) best = p;
  }
  return best;
}

}  // namespace

GridPoint2D grid_argmax(const SystemConfig& cfg, ReceiverKind rx, const GridSpec& spec) {
  check_spec(spec);
  const double td_max = static_cast<double>(cfg.T - cfg.K);

  std::vector<double> tds;
  for (double t = spec.td_step; t < td_max; t += spec.td_step) tds.push_back(t);
  tds.push_back(td_max);

  GridPoint2D best = scan_rows(tds, cfg, rx, spec.alpha_step);

  double a_step = spec.alpha_step;
  double t_step = spec.td_step;
  for (int pass = 0; pass < spec.refine_iters; ++pass) {
    const double a_fine = a_step / 10.0;
    const double t_fine = t_step / 10.0;
    const double t_lo = std::max(t_fine, best.T_d - t_step);
    const double t_hi = std::min(td_max, best.T_d + t_step);
    for (double td = t_lo; td <= t_hi + 0.5 * t_fine; td += t_fine) {
      const double t = std::min(td, td_max);
      GridPoint2D p = best_in_row(t, cfg, rx, best.alpha - a_step, best.alpha + a_step, a_fine);
      if (better(p, best)) best = p;
    }
    a_step = a_fine;
    t_step = t_fine;
  }
  return best;
}

GridPoint1D grid_argmax_fixed_td(double T_d, const SystemConfig& cfg, ReceiverKind rx,
                                 const GridSpec& spec) {
  check_spec(spec);
  GridPoint2D best = best_in_row(T_d, cfg, rx, 0.0, 1.0, spec.alpha_step);
  double a_step = spec.alpha_step;
  for (int pass = 0; pass < spec.refine_iters; ++pass) {
    const double fine = a_step / 10.0;
    GridPoint2D p = best_in_row(T_d, cfg, rx, best.alpha - a_step, best.alpha + a_step, fine);
    if (better(p, best)) best = p;
    a_step = fine;
  }
  return {best.alpha, best.rate};
}

}  // namespace trainopt
