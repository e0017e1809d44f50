// SPDX-License-Identifier: Apache-2.0

#include "trainopt/channel_sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "trainopt/rng.hpp"

namespace trainopt {

namespace {

constexpr int kMaxResampleAttempts = 64;
constexpr std::int64_t kChunk = 2048;
constexpr int kBootstrapResamples = 200;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

int integer_t_tau(const PowerSplit& split) {
  const double r = std::round(split.T_tau);
  if (std::abs(split.T_tau - r) > 1e-9)
    throw std::invalid_argument("simulation requires an integer T_tau");
  return static_cast<int>(r);
}

void check_spec(const MonteCarloSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (spec.symbols_per_trial < 1)
    throw std::invalid_argument("symbols_per_trial must be at least 1");
}

void fill_gaussian(arma::cx_mat& X, SplitMix64& rng) {
  for (arma::uword j = 0; j < X.n_cols; ++j)
    for (arma::uword i = 0; i < X.n_rows; ++i) X(i, j) = rng.complex_gaussian();
}

// Stream index for the `attempt`-th redraw of `trial`; attempt 0 is the
// primary stream, redraws live in a disjoint index range.
std::uint64_t trial_stream(std::int64_t trial, int attempt) {
  if (attempt == 0) return static_cast<std::uint64_t>(trial);
  return (1ULL << 62) + static_cast<std::uint64_t>(trial) * kMaxResampleAttempts +
         static_cast<std::uint64_t>(attempt);
}

ChannelRealization draw_realization(const arma::cx_mat& Phi, double e_tau, int M, int K,
                                    int T_tau, SplitMix64& rng) {
  ChannelRealization r;
  r.H.set_size(M, K);
  fill_gaussian(r.H, rng);
  arma::cx_mat N(M, T_tau);
  fill_gaussian(N, rng);
  const arma::cx_mat Y = std::sqrt(e_tau) * r.H * Phi + N;
  r.H_hat = (std::sqrt(e_tau) / (e_tau + 1.0)) * Y * Phi.t();
  r.E = r.H - r.H_hat;
  return r;
}

// Runs fn(trial) for every trial, fanning fixed-size chunks out to a small
// worker pool. fn must only touch per-trial state (results keyed by index).
template <typename Fn>
void for_each_trial(std::int64_t trials, Fn&& fn) {
  const std::int64_t chunks = (trials + kChunk - 1) / kChunk;
  const unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(chunks));
  if (workers <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::int64_t end = std::min(trials, (c + 1) * kChunk);
      for (std::int64_t t = c * kChunk; t < end; ++t) fn(t);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

}  // namespace

arma::cx_mat pilot_matrix(int K, int T_tau) {
  if (T_tau < K) throw std::invalid_argument("T_tau must be at least K");
  arma::cx_mat Phi(K, T_tau);
  const double scale = 1.0 / std::sqrt(static_cast<double>(T_tau));
  for (int k = 0; k < K; ++k)
    for (int t = 0; t < T_tau; ++t) {
      const double phase = -2.0 * M_PI * k * t / T_tau;
      Phi(k, t) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  return Phi;
}

ChannelRealization simulate_training(const PowerSplit& split, const SystemConfig& cfg,
                                     const MonteCarloSpec& spec, std::int64_t trial) {
  check_spec(spec);
  const int T_tau = integer_t_tau(split);
  if (T_tau < cfg.K) throw std::invalid_argument("T_tau must be at least K");
  const arma::cx_mat Phi = pilot_matrix(cfg.K, T_tau);
  SplitMix64 rng(derive_stream(spec.seed, trial_stream(trial, 0)));
  return draw_realization(Phi, split.e_tau, cfg.M, cfg.K, T_tau, rng);
}

TrainingStats training_statistics(const PowerSplit& split, const SystemConfig& cfg,
                                  const MonteCarloSpec& spec) {
  check_spec(spec);
  const int T_tau = integer_t_tau(split);
  if (T_tau < cfg.K) throw std::invalid_argument("T_tau must be at least K");
  const arma::cx_mat Phi = pilot_matrix(cfg.K, T_tau);

  KahanSum est, err, cross_re, cross_im;
  for (std::int64_t t = 0; t < spec.trials; ++t) {
    SplitMix64 rng(derive_stream(spec.seed, trial_stream(t, 0)));
    const ChannelRealization r = draw_realization(Phi, split.e_tau, cfg.M, cfg.K, T_tau, rng);
    for (arma::uword j = 0; j < r.H.n_cols; ++j)
      for (arma::uword i = 0; i < r.H.n_rows; ++i) {
        est.add(std::norm(r.H_hat(i, j)));
        err.add(std::norm(r.E(i, j)));
        const std::complex<double> c = r.H_hat(i, j) * std::conj(r.E(i, j));
        cross_re.add(c.real());
        cross_im.add(c.imag());
      }
  }
  const double n = static_cast<double>(spec.trials) * cfg.M * cfg.K;
  return {est.sum / n, err.sum / n, {cross_re.sum / n, cross_im.sum / n},
          spec.trials * cfg.M * cfg.K};
}

SinrEstimate empirical_sinr(const PowerSplit& split, const SystemConfig& cfg,
                            ReceiverKind rx, const MonteCarloSpec& spec) {
  check_spec(spec);
  const int T_tau = integer_t_tau(split);
  if (T_tau < cfg.K) throw std::invalid_argument("T_tau must be at least K");
  if (split.e_tau == 0.0 || split.rho_d == 0.0) return {0.0, 0.0, 0};

  const arma::cx_mat Phi = pilot_matrix(cfg.K, T_tau);
  const double rho_d = split.rho_d;
  const double sqrt_rho_d = std::sqrt(rho_d);
  const int symbols = spec.symbols_per_trial;

  std::vector<double> inv_sinr(static_cast<std::size_t>(spec.trials));
  std::atomic<std::int64_t> resampled{0};

  for_each_trial(spec.trials, [&](std::int64_t t) {
    arma::cx_mat G;
    ChannelRealization r;
    int attempt = 0;
    for (;;) {
      SplitMix64 rng(derive_stream(spec.seed, trial_stream(t, attempt)));
      r = draw_realization(Phi, split.e_tau, cfg.M, cfg.K, T_tau, rng);
      bool ok = true;
      if (rx == ReceiverKind::MRC) {
        G = r.H_hat.t();
      } else {
        ok = arma::solve(G, r.H_hat.t() * r.H_hat, r.H_hat.t(),
                         arma::solve_opts::likely_sympd + arma::solve_opts::no_approx);
      }
      if (ok) {
        const arma::cx_mat D = G * r.H_hat;
        bool nonzero = true;
        for (int k = 0; k < cfg.K; ++k)
          if (!(std::norm(D(k, k)) > 0.0)) nonzero = false;
        if (nonzero) {
          arma::cx_vec x(cfg.K), n(cfg.M);
          std::vector<double> resid(cfg.K, 0.0);
          for (int s = 0; s < symbols; ++s) {
            for (int k = 0; k < cfg.K; ++k) x(k) = rng.complex_gaussian();
            for (int i = 0; i < cfg.M; ++i) n(i) = rng.complex_gaussian();
            const arma::cx_vec z = G * (sqrt_rho_d * (r.H * x) + n);
            for (int k = 0; k < cfg.K; ++k)
              resid[k] += std::norm(z(k) - sqrt_rho_d * D(k, k) * x(k));
          }
          double sum = 0.0;
          for (int k = 0; k < cfg.K; ++k)
            sum += resid[k] / symbols / (rho_d * std::norm(D(k, k)));
          inv_sinr[t] = sum / cfg.K;
          break;
        }
      }
      resampled.fetch_add(1);
      if (++attempt > kMaxResampleAttempts)
        throw std::runtime_error("channel realization resampling did not converge");
    }
  });

  KahanSum mean;
  for (double v : inv_sinr) mean.add(v);
  const double inv_mean = mean.sum / spec.trials;
  const double sinr = 1.0 / inv_mean;

  double std_err = 0.0;
  if (spec.trials > 1) {
    SplitMix64 boot(mix64(spec.seed ^ 0x626f6f74ULL));
    KahanSum bs, bs2;
    for (int b = 0; b < kBootstrapResamples; ++b) {
      KahanSum s;
      for (std::int64_t i = 0; i < spec.trials; ++i)
        s.add(inv_sinr[boot.uniform_int(static_cast<std::uint64_t>(spec.trials))]);
      const double theta = spec.trials / s.sum;
      bs.add(theta);
      bs2.add(theta * theta);
    }
    const double m = bs.sum / kBootstrapResamples;
    const double var = std::max(0.0, bs2.sum / kBootstrapResamples - m * m);
    std_err = std::sqrt(var);
  }
  return {sinr, std_err, resampled.load()};
}

RateEstimate empirical_rate(const PowerSplit& split, const SystemConfig& cfg,
                            ReceiverKind rx, const MonteCarloSpec& spec) {
  const SinrEstimate s = empirical_sinr(split, cfg, rx, spec);
  const double prefactor = split.T_d / cfg.T * cfg.K;
  const double r = prefactor * std::log2(1.0 + s.sinr);
  const double se = prefactor * s.std_err / ((1.0 + s.sinr) * std::log(2.0));
  return {r, se, s.resampled};
}

}  // namespace trainopt
