// SPDX-License-Identifier: Apache-2.0

#include "trainopt/config_sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace trainopt {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

int uniform_in(SplitMix64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
}

CaseLabel classify(const SystemConfig& cfg, ReceiverKind rx) {
  const CaseThresholds th = thresholds(cfg, rx);
  if (th.alpha_dag == th.alpha1 || th.alpha_dag == th.alpha2) return CaseLabel::Unconstrained;
  if (th.alpha1 < th.alpha_dag) return CaseLabel::PilotPeakLimited;
  if (th.alpha2 > th.alpha_dag) return CaseLabel::DataPeakLimited;
  return CaseLabel::Unconstrained;
}

}  // namespace

SystemConfig sample_valid_config(SplitMix64& rng, double ratio_lo, double ratio_hi) {
  const int K = uniform_in(rng, 2, 12);
  const int M = K + uniform_in(rng, 1, 60);
  const int T = uniform_in(rng, K + 2, 256);
  const double rho = db_to_linear(rng.uniform(-15.0, 15.0));
  const double ratio = rng.uniform(ratio_lo, ratio_hi);
  return {M, K, T, rho, ratio * rho};
}

double sample_td(const SystemConfig& cfg, SplitMix64& rng) {
  return rng.uniform() * (cfg.T - cfg.K);
}

SystemConfig sample_config_for_case(CaseLabel target, ReceiverKind rx, SplitMix64& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    SystemConfig cfg = [&]() -> SystemConfig {
      switch (target) {
        case CaseLabel::PilotPeakLimited: {
          // small K/T keeps alpha1 = ratio*K/T below the unconstrained optimum
          const int K = uniform_in(rng, 4, 15);
          const int M = K + uniform_in(rng, 5, 60);
          const int T = uniform_in(rng, 10 * K, 20 * K);
          const double rho = db_to_linear(rng.uniform(-5.0, 15.0));
          return {M, K, T, rho, rng.uniform(1.01, 1.2) * rho};
        }
        case CaseLabel::DataPeakLimited: {
          // short data phase (T < 2K) with rho_max barely above rho pushes
          // alpha2 above the unconstrained optimum
          const int K = uniform_in(rng, 12, 40);
          const int T = K + uniform_in(rng, 2, K - 1);
          const int M = K + uniform_in(rng, 1, 30);
          const double rho = db_to_linear(rng.uniform(-15.0, 0.0));
          return {M, K, T, rho, rng.uniform(1.0005, 1.05) * rho};
        }
        default: {
          // ratio above 1.2*T/K puts alpha1 past 1, deactivating both peaks
          const int K = uniform_in(rng, 2, 12);
          const int M = K + uniform_in(rng, 1, 60);
          const int T = uniform_in(rng, 2 * K + 1, 256);
          const double rho = db_to_linear(rng.uniform(-15.0, 15.0));
          const double ratio = rng.uniform(1.2 * T / K, 1.2 * T / K + 50.0);
          return {M, K, T, rho, ratio * rho};
        }
      }
    }();
    if (classify(cfg, rx) == target) return cfg;
  }
  throw std::runtime_error("could not sample a config for the requested case");
}

}  // namespace trainopt
