// SPDX-License-Identifier: Apache-2.0

#include "trainopt/sinr_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trainopt {

namespace {
constexpr double kEdgeTol = 1e-9;
}

const char* to_string(ReceiverKind rx) {
  return rx == ReceiverKind::MRC ? "MRC" : "ZF";
}

SystemConfig::SystemConfig(int M_, int K_, int T_, double rho_, double rho_max_)
    : M(M_), K(K_), T(T_), rho(rho_), rho_max(rho_max_) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (M <= K) throw std::invalid_argument("M must exceed K");
  if (T <= K) throw std::invalid_argument("T must exceed K");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");
  if (rho_max < rho) throw std::invalid_argument("rho_max must be at least rho");
}

PowerSplit PowerSplit::from_alpha_td(double alpha, double T_d, const SystemConfig& cfg) {
  const double td_max = static_cast<double>(cfg.T - cfg.K);
  if (alpha < -kEdgeTol || alpha > 1.0 + kEdgeTol)
    throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(T_d > 0.0) || T_d > td_max + kEdgeTol)
    throw std::invalid_argument("T_d must lie in (0, T-K]");
  alpha = std::clamp(alpha, 0.0, 1.0);
  T_d = std::min(T_d, td_max);

  PowerSplit s;
  s.alpha = alpha;
  s.T_d = T_d;
  s.T_tau = cfg.T - T_d;
  const double block = cfg.block_energy();
  s.e_tau = alpha * block;
  s.e_data = block - s.e_tau;  // exact complement keeps the energy identity
  s.rho_tau = s.e_tau / s.T_tau;
  s.rho_d = s.e_data / s.T_d;
  return s;
}

double sinr_mrc(double e_tau, double rho_d, int M, int K) {
  const double num = e_tau * rho_d * (M - 1);
  if (num <= 0.0) return 0.0;
  return num / (e_tau * rho_d * (K - 1) + K * rho_d + e_tau + 1.0);
}

double sinr_zf(double e_tau, double rho_d, int M, int K) {
  const double num = e_tau * rho_d * (M - K);
  if (num <= 0.0) return 0.0;
  return num / (K * rho_d + e_tau + 1.0);
}

double rate(const PowerSplit& split, const SystemConfig& cfg, ReceiverKind rx) {
  const double s = rx == ReceiverKind::MRC
                       ? sinr_mrc(split.e_tau, split.rho_d, cfg.M, cfg.K)
                       : sinr_zf(split.e_tau, split.rho_d, cfg.M, cfg.K);
  return split.T_d / cfg.T * cfg.K * std::log2(1.0 + s);
}

SinrCoefficients SinrCoefficients::from(const SystemConfig& cfg, double T_d) {
  if (cfg.K < 2)
    throw std::invalid_argument("SinrCoefficients requires K >= 2");
  const double rt = cfg.block_energy();
  SinrCoefficients c;
  c.a1 = 1.0 + (T_d - cfg.K) / (rt * (cfg.K - 1));
  c.b1 = (rt * cfg.K + T_d) / (rt * rt * (cfg.K - 1));
  c.gamma = (cfg.K * rt + T_d) / (rt * (T_d - cfg.K));
  return c;
}

double sinr_mrc_alpha(double alpha, double T_d, const SystemConfig& cfg) {
  const auto c = SinrCoefficients::from(cfg, T_d);
  const double num = alpha * (alpha - 1.0);
  if (num == 0.0) return 0.0;
  const double den = alpha * alpha - c.a1 * alpha - c.b1;
  return (cfg.M - 1.0) / (cfg.K - 1.0) * num / den;
}

double sinr_zf_alpha(double alpha, double T_d, const SystemConfig& cfg) {
  const double e_tau = alpha * cfg.block_energy();
  const double rho_d = (1.0 - alpha) * cfg.block_energy() / T_d;
  return sinr_zf(e_tau, rho_d, cfg.M, cfg.K);
}

double sinr_at(double alpha, double T_d, const SystemConfig& cfg, ReceiverKind rx) {
  const double e_tau = alpha * cfg.block_energy();
  const double rho_d = (cfg.block_energy() - e_tau) / T_d;
  return rx == ReceiverKind::MRC ? sinr_mrc(e_tau, rho_d, cfg.M, cfg.K)
                                 : sinr_zf(e_tau, rho_d, cfg.M, cfg.K);
}

double energy_efficiency(double rate_value, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  return rate_value / rho;
}

}  // namespace trainopt
