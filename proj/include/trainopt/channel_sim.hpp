// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo simulation of the physical layer: orthogonal DFT pilots, MMSE
// channel estimation, MRC/ZF combining. Validates the analytical SINR and
// rate expressions empirically.

#pragma once

#include <armadillo>
#include <complex>
#include <cstdint>

#include "trainopt/sinr_model.hpp"

namespace trainopt {

struct MonteCarloSpec {
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  int symbols_per_trial = 1;  ///< data vectors drawn per channel realization
};

struct ChannelRealization {
  arma::cx_mat H;      ///< M x K, i.i.d. CN(0,1)
  arma::cx_mat H_hat;  ///< MMSE estimate
  arma::cx_mat E;      ///< estimation error H - H_hat
};

/// K x T_tau pilot matrix built from normalized DFT rows; Phi * Phi^H = I_K.
arma::cx_mat pilot_matrix(int K, int T_tau);

/// One training-phase realization for trial index `trial`: draws H and the
/// M x T_tau noise N from the (seed, trial) counter stream, forms
/// Y = sqrt(T_tau rho_tau) H Phi + N and the MMSE estimate
/// H_hat = (sqrt(T_tau rho_tau)/(T_tau rho_tau + 1)) Y Phi^H.
/// Requires integer T_tau >= K.
ChannelRealization simulate_training(const PowerSplit& split, const SystemConfig& cfg,
                                     const MonteCarloSpec& spec, std::int64_t trial);

struct TrainingStats {
  double est_var;                  ///< sample variance of H_hat entries
  double err_var;                  ///< sample variance of E entries
  std::complex<double> cross_corr; ///< sample mean of H_hat .* conj(E)
  std::int64_t samples;
};

/// Aggregated estimate/error statistics over spec.trials realizations.
TrainingStats training_statistics(const PowerSplit& split, const SystemConfig& cfg,
                                  const MonteCarloSpec& spec);

struct SinrEstimate {
  double sinr;
  double std_err;          ///< bootstrap standard error over trials
  std::int64_t resampled;  ///< realizations redrawn after a rank-deficient solve
};

/// Empirical effective SINR at the given operating point. Per realization the
/// desired coefficient for user k is the k-th diagonal of G H_hat scaled by
/// sqrt(rho_d); everything else in the combined output (interference leakage,
/// the G E x term, combined noise) is residual, with the residual power
/// estimated from symbols_per_trial drawn data vectors. Per-realization
/// conditional SINRs are aggregated as 1/mean(residual/desired), the
/// expectation under which the closed forms are exact.
SinrEstimate empirical_sinr(const PowerSplit& split, const SystemConfig& cfg,
                            ReceiverKind rx, const MonteCarloSpec& spec);

struct RateEstimate {
  double rate;
  double std_err;  ///< delta-method propagation of the SINR standard error
  std::int64_t resampled;
};

/// (T_d/T) K log2(1 + empirical SINR).
RateEstimate empirical_rate(const PowerSplit& split, const SystemConfig& cfg,
                            ReceiverKind rx, const MonteCarloSpec& spec);

}  // namespace trainopt
