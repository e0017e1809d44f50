// SPDX-License-Identifier: Apache-2.0
//
// Scenario data model and the closed-form effective-SINR / sum-rate
// expressions for a single-cell MU-MIMO uplink with pilot-aided MMSE channel
// estimation and MRC or ZF combining. All powers are linear scale.

#pragma once

namespace trainopt {

/// Linear combiner applied at the base station.
enum class ReceiverKind { MRC, ZF };

const char* to_string(ReceiverKind rx);

/// Physical scenario: M base-station antennas serve K single-antenna users
/// over block-fading coherence intervals of T symbols, under an average power
/// budget rho per user and a per-phase peak power limit rho_max.
///
/// Invariants enforced at construction:
///   M > K        (ZF array gain is M-K; MRC analysis also assumes it)
///   T > K        (a data phase must exist after the >= K pilot symbols)
///   rho > 0, rho_max >= rho
struct SystemConfig {
  int M;
  int K;
  int T;
  double rho;
  double rho_max;

  SystemConfig(int M, int K, int T, double rho, double rho_max);

  /// Total transmit energy per coherence block, rho * T.
  double block_energy() const { return rho * static_cast<double>(T); }
};

/// An operating point of the training/data split. alpha is the fraction of
/// the block energy rho*T spent on pilots; the data phase lasts T_d symbols.
/// Derived fields satisfy e_tau + e_data == rho*T exactly and
/// rho_tau*T_tau == e_tau, rho_d*T_d == e_data.
struct PowerSplit {
  double alpha;
  double T_d;
  double T_tau;    ///< T - T_d
  double e_tau;    ///< pilot energy, alpha * rho * T
  double e_data;   ///< data energy, rho * T - e_tau
  double rho_tau;  ///< per-symbol pilot power
  double rho_d;    ///< per-symbol data power

  /// Validates 0 <= alpha <= 1 and 0 < T_d <= T - K (inputs within 1e-9 of a
  /// bound are clamped onto it) and fills the derived fields.
  static PowerSplit from_alpha_td(double alpha, double T_d, const SystemConfig& cfg);
};

/// Effective SINR of the MRC rate lower bound given pilot energy
/// e_tau = T_tau * rho_tau and data power rho_d:
///
///   e_tau rho_d (M-1) / (e_tau rho_d (K-1) + K rho_d + e_tau + 1)
///
/// Total on e_tau, rho_d >= 0, M, K >= 1; returns 0 when the numerator is 0.
double sinr_mrc(double e_tau, double rho_d, int M, int K);

/// Effective SINR of the ZF rate lower bound:
///
///   e_tau rho_d (M-K) / (K rho_d + e_tau + 1)
///
/// Total on e_tau, rho_d >= 0, M >= K >= 1 (M == K yields 0).
double sinr_zf(double e_tau, double rho_d, int M, int K);

/// Achievable sum-rate lower bound in bits/s/Hz: (T_d/T) K log2(1 + SINR).
double rate(const PowerSplit& split, const SystemConfig& cfg, ReceiverKind rx);

/// Coefficients of the SINR expressions rewritten as rational functions of
/// alpha under the energy parametrization e_tau = alpha rho T,
/// rho_d = (1-alpha) rho T / T_d:
///
///   MRC: SINR(alpha) = ((M-1)/(K-1)) alpha(alpha-1) / (alpha^2 - a1 alpha - b1)
///        a1 = 1 + (T_d-K)/(rho T (K-1)),  b1 = (rho T K + T_d)/(rho^2 T^2 (K-1))
///   ZF:  SINR(alpha) = rho T (M-K) alpha(1-alpha) / ((T_d-K)(gamma + alpha))
///        gamma = (K rho T + T_d)/(rho T (T_d - K))
///
/// Over the valid domain, b1 > 0 and 1 - a1 - b1 <= 0; the sign of gamma
/// follows the sign of T_d - K (gamma is IEEE +/-inf at T_d == K, where the
/// ZF rewrite has a removable singularity).
struct SinrCoefficients {
  double a1;
  double b1;
  double gamma;

  /// Requires K >= 2 (the MRC rewrite divides by K-1).
  static SinrCoefficients from(const SystemConfig& cfg, double T_d);
};

/// MRC SINR as a function of alpha through the rewritten rational form.
/// Requires K >= 2; use sinr_at for the K == 1 direct form.
double sinr_mrc_alpha(double alpha, double T_d, const SystemConfig& cfg);

/// ZF SINR as a function of alpha. Delegates to the direct form, which is
/// continuous across the T_d == K singularity of the rewrite.
double sinr_zf_alpha(double alpha, double T_d, const SystemConfig& cfg);

/// SINR at (alpha, T_d) through the direct forms; total for every valid
/// config, including K == 1 with MRC.
double sinr_at(double alpha, double T_d, const SystemConfig& cfg, ReceiverKind rx);

/// Rate per unit average transmit power, rate / rho. Rejects rho <= 0.
double energy_efficiency(double rate_value, double rho);

}  // namespace trainopt
