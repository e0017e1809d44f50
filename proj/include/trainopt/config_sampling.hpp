// SPDX-License-Identifier: Apache-2.0
//
// Randomized scenario generators for validation runs and property tests.

#pragma once

#include "trainopt/joint_solver.hpp"
#include "trainopt/rng.hpp"
#include "trainopt/sinr_model.hpp"

namespace trainopt {

/// Random valid scenario: K in [2,12], M-K in [1,60], T in [K+2, 256],
/// rho in [-15, 15] dB, rho_max = ratio * rho with ratio in [ratio_lo, ratio_hi].
SystemConfig sample_valid_config(SplitMix64& rng, double ratio_lo = 1.0,
                                 double ratio_hi = 10.0);

/// Uniform data duration in (0, T-K].
double sample_td(const SystemConfig& cfg, SplitMix64& rng);

/// Scenario whose three-case classification under `rx` equals `target`
/// (rejection-sampled over case-prone parameter ranges).
SystemConfig sample_config_for_case(CaseLabel target, ReceiverKind rx, SplitMix64& rng);

}  // namespace trainopt
