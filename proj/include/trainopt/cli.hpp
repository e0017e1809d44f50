// SPDX-License-Identifier: Apache-2.0
//
// Command front ends behind the trainopt binary: single-point optimization,
// sweep experiments (CSV), and validation runs. Kept as library functions so
// the exit codes, records and file formats are directly testable.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace trainopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitBadConfig = 2;

/// Reads a scenario config (JSON keys M, K, T, rho_db, rho_max_ratio |
/// rho_max_db, receiver, seed?, trials?), runs the joint optimizer and prints
/// the result as a single JSON object. Returns kExitBadConfig on any config
/// violation, with a message naming the violated invariant on `err`.
int run_optimize(const std::string& config_path, std::ostream& out, std::ostream& err,
                 std::optional<std::uint64_t> seed_override = {});

/// Reads a sweep spec (base scenario + variable, values, schemes,
/// output_path) and writes one CSV row per (value, scheme) to the output
/// path (overridable). Header and column order are fixed; rows are ordered
/// value-major, scheme-minor; floats use shortest round-trip formatting.
int run_sweep(const std::string& config_path, const std::optional<std::string>& output_override,
              std::ostream& out, std::ostream& err,
              std::optional<std::uint64_t> seed_override = {});

/// Runs the selected invariant suites (closed_form_vs_grid, concavity,
/// quasiconcavity, monte_carlo) and prints one pass/fail line per suite with
/// the measured worst-case deviation. Returns kExitSuiteFailure if any suite
/// fails, kExitBadConfig on config errors.
int run_validate(const std::string& config_path, std::ostream& out, std::ostream& err,
                 std::optional<std::uint64_t> seed_override = {});

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace trainopt::cli
