// SPDX-License-Identifier: Apache-2.0

#include "trainopt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trainopt/channel_sim.hpp"
#include "trainopt/config_sampling.hpp"
#include "trainopt/grid_oracle.hpp"
#include "trainopt/joint_solver.hpp"

namespace trainopt::cli {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return json::parse(in);
}

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + " must be a JSON object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw std::invalid_argument("unknown " + what + " key: " + item.key());
  }
}

ReceiverKind parse_receiver(const std::string& name) {
  if (name == "MRC") return ReceiverKind::MRC;
  if (name == "ZF") return ReceiverKind::ZF;
  throw std::invalid_argument("receiver must be \"MRC\" or \"ZF\"");
}

double resolve_rho_max(const json& j, double rho) {
  const bool has_ratio = j.contains("rho_max_ratio");
  const bool has_db = j.contains("rho_max_db");
  if (has_ratio && has_db)
    throw std::invalid_argument("specify either rho_max_ratio or rho_max_db, not both");
  if (has_db) return db_to_linear(j.at("rho_max_db").get<double>());
  const double ratio = has_ratio ? j.at("rho_max_ratio").get<double>() : 1.2;
  return ratio * rho;
}

SystemConfig system_from_json(const json& j) {
  const double rho = db_to_linear(j.at("rho_db").get<double>());
  return {j.at("M").get<int>(), j.at("K").get<int>(), j.at("T").get<int>(), rho,
          resolve_rho_max(j, rho)};
}

// ---------------------------------------------------------------------------
// sweep

enum class Scheme { EqualPower, Optimized, PowerLimited };

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::EqualPower: return "equal_power";
    case Scheme::Optimized: return "optimized";
    default: return "power_limited";
  }
}

struct SchemeSpec {
  Scheme scheme;
  ReceiverKind rx;
};

SchemeSpec parse_scheme(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("scheme must have the form <scheme>:<receiver>: " + text);
  const std::string name = text.substr(0, colon);
  const ReceiverKind rx = parse_receiver(text.substr(colon + 1));
  if (name == "equal_power") return {Scheme::EqualPower, rx};
  if (name == "optimized") return {Scheme::Optimized, rx};
  if (name == "power_limited") return {Scheme::PowerLimited, rx};
  throw std::invalid_argument("unknown scheme: " + name);
}

enum class SweepVariable { M, RhoDb, RateVsEe };

SweepVariable parse_variable(const std::string& name) {
  if (name == "M") return SweepVariable::M;
  if (name == "rho_db") return SweepVariable::RhoDb;
  if (name == "rate_vs_ee") return SweepVariable::RateVsEe;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

struct SweepRow {
  double value;
  SchemeSpec scheme;
  double alpha, T_tau, T_d, rate, ee;
};

struct SweepBase {
  int M, K, T;
  double rho_db;
  std::optional<double> rho_max_ratio;
  std::optional<double> rho_max_db;
};

SystemConfig config_at(const SweepBase& base, SweepVariable var, double value) {
  int M = base.M;
  double rho_db = base.rho_db;
  if (var == SweepVariable::M) {
    M = static_cast<int>(value);
  } else {
    rho_db = value;
  }
  const double rho = db_to_linear(rho_db);
  const double rho_max = base.rho_max_db ? db_to_linear(*base.rho_max_db)
                                         : base.rho_max_ratio.value_or(1.2) * rho;
  return {M, base.K, base.T, rho, rho_max};
}

SweepRow eval_point(const SweepBase& base, SweepVariable var, double value,
                    const SchemeSpec& ss) {
  const SystemConfig cfg = config_at(base, var, value);
  double alpha;
  double T_d;
  switch (ss.scheme) {
    case Scheme::EqualPower:
      T_d = cfg.T - cfg.K;
      alpha = static_cast<double>(cfg.K) / cfg.T;
      break;
    case Scheme::Optimized:
      T_d = cfg.T - cfg.K;
      alpha = alpha_star_unconstrained(T_d, cfg, ss.rx);
      break;
    default: {
      const OptimizationResult res = optimize(cfg, ss.rx);
      alpha = res.alpha_star;
      T_d = res.T_d_star;
      break;
    }
  }
  const PowerSplit split = PowerSplit::from_alpha_td(alpha, T_d, cfg);
  const double r = rate(split, cfg, ss.rx);
  return {value, ss, split.alpha, split.T_tau, split.T_d, r, energy_efficiency(r, cfg.rho)};
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "value,scheme,receiver,alpha,T_tau,T_d,rate_bits,energy_efficiency\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.value) << ',' << to_string(r.scheme.scheme) << ','
        << trainopt::to_string(r.scheme.rx) << ',' << format_double(r.alpha) << ','
        << format_double(r.T_tau) << ',' << format_double(r.T_d) << ','
        << format_double(r.rate) << ',' << format_double(r.ee) << '\n';
  }
}

// ---------------------------------------------------------------------------
// validate

struct SuiteReport {
  bool pass;
  std::string detail;
};

SuiteReport suite_closed_form_vs_grid(std::uint64_t seed, int n_configs) {
  double worst = 0.0;
  const GridSpec grid{1e-6, 0.05, 2};
  for (ReceiverKind rx : {ReceiverKind::MRC, ReceiverKind::ZF}) {
    SplitMix64 rng(derive_stream(seed, rx == ReceiverKind::MRC ? 11 : 12));
    for (int i = 0; i < n_configs; ++i) {
      const SystemConfig cfg = sample_valid_config(rng, 1e6, 1e6 + 1.0);
      const double td = sample_td(cfg, rng);
      const double closed = alpha_star_unconstrained(td, cfg, rx);
      const double grid_alpha = grid_argmax_fixed_td(td, cfg, rx, grid).alpha;
      worst = std::max(worst, std::abs(closed - grid_alpha));
    }
  }
  std::ostringstream os;
  os << "max |alpha_closed - alpha_grid| = " << worst << " over " << 2 * n_configs
     << " draws (tolerance 2e-06)";
  return {worst <= 2e-6, os.str()};
}

SuiteReport suite_concavity(std::uint64_t seed, int n_configs) {
  double worst = -1e300;
  const double h = 1e-4;
  for (ReceiverKind rx : {ReceiverKind::MRC, ReceiverKind::ZF}) {
    SplitMix64 rng(derive_stream(seed, rx == ReceiverKind::MRC ? 21 : 22));
    for (int i = 0; i < n_configs; ++i) {
      const SystemConfig cfg = sample_valid_config(rng);
      const double td = sample_td(cfg, rng);
      for (int g = 1; g < 200; ++g) {
        const double a = g / 200.0;
        const double f0 = sinr_at(a, td, cfg, rx);
        const double d2 = sinr_at(a + h, td, cfg, rx) - 2.0 * f0 + sinr_at(a - h, td, cfg, rx);
        worst = std::max(worst, d2 / std::max(1.0, std::abs(f0)));
      }
    }
  }
  std::ostringstream os;
  os << "worst normalized second difference = " << worst << " (tolerance 1e-12)";
  return {worst <= 1e-12, os.str()};
}

SuiteReport suite_quasiconcavity(std::uint64_t seed, int n_configs) {
  int violations = 0;
  int scans = 0;
  for (ReceiverKind rx : {ReceiverKind::MRC, ReceiverKind::ZF}) {
    SplitMix64 rng(derive_stream(seed, rx == ReceiverKind::MRC ? 31 : 32));
    for (int i = 0; i < n_configs; ++i) {
      const SystemConfig cfg = sample_config_for_case(CaseLabel::PilotPeakLimited, rx, rng);
      const CaseThresholds th = thresholds(cfg, rx);
      constexpr int kPoints = 1000;
      std::vector<double> v(kPoints + 1);
      double vmax = 0.0;
      for (int p = 0; p <= kPoints; ++p) {
        v[p] = case1_line_rate(th.alpha1 + (1.0 - th.alpha1) * p / kPoints, cfg, rx);
        vmax = std::max(vmax, v[p]);
      }
      const double tol = 1e-12 * std::max(1.0, vmax);
      for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double beta = q * vmax;
        int first = -1, last = -1, count = 0;
        for (int p = 0; p <= kPoints; ++p)
          if (v[p] >= beta - tol) {
            if (first < 0) first = p;
            last = p;
            ++count;
          }
        ++scans;
        if (count > 0 && count != last - first + 1) ++violations;
      }
    }
  }
  std::ostringstream os;
  os << violations << " non-contiguous super-level sets over " << scans << " level scans";
  return {violations == 0, os.str()};
}

SuiteReport suite_monte_carlo(const SystemConfig& cfg, std::uint64_t seed,
                              std::int64_t trials) {
  const PowerSplit split = PowerSplit::from_alpha_td(static_cast<double>(cfg.K) / cfg.T,
                                                     cfg.T - cfg.K, cfg);
  const MonteCarloSpec mc{trials, seed, 2};

  const TrainingStats st = training_statistics(split, cfg, mc);
  const double e = split.e_tau;
  const double est_true = e / (e + 1.0);
  const double err_true = 1.0 / (e + 1.0);
  const double n = static_cast<double>(st.samples);
  const double est_dev = std::abs(st.est_var - est_true) / (est_true / std::sqrt(n));
  const double err_dev = std::abs(st.err_var - err_true) / (err_true / std::sqrt(n));
  const double cross_se = std::sqrt(est_true * err_true / (2.0 * n));
  const double cross_dev = std::max(std::abs(st.cross_corr.real()),
                                    std::abs(st.cross_corr.imag())) / cross_se;
  const double worst_identity = std::max({est_dev, err_dev, cross_dev});

  bool pass = worst_identity <= 3.0;
  bool wide_band = false;
  std::ostringstream os;
  os << "worst MMSE identity deviation = " << worst_identity << " SE";
  for (ReceiverKind rx : {ReceiverKind::MRC, ReceiverKind::ZF}) {
    const SinrEstimate emp = empirical_sinr(split, cfg, rx, mc);
    const double cf = sinr_at(split.alpha, split.T_d, cfg, rx);
    const double gap = std::abs(emp.sinr - cf);
    pass = pass && gap <= 0.10 * cf + 3.0 * emp.std_err;
    wide_band = wide_band || 3.0 * emp.std_err > 0.05 * cf;
    os << "; " << trainopt::to_string(rx) << " gap " << 100.0 * gap / cf << "% ("
       << gap / std::max(emp.std_err, 1e-300) << " SE)";
  }
  if (wide_band) os << " [wide confidence bands at " << trials << " trials]";
  return {pass, os.str()};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int run_optimize(const std::string& config_path, std::ostream& out, std::ostream& err,
                 std::optional<std::uint64_t>) {
  try {
    const json j = load_json(config_path);
    require_keys(j, {"M", "K", "T", "rho_db", "rho_max_ratio", "rho_max_db", "receiver",
                     "seed", "trials"},
                 "config");
    const SystemConfig cfg = system_from_json(j);
    const ReceiverKind rx = parse_receiver(j.at("receiver").get<std::string>());
    const OptimizationResult res = optimize(cfg, rx);
    const PowerSplit split = PowerSplit::from_alpha_td(res.alpha_star, res.T_d_star, cfg);
    const json record = {
        {"alpha_star", res.alpha_star}, {"T_tau_star", res.T_tau_star},
        {"T_d_star", res.T_d_star},     {"rho_tau", split.rho_tau},
        {"rho_d", split.rho_d},         {"rate_bits", res.rate_star},
        {"case_label", to_string(res.case_label)}, {"receiver", trainopt::to_string(rx)}};
    out << record.dump() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
}

int run_sweep(const std::string& config_path, const std::optional<std::string>& output_override,
              std::ostream&, std::ostream& err, std::optional<std::uint64_t>) {
  try {
    const json j = load_json(config_path);
    require_keys(j, {"base", "variable", "values", "schemes", "output_path"}, "sweep");
    const json& jb = j.at("base");
    require_keys(jb, {"M", "K", "T", "rho_db", "rho_max_ratio", "rho_max_db"}, "sweep base");
    if (jb.contains("rho_max_ratio") && jb.contains("rho_max_db"))
      throw std::invalid_argument("specify either rho_max_ratio or rho_max_db, not both");
    SweepBase base{jb.at("M").get<int>(), jb.at("K").get<int>(), jb.at("T").get<int>(),
                   jb.at("rho_db").get<double>(), std::nullopt, std::nullopt};
    if (jb.contains("rho_max_ratio")) base.rho_max_ratio = jb.at("rho_max_ratio").get<double>();
    if (jb.contains("rho_max_db")) base.rho_max_db = jb.at("rho_max_db").get<double>();

    const SweepVariable var = parse_variable(j.at("variable").get<std::string>());
    const std::vector<double> values = j.at("values").get<std::vector<double>>();
    if (values.empty()) throw std::invalid_argument("values must be nonempty");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      if (!(values[i] < values[i + 1]))
        throw std::invalid_argument("values must be strictly increasing");
    if (var == SweepVariable::M)
      for (double v : values)
        if (v != std::floor(v)) throw std::invalid_argument("M values must be integers");

    std::vector<SchemeSpec> schemes;
    for (const auto& s : j.at("schemes")) schemes.push_back(parse_scheme(s.get<std::string>()));
    if (schemes.empty()) throw std::invalid_argument("schemes must be nonempty");

    std::string out_path = output_override.value_or(
        j.contains("output_path") ? j.at("output_path").get<std::string>() : "");
    if (out_path.empty())
      throw std::invalid_argument("an output path is required (output_path key or -o)");

    // one task per sweep value; rows assembled in input order
    std::vector<std::future<std::vector<SweepRow>>> futures;
    futures.reserve(values.size());
    for (double v : values)
      futures.push_back(std::async(std::launch::async, [&, v] {
        std::vector<SweepRow> rows;
        rows.reserve(schemes.size());
        for (const SchemeSpec& ss : schemes) rows.push_back(eval_point(base, var, v, ss));
        return rows;
      }));
    std::vector<SweepRow> rows;
    for (auto& f : futures)
      for (SweepRow& r : f.get()) rows.push_back(r);

    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    write_csv(file, rows);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
}

int run_validate(const std::string& config_path, std::ostream& out, std::ostream& err,
                 std::optional<std::uint64_t> seed_override) {
  SystemConfig cfg{2, 1, 3, 1.0, 1.0};
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  std::int64_t trials = 10000;
  int n_configs = 20;
  try {
    const json j = load_json(config_path);
    require_keys(j, {"M", "K", "T", "rho_db", "rho_max_ratio", "rho_max_db", "receiver",
                     "seed", "trials", "suites", "configs_per_suite"},
                 "config");
    cfg = system_from_json(j);
    parse_receiver(j.at("receiver").get<std::string>());
    suites = j.at("suites").get<std::vector<std::string>>();
    if (suites.empty()) throw std::invalid_argument("suites must be nonempty");
    for (const std::string& s : suites)
      if (s != "closed_form_vs_grid" && s != "concavity" && s != "quasiconcavity" &&
          s != "monte_carlo")
        throw std::invalid_argument("unknown suite name: " + s);
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) trials = j.at("trials").get<std::int64_t>();
    if (j.contains("configs_per_suite")) n_configs = j.at("configs_per_suite").get<int>();
    if (trials < 1 || n_configs < 1)
      throw std::invalid_argument("trials and configs_per_suite must be positive");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  if (seed_override) seed = *seed_override;

  bool all_pass = true;
  for (const std::string& name : suites) {
    SuiteReport report{false, ""};
    try {
      if (name == "closed_form_vs_grid") report = suite_closed_form_vs_grid(seed, n_configs);
      else if (name == "concavity") report = suite_concavity(seed, n_configs);
      else if (name == "quasiconcavity") report = suite_quasiconcavity(seed, n_configs);
      else report = suite_monte_carlo(cfg, seed, trials);
    } catch (const std::exception& e) {
      report = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && report.pass;
    out << (report.pass ? "PASS " : "FAIL ") << name << ": " << report.detail << '\n';
  }
  return all_pass ? kExitOk : kExitSuiteFailure;
}

}  // namespace trainopt::cli
