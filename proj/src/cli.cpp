// Copyright 2026 The OLP Lab Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "olp/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "olp/bench.hpp"
#include "olp/dual.hpp"
#include "olp/inputs.hpp"
#include "olp/policies.hpp"
#include "olp/rng.hpp"
#include "olp/verify.hpp"

#ifndef OLP_BUILD_ID
#define OLP_BUILD_ID "dev"
#endif

namespace olp {
namespace {

// A config problem tied to one key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what) {}
};

enum class Kind { kRegret, kDualConv, kTrajectory, kVerify };

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::kRegret:
      return "regret";
    case Kind::kDualConv:
      return "dualconv";
    case Kind::kTrajectory:
      return "trajectory";
    case Kind::kVerify:
      return "verify";
  }
  return "?";
}

struct Settings {
  std::string model = "ri1";
  int m = 4;
  bool m_given = false;
  double reward_lo = 0.0;
  double reward_hi = 1.0;
  std::string replay_path;
  std::vector<std::string> algorithms{"A1", "A2", "A3"};
  std::vector<int> n;
  std::vector<double> d;
  int trials = 0;
  bool trials_given = false;
  std::uint64_t seed = 42;
  long samples = 1'000'000;
  std::string cache_dir;
  double eps_sub = std::numeric_limits<double>::quiet_NaN();
  int budget = 40;
  double p_max = 1e4;
  int constraint = 0;
  int cases = 500;
  std::string out;
  int threads = 1;
};

// Everything a run needs after validation.
struct Plan {
  Kind kind;
  Settings s;
  InputModel model;
  Vector d;
  std::vector<Algorithm> algorithms;
  PolicyOptions policy;
};

Plan validate_settings(Kind kind, const Settings& s) {
  Plan plan{kind, s, {}, {}, {}, {}};
  if (kind == Kind::kVerify) {
    if (s.cases < 1) throw ConfigError("cases", "must be >= 1");
    if (!std::isnan(s.eps_sub) && !(s.eps_sub > 0.0)) throw ConfigError("eps_sub", "must be > 0");
    return plan;
  }

  if (s.model == "msec") {
    if (s.m_given && s.m != 1) throw ConfigError("m", "multi-secretary needs m = 1");
    if (!(s.reward_lo >= 0.0 && s.reward_lo <= s.reward_hi && s.reward_hi <= 1.0)) {
      throw ConfigError("reward_lo", "needs 0 <= reward_lo <= reward_hi <= 1");
    }
    plan.model = multi_secretary(s.reward_lo, s.reward_hi);
  } else if (s.model == "replay") {
    if (s.replay_path.empty()) throw ConfigError("replay", "replay model needs a file path");
    if (s.m < 1) throw ConfigError("m", "must be >= 1");
    plan.model = replay(s.replay_path, s.m);
  } else {
    if (s.m < 1) throw ConfigError("m", "must be >= 1");
    try {
      plan.model = model_from_name(s.model, s.m);
    } catch (const InvalidInput& e) {
      throw ConfigError("model", e.what());
    }
  }
  const int m = plan.model.m;

  if (s.d.empty()) {
    plan.d = plan.model.default_capacity();
  } else if (s.d.size() == 1) {
    plan.d.assign(m, s.d[0]);
  } else if (static_cast<int>(s.d.size()) == m) {
    plan.d = s.d;
  } else {
    throw ConfigError("d", "needs 1 or m = " + std::to_string(m) + " entries");
  }
  for (double v : plan.d) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("d", "entries must be finite and > 0");
  }

  if (!s.trials_given) throw ConfigError("trials", "missing (required by " + std::string(kind_name(kind)) + ")");
  if (s.trials < 2) throw ConfigError("trials", "must be >= 2");
  if (kind == Kind::kTrajectory) {
    if (s.n.size() != 1) throw ConfigError("n", "trajectory takes exactly one horizon");
    if (s.constraint < 0 || s.constraint >= m) throw ConfigError("constraint", "out of range");
  }
  if (s.n.empty()) throw ConfigError("n", "missing");
  for (std::size_t k = 0; k < s.n.size(); ++k) {
    if (s.n[k] <= m) throw ConfigError("n", "every horizon must exceed m");
    if (kind == Kind::kDualConv && k > 0 && s.n[k] <= s.n[k - 1]) {
      throw ConfigError("n", "grid must be strictly increasing");
    }
  }
  for (int n : s.n) {
    try {
      CapacitySpec(n, plan.d, plan.model.bounds(plan.d));
    } catch (const InvalidInput& e) {
      throw ConfigError("d", e.what());
    }
  }

  if (kind != Kind::kDualConv) {
    if (s.algorithms.empty()) throw ConfigError("algorithms", "needs at least one entry");
    for (const std::string& name : s.algorithms) {
      try {
        plan.algorithms.push_back(algorithm_from_name(name));
      } catch (const InvalidInput& e) {
        throw ConfigError("algorithms", e.what());
      }
    }
  }
  if (s.samples < 2) throw ConfigError("samples", "must be >= 2");
  if (s.budget < 0) throw ConfigError("budget", "must be >= 0");
  if (!(s.p_max > 0.0)) throw ConfigError("p_max", "must be > 0");
  if (!std::isnan(s.eps_sub) && !(s.eps_sub > 0.0)) throw ConfigError("eps_sub", "must be > 0");
  if (s.threads < 1) throw ConfigError("threads", "must be >= 1");

  plan.policy.warm.budget = s.budget;
  plan.policy.warm.eps_sub = s.eps_sub;
  plan.policy.p_max_cap = s.p_max;
  return plan;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < values.size(); ++k) os << (k ? "," : "") << values[k];
  return os.str();
}

// Canonical text of every setting that can change the CSV body.
std::string canonical(const Plan& plan) {
  const Settings& s = plan.s;
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << kind_name(plan.kind) << ";model=" << s.model << ";m=" << plan.model.m
     << ";reward=" << s.reward_lo << "," << s.reward_hi << ";replay=" << s.replay_path
     << ";algorithms=" << join(s.algorithms) << ";n=" << join(s.n) << ";d=" << join(plan.d)
     << ";trials=" << s.trials << ";seed=" << s.seed << ";samples=" << s.samples
     << ";eps_sub=" << s.eps_sub << ";budget=" << s.budget << ";p_max=" << s.p_max
     << ";constraint=" << s.constraint << ";cases=" << s.cases;
  return os.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_header(std::ostream& os, const Plan& plan) {
  os << "# olp " << kind_name(plan.kind) << "\n"
     << "# config_hash=" << hex64(hash_string(canonical(plan))) << "\n"
     << "# build=" << OLP_BUILD_ID << "\n"
     << "# seed=" << plan.s.seed << "\n"
     << "# normal_sampler=" << kNormalSampler << "\n"
     << "# timestamp=" << utc_timestamp() << "\n";
}

std::string num(double v, const char* column) {
  if (!std::isfinite(v)) {
    throw NumericalFailure(std::string("non-finite value in column ") + column);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Seeds of the reference price and binding classification, kept apart from
// the trial streams.
std::uint64_t pstar_seed(std::uint64_t seed) { return derive_seed(seed, hash_string("pstar")); }
std::uint64_t binding_seed(std::uint64_t seed) { return derive_seed(seed, hash_string("binding")); }

void run_regret(const Plan& plan, std::ostream& os, std::ostream& err) {
  const Settings& s = plan.s;
  const DualPrice pstar =
      reference_pstar(plan.model, plan.d, s.samples, pstar_seed(s.seed), s.cache_dir);
  const BindingClassification binding =
      classify_binding(plan.model, plan.d, pstar, s.samples, binding_seed(s.seed));
  TrialOptions options;
  options.pstar = pstar;
  options.binding = binding.binding;

  os << "model,algorithm,m,n,trials,mean_regret,stderr,mean_binding_leftover,mean_stop_gap,"
        "mean_price_error\n";
  for (Algorithm algorithm : plan.algorithms) {
    const PolicyFactory factory = policy_factory(algorithm, pstar, plan.policy);
    for (int n : s.n) {
      err << "regret " << to_string(algorithm) << " n=" << n << "\n";
      const RegretReport r = estimate_regret(plan.model, algorithm, factory, n, plan.d, s.trials,
                                             s.seed, options, s.threads);
      os << r.model << "," << r.algorithm << "," << r.m << "," << r.n << "," << r.trials << ","
         << num(r.mean_regret, "mean_regret") << "," << num(r.stderr_regret, "stderr") << ","
         << num(r.mean_binding_leftover, "mean_binding_leftover") << ","
         << num(r.mean_stop_gap, "mean_stop_gap") << ","
         << num(r.mean_price_error, "mean_price_error") << "\n";
    }
  }
}

void run_dualconv(const Plan& plan, std::ostream& os, std::ostream& err) {
  const Settings& s = plan.s;
  const DualPrice pstar =
      reference_pstar(plan.model, plan.d, s.samples, pstar_seed(s.seed), s.cache_dir);
  const DualConvergenceTable table =
      dual_convergence_experiment(plan.model, plan.d, pstar, s.n, s.trials, s.seed, s.threads);
  for (const std::string& w : table.warnings) err << "warning: " << w << "\n";
  os << "model,m,n,trials,mean_sq_error,stderr,degenerate_draws\n";
  std::vector<double> xs, ys;
  for (const DualConvergenceRow& row : table.rows) {
    os << plan.model.id() << "," << plan.model.m << "," << row.n << "," << row.trials << ","
       << num(row.mean_sq_error, "mean_sq_error") << "," << num(row.stderr_sq_error, "stderr")
       << "," << row.degenerate_draws << "\n";
    xs.push_back(row.n);
    ys.push_back(row.mean_sq_error);
  }
  if (xs.size() >= 2) {
    bool positive = true;
    for (double y : ys) positive = positive && y > 0.0;
    if (positive) err << "log-log slope " << log_log_slope(xs, ys) << "\n";
  }
}

void run_trajectory(const Plan& plan, std::ostream& os, std::ostream& err) {
  const Settings& s = plan.s;
  std::optional<DualPrice> pstar;
  for (Algorithm a : plan.algorithms) {
    if (a == Algorithm::kStatic && !pstar) {
      pstar = reference_pstar(plan.model, plan.d, s.samples, pstar_seed(s.seed), s.cache_dir);
    }
  }
  os << "algorithm,trial,t,remaining\n";
  const int n = s.n.front();
  for (Algorithm algorithm : plan.algorithms) {
    err << "trajectory " << to_string(algorithm) << " n=" << n << "\n";
    const std::vector<Vector> series =
        trajectory_export(plan.model, policy_factory(algorithm, pstar, plan.policy), n, plan.d,
                          s.trials, s.seed, s.constraint, s.threads);
    for (std::size_t k = 0; k < series.size(); ++k) {
      for (std::size_t t = 0; t < series[k].size(); ++t) {
        os << to_string(algorithm) << "," << k << "," << t << ","
           << num(series[k][t], "remaining") << "\n";
      }
    }
  }
}

int run_verify(const Plan& plan, std::ostream& os) {
  const std::vector<CheckResult> checks =
      run_invariant_suite(plan.s.seed, plan.s.cases, plan.s.eps_sub);
  int passed = 0;
  int failed = 0;
  os << "check,passed,failed,worst\n";
  for (const CheckResult& c : checks) {
    os << c.name << "," << c.passed << "," << c.failed << "," << num(c.worst, "worst") << "\n";
    passed += c.passed;
    failed += c.failed;
  }
  os << "# passed=" << passed << " failed=" << failed << "\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int execute(const Plan& plan, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!plan.s.out.empty()) {
    file.open(plan.s.out);
    if (!file) throw ConfigError("out", "cannot open '" + plan.s.out + "' for writing");
    os = &file;
  }
  // Build the body first so a failed run leaves no partial table.
  std::ostringstream body;
  int code = kExitOk;
  switch (plan.kind) {
    case Kind::kRegret:
      run_regret(plan, body, err);
      break;
    case Kind::kDualConv:
      run_dualconv(plan, body, err);
      break;
    case Kind::kTrajectory:
      run_trajectory(plan, body, err);
      break;
    case Kind::kVerify:
      code = run_verify(plan, body);
      break;
  }
  write_header(*os, plan);
  *os << body.str();
  os->flush();
  if (plan.kind == Kind::kVerify) {
    err << "verify: " << (code == kExitOk ? "all checks passed" : "some checks failed") << "\n";
  }
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online linear programming experiments"};
  app.name("olp");
  app.set_config("--config", "", "TOML-style config; keys match the long option names");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);

  Settings s;
  app.add_option("--model", s.model, "ri1, ri2, msec, usq or replay");
  app.add_option("--m", s.m, "number of constraints");
  app.add_option("--reward_lo", s.reward_lo, "multi-secretary reward range, low end");
  app.add_option("--reward_hi", s.reward_hi, "multi-secretary reward range, high end");
  app.add_option("--replay", s.replay_path, "instance file for the replay model");
  app.add_option("--algorithms", s.algorithms, "subset of A1 A2 A3");
  app.add_option("--n", s.n, "horizons");
  app.add_option("--d", s.d, "per-period capacity: one value or m values");
  CLI::Option* trials = app.add_option("--trials", s.trials, "trials per horizon");
  app.add_option("--seed", s.seed, "base seed");
  app.add_option("--samples", s.samples, "sample size of the p* oracle");
  app.add_option("--cache_dir", s.cache_dir, "directory caching sample-average p*");
  app.add_option("--eps_sub", s.eps_sub, "warm-path suboptimality tolerance");
  app.add_option("--budget", s.budget, "subgradient iterations per warm resolve");
  app.add_option("--p_max", s.p_max, "price box when the model declares no bounds");
  app.add_option("--constraint", s.constraint, "constraint exported by trajectory");
  app.add_option("--cases", s.cases, "random cases per verify check");
  app.add_option("--out", s.out, "output CSV path (stdout when absent)");
  app.add_option("--threads", s.threads, "worker threads for trials");

  CLI::App* regret = app.add_subcommand("regret", "mean regret per algorithm and horizon");
  CLI::App* dualconv = app.add_subcommand("dualconv", "E|p*_n - p*|^2 over a grid of n");
  CLI::App* trajectory = app.add_subcommand("trajectory", "remaining capacity over time");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  CLI::Option* m_option = app.get_option("--m");

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  s.trials_given = trials->count() > 0;
  s.m_given = m_option->count() > 0;

  Kind kind = Kind::kVerify;
  if (regret->parsed()) kind = Kind::kRegret;
  if (dualconv->parsed()) kind = Kind::kDualConv;
  if (trajectory->parsed()) kind = Kind::kTrajectory;
  (void)verify;

  try {
    const Plan plan = validate_settings(kind, s);
    return execute(plan, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace olp
