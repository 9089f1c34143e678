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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.
//
//   olp_acceptance [--cache-dir DIR] [--only K] [--threads T]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "olp/bench.hpp"
#include "olp/dual.hpp"
#include "olp/oracle.hpp"
#include "olp/policies.hpp"
#include "olp/rng.hpp"
#include "olp/simplex.hpp"
#include "olp/verify.hpp"

namespace olp {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Context {
  std::string cache_dir;
  int threads = 1;
};

constexpr long kSaaSamples = 1'000'000;
constexpr std::uint64_t kSaaSeed = 20260101;

Outcome oracle_equivalence(const Context&) {
  double worst_obj = 0.0;
  double worst_gap = 0.0;
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const Instance inst = random_mixed_instance(derive_seed(1, k), 20, 4);
    const LpSolution s = solve_offline(inst.orders, inst.capacity);
    const OracleResult o = enumerate_dual_vertices(inst.orders, inst.capacity.b());
    const double diff = std::abs(o.objective - s.objective);
    const double gap = relative_duality_gap(inst, s.dual_price.p, s.objective);
    worst_obj = std::max(worst_obj, diff);
    worst_gap = std::max(worst_gap, gap);
    if (diff > 1e-8 || gap > 1e-8) ++bad;
  }
  return {bad == 0, fmt("1000 instances, max |R - oracle| = %.2e, max rel gap = %.2e, "
                        "failures = %d (tol 1e-8)", worst_obj, worst_gap, bad)};
}

Outcome taylor_identity(const Context&) {
  RandomStream rng(2);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int m = 1 + static_cast<int>(rng.below(8));
    const int t = 1 + static_cast<int>(rng.below(500));
    std::vector<Order> orders(t);
    for (Order& o : orders) {
      o.reward = rng.uniform(-1.0, 10.0);
      o.column.resize(m);
      for (double& a : o.column) a = rng.uniform(-0.5, 1.0);
    }
    Vector d(m), p(m), q(m);
    for (int i = 0; i < m; ++i) {
      d[i] = rng.uniform(0.05, 0.5);
      p[i] = rng.uniform(0.0, 5.0);
      q[i] = rng.uniform(0.0, 5.0);
    }
    const SampledDualProblem problem(orders, d);
    worst = std::max(worst, taylor_identity_residual(problem, {p}, {q}));
  }
  return {worst <= 1e-10, fmt("100 triples, max residual = %.2e (tol 1e-10)", worst)};
}

struct RegretRun {
  std::vector<RegretReport> reports;  // one per n
};

RegretRun regret_grid(const Context& ctx, const InputModel& model, Algorithm algorithm,
                      const std::vector<int>& grid, int trials, std::uint64_t seed,
                      const DualPrice& pstar) {
  RegretRun run;
  TrialOptions options;
  options.pstar = pstar;
  const PolicyFactory factory = policy_factory(algorithm, pstar);
  for (int n : grid) {
    run.reports.push_back(estimate_regret(model, algorithm, factory, n, model.default_capacity(),
                                          trials, seed, options, ctx.threads));
  }
  return run;
}

double slope_of(const std::vector<int>& grid, const RegretRun& run) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    x.push_back(grid[k]);
    y.push_back(run.reports[k].mean_regret);
  }
  return log_log_slope(x, y);
}

DualPrice saa_pstar(const Context& ctx, const InputModel& model) {
  return reference_pstar(model, model.default_capacity(), kSaaSamples, kSaaSeed, ctx.cache_dir);
}

Outcome table_reproduction(const Context& ctx) {
  const InputModel model = random_input_one(4);
  const DualPrice pstar = saa_pstar(ctx, model);
  const std::vector<int> grid{100, 300};
  const double target[2][3] = {{28.17, 37.68, 27.14}, {60.17, 86.33, 45.01}};
  RegretRun runs[3];
  const Algorithm algs[3] = {Algorithm::kStatic, Algorithm::kDynamic, Algorithm::kActionHistory};
  for (int a = 0; a < 3; ++a) runs[a] = regret_grid(ctx, model, algs[a], grid, 200, 4, pstar);

  bool pass = true;
  std::string detail;
  for (int k = 0; k < 2; ++k) {
    detail += fmt("n=%d:", grid[k]);
    for (int a = 0; a < 3; ++a) {
      const RegretReport& r = runs[a].reports[k];
      const double ratio = r.mean_regret / target[k][a];
      const bool ok = std::abs(ratio - 1.0) <= 0.25;
      pass = pass && ok;
      detail += fmt(" %s %.2f+-%.2f (ref %.2f, %+.0f%%%s)", r.algorithm.c_str(), r.mean_regret,
                    r.stderr_regret, target[k][a], 100.0 * (ratio - 1.0), ok ? "" : " out");
    }
    const RegretReport& a2 = runs[1].reports[k];
    const RegretReport& a3 = runs[2].reports[k];
    const double pooled = std::hypot(a2.stderr_regret, a3.stderr_regret);
    const bool margin = a2.mean_regret - a3.mean_regret > 2.0 * pooled;
    pass = pass && margin;
    detail += fmt("; A2-A3 = %.2f vs 2se %.2f%s", a2.mean_regret - a3.mean_regret, 2.0 * pooled,
                  k == 0 ? " | " : "");
  }
  return {pass, detail};
}

const std::vector<int> kScalingGrid{25, 50, 100, 250, 500, 1000, 2000};

Outcome scaling_ri1(const Context& ctx) {
  const InputModel model = random_input_one(4);
  const DualPrice pstar = saa_pstar(ctx, model);
  const double s1 = slope_of(kScalingGrid, regret_grid(ctx, model, Algorithm::kStatic, kScalingGrid, 100, 5, pstar));
  const double s2 = slope_of(kScalingGrid, regret_grid(ctx, model, Algorithm::kDynamic, kScalingGrid, 100, 5, pstar));
  const double s3 = slope_of(kScalingGrid, regret_grid(ctx, model, Algorithm::kActionHistory, kScalingGrid, 100, 5, pstar));
  const auto in = [](double s) { return s >= 0.35 && s <= 0.65; };
  return {in(s1) && in(s2) && s3 < s1,
          fmt("slopes A1 %.3f, A2 %.3f (need [0.35, 0.65]); A3 %.3f (need < A1)", s1, s2, s3)};
}

Outcome scaling_ri2(const Context& ctx) {
  const InputModel model = random_input_two(4);
  const DualPrice pstar = saa_pstar(ctx, model);
  const RegretRun run = regret_grid(ctx, model, Algorithm::kActionHistory, kScalingGrid, 100, 6, pstar);
  const double s3 = slope_of(kScalingGrid, run);
  std::string means;
  for (const RegretReport& r : run.reports) means += fmt(" %.2f", r.mean_regret);
  return {s3 < 0.2, fmt("A3 slope %.3f (need < 0.2); means%s", s3, means.c_str())};
}

Outcome dual_convergence(const Context& ctx) {
  const InputModel model = multi_secretary();
  const DualPrice pstar = *analytic_pstar(model, {0.25});
  const std::vector<int> grid{100, 300, 1000, 3000, 10000};
  const DualConvergenceTable table =
      dual_convergence_experiment(model, {0.25}, pstar, grid, 100, 7, ctx.threads);
  std::vector<double> x, y;
  std::string means;
  for (const DualConvergenceRow& row : table.rows) {
    x.push_back(row.n);
    y.push_back(row.mean_sq_error);
    means += fmt(" %.2e", row.mean_sq_error);
  }
  const double slope = log_log_slope(x, y);
  return {slope >= -1.2 && slope <= -0.8,
          fmt("slope %.3f (need [-1.2, -0.8]); mse%s", slope, means.c_str())};
}

Outcome stability(const Context& ctx) {
  const InputModel model = uniform_square(4);
  const Vector d(4, 0.25);
  const int n = 2000;
  const int trials = 20;
  const DualPrice pstar = reference_pstar(model, d, kSaaSamples, kSaaSeed, ctx.cache_dir);
  const BindingClassification binding = classify_binding(model, d, pstar, kSaaSamples, kSaaSeed + 1);
  if (binding.binding.empty()) return {false, "no binding constraint found"};
  const int i = binding.binding.front();
  double mean[2] = {0.0, 0.0};
  const Algorithm algs[2] = {Algorithm::kDynamic, Algorithm::kActionHistory};
  for (int a = 0; a < 2; ++a) {
    const std::vector<Vector> series =
        trajectory_export(model, policy_factory(algs[a], {}), n, d, trials, 8, i, ctx.threads);
    for (const Vector& s : series) mean[a] += std::abs(s.back()) / trials;
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const bool half = mean[1] <= 0.5 * mean[0];
  const bool band = mean[0] >= 0.2 * root_n && mean[0] <= 5.0 * root_n;
  return {half && band, fmt("constraint %d: E|b_n| A2 %.2f (need [%.1f, %.1f]), A3 %.2f "
                            "(need <= %.2f)", i, mean[0], 0.2 * root_n, 5.0 * root_n, mean[1],
                            0.5 * mean[0])};
}

Outcome policy_contract(const Context&) {
  std::vector<std::string> failures;
  const InputModel model = random_input_one(4);
  const Vector d = model.default_capacity();

  // Schedule rule.
  for (int n : {8, 100, 2000}) {
    const LearningSchedule s = dynamic_schedule(n);
    bool ok = s.levels == static_cast<int>(std::ceil(std::log2(n))) && s.delta > 1.0 &&
              s.delta <= 2.0 && s.final_time == n + 1;
    int prev = 0;
    for (int t : s.updates) {
      ok = ok && t > prev;
      prev = t;
    }
    if (n == 8) ok = ok && s.updates == std::vector<int>{2, 4};
    if (n == 100) ok = ok && s.updates == std::vector<int>{1, 3, 7, 13, 26, 51};
    if (!ok) failures.push_back(fmt("schedule n=%d", n));
  }

  // Feasibility, determinism and replay of p_t from the stored prefix.
  int replays = 0;
  for (Algorithm a : {Algorithm::kDynamic, Algorithm::kActionHistory}) {
    const PolicyFactory factory = policy_factory(a, {});
    for (int k = 0; k < 3; ++k) {
      const TrialResult r = run_trial(model, factory, 200, d, derive_seed(9, k));
      const TrialResult again = run_trial(model, factory, 200, d, derive_seed(9, k));
      if (r.regret != again.regret || r.prices != again.prices) {
        failures.push_back("determinism");
      }
      for (const Vector& b : r.ledger.trajectory()) {
        for (double v : b) {
          if (v < 0.0) failures.push_back("negative capacity");
        }
      }
      const CapacitySpec cap(200, d, model.bounds(d));
      for (int t = 1; t <= 200; t += 13) {
        PolicyState prefix(factory(cap), cap);
        for (int j = 0; j < t - 1; ++j) policy_step(prefix, r.orders[j]);
        const auto& p = prefix.policy().price();
        const std::optional<Vector> got = p ? std::optional<Vector>(p->p) : std::nullopt;
        if (got != r.prices[t - 1]) failures.push_back(fmt("replay t=%d", t));
        ++replays;
      }
    }
  }

  // Warm-path accuracy on every resolve of 10 Algorithm 3 trials.
  const int n = 500;
  long resolves = 0;
  long fallbacks = 0;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const TrialResult r = run_trial(model, policy_factory(Algorithm::kActionHistory, {}), n, d,
                                    derive_seed(10, k));
    fallbacks += r.diagnostics.exact_fallbacks;
    for (int t = 1; t < n; ++t) {
      Vector d_eff = r.ledger.remaining_at(t);
      for (double& v : d_eff) v /= n - t;
      const SampledDualProblem problem(std::span(r.orders).first(t), d_eff);
      const double exact = f_value(problem, solve_sampled_dual_exact(problem));
      const double excess = f_value(problem, *r.prices[t]) - exact;
      worst = std::max(worst, excess / default_eps_sub(problem));
      ++resolves;
    }
  }
  if (worst > 1.0) failures.push_back("warm suboptimality");

  std::string detail = fmt("schedules n=8,100,2000; %d prefix replays; %ld resolves, "
                           "max excess %.2e eps_sub, %ld exact fallbacks",
                           replays, resolves, worst, fallbacks);
  for (const std::string& f : failures) detail += "; FAILED " + f;
  return {failures.empty(), detail};
}

}  // namespace
}  // namespace olp

int main(int argc, char** argv) {
  olp::Context ctx;
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "--cache-dir") && k + 1 < argc) {
      ctx.cache_dir = argv[++k];
    } else if (!std::strcmp(argv[k], "--only") && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else if (!std::strcmp(argv[k], "--threads") && k + 1 < argc) {
      ctx.threads = std::max(1, std::atoi(argv[++k]));
    } else {
      std::fprintf(stderr, "usage: %s [--cache-dir DIR] [--only K] [--threads T]\n", argv[0]);
      return 2;
    }
  }

  struct Criterion {
    const char* name;
    std::function<olp::Outcome(const olp::Context&)> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle equivalence", olp::oracle_equivalence},
      {"taylor identity", olp::taylor_identity},
      {"regret table, random input I", olp::table_reproduction},
      {"regret scaling, random input I", olp::scaling_ri1},
      {"regret scaling, random input II", olp::scaling_ri2},
      {"dual convergence rate", olp::dual_convergence},
      {"capacity stability", olp::stability},
      {"policy contract", olp::policy_contract},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && only != static_cast<int>(k + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    olp::Outcome outcome;
    try {
      outcome = criteria[k].run(ctx);
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += outcome.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s: %s [%.1fs]\n", k + 1, outcome.pass ? "PASS" : "FAIL",
                criteria[k].name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
