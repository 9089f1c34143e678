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

#include "olp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "olp/rng.hpp"
#include "olp/simplex.hpp"

namespace olp {

PolicyFactory policy_factory(Algorithm algorithm, std::optional<DualPrice> pstar,
                             PolicyOptions options) {
  if (algorithm == Algorithm::kStatic && !pstar) {
    throw InvalidInput("the static policy needs a reference price p*");
  }
  return [algorithm, pstar = std::move(pstar), options](const CapacitySpec& capacity)
             -> std::unique_ptr<Policy> {
    switch (algorithm) {
      case Algorithm::kStatic:
        return make_static_policy(*pstar);
      case Algorithm::kDynamic:
        return make_dynamic_policy(capacity.d(), capacity.n(), options);
      case Algorithm::kActionHistory: {
        PolicyOptions local = options;
        local.warm.p_max = capacity.bounds().price_box(options.p_max_cap);
        return make_ahd_policy(capacity.d(), capacity.n(), local);
      }
    }
    throw InvalidInput("unknown algorithm");
  };
}

TrialResult run_trial(const InputModel& model, const PolicyFactory& factory, int n,
                      const Vector& d, std::uint64_t seed, const TrialOptions& options) {
  Instance instance = generate_instance(model, n, d, seed);
  PolicyState state(factory(instance.capacity), instance.capacity);
  double revenue = 0.0;
  for (const Order& order : instance.orders) {
    if (policy_step(state, order)) revenue += order.reward;
  }
  const LpSolution offline = solve_offline(instance.orders, instance.capacity, options.packing);

  TrialResult result;
  result.online_revenue = revenue;
  result.offline_optimum = offline.objective;
  result.regret = offline.objective - revenue;
  result.ledger = state.ledger();
  result.prices = state.prices();
  result.diagnostics = state.policy().diagnostics();

  const ModelBounds& bounds = instance.capacity.bounds();
  double a_bar = bounds.a_bar;
  if (!bounds.declared) {
    a_bar = 0.0;
    for (const Order& o : instance.orders) a_bar = std::max(a_bar, norm2(o.column));
  }
  result.tau_abar = stopping_time(result.ledger, a_bar);

  const Vector& final_b = result.ledger.remaining();
  if (options.binding) {
    for (int i : *options.binding) result.binding_leftover.push_back(final_b.at(i));
  } else {
    result.binding_leftover = final_b;
  }
  if (options.pstar) {
    double sum = 0.0;
    for (const auto& p : result.prices) {
      if (p) sum += squared_distance(*p, options.pstar->p);
    }
    result.price_error_sum = sum;
  }
  result.orders = std::move(instance.orders);
  return result;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const int k = next.fetch_add(1);
        if (k >= count) return;
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct MeanStderr {
  double mean = 0.0;
  double stderr_value = 0.0;
};

MeanStderr summarize(const std::vector<double>& values) {
  MeanStderr out;
  const double k = static_cast<double>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / k;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr_value = std::sqrt(ss / (k - 1.0) / k);
  return out;
}

}  // namespace

RegretReport estimate_regret(const InputModel& model, Algorithm algorithm,
                             const PolicyFactory& factory, int n, const Vector& d,
                             int trials, std::uint64_t base_seed,
                             const TrialOptions& options, int threads) {
  if (trials < 2) throw InvalidInput("regret estimation needs at least 2 trials");
  std::vector<double> regret(trials), leftover(trials), stop_gap(trials), price_error(trials);
  parallel_for(trials, threads, [&](int k) {
    try {
      const TrialResult r = run_trial(model, factory, n, d, derive_seed(base_seed, k), options);
      regret[k] = r.regret;
      double left = 0.0;
      for (double v : r.binding_leftover) left += v;
      leftover[k] = left;
      stop_gap[k] = static_cast<double>(n - r.tau_abar);
      price_error[k] = r.price_error_sum;
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("trial " + std::to_string(k) + " (n=" + std::to_string(n) +
                             ", " + std::string(to_string(algorithm)) + "): " + e.what());
    }
  });
  RegretReport report;
  report.model = model.id();
  report.algorithm = std::string(to_string(algorithm));
  report.n = n;
  report.m = static_cast<int>(d.size());
  report.trials = trials;
  const MeanStderr reg = summarize(regret);
  report.mean_regret = reg.mean;
  report.stderr_regret = reg.stderr_value;
  report.mean_binding_leftover = summarize(leftover).mean;
  report.mean_stop_gap = summarize(stop_gap).mean;
  if (options.pstar) report.mean_price_error = summarize(price_error).mean;
  return report;
}

DualConvergenceTable dual_convergence_experiment(const InputModel& model, const Vector& d,
                                                 const DualPrice& pstar,
                                                 const std::vector<int>& n_grid, int trials,
                                                 std::uint64_t base_seed, int threads) {
  if (trials < 2) throw InvalidInput("dual convergence needs at least 2 trials per n");
  for (std::size_t k = 1; k < n_grid.size(); ++k) {
    if (n_grid[k] <= n_grid[k - 1]) throw InvalidInput("n grid must be strictly increasing");
  }
  const int m = static_cast<int>(d.size());
  DualConvergenceTable table;
  for (int n : n_grid) {
    std::vector<double> errors(trials);
    std::vector<int> degenerate(trials, 0);
    parallel_for(trials, threads, [&](int k) {
      const Instance instance = generate_instance(model, n, d, derive_seed(derive_seed(base_seed, n), k));
      const DualPrice p = solve_sampled_dual_exact(SampledDualProblem(instance.orders, d));
      errors[k] = squared_distance(p.p, pstar.p);
      int on_kink = 0;
      for (const Order& o : instance.orders) {
        if (std::abs(o.reward - dot(o.column, p.p)) <= 1e-9 * (1.0 + std::abs(o.reward))) ++on_kink;
      }
      degenerate[k] = on_kink > m ? 1 : 0;
    });
    DualConvergenceRow row;
    row.n = n;
    row.trials = trials;
    const MeanStderr s = summarize(errors);
    row.mean_sq_error = s.mean;
    row.stderr_sq_error = s.stderr_value;
    for (int v : degenerate) row.degenerate_draws += v;
    if (row.degenerate_draws > 0) {
      table.warnings.push_back("n=" + std::to_string(n) + ": " +
                               std::to_string(row.degenerate_draws) + " of " +
                               std::to_string(trials) +
                               " draws put more than m orders on the price kink "
                               "(degenerate optimal face)");
    }
    table.rows.push_back(row);
  }
  return table;
}

std::vector<Vector> trajectory_export(const InputModel& model, const PolicyFactory& factory,
                                      int n, const Vector& d, int trials,
                                      std::uint64_t base_seed, int constraint, int threads) {
  if (constraint < 0 || constraint >= static_cast<int>(d.size())) {
    throw InvalidInput("trajectory constraint index out of range");
  }
  std::vector<Vector> series(trials);
  parallel_for(trials, threads, [&](int k) {
    const Instance instance = generate_instance(model, n, d, derive_seed(base_seed, k));
    PolicyState state(factory(instance.capacity), instance.capacity);
    for (const Order& order : instance.orders) policy_step(state, order);
    Vector s;
    s.reserve(n + 1);
    for (const Vector& b : state.ledger().trajectory()) s.push_back(b[constraint]);
    series[k] = std::move(s);
  });
  return series;
}

void write_trajectory_csv(std::ostream& out, const std::vector<Vector>& series) {
  out << "trial,t,remaining\n";
  char buf[64];
  for (std::size_t k = 0; k < series.size(); ++k) {
    for (std::size_t t = 0; t < series[k].size(); ++t) {
      std::snprintf(buf, sizeof(buf), "%.17g", series[k][t]);
      out << k << ',' << t << ',' << buf << '\n';
    }
  }
}

std::vector<Vector> read_trajectory_csv(std::istream& in) {
  std::vector<Vector> series;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("trial,", 0) == 0) continue;
    std::istringstream fields(line);
    std::string trial, t, value;
    if (!std::getline(fields, trial, ',') || !std::getline(fields, t, ',') ||
        !std::getline(fields, value)) {
      throw InvalidInput("malformed trajectory row: " + line);
    }
    const std::size_t k = std::stoul(trial);
    const std::size_t step = std::stoul(t);
    if (series.size() <= k) series.resize(k + 1);
    if (series[k].size() != step) throw InvalidInput("trajectory rows out of order");
    series[k].push_back(std::stod(value));
  }
  return series;
}

MonteCarloEstimate lagrangian_gap(const InputModel& model, const Vector& d,
                                  const DualPrice& pstar, const DualPrice& p, long samples,
                                  std::uint64_t seed) {
  if (!pstar.nonnegative() || !p.nonnegative()) throw InvalidInput("prices must be >= 0");
  if (pstar.dim() != d.size() || p.dim() != d.size()) {
    throw InvalidInput("price dimension does not match capacity");
  }
  if (samples < 2) throw InvalidInput("Lagrangian gap needs >= 2 samples");
  std::vector<double> diffs(samples);
  for (long j = 0; j < samples; ++j) {
    const Order o = model.draw(seed, j);
    const double margin = o.reward - dot(o.column, pstar.p);
    const bool at_star = margin > 0.0;
    const bool at_p = o.reward > dot(o.column, p.p);
    diffs[j] = (at_star ? margin : 0.0) - (at_p ? margin : 0.0);
  }
  const MeanStderr s = summarize(diffs);
  return {s.mean, s.stderr_value};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("slope fit needs >= 2 points");
  double mx = 0.0, my = 0.0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidInput("log-log fit needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]) - mx;
    sxy += lx * (std::log(y[i]) - my);
    sxx += lx * lx;
  }
  return sxy / sxx;
}

namespace {

std::string pstar_cache_key(const InputModel& model, const Vector& d, long samples,
                            std::uint64_t seed) {
  std::ostringstream key;
  key.precision(17);
  key << model.id() << " m=" << model.m << " lo=" << model.reward_lo << " hi=" << model.reward_hi;
  for (const SupportPoint& s : model.support) {
    key << " [" << s.probability << ' ' << s.reward;
    for (double a : s.column) key << ' ' << a;
    key << ']';
  }
  key << " d=";
  for (double v : d) key << v << ',';
  key << " samples=" << samples << " seed=" << seed << " sampler=" << kNormalSampler;
  return key.str();
}

}  // namespace

DualPrice reference_pstar(const InputModel& model, const Vector& d, long samples,
                          std::uint64_t seed, const std::string& cache_dir) {
  if (auto analytic = analytic_pstar(model, d)) return *analytic;
  const std::string key = pstar_cache_key(model, d, samples, seed);
  std::filesystem::path file;
  if (!cache_dir.empty()) {
    char name[64];
    std::snprintf(name, sizeof(name), "pstar-%016llx.txt",
                  static_cast<unsigned long long>(hash_string(key)));
    file = std::filesystem::path(cache_dir) / name;
    std::ifstream in(file);
    std::string header;
    if (in && std::getline(in, header) && header == "# " + key) {
      DualPrice cached{Vector(d.size()), PriceProvenance::kSaaOracle};
      bool ok = true;
      for (double& v : cached.p) ok = ok && static_cast<bool>(in >> v);
      if (ok) return cached;
    }
  }
  DualPrice p = estimate_pstar(model, d, samples, seed);
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    std::ofstream out(file);
    out << "# " << key << '\n';
    char buf[64];
    for (double v : p.p) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf << '\n';
    }
  }
  return p;
}

}  // namespace olp
