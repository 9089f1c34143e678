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

// Monte Carlo harness: single trials, regret estimation, the dual
// convergence experiment, constraint trajectories and the Lagrangian gap.
// Trial k of an experiment always uses seed derive_seed(base_seed, k), so
// trials are isolated and policies compared on common random numbers.

#ifndef OLP_BENCH_HPP_
#define OLP_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olp/core.hpp"
#include "olp/dual.hpp"
#include "olp/inputs.hpp"
#include "olp/policies.hpp"

namespace olp {

using PolicyFactory = std::function<std::unique_ptr<Policy>(const CapacitySpec&)>;

// Factory for one of the three algorithms. A1 needs `pstar`; A3's projection
// box comes from the model bounds (or options.p_max_cap).
PolicyFactory policy_factory(Algorithm algorithm, std::optional<DualPrice> pstar,
                             PolicyOptions options = {});

struct TrialOptions {
  std::optional<DualPrice> pstar;            // reference price for diagnostics
  std::optional<std::vector<int>> binding;   // I_B; all constraints if absent
  PackingOptions packing;
};

struct TrialResult {
  double online_revenue = 0.0;
  double offline_optimum = 0.0;
  double regret = 0.0;
  ConstraintLedger ledger{Vector{}};
  std::vector<std::optional<Vector>> prices;
  std::vector<Order> orders;
  int tau_abar = 0;
  Vector binding_leftover;
  double price_error_sum = std::numeric_limits<double>::quiet_NaN();
  PolicyDiagnostics diagnostics;
};

TrialResult run_trial(const InputModel& model, const PolicyFactory& factory, int n,
                      const Vector& d, std::uint64_t seed, const TrialOptions& options = {});

// Runs fn(k) for k in [0, count) on up to `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

RegretReport estimate_regret(const InputModel& model, Algorithm algorithm,
                             const PolicyFactory& factory, int n, const Vector& d,
                             int trials, std::uint64_t base_seed,
                             const TrialOptions& options = {}, int threads = 1);

struct DualConvergenceRow {
  int n = 0;
  int trials = 0;
  double mean_sq_error = 0.0;
  double stderr_sq_error = 0.0;
  int degenerate_draws = 0;  // draws with more than m orders on the price kink
};

struct DualConvergenceTable {
  std::vector<DualConvergenceRow> rows;
  std::vector<std::string> warnings;
};

DualConvergenceTable dual_convergence_experiment(const InputModel& model, const Vector& d,
                                                 const DualPrice& pstar,
                                                 const std::vector<int>& n_grid, int trials,
                                                 std::uint64_t base_seed, int threads = 1);

// b_{i,t} for t = 0..n of constraint i, one series per trial.
std::vector<Vector> trajectory_export(const InputModel& model, const PolicyFactory& factory,
                                      int n, const Vector& d, int trials,
                                      std::uint64_t base_seed, int constraint,
                                      int threads = 1);

void write_trajectory_csv(std::ostream& out, const std::vector<Vector>& series);
std::vector<Vector> read_trajectory_csv(std::istream& in);

struct MonteCarloEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
};

// g(p*) - g(p) with g(p) = E[r I(r > a'p) + (d - a I(r > a'p))'p*], estimated
// on common samples.
MonteCarloEstimate lagrangian_gap(const InputModel& model, const Vector& d,
                                  const DualPrice& pstar, const DualPrice& p, long samples,
                                  std::uint64_t seed);

// Ordinary least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// p* for a model: analytic when available, otherwise the sample-average
// oracle, cached under `cache_dir` (empty disables the cache).
DualPrice reference_pstar(const InputModel& model, const Vector& d, long samples,
                          std::uint64_t seed, const std::string& cache_dir);

}  // namespace olp

#endif  // OLP_BENCH_HPP_
