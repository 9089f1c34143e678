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

#include "olp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "olp/bench.hpp"
#include "olp/dual.hpp"
#include "olp/oracle.hpp"
#include "olp/policies.hpp"
#include "olp/rng.hpp"
#include "olp/simplex.hpp"

namespace olp {

Instance random_mixed_instance(std::uint64_t seed, int max_n, int max_m) {
  RandomStream rng(seed);
  const int m = 1 + static_cast<int>(rng.below(max_m));
  const int n = m + 1 + static_cast<int>(rng.below(max_n - m));
  Vector d(m);
  for (double& v : d) v = rng.uniform(0.1, 0.5);
  std::vector<Order> orders(n);
  for (Order& o : orders) {
    o.reward = rng.uniform(-0.5, 1.0);
    o.column.resize(m);
    for (double& a : o.column) a = rng.uniform(-0.5, 1.0);
  }
  return {std::move(orders), CapacitySpec(n, std::move(d), ModelBounds::undeclared())};
}

double relative_duality_gap(const Instance& instance, const Vector& price, double objective) {
  const double dual = packing_dual_objective(instance.orders, instance.capacity.b(), price);
  return std::abs(objective - dual) / (1.0 + std::abs(objective));
}

namespace {

void tally(CheckResult& check, double violation, double tol) {
  check.worst = std::max(check.worst, violation);
  if (violation <= tol) {
    ++check.passed;
  } else {
    ++check.failed;
  }
}

Vector random_price(RandomStream& rng, int m, double hi) {
  Vector p(m);
  for (double& v : p) v = rng.uniform(0.0, hi);
  return p;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, int cases, double eps_sub) {
  CheckResult gap{"duality_gap"}, primal{"primal_feasibility"}, slack{"complementary_slackness"},
      oracle{"oracle_equivalence"}, taylor{"taylor_identity"}, convex{"dual_convexity"},
      warm{"warm_path_accuracy"}, ledger{"ledger_feasibility"}, replay{"price_replay"};

  for (int k = 0; k < cases; ++k) {
    const std::uint64_t s = derive_seed(seed, k);
    const Instance inst = random_mixed_instance(s, 12, 3);
    const int m = inst.capacity.m();
    const LpSolution sol = solve_offline(inst.orders, inst.capacity);
    const Vector& p = sol.dual_price.p;

    tally(gap, relative_duality_gap(inst, p, sol.objective), 1e-8);

    double excess = 0.0;
    for (int i = 0; i < m; ++i) {
      double used = 0.0;
      for (std::size_t j = 0; j < inst.orders.size(); ++j) {
        used += inst.orders[j].column[i] * sol.x[j];
      }
      excess = std::max(excess, used - inst.capacity.b()[i]);
    }
    for (double x : sol.x) excess = std::max({excess, -x, x - 1.0});
    tally(primal, std::max(0.0, excess), 1e-9);

    double cs = 0.0;
    for (std::size_t j = 0; j < inst.orders.size(); ++j) {
      const double margin = inst.orders[j].reward - dot(inst.orders[j].column, p);
      if (margin > 1e-8) cs = std::max(cs, 1.0 - sol.x[j]);
      if (margin < -1e-8) cs = std::max(cs, sol.x[j]);
    }
    tally(slack, cs, 1e-8);

    const OracleResult brute = enumerate_dual_vertices(inst.orders, inst.capacity.b());
    tally(oracle, std::abs(brute.objective - sol.objective), 1e-8);

    RandomStream rng(derive_seed(s, 1));
    const SampledDualProblem problem(inst.orders, inst.capacity.d());
    const Vector a = random_price(rng, m, 2.0);
    const Vector b = random_price(rng, m, 2.0);
    tally(taylor, taylor_terms(problem, a, b).residual(), 1e-10);
    Vector mid(m);
    for (int i = 0; i < m; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    tally(convex,
          std::max(0.0, f_value(problem, mid) - 0.5 * (f_value(problem, a) + f_value(problem, b))),
          1e-12);

    const DualPrice exact = solve_sampled_dual_exact(problem);
    const WarmResult w = solve_sampled_dual_warm(problem, DualPrice{a, PriceProvenance::kExactLp});
    const double excess_value = w.value - f_value(problem, exact.p);
    // An unconverged warm solve is a flagged fallback, not a violation.
    tally(warm, w.converged ? std::max(0.0, excess_value) : 0.0,
          std::isnan(eps_sub) ? default_eps_sub(problem) : eps_sub);
  }

  // Online contract on short Algorithm 3 runs.
  const InputModel model = random_input_one(2);
  const int n = 60;
  for (int k = 0; k < std::max(1, cases / 20); ++k) {
    const Instance inst = generate_instance(model, n, model.default_capacity(), derive_seed(seed, 1000 + k));
    PolicyState state(make_ahd_policy(inst.capacity.d(), n), inst.capacity);
    for (const Order& o : inst.orders) policy_step(state, o);
    double negative = 0.0;
    for (const Vector& b : state.ledger().trajectory()) {
      for (double v : b) negative = std::max(negative, -v);
    }
    tally(ledger, negative, 0.0);

    // Recompute p_t from the stored prefix alone.
    double mismatch = 0.0;
    for (int t = 1; t < n; t += 7) {
      PolicyState again(make_ahd_policy(inst.capacity.d(), n), inst.capacity);
      for (int j = 0; j < t - 1; ++j) policy_step(again, inst.orders[j]);
      const auto& expect = state.prices()[t - 1];
      const auto& got = again.policy().price();
      if (expect.has_value() != got.has_value()) {
        mismatch = 1.0;
      } else if (expect) {
        mismatch = std::max(mismatch, squared_distance(*expect, got->p));
      }
    }
    tally(replay, mismatch, 0.0);
  }

  return {gap, primal, slack, oracle, taylor, convex, warm, ledger, replay};
}

}  // namespace olp
