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

#include <doctest.h>

#include <algorithm>

#include "olp/core.hpp"
#include "olp/inputs.hpp"
#include "olp/policies.hpp"
#include "olp/rng.hpp"
#include "test_util.hpp"

namespace olp {
namespace {

TEST_SUITE("core") {

TEST_CASE("capacity spec computes b = n d and checks its preconditions") {
  const CapacitySpec cap(8, {0.25, 0.5}, ModelBounds::undeclared());
  CHECK(cap.b() == Vector{2.0, 4.0});
  CHECK(cap.m() == 2);
  CHECK_THROWS_AS(CapacitySpec(2, {0.5, 0.5}, ModelBounds::undeclared()), InvalidInput);
  CHECK_THROWS_AS(CapacitySpec(10, {0.0}, ModelBounds::undeclared()), InvalidInput);
  CHECK_THROWS_AS(CapacitySpec(10, {-1.0}, ModelBounds::undeclared()), InvalidInput);
  const ModelBounds bounds = ModelBounds::make(1.0, 1.0, 0.1, 0.5);
  CHECK_NOTHROW(CapacitySpec(10, {0.25}, bounds));
  CHECK_THROWS_AS(CapacitySpec(10, {0.6}, bounds), InvalidInput);
  CHECK_THROWS_AS(CapacitySpec(10, {0.05}, bounds), InvalidInput);
}

TEST_CASE("dual price region and provenance") {
  const ModelBounds bounds = ModelBounds::make(2.0, 1.0, 0.5, 1.0);
  CHECK(DualPrice{{1.0, 3.0}}.in_search_region(bounds));
  CHECK_FALSE(DualPrice{{2.0, 2.5}}.in_search_region(bounds));
  CHECK(DualPrice{{100.0}}.in_search_region(ModelBounds::undeclared()));
  CHECK_FALSE(DualPrice{{-1e-3}}.nonnegative());
  CHECK(bounds.price_box(7.0) == doctest::Approx(4.0));
  CHECK(ModelBounds::undeclared().price_box(7.0) == 7.0);
  CHECK(to_string(PriceProvenance::kSaaOracle) != to_string(PriceProvenance::kExactLp));
}

TEST_CASE("ledger gate refuses violating orders") {
  ConstraintLedger ledger({0.5});
  CHECK_FALSE(ledger.record({10.0, {1.0}}, true));
  CHECK(ledger.reasons().back() == StepReason::kCapacityReject);
  CHECK(ledger.remaining() == Vector{0.5});
  CHECK(ledger.record({1.0, {-0.5}}, true));
  CHECK(ledger.remaining() == Vector{1.0});
  CHECK(ledger.record({1.0, {1.0}}, true));
  CHECK(ledger.remaining() == Vector{0.0});
  CHECK_FALSE(ledger.record({1.0, {0.0}}, false));
  CHECK(ledger.reasons().back() == StepReason::kPriceReject);
  CHECK(ledger.periods() == 4);
  CHECK_THROWS_AS(ledger.record({1.0, {1.0, 1.0}}, true), InvalidInput);
}

TEST_CASE("stopping time never crossing returns n") {
  ConstraintLedger ledger({5.0, 5.0});
  for (int t = 0; t < 10; ++t) ledger.record({1.0, {1.0, 1.0}}, false);
  CHECK(stopping_time(ledger, 1.0) == 10);
}

TEST_CASE("stopping time first crossing") {
  ConstraintLedger ledger({3.0});
  ledger.record({1.0, {1.0}}, true);
  ledger.record({1.0, {1.5}}, true);
  ledger.record({1.0, {0.2}}, false);
  REQUIRE(ledger.remaining_at(1) == Vector{2.0});
  REQUIRE(ledger.remaining_at(2) == Vector{0.5});
  REQUIRE(ledger.remaining_at(3) == Vector{0.5});
  CHECK(stopping_time(ledger, 1.0) == 2);
}

int scan_stopping_time(const ConstraintLedger& ledger, double s) {
  for (int t = 1; t <= ledger.periods(); ++t) {
    const Vector& b = ledger.remaining_at(t);
    if (*std::min_element(b.begin(), b.end()) < s) return t;
  }
  return ledger.periods();
}

TEST_CASE("multi-secretary run: stopping time agrees with a linear scan") {
  const InputModel model = multi_secretary();
  const Instance inst = generate_instance(model, 400, {0.25}, 99);
  PolicyState state(make_static_policy({{0.6}, PriceProvenance::kAnalytic}), inst.capacity);
  for (const Order& o : inst.orders) policy_step(state, o);
  const int tau = stopping_time(state.ledger(), 1.0);
  CHECK(tau == scan_stopping_time(state.ledger(), 1.0));
  CHECK(tau < 400);
}

TEST_CASE("property: stopping time is non-increasing in s and ledgers reconstruct exactly") {
  RandomStream rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(3));
    const int n = 30;
    Vector b0(m);
    for (double& v : b0) v = rng.uniform(1.0, 6.0);
    ConstraintLedger ledger(b0);
    std::vector<Order> orders = testing::random_orders(rng, n, m, 0.0, 1.0, -0.5, 1.0);
    for (const Order& o : orders) ledger.record(o, rng.uniform() < 0.7);

    double prev_s = 0.0;
    int prev_tau = stopping_time(ledger, 1e-6);
    for (int k = 0; k < 20; ++k) {
      const double s = prev_s + rng.uniform(0.0, 0.5);
      const int tau = stopping_time(ledger, s);
      CHECK(tau <= prev_tau);
      prev_s = s;
      prev_tau = tau;
    }

    Vector b = b0;
    for (int t = 0; t < n; ++t) {
      if (ledger.decisions()[t]) {
        for (int i = 0; i < m; ++i) b[i] -= orders[t].column[i];
      }
      CHECK(b == ledger.remaining_at(t + 1));
      for (double v : b) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("vector helpers") {
  const Vector a{3.0, 4.0};
  const Vector b{0.0, 1.0};
  CHECK(dot(a, b) == 4.0);
  CHECK(norm2(a) == 5.0);
  CHECK(squared_distance(a, b) == 18.0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace olp
