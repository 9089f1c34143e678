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

#include "olp/policies.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace olp {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kStatic:
      return "A1";
    case Algorithm::kDynamic:
      return "A2";
    case Algorithm::kActionHistory:
      return "A3";
  }
  return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "A1" || name == "static") return Algorithm::kStatic;
  if (name == "A2" || name == "dynamic") return Algorithm::kDynamic;
  if (name == "A3" || name == "ahd") return Algorithm::kActionHistory;
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

LearningSchedule dynamic_schedule(int n) {
  if (n < 1) throw InvalidInput("schedule needs n >= 1");
  LearningSchedule s;
  s.levels = n == 1 ? 1 : static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  s.delta = std::pow(static_cast<double>(n), 1.0 / s.levels);
  s.final_time = n + 1;
  for (int k = 1; k < s.levels; ++k) {
    // The nudge keeps exact powers (8^(2/3) = 4) from flooring one short.
    const double power = std::pow(static_cast<double>(n), static_cast<double>(k) / s.levels);
    const int t = static_cast<int>(std::floor(power + 1e-9));
    if (s.updates.empty() || t > s.updates.back()) s.updates.push_back(t);
  }
  return s;
}

namespace {

class StaticPolicy final : public Policy {
 public:
  explicit StaticPolicy(DualPrice pstar) : price_(std::move(pstar)) {
    if (!price_->nonnegative()) throw InvalidInput("static price must be nonnegative");
  }
  Algorithm algorithm() const override { return Algorithm::kStatic; }
  const std::optional<DualPrice>& price() const override { return price_; }
  void learn(std::span<const Order>, const ConstraintLedger&) override {}

 private:
  std::optional<DualPrice> price_;
};

class DynamicPolicy final : public Policy {
 public:
  DynamicPolicy(Vector d, int n, PolicyOptions options)
      : d_(std::move(d)), schedule_(dynamic_schedule(n)), options_(std::move(options)) {
    for (double v : d_) {
      if (!(v > 0.0)) throw InvalidInput("dynamic policy needs d > 0");
    }
  }
  Algorithm algorithm() const override { return Algorithm::kDynamic; }
  const std::optional<DualPrice>& price() const override { return price_; }

  void learn(std::span<const Order> history, const ConstraintLedger&) override {
    const int t = static_cast<int>(history.size());
    if (cursor_ < schedule_.updates.size() && schedule_.updates[cursor_] == t) {
      price_ = solve_sampled_dual_exact(SampledDualProblem(history, d_), options_.packing);
      ++cursor_;
      ++diagnostics_.price_updates;
    }
  }
  PolicyDiagnostics diagnostics() const override { return diagnostics_; }

 private:
  Vector d_;
  LearningSchedule schedule_;
  PolicyOptions options_;
  std::size_t cursor_ = 0;
  std::optional<DualPrice> price_;
  PolicyDiagnostics diagnostics_;
};

class ActionHistoryPolicy final : public Policy {
 public:
  ActionHistoryPolicy(Vector d, int n, PolicyOptions options)
      : n_(n), options_(std::move(options)) {
    for (double v : d) {
      if (!(v > 0.0)) throw InvalidInput("action-history policy needs d > 0");
    }
    if (n_ < 1) throw InvalidInput("action-history policy needs a known horizon n >= 1");
    price_ = DualPrice{Vector(d.size(), 0.0), PriceProvenance::kExactLp};
  }
  Algorithm algorithm() const override { return Algorithm::kActionHistory; }
  const std::optional<DualPrice>& price() const override { return price_; }

  void learn(std::span<const Order> history, const ConstraintLedger& ledger) override {
    const int t = static_cast<int>(history.size());
    if (t > n_) throw std::logic_error("action-history policy ran past its declared horizon");
    if (t == n_) return;
    Vector d_eff = ledger.remaining();
    for (double& v : d_eff) v /= static_cast<double>(n_ - t);
    const SampledDualProblem problem(history, std::move(d_eff));
    WarmResult warm = solve_sampled_dual_warm(problem, *price_, options_.warm);
    ++diagnostics_.resolves;
    diagnostics_.subgradient_iterations += warm.subgradient_iterations;
    if (warm.converged) {
      price_ = std::move(warm.price);
    } else {
      ++diagnostics_.exact_fallbacks;
      price_ = solve_sampled_dual_exact(problem, options_.packing);
    }
    ++diagnostics_.price_updates;
  }
  PolicyDiagnostics diagnostics() const override { return diagnostics_; }

 private:
  int n_;
  PolicyOptions options_;
  std::optional<DualPrice> price_;
  PolicyDiagnostics diagnostics_;
};

}  // namespace

std::unique_ptr<Policy> make_static_policy(DualPrice pstar) {
  return std::make_unique<StaticPolicy>(std::move(pstar));
}

std::unique_ptr<Policy> make_dynamic_policy(Vector d, int n, PolicyOptions options) {
  return std::make_unique<DynamicPolicy>(std::move(d), n, std::move(options));
}

std::unique_ptr<Policy> make_ahd_policy(Vector d, int n, PolicyOptions options) {
  return std::make_unique<ActionHistoryPolicy>(std::move(d), n, std::move(options));
}

PolicyState::PolicyState(std::unique_ptr<Policy> policy, const CapacitySpec& capacity)
    : policy_(std::move(policy)), ledger_(capacity.b()), horizon_(capacity.n()) {
  if (!policy_) throw InvalidInput("policy state needs a policy");
  history_.reserve(capacity.n());
  prices_.reserve(capacity.n());
}

bool PolicyState::step(const Order& order) {
  const std::optional<DualPrice>& price = policy_->price();
  bool accept = false;
  if (price) {
    if (price->dim() != order.dim()) throw InvalidInput("price and order dimensions differ");
    accept = order.reward > dot(order.column, price->p);
    prices_.emplace_back(price->p);
  } else {
    prices_.emplace_back(std::nullopt);
  }
  const bool taken = ledger_.record(order, accept);
  history_.push_back(order);
  policy_->learn(history_, ledger_);
  return taken;
}

bool policy_step(PolicyState& state, const Order& order) { return state.step(order); }

}  // namespace olp
