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

// Dual-price policies. A policy exposes the price for the upcoming period
// before the order is revealed, so p_t can only depend on the history
// H_{t-1}; the shared step accepts iff r_t > a_t'p_t and the capacity gate
// admits the column.

#ifndef OLP_POLICIES_HPP_
#define OLP_POLICIES_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "olp/core.hpp"
#include "olp/dual.hpp"

namespace olp {

enum class Algorithm { kStatic, kDynamic, kActionHistory };

std::string_view to_string(Algorithm algorithm);  // "A1", "A2", "A3"
Algorithm algorithm_from_name(std::string_view name);

struct PolicyDiagnostics {
  int price_updates = 0;
  int resolves = 0;
  int exact_fallbacks = 0;
  long subgradient_iterations = 0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Algorithm algorithm() const = 0;
  // Threshold for the next period; nullopt forces a rejection.
  virtual const std::optional<DualPrice>& price() const = 0;
  // Learning hook, run after period t = history.size() is decided.
  virtual void learn(std::span<const Order> history, const ConstraintLedger& ledger) = 0;
  virtual PolicyDiagnostics diagnostics() const { return {}; }
};

// Geometric update times of the dynamic learner: L = ceil(log2 n),
// delta = n^(1/L), t_k = floor(delta^k) for k < L (deduplicated), t_L = n + 1.
struct LearningSchedule {
  int levels = 0;
  double delta = 0.0;
  std::vector<int> updates;
  int final_time = 0;
};

LearningSchedule dynamic_schedule(int n);

struct PolicyOptions {
  WarmOptions warm;
  PackingOptions packing;
  // Projection box when the model declares no bounds.
  double p_max_cap = 1e4;
};

// Algorithm 1: fixed price p*.
std::unique_ptr<Policy> make_static_policy(DualPrice pstar);
// Algorithm 2: rejects through t_1, then prices from the first t_k orders at
// each schedule point with capacity d.
std::unique_ptr<Policy> make_dynamic_policy(Vector d, int n, PolicyOptions options = {});
// Algorithm 3: p_1 = 0, then resolves every period with capacity
// b_t / (n - t), warm-started at p_t with exact fallback.
std::unique_ptr<Policy> make_ahd_policy(Vector d, int n, PolicyOptions options = {});

// History, ledger and per-period prices of one online run.
class PolicyState {
 public:
  PolicyState(std::unique_ptr<Policy> policy, const CapacitySpec& capacity);

  const Policy& policy() const { return *policy_; }
  const ConstraintLedger& ledger() const { return ledger_; }
  const std::vector<Order>& history() const { return history_; }
  // Price used in each decided period (nullopt for forced rejections).
  const std::vector<std::optional<Vector>>& prices() const { return prices_; }
  int horizon() const { return horizon_; }

  bool step(const Order& order);

 private:
  std::unique_ptr<Policy> policy_;
  ConstraintLedger ledger_;
  std::vector<Order> history_;
  std::vector<std::optional<Vector>> prices_;
  int horizon_;
};

// Decides one period and runs the learning hook. Returns x_t.
bool policy_step(PolicyState& state, const Order& order);

}  // namespace olp

#endif  // OLP_POLICIES_HPP_
