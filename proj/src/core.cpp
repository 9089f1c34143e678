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

#include "olp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace olp {

ModelBounds ModelBounds::make(double r_bar, double a_bar, double d_lower,
                              double d_upper) {
  if (!(r_bar >= 0.0) || !(a_bar >= 0.0) || !(d_lower > 0.0) ||
      !(d_lower < d_upper)) {
    throw InvalidInput("model bounds need r_bar, a_bar >= 0 and 0 < d_lower < d_upper");
  }
  return {r_bar, a_bar, d_lower, d_upper, true};
}

double ModelBounds::price_box(double fallback) const {
  return declared ? r_bar / d_lower : fallback;
}

CapacitySpec::CapacitySpec(int n, Vector d, ModelBounds bounds)
    : n_(n), d_(std::move(d)), bounds_(bounds) {
  if (d_.empty()) throw InvalidInput("capacity needs at least one constraint");
  if (n_ <= m()) {
    throw InvalidInput("horizon n must exceed the number of constraints m");
  }
  b_.resize(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (!(d_[i] > 0.0) || !std::isfinite(d_[i])) {
      throw InvalidInput("per-period capacity d_i must be positive and finite");
    }
    if (bounds_.declared &&
        !(bounds_.d_lower < d_[i] && d_[i] < bounds_.d_upper)) {
      throw InvalidInput("per-period capacity outside the declared bounds");
    }
    b_[i] = static_cast<double>(n_) * d_[i];
  }
}

std::string_view to_string(PriceProvenance provenance) {
  switch (provenance) {
    case PriceProvenance::kExactLp:
      return "exact_lp";
    case PriceProvenance::kSubgradient:
      return "subgradient";
    case PriceProvenance::kSaaOracle:
      return "saa_oracle";
    case PriceProvenance::kAnalytic:
      return "analytic";
  }
  return "unknown";
}

bool DualPrice::nonnegative() const {
  return std::all_of(p.begin(), p.end(), [](double v) { return v >= 0.0; });
}

double DualPrice::sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }

bool DualPrice::in_search_region(const ModelBounds& bounds) const {
  if (!nonnegative()) return false;
  if (!bounds.declared) return true;
  return sum() <= bounds.r_bar / bounds.d_lower + kFeasibilityTol;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

ConstraintLedger::ConstraintLedger(Vector initial)
    : initial_(std::move(initial)) {
  for (double v : initial_) {
    if (!(v >= 0.0)) throw InvalidInput("initial capacity must be nonnegative");
  }
  history_.push_back(initial_);
}

bool ConstraintLedger::admits(std::span<const double> column) const {
  const Vector& b = remaining();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] - column[i] < 0.0) return false;
  }
  return true;
}

bool ConstraintLedger::record(const Order& order, bool accept) {
  if (order.dim() != initial_.size()) {
    throw InvalidInput("order column length does not match the ledger");
  }
  Vector next = remaining();
  StepReason reason = StepReason::kPriceReject;
  bool taken = false;
  if (accept) {
    if (admits(order.column)) {
      for (std::size_t i = 0; i < next.size(); ++i) next[i] -= order.column[i];
      reason = StepReason::kPriceAccept;
      taken = true;
    } else {
      reason = StepReason::kCapacityReject;
    }
  }
  history_.push_back(std::move(next));
  decisions_.push_back(taken ? 1 : 0);
  reasons_.push_back(reason);
  return taken;
}

int stopping_time(const ConstraintLedger& ledger, double s) {
  const int n = ledger.periods();
  for (int t = 1; t <= n; ++t) {
    const Vector& b = ledger.remaining_at(t);
    if (*std::min_element(b.begin(), b.end()) < s) return t;
  }
  return n;
}

}  // namespace olp
