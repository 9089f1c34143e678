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

// Domain types shared by every module: orders, capacities, dual prices and
// the remaining-capacity ledger of a single online run.

#ifndef OLP_CORE_HPP_
#define OLP_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace olp {

using Vector = std::vector<double>;

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Thrown when input data violates a documented precondition (dimension
// mismatch, nonpositive capacity, malformed file, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a solver cannot certify its answer to the stated tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One revealed column of the online LP: a reward and a constraint column.
struct Order {
  double reward = 0.0;
  Vector column;

  std::size_t dim() const { return column.size(); }
};

// Declared bounds of an input model. Models such as Random Input II violate
// boundedness; they leave `declared` false and every check keyed on the
// bounds is skipped.
struct ModelBounds {
  double r_bar = 0.0;    // |r| <= r_bar
  double a_bar = 0.0;    // ||a||_2 <= a_bar
  double d_lower = 0.0;  // d_lower < d_i
  double d_upper = 0.0;  // d_i < d_upper
  bool declared = false;

  static ModelBounds undeclared() { return {}; }
  static ModelBounds make(double r_bar, double a_bar, double d_lower,
                          double d_upper);

  // Radius of the dual search box; `fallback` when bounds are undeclared.
  double price_box(double fallback) const;
};

// Right-hand side of the offline LP: b = n * d.
class CapacitySpec {
 public:
  // Builds b = n * d. Throws InvalidInput when n <= m, any d_i <= 0, or the
  // declared bounds do not bracket d.
  CapacitySpec(int n, Vector d, ModelBounds bounds);

  int n() const { return n_; }
  int m() const { return static_cast<int>(d_.size()); }
  const Vector& b() const { return b_; }
  const Vector& d() const { return d_; }
  const ModelBounds& bounds() const { return bounds_; }

 private:
  int n_;
  Vector d_;
  Vector b_;
  ModelBounds bounds_;
};

enum class PriceProvenance { kExactLp, kSubgradient, kSaaOracle, kAnalytic };

std::string_view to_string(PriceProvenance provenance);

struct DualPrice {
  Vector p;
  PriceProvenance provenance = PriceProvenance::kExactLp;

  std::size_t dim() const { return p.size(); }
  bool nonnegative() const;
  double sum() const;
  // Membership in {p >= 0, sum p <= r_bar / d_lower}. Always true when the
  // bounds are undeclared.
  bool in_search_region(const ModelBounds& bounds) const;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

enum class StepReason { kPriceAccept, kPriceReject, kCapacityReject };

// Remaining-capacity process of one online run. b_t(0) is the initial
// capacity and b_t(t) the capacity after period t. Only `record` mutates it,
// and it refuses any step that would leave a negative component.
class ConstraintLedger {
 public:
  explicit ConstraintLedger(Vector initial);

  int m() const { return static_cast<int>(initial_.size()); }
  int periods() const { return static_cast<int>(decisions_.size()); }
  const Vector& remaining() const { return history_.back(); }
  const Vector& remaining_at(int t) const { return history_.at(t); }
  const std::vector<Vector>& trajectory() const { return history_; }
  const std::vector<std::uint8_t>& decisions() const { return decisions_; }
  const std::vector<StepReason>& reasons() const { return reasons_; }

  // True when subtracting `column` keeps every component >= 0.
  bool admits(std::span<const double> column) const;

  // Appends period t = periods() + 1. `accept` is the price decision; the
  // capacity gate may overrule it. Returns the final {0,1} decision.
  bool record(const Order& order, bool accept);

 private:
  Vector initial_;
  std::vector<Vector> history_;
  std::vector<std::uint8_t> decisions_;
  std::vector<StepReason> reasons_;
};

// First t >= 1 with min_i b_{it} < s, or n when no such t exists.
int stopping_time(const ConstraintLedger& ledger, double s);

struct BindingClassification {
  std::vector<int> binding;
  std::vector<int> nonbinding;
  Vector expected_consumption;
  Vector consumption_stderr;
};

struct RegretReport {
  std::string model;
  std::string algorithm;
  int n = 0;
  int m = 0;
  int trials = 0;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
  double mean_binding_leftover = 0.0;
  double mean_stop_gap = 0.0;
  // NaN when no reference price was available.
  double mean_price_error = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace olp

#endif  // OLP_CORE_HPP_
