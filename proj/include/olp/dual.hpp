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

// The sampled dual
//
//   f_t(p) = d'p + (1/t) sum_{j<=t} (r_j - a_j'p)^+,   p >= 0,
//
// its exact and warm-started minimizers, the sample-average oracle for the
// population minimizer p*, and the second-order (Knight-type) identity that
// links f_t(p) - f_t(p*) to subgradients.

#ifndef OLP_DUAL_HPP_
#define OLP_DUAL_HPP_

#include <cstdint>
#include <optional>
#include <span>

#include "olp/core.hpp"
#include "olp/inputs.hpp"
#include "olp/simplex.hpp"

namespace olp {

// A view over the first t orders plus an effective per-period capacity
// (d for the fixed-capacity learner, b_t / (n - t) for the resolving one).
class SampledDualProblem {
 public:
  SampledDualProblem(std::span<const Order> orders, Vector d_eff);

  std::span<const Order> orders() const { return orders_; }
  const Vector& d_eff() const { return d_eff_; }
  int t() const { return static_cast<int>(orders_.size()); }
  int m() const { return static_cast<int>(d_eff_.size()); }
  // Right-hand side t * d_eff of the equivalent primal LP.
  Vector primal_rhs() const;
  double max_abs_reward() const;

 private:
  std::span<const Order> orders_;
  Vector d_eff_;
};

double f_value(const SampledDualProblem& problem, std::span<const double> p);
inline double f_value(const SampledDualProblem& problem, const DualPrice& p) {
  return f_value(problem, p.p);
}

// d_eff - (1/t) sum_j a_j I(r_j > a_j'p).
Vector subgradient(const SampledDualProblem& problem, std::span<const double> p);

// Global minimizer through the epigraph LP (solved as its primal dual), with
// the minimal-sum tie-break on the optimal face.
DualPrice solve_sampled_dual_exact(const SampledDualProblem& problem,
                                   const PackingOptions& options = {});

struct WarmOptions {
  // Projected-subgradient iterations spent when the start cannot be
  // certified directly.
  int budget = 40;
  // Suboptimality target; NaN means 1e-6 * (1 + max_j |r_j|).
  double eps_sub = std::numeric_limits<double>::quiet_NaN();
  // Projection box [0, p_max]^m.
  double p_max = 1e4;
  // Active-set window limits, as multiples of (m + 1) and of t.
  int initial_window_per_dim = 8;
  double max_window_fraction = 0.5;
  PackingOptions packing;
};

struct WarmResult {
  DualPrice price;
  bool converged = false;  // false: budget exhausted, price is the best iterate
  int subgradient_iterations = 0;
  int window = 0;
  double value = 0.0;      // f at `price`
};

// Warm-started minimizer. The start is first polished by an active-set solve
// restricted to orders near its price kink; if that cannot be certified
// within the window limit, `budget` projected-subgradient steps (step
// (1 + |start|) / sqrt(k), best iterate kept) move the point and the polish is
// retried once. A certified polish is tie-broken like the exact path.
WarmResult solve_sampled_dual_warm(const SampledDualProblem& problem,
                                   const DualPrice& start,
                                   const WarmOptions& options = {});

double default_eps_sub(const SampledDualProblem& problem);

// Minimizer of the sample average over `samples` i.i.d. draws.
DualPrice estimate_pstar(const InputModel& model, const Vector& d,
                         long samples, std::uint64_t seed);

// Closed-form p* where one exists: the (1 - d)-quantile of the reward for the
// multi-secretary model.
std::optional<DualPrice> analytic_pstar(const InputModel& model, const Vector& d);

// Constraint i is binding when d_i - E[a_i I(r > a'p*)] <= se_multiplier
// standard errors of the Monte Carlo estimate.
BindingClassification classify_binding(const InputModel& model, const Vector& d,
                                       const DualPrice& pstar, long samples,
                                       std::uint64_t seed,
                                       double se_multiplier = 3.0);

struct TaylorTerms {
  double lhs = 0.0;           // f(p) - f(p*)
  double first_order = 0.0;
  double second_order = 0.0;
  double residual() const;
};

TaylorTerms taylor_terms(const SampledDualProblem& problem, std::span<const double> p,
                         std::span<const double> pstar);

// |f(p) - f(p*) - first order - second order|, second-order integral in
// closed form.
double taylor_identity_residual(const SampledDualProblem& problem,
                                const DualPrice& p, const DualPrice& pstar);

}  // namespace olp

#endif  // OLP_DUAL_HPP_
