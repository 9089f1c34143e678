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

#include "olp/dual.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace olp {

SampledDualProblem::SampledDualProblem(std::span<const Order> orders, Vector d_eff)
    : orders_(orders), d_eff_(std::move(d_eff)) {
  if (orders_.empty()) throw InvalidInput("sampled dual needs at least one order");
  for (double v : d_eff_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidInput("effective capacity must be finite and >= 0");
    }
  }
  for (const Order& o : orders_) {
    if (o.dim() != d_eff_.size()) {
      throw InvalidInput("order column length does not match the capacity vector");
    }
  }
}

Vector SampledDualProblem::primal_rhs() const {
  Vector rhs(d_eff_);
  for (double& v : rhs) v *= t();
  return rhs;
}

double SampledDualProblem::max_abs_reward() const {
  double r = 0.0;
  for (const Order& o : orders_) r = std::max(r, std::abs(o.reward));
  return r;
}

namespace {

void check_price(const SampledDualProblem& problem, std::span<const double> p) {
  if (static_cast<int>(p.size()) != problem.m()) {
    throw InvalidInput("price dimension does not match the problem");
  }
}

Vector clamp_to_box(std::span<const double> p, double p_max) {
  Vector out(p.begin(), p.end());
  for (double& v : out) v = std::clamp(v, 0.0, p_max);
  return out;
}

}  // namespace

double f_value(const SampledDualProblem& problem, std::span<const double> p) {
  check_price(problem, p);
  double hinge = 0.0;
  for (const Order& o : problem.orders()) hinge += std::max(0.0, o.reward - dot(o.column, p));
  return dot(problem.d_eff(), p) + hinge / problem.t();
}

Vector subgradient(const SampledDualProblem& problem, std::span<const double> p) {
  check_price(problem, p);
  const int m = problem.m();
  Vector consumed(m, 0.0);
  for (const Order& o : problem.orders()) {
    if (o.reward > dot(o.column, p)) {
      for (int i = 0; i < m; ++i) consumed[i] += o.column[i];
    }
  }
  Vector g(problem.d_eff());
  for (int i = 0; i < m; ++i) g[i] -= consumed[i] / problem.t();
  return g;
}

DualPrice solve_sampled_dual_exact(const SampledDualProblem& problem,
                                   const PackingOptions& options) {
  LpSolution solution = solve_packing_lp(problem.orders(), problem.primal_rhs(), options);
  return {std::move(solution.dual_price.p), PriceProvenance::kExactLp};
}

double default_eps_sub(const SampledDualProblem& problem) {
  return 1e-6 * (1.0 + problem.max_abs_reward());
}

WarmResult solve_sampled_dual_warm(const SampledDualProblem& problem,
                                   const DualPrice& start,
                                   const WarmOptions& options) {
  check_price(problem, start.p);
  if (!start.nonnegative()) throw InvalidInput("warm start must be nonnegative");
  const int m = problem.m();
  const int t = problem.t();
  const Vector rhs = problem.primal_rhs();
  const int first_window = std::min(t, options.initial_window_per_dim * (m + 1));
  const int max_window =
      std::max(first_window, static_cast<int>(options.max_window_fraction * t));

  WarmResult result;
  auto polish = [&](std::span<const double> from) {
    PackingVertex vertex;
    if (!refine_packing_vertex(problem.orders(), rhs, from, first_window, max_window,
                               options.packing, vertex)) {
      return false;
    }
    Vector price = options.packing.tie_break
                       ? minimal_sum_price(problem.orders(), rhs, vertex, options.packing)
                       : std::move(vertex.price);
    result.price = {std::move(price), PriceProvenance::kSubgradient};
    result.window = vertex.window;
    result.value = f_value(problem, result.price.p);
    result.converged = true;
    return true;
  };

  Vector best = clamp_to_box(start.p, options.p_max);
  if (polish(best)) return result;

  double best_value = f_value(problem, best);
  const double step_scale = 1.0 + norm2(start.p);
  Vector p = best;
  for (int k = 1; k <= options.budget; ++k) {
    result.subgradient_iterations = k;
    const Vector g = subgradient(problem, p);
    const double g_norm = norm2(g);
    if (g_norm == 0.0) break;
    const double step = step_scale / std::sqrt(static_cast<double>(k)) / g_norm;
    for (int i = 0; i < m; ++i) p[i] = std::clamp(p[i] - step * g[i], 0.0, options.p_max);
    const double value = f_value(problem, p);
    if (value < best_value) {
      best_value = value;
      best = p;
    }
  }
  if (polish(best)) return result;

  result.price = {std::move(best), PriceProvenance::kSubgradient};
  result.value = best_value;
  result.converged = false;
  return result;
}

DualPrice estimate_pstar(const InputModel& model, const Vector& d, long samples,
                         std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("SAA needs at least one sample");
  validate(model);
  std::vector<Order> orders;
  orders.reserve(static_cast<std::size_t>(samples));
  for (long j = 0; j < samples; ++j) orders.push_back(model.draw(seed, j));
  DualPrice p = solve_sampled_dual_exact(SampledDualProblem(orders, d));
  p.provenance = PriceProvenance::kSaaOracle;
  return p;
}

std::optional<DualPrice> analytic_pstar(const InputModel& model, const Vector& d) {
  if (model.kind != ModelKind::kMultiSecretary || d.size() != 1) return std::nullopt;
  const double capacity = d[0];
  double q = 0.0;
  if (capacity < 1.0) q = model.reward_lo + (1.0 - capacity) * (model.reward_hi - model.reward_lo);
  return DualPrice{{q}, PriceProvenance::kAnalytic};
}

BindingClassification classify_binding(const InputModel& model, const Vector& d,
                                       const DualPrice& pstar, long samples,
                                       std::uint64_t seed, double se_multiplier) {
  if (!pstar.nonnegative()) throw InvalidInput("p* must be nonnegative");
  if (samples < 2) throw InvalidInput("binding classification needs >= 2 samples");
  const int m = static_cast<int>(d.size());
  Vector sum(m, 0.0);
  Vector sum_sq(m, 0.0);
  for (long j = 0; j < samples; ++j) {
    const Order o = model.draw(seed, j);
    if (o.reward > dot(o.column, pstar.p)) {
      for (int i = 0; i < m; ++i) {
        sum[i] += o.column[i];
        sum_sq[i] += o.column[i] * o.column[i];
      }
    }
  }
  BindingClassification out;
  out.expected_consumption.resize(m);
  out.consumption_stderr.resize(m);
  const double s = static_cast<double>(samples);
  for (int i = 0; i < m; ++i) {
    const double mean = sum[i] / s;
    const double var = std::max(0.0, (sum_sq[i] - s * mean * mean) / (s - 1.0));
    out.expected_consumption[i] = mean;
    out.consumption_stderr[i] = std::sqrt(var / s);
    if (d[i] - mean <= se_multiplier * out.consumption_stderr[i]) {
      out.binding.push_back(i);
    } else {
      out.nonbinding.push_back(i);
    }
  }
  return out;
}

double TaylorTerms::residual() const {
  return std::abs(lhs - first_order - second_order);
}

TaylorTerms taylor_terms(const SampledDualProblem& problem, std::span<const double> p,
                         std::span<const double> pstar) {
  check_price(problem, p);
  check_price(problem, pstar);
  const int m = problem.m();
  Vector diff(m);
  for (int i = 0; i < m; ++i) diff[i] = p[i] - pstar[i];

  TaylorTerms terms;
  terms.lhs = f_value(problem, p) - f_value(problem, pstar);
  double first = 0.0;
  double second = 0.0;
  for (const Order& o : problem.orders()) {
    const double s = dot(o.column, p);
    const double s_star = dot(o.column, pstar);
    const bool on = o.reward > s_star;
    // phi(p*, u)'(p - p*) = d'(p - p*) - I(r > a'p*) a'(p - p*)
    first += dot(problem.d_eff(), diff) - (on ? s - s_star : 0.0);
    // int_s^{s*} I(r > v) dv = min(r, s*) - min(r, s)
    second += std::min(o.reward, s_star) - std::min(o.reward, s) - (on ? s_star - s : 0.0);
  }
  terms.first_order = first / problem.t();
  terms.second_order = second / problem.t();
  return terms;
}

double taylor_identity_residual(const SampledDualProblem& problem, const DualPrice& p,
                                const DualPrice& pstar) {
  return taylor_terms(problem, p.p, pstar.p).residual();
}

}  // namespace olp
