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

// Exact solvers for the offline LP
//
//   max  sum_j r_j x_j   s.t.  sum_j a_j x_j <= b,  0 <= x_j <= 1
//
// and, through strong duality, for its dual prices. The workhorse is a dense
// bounded-variable primal simplex with Bland's rule; large instances are
// solved on a window of orders near the price kink and certified against the
// full instance through complementary slackness.

#ifndef OLP_SIMPLEX_HPP_
#define OLP_SIMPLEX_HPP_

#include <span>
#include <vector>

#include "olp/core.hpp"

namespace olp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexOptions {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  // Hard cap on basis changes; exceeding it raises NumericalFailure.
  long max_pivots = 1'000'000;
  // Packing LPs wider than this with rhs >= 0 run on a revised engine: an
  // explicit m x m basis inverse and cyclic pricing, with Bland's rule during
  // degenerate stretches. Pivot limit there is max_pivots + 10 * cols.
  int revised_min_cols = 2048;
};

// maximize c'x  s.t.  A x <= b,  0 <= x_j <= upper_j  (upper may be +inf).
// `b` may have negative entries; a phase-1 pass then restores feasibility.
struct BoundedLp {
  int rows = 0;
  int cols = 0;
  Vector a;  // row-major, rows x cols
  Vector b;
  Vector c;
  Vector upper;

  BoundedLp(int rows, int cols);
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

struct BoundedLpResult {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  // Shadow prices y >= 0 of the rows; c_j - y'A_j <= 0 wherever x_j < upper_j.
  Vector row_prices;
  double objective = 0.0;
  long pivots = 0;
  long bound_flips = 0;
};

BoundedLpResult solve_bounded_lp(const BoundedLp& lp,
                                 const SimplexOptions& options = {});

// Certified optimum of the offline LP.
struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Vector x;
  double objective = 0.0;  // R*_n
  DualPrice dual_price;    // p*_n, minimal sum over the optimal dual face
  Vector reduced;          // y_j = (r_j - a_j'p)^+
};

struct PackingOptions {
  // Instances with at most this many orders go straight to the full simplex.
  int direct_limit = 200;
  // Run the secondary LP that picks the minimal-sum dual vertex.
  bool tie_break = true;
  double cs_tol = 1e-10;
  double gap_tol = 1e-8;
  SimplexOptions simplex;
};

// Solves max r'x s.t. sum a_j x_j <= rhs, 0 <= x <= 1 for any rhs >= 0.
LpSolution solve_packing_lp(std::span<const Order> orders,
                            std::span<const double> rhs,
                            const PackingOptions& options = {});

// The offline LP of an instance: rhs = capacity.b().
LpSolution solve_offline(std::span<const Order> orders,
                         const CapacitySpec& capacity,
                         const PackingOptions& options = {});

// p*_n of a solved instance, tagged kExactLp. Throws InvalidInput unless the
// solution is optimal.
DualPrice dual_from_offline(const LpSolution& solution);

// A certified vertex of the packing LP found by restricting to the `window`
// orders whose reduced reward r_j - a_j'p is smallest in magnitude and
// enlarging the window until complementary slackness holds on every order.
struct PackingVertex {
  Vector x;
  Vector price;
  double objective = 0.0;
  int window = 0;   // final window size
  int rounds = 0;   // restricted solves performed
};

// Starts from `guess` and stops as soon as a certificate is found. Returns
// false (leaving `out` untouched) when certification would need a window
// larger than `max_window`.
bool refine_packing_vertex(std::span<const Order> orders,
                           std::span<const double> rhs,
                           std::span<const double> guess, int initial_window,
                           int max_window, const PackingOptions& options,
                           PackingVertex& out);

// Minimal-sum dual price on the optimal face of a certified vertex. Falls back
// to vertex.price if the secondary LP cannot close the duality gap.
Vector minimal_sum_price(std::span<const Order> orders, std::span<const double> rhs,
                         const PackingVertex& vertex, const PackingOptions& options = {});

// Dual objective rhs'p + sum_j (r_j - a_j'p)^+ of the packing LP.
double packing_dual_objective(std::span<const Order> orders,
                              std::span<const double> rhs,
                              std::span<const double> price);

}  // namespace olp

#endif  // OLP_SIMPLEX_HPP_
