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

#include "olp/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace olp {
namespace {

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<Vector> a, Vector b, Vector& x) {
  const int m = static_cast<int>(b.size());
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-11) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(m, 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < m; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

OracleResult enumerate_dual_vertices(std::span<const Order> orders,
                                     std::span<const double> rhs,
                                     long max_subsets) {
  const int m = static_cast<int>(rhs.size());
  const int n = static_cast<int>(orders.size());
  if (m == 0) throw InvalidInput("oracle needs at least one constraint");
  for (double v : rhs) {
    if (!(v > 0.0)) throw InvalidInput("oracle needs a positive right-hand side");
  }
  for (const Order& o : orders) {
    if (static_cast<int>(o.dim()) != m) throw InvalidInput("column length mismatch");
  }
  const int planes = n + m;
  if (binomial(planes, m) > static_cast<double>(max_subsets)) {
    throw InvalidInput("oracle enumeration too large");
  }

  auto objective = [&](const Vector& p) {
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += rhs[i] * p[i];
    for (const Order& o : orders) {
      double s = o.reward;
      for (int i = 0; i < m; ++i) s -= o.column[i] * p[i];
      if (s > 0.0) v += s;
    }
    return v;
  };

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<int> pick(m);
  for (int i = 0; i < m; ++i) pick[i] = i;
  std::vector<Vector> a(m, Vector(m));
  Vector b(m), p;
  while (true) {
    for (int k = 0; k < m; ++k) {
      const int h = pick[k];
      if (h < n) {
        a[k] = orders[h].column;
        b[k] = orders[h].reward;
      } else {
        a[k].assign(m, 0.0);
        a[k][h - n] = 1.0;
        b[k] = 0.0;
      }
    }
    if (solve_square(a, b, p)) {
      bool feasible = true;
      for (double& v : p) {
        if (v < -1e-9) {
          feasible = false;
          break;
        }
        if (v < 0.0) v = 0.0;
      }
      if (feasible) {
        ++best.vertices;
        const double value = objective(p);
        if (value < best.objective) {
          best.objective = value;
          best.price = p;
        }
      }
    }
    int k = m - 1;
    while (k >= 0 && pick[k] == planes - m + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace olp
