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

#include "olp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

namespace olp {

BoundedLp::BoundedLp(int rows, int cols)
    : rows(rows),
      cols(cols),
      a(static_cast<std::size_t>(rows) * cols, 0.0),
      b(rows, 0.0),
      c(cols, 0.0),
      upper(cols, kInfinity) {}

namespace {

enum class VarState : std::uint8_t { kBasic, kLower, kUpper };

// Dense tableau B^{-1}[A I Art] of the system D(Ax + s) + art = Db, where D
// flips the sign of rows with negative right-hand side. Columns are ordered
// structural, slack, artificial, which keeps Bland's smallest-index rule
// meaningful for the structural variables.
class Tableau {
 public:
  Tableau(const BoundedLp& lp, const SimplexOptions& options)
      : lp_(lp), options_(options), m_(lp.rows) {
    sign_.assign(m_, 1.0);
    int arts = 0;
    for (int i = 0; i < m_; ++i) {
      if (lp.b[i] < 0.0) {
        sign_[i] = -1.0;
        ++arts;
      }
    }
    first_slack_ = lp.cols;
    first_art_ = lp.cols + m_;
    width_ = first_art_ + arts;
    t_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
    upper_.assign(width_, kInfinity);
    for (int j = 0; j < lp.cols; ++j) upper_[j] = lp.upper[j];
    state_.assign(width_, VarState::kLower);
    basis_.assign(m_, -1);
    beta_.assign(m_, 0.0);
    int art = first_art_;
    for (int i = 0; i < m_; ++i) {
      double* row = &t_[static_cast<std::size_t>(i) * width_];
      for (int j = 0; j < lp.cols; ++j) row[j] = sign_[i] * lp.at(i, j);
      row[first_slack_ + i] = sign_[i];
      beta_[i] = sign_[i] * lp.b[i];
      if (sign_[i] < 0.0) {
        row[art] = 1.0;
        basis_[i] = art;
        ++art;
      } else {
        basis_[i] = first_slack_ + i;
      }
      state_[basis_[i]] = VarState::kBasic;
    }
  }

  bool needs_phase_one() const { return width_ > first_art_; }

  void set_phase_one_costs() {
    cost_.assign(width_, 0.0);
    for (int j = first_art_; j < width_; ++j) cost_[j] = -1.0;
    recompute_reduced_costs();
  }

  void set_phase_two_costs() {
    cost_.assign(width_, 0.0);
    for (int j = 0; j < lp_.cols; ++j) cost_[j] = lp_.c[j];
    // Artificials stay at zero from here on.
    for (int j = first_art_; j < width_; ++j) upper_[j] = 0.0;
    recompute_reduced_costs();
  }

  double objective_value() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * beta_[i];
    for (int j = 0; j < width_; ++j) {
      if (state_[j] == VarState::kUpper) v += cost_[j] * upper_[j];
    }
    return v;
  }

  // Returns false when the objective is unbounded.
  bool run(long& pivots, long& flips) {
    int scan = 0;
    while (true) {
      int enter = -1;
      for (int j = scan; j < width_; ++j) {
        if (state_[j] == VarState::kBasic || j >= first_art_) continue;
        if (state_[j] == VarState::kLower && upper_[j] > 0.0 &&
            reduced_[j] > options_.optimality_tol) {
          enter = j;
          break;
        }
        if (state_[j] == VarState::kUpper &&
            reduced_[j] < -options_.optimality_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      const double sigma = state_[enter] == VarState::kLower ? 1.0 : -1.0;
      double theta = upper_[enter];
      int leave_row = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double alpha = sigma * entry(i, enter);
        double limit;
        bool to_upper;
        if (alpha > options_.pivot_tol) {
          limit = std::max(0.0, beta_[i]) / alpha;
          to_upper = false;
        } else if (alpha < -options_.pivot_tol &&
                   std::isfinite(upper_[basis_[i]])) {
          limit = std::max(0.0, upper_[basis_[i]] - beta_[i]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        const bool better =
            leave_row < 0 ? limit < theta
                          : (limit < theta ||
                             (limit == theta && basis_[i] < basis_[leave_row]));
        if (better) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return false;

      for (int i = 0; i < m_; ++i) beta_[i] -= sigma * entry(i, enter) * theta;

      if (leave_row < 0) {
        state_[enter] =
            state_[enter] == VarState::kLower ? VarState::kUpper
                                              : VarState::kLower;
        ++flips;
        scan = enter + 1;
        continue;
      }

      const double start = state_[enter] == VarState::kLower ? 0.0 : upper_[enter];
      const int leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? VarState::kUpper : VarState::kLower;
      pivot(leave_row, enter);
      beta_[leave_row] = start + sigma * theta;
      ++pivots;
      if (pivots > options_.max_pivots) {
        throw NumericalFailure("simplex exceeded its pivot limit");
      }
      scan = 0;
    }
  }

  // Recomputes basic values from the nonbasic ones: x_B = T_s (b - N x_N).
  void refresh_basic_values() {
    Vector residual(lp_.b.begin(), lp_.b.end());
    for (int j = 0; j < lp_.cols; ++j) {
      if (state_[j] != VarState::kUpper) continue;
      for (int i = 0; i < m_; ++i) residual[i] -= lp_.at(i, j) * upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += entry(i, first_slack_ + k) * residual[k];
      beta_[i] = v;
    }
  }

  double artificial_infeasibility() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= first_art_) s += std::max(0.0, beta_[i]);
    }
    return s;
  }

  void extract(BoundedLpResult& result) const {
    result.x.assign(lp_.cols, 0.0);
    for (int j = 0; j < lp_.cols; ++j) {
      if (state_[j] == VarState::kUpper) result.x[j] = upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      if (j < lp_.cols) {
        result.x[j] = std::clamp(beta_[i], 0.0, upper_[j]);
      }
    }
    // y_i = c_B' T_s(:, i), the negated reduced cost of slack i.
    result.row_prices.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * entry(i, first_slack_ + k);
      result.row_prices[k] = std::max(0.0, v);
    }
    double obj = 0.0;
    for (int j = 0; j < lp_.cols; ++j) obj += lp_.c[j] * result.x[j];
    result.objective = obj;
  }

 private:
  double entry(int i, int j) const {
    return t_[static_cast<std::size_t>(i) * width_ + j];
  }

  void recompute_reduced_costs() {
    reduced_.assign(cost_.begin(), cost_.end());
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[static_cast<std::size_t>(i) * width_];
      for (int j = 0; j < width_; ++j) reduced_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
  }

  void pivot(int r, int enter) {
    double* prow = &t_[static_cast<std::size_t>(r) * width_];
    const double inv = 1.0 / prow[enter];
    for (int j = 0; j < width_; ++j) prow[j] *= inv;
    prow[enter] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[static_cast<std::size_t>(i) * width_];
      const double f = row[enter];
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
    const double f = reduced_[enter];
    if (f != 0.0) {
      for (int j = 0; j < width_; ++j) reduced_[j] -= f * prow[j];
    }
    reduced_[enter] = 0.0;
    basis_[r] = enter;
    state_[enter] = VarState::kBasic;
  }

  const BoundedLp& lp_;
  const SimplexOptions& options_;
  int m_;
  int first_slack_ = 0;
  int first_art_ = 0;
  int width_ = 0;
  Vector sign_;
  Vector t_;
  Vector upper_;
  Vector cost_;
  Vector reduced_;
  Vector beta_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
};

}  // namespace

BoundedLpResult solve_bounded_lp(const BoundedLp& lp,
                                 const SimplexOptions& options) {
  if (static_cast<int>(lp.b.size()) != lp.rows ||
      static_cast<int>(lp.c.size()) != lp.cols ||
      static_cast<int>(lp.upper.size()) != lp.cols ||
      lp.a.size() != static_cast<std::size_t>(lp.rows) * lp.cols) {
    throw InvalidInput("bounded LP has inconsistent dimensions");
  }
  for (double u : lp.upper) {
    if (!(u >= 0.0)) throw InvalidInput("variable upper bounds must be >= 0");
  }
  BoundedLpResult result;
  Tableau tableau(lp, options);
  if (tableau.needs_phase_one()) {
    tableau.set_phase_one_costs();
    tableau.run(result.pivots, result.bound_flips);
    if (tableau.artificial_infeasibility() > options.feasibility_tol) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }
  tableau.set_phase_two_costs();
  if (!tableau.run(result.pivots, result.bound_flips)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  tableau.refresh_basic_values();
  tableau.extract(result);
  result.status = LpStatus::kOptimal;
  return result;
}

double packing_dual_objective(std::span<const Order> orders,
                              std::span<const double> rhs,
                              std::span<const double> price) {
  double v = dot(rhs, price);
  for (const Order& o : orders) v += std::max(0.0, o.reward - dot(o.column, price));
  return v;
}

namespace {

void check_dimensions(std::span<const Order> orders, std::span<const double> rhs) {
  if (rhs.empty()) throw InvalidInput("packing LP needs at least one row");
  for (double v : rhs) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidInput("packing LP right-hand side must be finite and >= 0");
    }
  }
  for (const Order& o : orders) {
    if (o.dim() != rhs.size()) {
      throw InvalidInput("order column length does not match the number of constraints");
    }
  }
}

// Revised bounded-variable simplex for  max r'x  s.t.  sum a_j x_j + s = rhs,
// 0 <= x <= 1, s >= 0, rhs >= 0, starting from the slack basis. Variables
// 0..W-1 are the orders in `subset`, W..W+m-1 the slacks.
class PackingSimplex {
 public:
  PackingSimplex(std::span<const Order> orders, const Vector& rhs,
                 const std::vector<int>& subset, const SimplexOptions& options)
      : orders_(orders), rhs_(rhs), subset_(subset), options_(options),
        m_(static_cast<int>(rhs.size())), w_(static_cast<int>(subset.size())) {
    state_.assign(w_ + m_, VarState::kLower);
    basis_.resize(m_);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = w_ + i;
      state_[w_ + i] = VarState::kBasic;
      binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    }
    beta_ = rhs_;
    upper_sum_.assign(m_, 0.0);
    price_.assign(m_, 0.0);
    alpha_.resize(m_);
  }

  bool run(long& pivots, long& flips) {
    const long limit = options_.max_pivots + 10L * w_;
    const int width = w_ + m_;
    int cursor = 0;
    int degenerate = 0;
    long since_refactor = 0;
    while (true) {
      const bool bland = degenerate > kDegenerateRun;
      int enter = -1;
      const int start = bland ? 0 : cursor;
      for (int k = 0; k < width; ++k) {
        int j = start + k;
        if (j >= width) j -= width;
        if (eligible(j)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      cursor = enter + 1 == width ? 0 : enter + 1;

      load_alpha(enter);
      const double sigma = state_[enter] == VarState::kLower ? 1.0 : -1.0;
      double theta = enter < w_ ? 1.0 : kInfinity;
      int leave_row = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double alpha = sigma * alpha_[i];
        double bound;
        bool to_upper;
        if (alpha > options_.pivot_tol) {
          bound = std::max(0.0, beta_[i]) / alpha;
          to_upper = false;
        } else if (alpha < -options_.pivot_tol && basis_[i] < w_) {
          bound = std::max(0.0, 1.0 - beta_[i]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        const bool better =
            leave_row < 0 ? bound < theta
                          : (bound < theta ||
                             (bound == theta && basis_[i] < basis_[leave_row]));
        if (better) {
          theta = bound;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return false;
      degenerate = theta > 0.0 ? 0 : degenerate + 1;

      for (int i = 0; i < m_; ++i) beta_[i] -= sigma * alpha_[i] * theta;
      if (leave_row < 0) {
        set_state(enter, state_[enter] == VarState::kLower ? VarState::kUpper
                                                            : VarState::kLower);
        ++flips;
        continue;
      }

      const double from = state_[enter] == VarState::kLower ? 0.0 : 1.0;
      const int leaving = basis_[leave_row];
      set_state(enter, VarState::kBasic);
      set_state(leaving, leave_to_upper ? VarState::kUpper : VarState::kLower);
      basis_[leave_row] = enter;
      update_inverse(leave_row);
      beta_[leave_row] = from + sigma * theta;
      if (++pivots > limit) throw NumericalFailure("simplex exceeded its pivot limit");
      if (++since_refactor >= kRefactorEvery) {
        refactor();
        since_refactor = 0;
      } else {
        update_price();
      }
    }
  }

  void extract(BoundedLpResult& result) {
    upper_sum_.assign(m_, 0.0);
    for (int j = 0; j < w_; ++j) {
      if (state_[j] == VarState::kUpper) add_column(j, 1.0, upper_sum_);
    }
    refactor();
    result.x.assign(w_, 0.0);
    for (int j = 0; j < w_; ++j) {
      if (state_[j] == VarState::kUpper) result.x[j] = 1.0;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < w_) result.x[basis_[i]] = std::clamp(beta_[i], 0.0, 1.0);
    }
    result.row_prices.resize(m_);
    for (int i = 0; i < m_; ++i) result.row_prices[i] = std::max(0.0, price_[i]);
    double obj = 0.0;
    for (int j = 0; j < w_; ++j) obj += cost(j) * result.x[j];
    result.objective = obj;
  }

 private:
  static constexpr int kDegenerateRun = 50;
  static constexpr long kRefactorEvery = 64;

  double cost(int j) const { return j < w_ ? orders_[subset_[j]].reward : 0.0; }

  double reduced(int j) const {
    if (j >= w_) return -price_[j - w_];
    return cost(j) - dot(orders_[subset_[j]].column, price_);
  }

  bool eligible(int j) const {
    if (state_[j] == VarState::kBasic) return false;
    const double red = reduced(j);
    if (state_[j] == VarState::kLower) return red > options_.optimality_tol;
    return red < -options_.optimality_tol;
  }

  void add_column(int j, double f, Vector& v) const {
    if (j >= w_) {
      v[j - w_] += f;
      return;
    }
    const auto& col = orders_[subset_[j]].column;
    for (int i = 0; i < m_; ++i) v[i] += f * col[i];
  }

  void set_state(int j, VarState s) {
    if (j < w_) {
      if (state_[j] == VarState::kUpper) add_column(j, -1.0, upper_sum_);
      if (s == VarState::kUpper) add_column(j, 1.0, upper_sum_);
    }
    state_[j] = s;
  }

  void load_alpha(int j) {
    Vector col(m_, 0.0);
    add_column(j, 1.0, col);
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += binv_[static_cast<std::size_t>(i) * m_ + k] * col[k];
      alpha_[i] = v;
    }
  }

  // Product-form update of B^{-1} after basis_[r] received the column whose
  // coordinates in the old basis are alpha_.
  void update_inverse(int r) {
    double* prow = &binv_[static_cast<std::size_t>(r) * m_];
    const double inv = 1.0 / alpha_[r];
    for (int k = 0; k < m_; ++k) prow[k] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha_[i] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) row[k] -= alpha_[i] * prow[k];
    }
  }

  void update_price() {
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += cost(basis_[i]) * binv_[static_cast<std::size_t>(i) * m_ + k];
      price_[k] = v;
    }
  }

  // Rebuilds B^{-1} by Gauss-Jordan elimination and x_B = B^{-1}(rhs - U 1).
  void refactor() {
    Vector bmat(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      Vector col(m_, 0.0);
      add_column(basis_[i], 1.0, col);
      for (int k = 0; k < m_; ++k) bmat[static_cast<std::size_t>(k) * m_ + i] = col[k];
    }
    Vector inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(bmat[static_cast<std::size_t>(r) * m_ + c]) >
            std::abs(bmat[static_cast<std::size_t>(piv) * m_ + c])) {
          piv = r;
        }
      }
      const double pv = bmat[static_cast<std::size_t>(piv) * m_ + c];
      if (std::abs(pv) < 1e-300) throw NumericalFailure("simplex basis became singular");
      for (int k = 0; k < m_; ++k) {
        std::swap(bmat[static_cast<std::size_t>(c) * m_ + k], bmat[static_cast<std::size_t>(piv) * m_ + k]);
        std::swap(inv[static_cast<std::size_t>(c) * m_ + k], inv[static_cast<std::size_t>(piv) * m_ + k]);
      }
      for (int k = 0; k < m_; ++k) {
        bmat[static_cast<std::size_t>(c) * m_ + k] /= pv;
        inv[static_cast<std::size_t>(c) * m_ + k] /= pv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = bmat[static_cast<std::size_t>(r) * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          bmat[static_cast<std::size_t>(r) * m_ + k] -= f * bmat[static_cast<std::size_t>(c) * m_ + k];
          inv[static_cast<std::size_t>(r) * m_ + k] -= f * inv[static_cast<std::size_t>(c) * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) {
        v += binv_[static_cast<std::size_t>(i) * m_ + k] * (rhs_[k] - upper_sum_[k]);
      }
      beta_[i] = v;
    }
    update_price();
  }

  std::span<const Order> orders_;
  const Vector& rhs_;
  const std::vector<int>& subset_;
  const SimplexOptions& options_;
  int m_;
  int w_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  Vector binv_;  // row-major m x m
  Vector beta_;
  Vector upper_sum_;  // sum of columns at their upper bound
  Vector price_;
  Vector alpha_;
};

// Restricted LP over `subset` with the orders in `fixed_one` pinned to 1.
BoundedLpResult solve_restricted(std::span<const Order> orders,
                                 std::span<const double> rhs,
                                 const std::vector<int>& subset,
                                 const std::vector<int>& fixed_one,
                                 const SimplexOptions& options) {
  const int m = static_cast<int>(rhs.size());
  Vector residual(rhs.begin(), rhs.end());
  for (int j : fixed_one) {
    for (int i = 0; i < m; ++i) residual[i] -= orders[j].column[i];
  }
  if (static_cast<int>(subset.size()) > options.revised_min_cols &&
      std::all_of(residual.begin(), residual.end(), [](double v) { return v >= 0.0; })) {
    BoundedLpResult result;
    PackingSimplex engine(orders, residual, subset, options);
    if (!engine.run(result.pivots, result.bound_flips)) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    engine.extract(result);
    result.status = LpStatus::kOptimal;
    return result;
  }
  BoundedLp lp(m, static_cast<int>(subset.size()));
  for (int i = 0; i < m; ++i) lp.b[i] = residual[i];
  for (int k = 0; k < lp.cols; ++k) {
    const Order& o = orders[subset[k]];
    lp.c[k] = o.reward;
    lp.upper[k] = 1.0;
    for (int i = 0; i < m; ++i) lp.at(i, k) = o.column[i];
  }
  return solve_bounded_lp(lp, options);
}

PackingVertex solve_direct(std::span<const Order> orders, std::span<const double> rhs,
                           const SimplexOptions& options) {
  std::vector<int> all(orders.size());
  std::iota(all.begin(), all.end(), 0);
  BoundedLpResult r = solve_restricted(orders, rhs, all, {}, options);
  if (r.status != LpStatus::kOptimal) {
    throw NumericalFailure("offline LP simplex did not reach optimality");
  }
  PackingVertex v;
  v.x = std::move(r.x);
  v.price = std::move(r.row_prices);
  v.objective = r.objective;
  v.window = static_cast<int>(orders.size());
  v.rounds = 1;
  return v;
}

double cs_violation(const Order& o, std::span<const double> price, bool pinned_one) {
  const double slack = o.reward - dot(o.column, price);
  return pinned_one ? std::max(0.0, -slack) : std::max(0.0, slack);
}

double violation_scale(const Order& o, std::span<const double> price) {
  double s = 1.0 + std::abs(o.reward);
  for (std::size_t i = 0; i < price.size(); ++i) s += std::abs(o.column[i] * price[i]);
  return s;
}

PackingVertex solve_vertex(std::span<const Order> orders, std::span<const double> rhs,
                           const PackingOptions& options);

int default_window(int n, int m) {
  const int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  return std::min(n, std::max(16 * (m + 1), 2 * (m + 1) * root));
}

PackingVertex solve_vertex(std::span<const Order> orders, std::span<const double> rhs,
                           const PackingOptions& options) {
  const int n = static_cast<int>(orders.size());
  if (n <= options.direct_limit) return solve_direct(orders, rhs, options.simplex);
  // Price guess from a quarter-size prefix with proportionally scaled capacity.
  const int head = n / 4;
  Vector scaled(rhs.begin(), rhs.end());
  for (double& v : scaled) v *= static_cast<double>(head) / n;
  const PackingVertex coarse = solve_vertex(orders.first(head), scaled, options);
  PackingVertex out;
  refine_packing_vertex(orders, rhs, coarse.price,
                        default_window(n, static_cast<int>(rhs.size())), n,
                        options, out);
  return out;
}

// Minimal-sum dual price on the optimal face of a solved packing LP:
//   min e'p  s.t.  a_j'p >= r_j (x_j = 0),  a_j'p <= r_j (x_j = 1),
//                  both for fractional x_j,  p_i = 0 where row i has slack.
// Solved through its dual  max h'lambda  s.t.  G'lambda <= e, lambda >= 0,
// whose row prices are p. Face rows far from active are added lazily.
Vector minimal_face_price(std::span<const Order> orders, std::span<const double> rhs,
                          const PackingVertex& vertex, const PackingOptions& options) {
  const int m = static_cast<int>(rhs.size());
  const int n = static_cast<int>(orders.size());
  constexpr double kBoundTol = 1e-9;

  struct FaceRow {
    int order;     // -1 for a p_i = 0 row
    int index;     // constraint index for p_i = 0 rows
    double sign;   // +1: a'p >= r, -1: a'p <= r
  };
  std::vector<FaceRow> rows;
  Vector slack(rhs.begin(), rhs.end());
  for (int j = 0; j < n; ++j) {
    const double xj = vertex.x[j];
    if (xj != 0.0) {
      for (int i = 0; i < m; ++i) slack[i] -= orders[j].column[i] * xj;
    }
    if (xj <= kBoundTol) {
      rows.push_back({j, 0, 1.0});
    } else if (xj >= 1.0 - kBoundTol) {
      rows.push_back({j, 0, -1.0});
    } else {
      rows.push_back({j, 0, 1.0});
      rows.push_back({j, 0, -1.0});
    }
  }
  for (int i = 0; i < m; ++i) {
    if (slack[i] > kBoundTol * (1.0 + std::abs(rhs[i]))) rows.push_back({-1, i, -1.0});
  }

  auto row_slack = [&](const FaceRow& row, std::span<const double> p) {
    if (row.order < 0) return -p[row.index];
    const Order& o = orders[row.order];
    return row.sign * (dot(o.column, p) - o.reward);
  };

  // Seed with the rows closest to active at the current price.
  std::vector<std::uint8_t> active(rows.size(), 0);
  std::vector<int> order_by_slack(rows.size());
  std::iota(order_by_slack.begin(), order_by_slack.end(), 0);
  const std::size_t seed = std::min<std::size_t>(
      rows.size(), static_cast<std::size_t>(std::max(vertex.window, 4 * (m + 1))) + m);
  if (seed < rows.size()) {
    Vector initial(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      initial[k] = std::abs(row_slack(rows[k], vertex.price));
    }
    std::nth_element(order_by_slack.begin(), order_by_slack.begin() + seed,
                     order_by_slack.end(), [&](int l, int r) {
                       return initial[l] < initial[r] || (initial[l] == initial[r] && l < r);
                     });
  }
  for (std::size_t k = 0; k < seed; ++k) active[order_by_slack[k]] = 1;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].order < 0) active[k] = 1;
  }

  for (int round = 0; round < 64; ++round) {
    std::vector<int> cols;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (active[k]) cols.push_back(static_cast<int>(k));
    }
    BoundedLp lp(m, static_cast<int>(cols.size()));
    std::fill(lp.b.begin(), lp.b.end(), 1.0);
    for (int c = 0; c < lp.cols; ++c) {
      const FaceRow& row = rows[cols[c]];
      if (row.order < 0) {
        lp.c[c] = 0.0;
        lp.at(row.index, c) = -1.0;
      } else {
        const Order& o = orders[row.order];
        lp.c[c] = row.sign * o.reward;
        for (int i = 0; i < m; ++i) lp.at(i, c) = row.sign * o.column[i];
      }
    }
    BoundedLpResult r = solve_bounded_lp(lp, options.simplex);
    if (r.status != LpStatus::kOptimal) return vertex.price;
    bool added = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (active[k]) continue;
      const double tol = options.cs_tol *
          (rows[k].order < 0 ? 1.0 : violation_scale(orders[rows[k].order], r.row_prices));
      if (row_slack(rows[k], r.row_prices) < -tol) {
        active[k] = 1;
        added = true;
      }
    }
    if (!added) return r.row_prices;
  }
  return vertex.price;
}

}  // namespace

bool refine_packing_vertex(std::span<const Order> orders,
                           std::span<const double> rhs,
                           std::span<const double> guess, int initial_window,
                           int max_window, const PackingOptions& options,
                           PackingVertex& out) {
  check_dimensions(orders, rhs);
  const int n = static_cast<int>(orders.size());
  const int m = static_cast<int>(rhs.size());
  Vector price(guess.begin(), guess.end());
  if (static_cast<int>(price.size()) != m) {
    throw InvalidInput("price guess has the wrong dimension");
  }
  max_window = std::min(max_window, n);
  int window = std::clamp(initial_window, std::min(n, 1), n);
  int rounds = 0;

  std::vector<int> idx(n);
  Vector residual(n);
  while (true) {
    if (window > max_window) return false;
    for (int j = 0; j < n; ++j) residual[j] = orders[j].reward - dot(orders[j].column, price);

    std::vector<int> subset;
    std::vector<int> fixed_one;
    std::vector<std::uint8_t> in_window(n, 0);
    if (window >= n) {
      std::fill(in_window.begin(), in_window.end(), 1);
    } else {
      std::iota(idx.begin(), idx.end(), 0);
      std::nth_element(idx.begin(), idx.begin() + window, idx.end(), [&](int l, int r) {
        const double al = std::abs(residual[l]);
        const double ar = std::abs(residual[r]);
        return al < ar || (al == ar && l < r);
      });
      for (int k = 0; k < window; ++k) in_window[idx[k]] = 1;
    }
    for (int j = 0; j < n; ++j) {
      if (in_window[j]) {
        subset.push_back(j);
      } else if (residual[j] > 0.0) {
        fixed_one.push_back(j);
      }
    }

    BoundedLpResult r = solve_restricted(orders, rhs, subset, fixed_one, options.simplex);
    ++rounds;
    if (r.status == LpStatus::kUnbounded) {
      throw NumericalFailure("restricted packing LP reported unbounded");
    }
    if (r.status == LpStatus::kInfeasible) {
      if (window >= n) throw NumericalFailure("packing LP infeasible with rhs >= 0");
      window = std::min(n, 2 * window);
      continue;
    }

    bool certified = true;
    if (window < n) {
      for (int j = 0; j < n && certified; ++j) {
        if (in_window[j]) continue;
        const double v = cs_violation(orders[j], r.row_prices, residual[j] > 0.0);
        if (v > options.cs_tol * violation_scale(orders[j], r.row_prices)) certified = false;
      }
    }
    if (certified) {
      out.x.assign(n, 0.0);
      for (int j : fixed_one) out.x[j] = 1.0;
      for (std::size_t k = 0; k < subset.size(); ++k) out.x[subset[k]] = r.x[k];
      out.price = std::move(r.row_prices);
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += orders[j].reward * out.x[j];
      out.objective = obj;
      out.window = window;
      out.rounds = rounds;
      return true;
    }
    price = std::move(r.row_prices);
    if (window >= n) throw NumericalFailure("full packing LP failed certification");
    window = std::min(n, 2 * window);
  }
}

Vector minimal_sum_price(std::span<const Order> orders, std::span<const double> rhs,
                         const PackingVertex& vertex, const PackingOptions& options) {
  Vector tied = minimal_face_price(orders, rhs, vertex, options);
  for (double& v : tied) v = std::max(0.0, v);
  const double gap = std::abs(vertex.objective - packing_dual_objective(orders, rhs, tied));
  if (gap <= options.gap_tol * (1.0 + std::abs(vertex.objective))) return tied;
  return vertex.price;
}

LpSolution solve_packing_lp(std::span<const Order> orders,
                            std::span<const double> rhs,
                            const PackingOptions& options) {
  check_dimensions(orders, rhs);
  const int m = static_cast<int>(rhs.size());
  LpSolution solution;
  if (orders.empty()) {
    solution.dual_price.p.assign(m, 0.0);
    return solution;
  }
  PackingVertex vertex = solve_vertex(orders, rhs, options);
  Vector price = options.tie_break ? minimal_sum_price(orders, rhs, vertex, options)
                                   : vertex.price;
  const double gap = std::abs(vertex.objective - packing_dual_objective(orders, rhs, price));
  if (gap > options.gap_tol * (1.0 + std::abs(vertex.objective))) {
    throw NumericalFailure("duality gap " + std::to_string(gap) + " exceeds tolerance");
  }
  solution.x = std::move(vertex.x);
  solution.objective = vertex.objective;
  solution.reduced.resize(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j) {
    solution.reduced[j] = std::max(0.0, orders[j].reward - dot(orders[j].column, price));
  }
  solution.dual_price = {std::move(price), PriceProvenance::kExactLp};
  solution.status = LpStatus::kOptimal;
  return solution;
}

LpSolution solve_offline(std::span<const Order> orders, const CapacitySpec& capacity,
                         const PackingOptions& options) {
  if (orders.empty()) throw InvalidInput("offline LP needs at least one order");
  return solve_packing_lp(orders, capacity.b(), options);
}

DualPrice dual_from_offline(const LpSolution& solution) {
  if (solution.status != LpStatus::kOptimal) {
    throw InvalidInput("dual price requested from a non-optimal LP solution");
  }
  return {solution.dual_price.p, PriceProvenance::kExactLp};
}

}  // namespace olp
