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

// Small builders shared by the unit tests.

#ifndef OLP_TESTS_TEST_UTIL_HPP_
#define OLP_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "olp/core.hpp"
#include "olp/rng.hpp"

namespace olp::testing {

inline std::vector<Order> orders_1d(const std::vector<double>& rewards, double a = 1.0) {
  std::vector<Order> out;
  for (double r : rewards) out.push_back({r, {a}});
  return out;
}

inline std::vector<Order> random_orders(RandomStream& rng, int n, int m, double r_lo,
                                        double r_hi, double a_lo, double a_hi) {
  std::vector<Order> out(n);
  for (Order& o : out) {
    o.reward = rng.uniform(r_lo, r_hi);
    o.column.resize(m);
    for (double& a : o.column) a = rng.uniform(a_lo, a_hi);
  }
  return out;
}

// Independent re-evaluation of d'p + (1/t) sum (r - a'p)^+.
inline double hinge_value(const std::vector<Order>& orders, const Vector& d, const Vector& p) {
  long double total = 0.0L;
  for (const Order& o : orders) {
    long double s = o.reward;
    for (std::size_t i = 0; i < p.size(); ++i) s -= static_cast<long double>(o.column[i]) * p[i];
    if (s > 0) total += s;
  }
  long double lin = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) lin += static_cast<long double>(d[i]) * p[i];
  return static_cast<double>(lin + total / orders.size());
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("olp-tests-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace olp::testing

#endif  // OLP_TESTS_TEST_UTIL_HPP_
