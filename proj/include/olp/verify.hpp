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

// Self-contained invariant suite run by the `verify` command: duality and
// complementary slackness of the offline solver, agreement with the vertex
// enumeration oracle, the Taylor identity, convexity of the sampled dual,
// warm-path accuracy and the online feasibility/replay contract.

#ifndef OLP_VERIFY_HPP_
#define OLP_VERIFY_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "olp/core.hpp"
#include "olp/inputs.hpp"

namespace olp {

struct CheckResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  double worst = 0.0;  // largest violation seen, in the check's own units
};

// Small instance with mixed-sign rewards and columns: n in [m + 1, max_n],
// m in [1, max_m], d_i ~ U[0.1, 0.5].
Instance random_mixed_instance(std::uint64_t seed, int max_n, int max_m);

// Relative duality gap |R - (b'p + sum y)| / (1 + |R|) of a solved instance.
double relative_duality_gap(const Instance& instance, const Vector& price, double objective);

// `eps_sub` is the warm-path tolerance; NaN selects default_eps_sub.
std::vector<CheckResult> run_invariant_suite(
    std::uint64_t seed, int cases,
    double eps_sub = std::numeric_limits<double>::quiet_NaN());

}  // namespace olp

#endif  // OLP_VERIFY_HPP_
