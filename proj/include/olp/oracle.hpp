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

// Brute-force reference for the offline LP, independent of the simplex code.
// The dual objective b'p + sum_j (r_j - a_j'p)^+ is convex and piecewise
// linear on p >= 0; with b > 0 its minimum sits at a vertex of the
// arrangement of the hyperplanes a_j'p = r_j and p_i = 0. Every m-subset of
// those hyperplanes is tried, so the cost grows like C(n + m, m).

#ifndef OLP_ORACLE_HPP_
#define OLP_ORACLE_HPP_

#include <span>

#include "olp/core.hpp"

namespace olp {

struct OracleResult {
  double objective = 0.0;  // min over vertices, equals R*_n
  Vector price;            // a minimizing vertex
  long vertices = 0;       // nonsingular, nonnegative vertices examined
};

// Throws InvalidInput when rhs has a nonpositive entry or the enumeration
// would exceed `max_subsets`.
OracleResult enumerate_dual_vertices(std::span<const Order> orders,
                                     std::span<const double> rhs,
                                     long max_subsets = 5'000'000);

}  // namespace olp

#endif  // OLP_ORACLE_HPP_
