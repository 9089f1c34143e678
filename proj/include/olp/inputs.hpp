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

// Input models and instance generation. Every order is a pure function of
// (model, seed, index), so an instance prefix never depends on the horizon
// and any single order can be regenerated on its own.

#ifndef OLP_INPUTS_HPP_
#define OLP_INPUTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olp/core.hpp"

namespace olp {

enum class ModelKind {
  kRandomInputI,    // a_ij ~ U[-0.5, 1], r ~ U[0, 10]
  kRandomInputII,   // a_ij ~ N(0.5, 1), r = sum_i a_ij
  kMultiSecretary,  // m = 1, a = 1, r ~ U[lo, hi] within [0, 1]
  kUniformSquare,   // r, a_ij ~ U[0, 1]
  kFiniteSupport,   // rows of (probability, r, a)
  kReplay,          // orders read from an instance file
};

struct SupportPoint {
  double probability = 0.0;
  double reward = 0.0;
  Vector column;
};

struct InputModel {
  ModelKind kind = ModelKind::kRandomInputI;
  int m = 1;
  double reward_lo = 0.0;  // multi-secretary reward range
  double reward_hi = 1.0;
  std::vector<SupportPoint> support;
  std::string replay_path;
  // Default per-period capacity, cycled over the m constraints.
  Vector capacity_pattern{0.25};

  std::string id() const;
  // Bounds this model declares for capacity d; undeclared for Random
  // Input II and Replay.
  ModelBounds bounds(const Vector& d) const;
  Vector default_capacity() const;
  // The index-th order of the stream keyed by seed.
  Order draw(std::uint64_t seed, std::uint64_t index) const;
};

InputModel random_input_one(int m);
InputModel random_input_two(int m);  // capacity pattern 0.2, 0.3, 0.2, ...
InputModel multi_secretary(double reward_lo = 0.0, double reward_hi = 1.0);
InputModel uniform_square(int m);
InputModel finite_support(std::vector<SupportPoint> support);
InputModel replay(std::string path, int m);

// Parses "ri1", "ri2", "msec", "usq" (with dimension m).
InputModel model_from_name(std::string_view name, int m);

// Checks kind-specific parameter constraints; throws InvalidInput.
void validate(const InputModel& model);

struct Instance {
  std::vector<Order> orders;
  CapacitySpec capacity;
};

// n orders drawn i.i.d. (file order for Replay) and b = n d.
Instance generate_instance(const InputModel& model, int n, const Vector& d,
                           std::uint64_t seed);

// Orders in file order, with the file's optional shuffle directive applied
// as a seeded Fisher-Yates permutation.
std::vector<Order> load_replay(const std::string& path);

// Writes the instance file format. `shuffle_seed` adds a shuffle directive.
void save_replay(const std::string& path, const std::vector<Order>& orders,
                 std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace olp

#endif  // OLP_INPUTS_HPP_
