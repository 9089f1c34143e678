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

#include "olp/inputs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <utility>

#include "olp/rng.hpp"

namespace olp {

namespace {

double min_of(const Vector& v) { return *std::min_element(v.begin(), v.end()); }
double max_of(const Vector& v) { return *std::max_element(v.begin(), v.end()); }

// Capacity bracket declared alongside bounded models: a factor of two on
// either side of the configured d.
ModelBounds bracket(double r_bar, double a_bar, const Vector& d) {
  return ModelBounds::make(r_bar, a_bar, 0.5 * min_of(d), 2.0 * max_of(d));
}

struct ReplayFile {
  std::vector<Order> orders;
  std::optional<std::uint64_t> shuffle_seed;
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void parse_error(const std::string& path, int line, const std::string& what) {
  throw InvalidInput(path + ":" + std::to_string(line) + ": " + what);
}

long long parse_key(const std::string& token, const std::string& key,
                    const std::string& path, int line) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) parse_error(path, line, "expected " + prefix + "<int>");
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token.substr(prefix.size()), &used);
    if (used != token.size() - prefix.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    parse_error(path, line, "bad integer in '" + token + "'");
  }
}

ReplayFile read_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file " + path);
  ReplayFile file;
  std::string raw;
  int line_no = 0;
  long long n = -1;
  long long m = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    std::istringstream tokens(line);
    if (n < 0) {
      std::string magic, version, n_tok, m_tok, extra;
      tokens >> magic >> version >> n_tok >> m_tok;
      if (magic != "olp" || version != "v1") parse_error(path, line_no, "expected header 'olp v1 n=<int> m=<int>'");
      n = parse_key(n_tok, "n", path, line_no);
      m = parse_key(m_tok, "m", path, line_no);
      if (tokens >> extra) parse_error(path, line_no, "unexpected token after header");
      if (n < 1 || m < 1) parse_error(path, line_no, "n and m must be positive");
      continue;
    }
    if (file.orders.empty() && !file.shuffle_seed && line.find("shuffle") != std::string::npos) {
      std::string word, seed_tok;
      tokens >> word >> seed_tok;
      if (word != "shuffle" || seed_tok.rfind("seed=", 0) != 0) {
        parse_error(path, line_no, "expected 'shuffle seed=<u64>'");
      }
      try {
        file.shuffle_seed = std::stoull(seed_tok.substr(5));
      } catch (const std::exception&) {
        parse_error(path, line_no, "bad shuffle seed");
      }
      continue;
    }
    Order order;
    order.column.reserve(static_cast<std::size_t>(m));
    std::string tok;
    std::vector<double> values;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        parse_error(path, line_no, "bad number '" + tok + "'");
      }
    }
    if (static_cast<long long>(values.size()) != m + 1) {
      parse_error(path, line_no, "expected " + std::to_string(m + 1) + " values, found " +
                                     std::to_string(values.size()));
    }
    order.reward = values[0];
    order.column.assign(values.begin() + 1, values.end());
    file.orders.push_back(std::move(order));
  }
  if (n < 0) throw InvalidInput(path + ": missing header");
  if (static_cast<long long>(file.orders.size()) != n) {
    parse_error(path, line_no, "header declares n=" + std::to_string(n) + " but file has " +
                                   std::to_string(file.orders.size()) + " orders");
  }
  return file;
}

void fisher_yates(std::vector<Order>& orders, std::uint64_t seed) {
  RandomStream rng(seed);
  for (std::size_t i = orders.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(orders[i - 1], orders[j]);
  }
}

}  // namespace

std::string InputModel::id() const {
  switch (kind) {
    case ModelKind::kRandomInputI:
      return "ri1";
    case ModelKind::kRandomInputII:
      return "ri2";
    case ModelKind::kMultiSecretary:
      return "msec";
    case ModelKind::kUniformSquare:
      return "usq";
    case ModelKind::kFiniteSupport:
      return "finite";
    case ModelKind::kReplay:
      return "replay";
  }
  return "unknown";
}

ModelBounds InputModel::bounds(const Vector& d) const {
  const double root_m = std::sqrt(static_cast<double>(m));
  switch (kind) {
    case ModelKind::kRandomInputI:
      return bracket(10.0, root_m, d);
    case ModelKind::kMultiSecretary:
      return bracket(std::max(std::abs(reward_lo), std::abs(reward_hi)), 1.0, d);
    case ModelKind::kUniformSquare:
      return bracket(1.0, root_m, d);
    case ModelKind::kFiniteSupport: {
      double r_bar = 0.0;
      double a_bar = 0.0;
      for (const SupportPoint& s : support) {
        r_bar = std::max(r_bar, std::abs(s.reward));
        a_bar = std::max(a_bar, norm2(s.column));
      }
      return bracket(r_bar, a_bar, d);
    }
    case ModelKind::kRandomInputII:
    case ModelKind::kReplay:
      return ModelBounds::undeclared();
  }
  return ModelBounds::undeclared();
}

Vector InputModel::default_capacity() const {
  Vector d(m);
  for (int i = 0; i < m; ++i) d[i] = capacity_pattern[i % capacity_pattern.size()];
  return d;
}

Order InputModel::draw(std::uint64_t seed, std::uint64_t index) const {
  RandomStream rng(derive_seed(seed, index));
  Order order;
  order.column.resize(m);
  switch (kind) {
    case ModelKind::kRandomInputI:
      for (double& a : order.column) a = rng.uniform(-0.5, 1.0);
      order.reward = rng.uniform(0.0, 10.0);
      break;
    case ModelKind::kRandomInputII: {
      double sum = 0.0;
      for (double& a : order.column) {
        a = rng.normal(0.5, 1.0);
        sum += a;
      }
      order.reward = sum;
      break;
    }
    case ModelKind::kMultiSecretary:
      order.column[0] = 1.0;
      order.reward = reward_lo == reward_hi ? reward_lo : rng.uniform(reward_lo, reward_hi);
      break;
    case ModelKind::kUniformSquare:
      for (double& a : order.column) a = rng.uniform();
      order.reward = rng.uniform();
      break;
    case ModelKind::kFiniteSupport: {
      const double u = rng.uniform();
      double acc = 0.0;
      const SupportPoint* pick = &support.back();
      for (const SupportPoint& s : support) {
        acc += s.probability;
        if (u < acc) {
          pick = &s;
          break;
        }
      }
      order.reward = pick->reward;
      order.column = pick->column;
      break;
    }
    case ModelKind::kReplay:
      throw InvalidInput("replay models have no sampling distribution");
  }
  return order;
}

InputModel random_input_one(int m) {
  InputModel model;
  model.kind = ModelKind::kRandomInputI;
  model.m = m;
  return model;
}

InputModel random_input_two(int m) {
  InputModel model;
  model.kind = ModelKind::kRandomInputII;
  model.m = m;
  model.capacity_pattern = {0.2, 0.3};
  return model;
}

InputModel multi_secretary(double reward_lo, double reward_hi) {
  InputModel model;
  model.kind = ModelKind::kMultiSecretary;
  model.m = 1;
  model.reward_lo = reward_lo;
  model.reward_hi = reward_hi;
  validate(model);
  return model;
}

InputModel uniform_square(int m) {
  InputModel model;
  model.kind = ModelKind::kUniformSquare;
  model.m = m;
  return model;
}

InputModel finite_support(std::vector<SupportPoint> support) {
  InputModel model;
  model.kind = ModelKind::kFiniteSupport;
  model.m = support.empty() ? 0 : static_cast<int>(support.front().column.size());
  model.support = std::move(support);
  validate(model);
  return model;
}

InputModel replay(std::string path, int m) {
  InputModel model;
  model.kind = ModelKind::kReplay;
  model.m = m;
  model.replay_path = std::move(path);
  return model;
}

InputModel model_from_name(std::string_view name, int m) {
  if (name == "ri1") return random_input_one(m);
  if (name == "ri2") return random_input_two(m);
  if (name == "usq") return uniform_square(m);
  if (name == "msec") {
    if (m != 1) throw InvalidInput("multi-secretary model requires m = 1");
    return multi_secretary();
  }
  throw InvalidInput("unknown model '" + std::string(name) + "'");
}

void validate(const InputModel& model) {
  if (model.m < 1) throw InvalidInput("model dimension m must be positive");
  if (model.capacity_pattern.empty()) throw InvalidInput("capacity pattern is empty");
  switch (model.kind) {
    case ModelKind::kMultiSecretary:
      if (model.m != 1) throw InvalidInput("multi-secretary model requires m = 1");
      if (!(0.0 <= model.reward_lo && model.reward_lo <= model.reward_hi &&
            model.reward_hi <= 1.0)) {
        throw InvalidInput("multi-secretary rewards must satisfy 0 <= lo <= hi <= 1");
      }
      break;
    case ModelKind::kFiniteSupport: {
      if (model.support.empty()) throw InvalidInput("finite-support table is empty");
      double total = 0.0;
      for (const SupportPoint& s : model.support) {
        if (!(s.probability >= 0.0)) throw InvalidInput("negative support probability");
        if (static_cast<int>(s.column.size()) != model.m) {
          throw InvalidInput("finite-support column length differs from m");
        }
        total += s.probability;
      }
      if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("support probabilities must sum to 1");
      break;
    }
    case ModelKind::kReplay:
      if (model.replay_path.empty()) throw InvalidInput("replay model needs a file path");
      break;
    default:
      break;
  }
}

Instance generate_instance(const InputModel& model, int n, const Vector& d,
                           std::uint64_t seed) {
  validate(model);
  if (static_cast<int>(d.size()) != model.m) {
    throw InvalidInput("capacity vector length " + std::to_string(d.size()) +
                       " does not match model m=" + std::to_string(model.m));
  }
  std::vector<Order> orders;
  if (model.kind == ModelKind::kReplay) {
    ReplayFile file = read_replay(model.replay_path);
    orders = std::move(file.orders);
    if (static_cast<int>(orders.size()) != n) {
      throw InvalidInput("replay file holds " + std::to_string(orders.size()) +
                         " orders but n=" + std::to_string(n));
    }
    if (static_cast<int>(orders.front().dim()) != model.m) {
      throw InvalidInput("replay file m does not match the model m");
    }
    // Each trial seed draws its own arrival permutation of the file.
    if (file.shuffle_seed) fisher_yates(orders, derive_seed(*file.shuffle_seed, seed));
  } else {
    orders.reserve(n);
    for (int j = 0; j < n; ++j) orders.push_back(model.draw(seed, j));
  }
  return {std::move(orders), CapacitySpec(n, d, model.bounds(d))};
}

std::vector<Order> load_replay(const std::string& path) {
  ReplayFile file = read_replay(path);
  if (file.shuffle_seed) fisher_yates(file.orders, *file.shuffle_seed);
  return std::move(file.orders);
}

void save_replay(const std::string& path, const std::vector<Order>& orders,
                 std::optional<std::uint64_t> shuffle_seed) {
  if (orders.empty()) throw InvalidInput("cannot save an empty instance");
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write instance file " + path);
  out << "olp v1 n=" << orders.size() << " m=" << orders.front().dim() << '\n';
  if (shuffle_seed) out << "shuffle seed=" << *shuffle_seed << '\n';
  out << std::setprecision(17);
  for (const Order& o : orders) {
    out << o.reward;
    for (double a : o.column) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace olp
