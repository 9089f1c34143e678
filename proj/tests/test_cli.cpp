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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "olp/cli.hpp"
#include "test_util.hpp"

namespace olp {
namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "olp");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("# timestamp=", 0) != 0) kept += line + "\n";
  }
  return kept;
}

std::string write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

TEST_SUITE("cli") {

TEST_CASE("missing trials is a config error naming the key") {
  const auto dir = testing::scratch_dir("cli-missing");
  const std::string cfg = write(dir / "bad.toml", "model = \"usq\"\nm = 2\nn = [30]\n");
  const Run r = run({"regret", "--config", cfg});
  CHECK(r.code == kExitConfigError);
  CHECK(r.err.find("trials") != std::string::npos);
}

TEST_CASE("other config errors exit 2") {
  CHECK(run({"regret", "--model", "nope", "--n", "30", "--trials", "2"}).code == kExitConfigError);
  CHECK(run({"regret", "--model", "usq", "--m", "2", "--n", "30", "--trials", "2",
             "--algorithms", "A9"}).code == kExitConfigError);
  CHECK(run({"dualconv", "--model", "msec", "--n", "50", "20", "--trials", "3"}).code ==
        kExitConfigError);
  CHECK(run({"regret", "--model", "usq", "--m", "2", "--d", "0.1", "0.2", "0.3", "--n", "30",
             "--trials", "3"}).code == kExitConfigError);
  CHECK(run({"regret", "--bogus", "1"}).code == kExitConfigError);
  CHECK(run({}).code == kExitConfigError);
  const auto dir = testing::scratch_dir("cli-extra");
  const Run extra = run({"verify", "--config", write(dir / "x.toml", "unknown_key = 1\n")});
  CHECK(extra.code == kExitConfigError);
  CHECK(extra.err.find("unknown_key") != std::string::npos);
}

TEST_CASE("verify prints pass/fail counts") {
  const Run r = run({"verify", "--cases", "30", "--seed", "5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("check,passed,failed,worst") != std::string::npos);
  CHECK(r.out.find("failed=0") != std::string::npos);
  CHECK(r.out.find("oracle_equivalence,30,0") != std::string::npos);
}

TEST_CASE("regret CSV: header block, columns, determinism and flag override") {
  const auto dir = testing::scratch_dir("cli-regret");
  const std::string cfg = write(dir / "r.toml",
                                "model = \"usq\"\nm = 2\nn = [30, 60]\ntrials = 5\n"
                                "samples = 20000\nalgorithms = [\"A1\", \"A2\", \"A3\"]\n");
  const Run a = run({"regret", "--config", cfg, "--trials", "3"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out.find("# config_hash=") != std::string::npos);
  CHECK(a.out.find("# build=") != std::string::npos);
  CHECK(a.out.find("# seed=42") != std::string::npos);
  CHECK(a.out.find("# normal_sampler=marsaglia-polar/splitmix64") != std::string::npos);
  CHECK(a.out.find("model,algorithm,m,n,trials,mean_regret,stderr,mean_binding_leftover,"
                   "mean_stop_gap,mean_price_error") != std::string::npos);
  CHECK(a.out.find("usq,A3,2,60,3,") != std::string::npos);

  const Run b = run({"regret", "--config", cfg, "--trials", "3", "--threads", "2"});
  CHECK(body(a.out) == body(b.out));

  const std::string file = (dir / "out.csv").string();
  REQUIRE(run({"regret", "--config", cfg, "--out", file}).code == kExitOk);
  std::ifstream in(file);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("model,", 0) == 0) continue;
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    for (int c = 0; std::getline(fields, cell, ','); ++c) {
      if (c >= 5) CHECK(std::isfinite(std::stod(cell)));
    }
  }
  CHECK(rows == 6);
}

TEST_CASE("dualconv and trajectory outputs") {
  const Run d = run({"dualconv", "--model", "msec", "--d", "0.25", "--n", "50", "200",
                     "--trials", "4"});
  REQUIRE(d.code == kExitOk);
  CHECK(d.out.find("model,m,n,trials,mean_sq_error,stderr,degenerate_draws") != std::string::npos);
  CHECK(d.out.find("msec,1,200,4,") != std::string::npos);

  const Run t = run({"trajectory", "--model", "usq", "--m", "2", "--n", "40", "--trials", "2",
                     "--algorithms", "A2", "A3", "--constraint", "1"});
  REQUIRE(t.code == kExitOk);
  CHECK(t.out.find("algorithm,trial,t,remaining") != std::string::npos);
  CHECK(t.out.find("A3,1,40,") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace olp
