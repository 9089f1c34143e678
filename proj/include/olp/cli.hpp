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

// Command-line frontend. Subcommands `regret`, `dualconv`, `trajectory` and
// `verify` read a TOML-style key/value config (--config) whose keys match the
// long option names; flags given on the command line override file keys.

#ifndef OLP_CLI_HPP_
#define OLP_CLI_HPP_

#include <iosfwd>

namespace olp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

// CSV goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olp

#endif  // OLP_CLI_HPP_
