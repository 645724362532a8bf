// Copyright 2026 The NLS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLS_TOOLS_CLI_HPP_
#define NLS_TOOLS_CLI_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNotConfigured = 78;

using Env = std::map<std::string, std::string>;

// Runs one invocation. `args` excludes the program name. Nothing is read
// from the process environment except through `env`.
int Run(const std::vector<std::string>& args, const Env& env, std::istream& in, std::ostream& out,
        std::ostream& err);

// Snapshot of the process environment.
Env ProcessEnv();

}  // namespace nls::cli

#endif  // NLS_TOOLS_CLI_HPP_
