// Copyright 2026 The byzrank Authors
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

#ifndef BYZRANK_TOOLS_CLI_H_
#define BYZRANK_TOOLS_CLI_H_

#include <ostream>

namespace byzrank::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCapacity = 3;

// Entry point shared by main() and the CLI tests.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace byzrank::cli

#endif  // BYZRANK_TOOLS_CLI_H_
