// Copyright 2026 The excl Authors
//
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

#pragma once

#include <string>
#include <vector>

namespace excl::cli {

// Exit codes: 0 success/optimal, 1 certificate valid but not optimal,
// 2 iteration limit, 3 parse or validation error, 4 numerical failure,
// 5 degenerate parameter (k, m, eps), 6 problem size cap.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotOptimal = 1;
inline constexpr int kExitMaxIters = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitDegenerate = 5;
inline constexpr int kExitScaleCap = 6;

int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace excl::cli
