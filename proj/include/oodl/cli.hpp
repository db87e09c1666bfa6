// Copyright 2026 The oodl Authors
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

#pragma once

#include <iosfwd>

namespace oodl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitViolation = 3;

/// Command-line entry point. Writes results.csv, config.echo.json and
/// manifest.json (plus experiment extras) into --out and returns the exit
/// code: 0 success, 2 configuration error, 3 audit or bound violation.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int cli_main(int argc, const char *const *argv);

}  // namespace oodl
