// Copyright 2026 The hubwalk Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace hubwalk::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kValidationFailure = 2 };

/// argv[0] is the program name. Writes results to `out` (or the --output
/// file) and diagnostics to `err`.
int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err);

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err);

}  // namespace hubwalk::cli
