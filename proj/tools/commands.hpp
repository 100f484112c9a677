// Copyright 2026 The Spintomo Authors
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

// Subcommand dispatch for the spintomo executable, kept separate from main()
// so tests can drive it in-process.

#include <optional>
#include <string>
#include <vector>

namespace spintomo::cli {

/// Name of the environment variable overriding the state-validity tolerance.
inline constexpr const char* kToleranceVariable = "SPINTOMO_TOLERANCE";

struct Environment {
    double tolerance = 1e-9;
};

/// Reads the process environment. Throws std::invalid_argument on a malformed value.
Environment environment_from_process();

struct Outcome {
    int exit_code = 0;
    std::string out;  // JSON result (when not written to a file) or help text
    std::string err;  // JSON error object on failure
};

/// Runs one command; `args` excludes the program name.
Outcome run(const std::vector<std::string>& args, const Environment& env = {});

}  // namespace spintomo::cli
