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

#include <stdexcept>
#include <string>

namespace spintomo {

/// A physics-level validation failure: the input is well formed but is not
/// an admissible state (non-Hermitian, wrong trace, negative eigenvalue, ...).
class InvalidState : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Input text that is not valid JSON or does not follow the expected schema.
class FormatError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge.
class NumericError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace spintomo
