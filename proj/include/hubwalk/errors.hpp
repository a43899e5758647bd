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

#include <stdexcept>

namespace hubwalk {

/// Bad user-supplied value: sizes, probabilities, unparsable input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition of the model was violated, e.g. a marked vertex that is
/// not a hub or a non-symmetric Hamiltonian.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Random graph generation exhausted its retry budget.
class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hubwalk
