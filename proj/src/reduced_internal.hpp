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

// Helpers shared by the reduced_*.cpp translation units.

#include <string>
#include <vector>

#include "hubwalk/reduced.hpp"

namespace hubwalk::reduced::detail {

/// Adds a normalized eigenpair; `v` is given in the full (undropped) labels.
void add_pair(ReducedOperator& op, std::string label, std::complex<double> lambda,
              const Eigen::VectorXcd& v, EigenKind kind);

/// Removes rows/columns of `dropped` from `op.matrix` and the matching
/// coordinates of every eigenvector. `full_labels` names the current rows.
void drop_labels(ReducedOperator& op, const std::vector<std::string>& full_labels,
                 const std::vector<std::string>& dropped);

std::vector<double> sorted_phases(std::vector<double> phases);

/// Folds an angle into (-pi, pi].
double fold_phase(double a);

std::vector<std::string> nu_labels(int count);

}  // namespace hubwalk::reduced::detail
