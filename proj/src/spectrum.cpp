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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hubwalk/errors.hpp"
#include "hubwalk/reduced.hpp"
#include "reduced_internal.hpp"

namespace hubwalk::reduced {

namespace detail {

double fold_phase(double a) {
  constexpr double pi = std::numbers::pi;
  while (a > pi) a -= 2 * pi;
  while (a <= -pi + 1e-9) a += 2 * pi;
  return a;
}

std::vector<double> sorted_phases(std::vector<double> phases) {
  for (double& p : phases) p = fold_phase(p);
  std::sort(phases.begin(), phases.end());
  return phases;
}

void add_pair(ReducedOperator& op, std::string label, std::complex<double> lambda,
              const Eigen::VectorXcd& v, EigenKind kind) {
  op.eigenpairs.push_back({std::move(label), lambda, v / v.norm(), kind});
}

void drop_labels(ReducedOperator& op, const std::vector<std::string>& full_labels,
                 const std::vector<std::string>& dropped) {
  std::vector<Eigen::Index> keep;
  op.labels.clear();
  for (std::size_t i = 0; i < full_labels.size(); ++i) {
    if (std::find(dropped.begin(), dropped.end(), full_labels[i]) == dropped.end()) {
      keep.push_back(static_cast<Eigen::Index>(i));
      op.labels.push_back(full_labels[i]);
    }
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = op.matrix(keep[i], keep[j]);
  }
  op.matrix = std::move(m);
  for (auto& pair : op.eigenpairs) {
    Eigen::VectorXcd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v(i) = pair.vector(keep[i]);
    pair.vector = v / v.norm();
  }
}

std::vector<std::string> nu_labels(int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back("nu" + std::to_string(i));
  return out;
}

}  // namespace detail

std::vector<double> numerical_spectrum(const Eigen::MatrixXd& matrix) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(matrix, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw ContractViolation("eigenvalue solver failed");
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    phases.push_back(std::arg(es.eigenvalues()(i)));
  }
  return detail::sorted_phases(std::move(phases));
}

int unit_multiplicity(const Eigen::MatrixXd& matrix, double tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(matrix, false);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - 1.0) < tol) ++count;
  }
  return count;
}

double eigenpair_residual(const ReducedOperator& op, EigenKind kind) {
  double worst = 0.0;
  const Eigen::MatrixXcd m = op.matrix.cast<std::complex<double>>();
  for (const auto& p : op.eigenpairs) {
    if (p.kind != kind) continue;
    worst = std::max(worst, (m * p.vector - p.eigenvalue * p.vector).norm());
  }
  return worst;
}

int closest_even(double x) { return 2 * static_cast<int>(std::floor(x / 2.0 + 0.5)); }

int closest_odd(double x) {
  return 2 * static_cast<int>(std::floor((x - 1.0) / 2.0 + 0.5)) + 1;
}

Eigen::VectorXd unit_coefficients(const std::vector<std::string>& labels,
                                  const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidArgument("no basis vector labelled " + label);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
  c(it - labels.begin()) = 1.0;
  return c;
}

std::vector<Eigen::VectorXd> reduced_trajectory(const Eigen::MatrixXd& matrix,
                                                Eigen::VectorXd c0, int t_max) {
  if (t_max < 0) throw InvalidArgument("step count must be non-negative");
  if (matrix.cols() != c0.size()) throw InvalidArgument("dimension mismatch");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  out.push_back(std::move(c0));
  for (int t = 0; t < t_max; ++t) out.push_back(matrix * out.back());
  return out;
}

}  // namespace hubwalk::reduced
