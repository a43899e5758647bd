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

#include <cmath>
#include <numbers>

#include "hubwalk/errors.hpp"
#include "hubwalk/reduced.hpp"
#include "reduced_internal.hpp"

namespace hubwalk::reduced {
namespace {

void check_search(int n, int m) {
  if (m < 1 || m >= n) throw InvalidArgument("search needs 1 <= M < N");
}

}  // namespace

double search_phase(int n, int m) {
  check_search(n, m);
  return std::acos(1.0 - 2.0 * m / n);
}

int search_optimal_steps(int n, int m) {
  return static_cast<int>(std::lround(std::numbers::pi / search_phase(n, m)));
}

ReducedOperator search_reduced_matrix(int n, int m) {
  check_search(n, m);
  const double N = n, M = m;
  const double a = std::sqrt(M - 1.0), b = std::sqrt(N - M), c = 1.0 - 2.0 * M / N;
  const double w = search_phase(n, m);

  ReducedOperator op;
  Eigen::MatrixXd& u = op.matrix;
  u = Eigen::MatrixXd::Zero(5, 5);
  u(0, 0) = 1.0 - 2.0 / N;
  u(1, 0) = -2.0 * a / N;
  u(3, 0) = -2.0 * b / N;
  u(0, 1) = -2.0 * a / N;
  u(1, 1) = 1.0 - 2.0 * (M - 1.0) / N;
  u(3, 1) = -2.0 * a * b / N;
  u(0, 2) = -2.0 * b / N;
  u(1, 2) = -2.0 * a * b / N;
  u(3, 2) = -c;
  u(2, 3) = -c;
  u(4, 3) = 2.0 * std::sqrt(M * (N - M)) / N;
  u(2, 4) = 2.0 * std::sqrt(M * (N - M)) / N;
  u(4, 4) = c;

  using V = Eigen::VectorXcd;
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  V v(5);
  v << b, b * a, -M, -M, -std::sqrt(M * (N - M));
  detail::add_pair(op, "(1)_1", 1.0, v, EigenKind::exact);
  if (m > 1) {
    v << a, -1.0, 0.0, 0.0, 0.0;
    detail::add_pair(op, "(1)_2", 1.0, v, EigenKind::exact);
  }
  v << 1.0, a, b, b, -std::sqrt(M);
  detail::add_pair(op, "-1", -1.0, v, EigenKind::exact);
  for (int sign : {+1, -1}) {
    v << 1.0 / std::sqrt(M), a / std::sqrt(M), -double(sign) * i, double(sign) * i, 1.0;
    detail::add_pair(op, sign > 0 ? "+omega" : "-omega", std::polar(1.0, sign * w), v,
                     EigenKind::exact);
  }

  op.unit_multiplicity = m > 1 ? 2 : 1;
  std::vector<double> phases{std::numbers::pi, w, -w};
  for (int k = 0; k < op.unit_multiplicity; ++k) phases.push_back(0.0);
  op.phases = detail::sorted_phases(phases);

  std::vector<std::string> dropped;
  if (m == 1) dropped.push_back("nu2");
  detail::drop_labels(op, detail::nu_labels(5), dropped);
  return op;
}

SearchAmplitudes search_probabilities(int n, int m, int t) {
  check_search(n, m);
  if (t < 0) throw InvalidArgument("step count must be non-negative");
  const double N = n, M = m;
  const double w = search_phase(n, m);
  const double parity = (t % 2 == 0) ? 2.0 : 0.0;

  SearchAmplitudes out;
  out.t = t;
  out.even = t % 2 == 0;
  out.nu1 = (std::cos(w * t) - 1.0 + parity * M / N) / (2.0 * std::sqrt(M));
  out.nu2 = std::sqrt(M - 1.0) * out.nu1;
  out.nu3 = 0.5 * std::sin(w * t) + parity * std::sqrt(M * (N - M)) / (2.0 * N);
  out.p1 = out.nu1 * out.nu1;
  out.p2 = out.nu2 * out.nu2;
  out.p3 = out.nu3 * out.nu3;
  out.p = out.p1 + out.p2 + out.p3;

  const double s4 = std::pow(std::sin(w * t / 2.0), 4);
  out.p1_approx = s4 / M;
  out.p2_approx = (M - 1.0) / M * s4;
  out.p3_approx = 0.25 * std::pow(std::sin(w * t), 2);
  out.p_approx = out.p1_approx + out.p2_approx + out.p3_approx;

  const int half = t / 2;
  out.p_parity = std::pow(std::sin(w * (2 * half + 1) / 2.0), 2);
  return out;
}

Eigen::VectorXd search_initial_coefficients(int n, int m) {
  check_search(n, m);
  const double N = n, M = m;
  const double x = std::sqrt(M * (N - M)) / N;
  Eigen::VectorXd c(m > 1 ? 5 : 4);
  if (m > 1) {
    c << std::sqrt(M) / N, std::sqrt(M * (M - 1.0)) / N, x, x, (N - M) / N;
  } else {
    c << std::sqrt(M) / N, x, x, (N - M) / N;
  }
  return c;
}

}  // namespace hubwalk::reduced
