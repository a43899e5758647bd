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

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

void check_twohub(int n) {
  if (n < 3) throw InvalidArgument("two-hub transfer needs N >= 3");
}

std::vector<std::string> labels(const char* stem, int count) {
  std::vector<std::string> out;
  for (int k = 1; k <= count; ++k) out.push_back(stem + std::to_string(k));
  return out;
}

}  // namespace

Phases twohub_phases(int n) {
  check_twohub(n);
  Phases p;
  p.omega1 = std::acos(1.0 - 4.0 / n);
  p.omega2 = std::acos(std::sqrt(1.0 - 2.0 / n));
  p.omega3 = std::numbers::pi - p.omega2;
  return p;
}

int twohub_transfer_steps(int n) {
  return closest_even(std::numbers::pi / twohub_phases(n).omega2);
}

ReducedOperator twohub_symmetric_block(int n) {
  check_twohub(n);
  const double N = n;
  const double a = std::sqrt(N - 2.0);
  const double r2 = std::sqrt(2.0);
  const Phases ph = twohub_phases(n);

  ReducedOperator op;
  op.labels = labels("sigma", 5);
  Eigen::MatrixXd& u = op.matrix;
  u = Eigen::MatrixXd::Zero(5, 5);
  u(0, 0) = 1.0 - 2.0 / N;
  u(1, 0) = -2.0 / N;
  u(3, 0) = -2.0 * a / N;
  u(0, 1) = -2.0 / N;
  u(1, 1) = 1.0 - 2.0 / N;
  u(3, 1) = -2.0 * a / N;
  u(0, 2) = -2.0 * a / N;
  u(1, 2) = -2.0 * a / N;
  u(3, 2) = -(1.0 - 4.0 / N);
  u(2, 3) = -(1.0 - 4.0 / N);
  u(4, 3) = 2.0 * r2 * a / N;
  u(2, 4) = 2.0 * r2 * a / N;
  u(4, 4) = 1.0 - 4.0 / N;

  Eigen::VectorXcd v(5);
  v << 1.0, -1.0, 0.0, 0.0, 0.0;
  detail::add_pair(op, "(1)_1", 1.0, v, EigenKind::exact);
  v << a, a, -2.0, -2.0, -r2 * a;
  detail::add_pair(op, "(1)_2", 1.0, v, EigenKind::exact);
  v << 1.0, 1.0, a, a, -r2;
  detail::add_pair(op, "-1", -1.0, v, EigenKind::exact);
  for (int sign : {+1, -1}) {
    v << 1.0 / r2, 1.0 / r2, -double(sign) * kI, double(sign) * kI, 1.0;
    detail::add_pair(op, sign > 0 ? "+omega1" : "-omega1", std::polar(1.0, sign * ph.omega1),
                     v, EigenKind::exact);
  }
  v << 0.5, 0.5, 0.0, 0.0, -1.0 / r2;
  detail::add_pair(op, "(1)_2~", 1.0, v, EigenKind::approximate);
  v << 0.0, 0.0, 1.0, 1.0, 0.0;
  detail::add_pair(op, "-1~", -1.0, v, EigenKind::approximate);

  op.unit_multiplicity = 2;
  op.phases = detail::sorted_phases({0.0, 0.0, std::numbers::pi, ph.omega1, -ph.omega1});
  return op;
}

ReducedOperator twohub_antisymmetric_block(int n) {
  check_twohub(n);
  const double N = n;
  const double a = std::sqrt(N - 2.0);
  const double r2 = std::sqrt(2.0);
  const Phases ph = twohub_phases(n);

  ReducedOperator op;
  op.labels = labels("tau", 4);
  Eigen::MatrixXd& u = op.matrix;
  u = Eigen::MatrixXd::Zero(4, 4);
  u(0, 0) = 1.0 - 2.0 / N;
  u(1, 0) = 2.0 / N;
  u(3, 0) = -2.0 * a / N;
  u(0, 1) = -2.0 / N;
  u(1, 1) = -(1.0 - 2.0 / N);
  u(3, 1) = -2.0 * a / N;
  u(0, 2) = -2.0 * a / N;
  u(1, 2) = 2.0 * a / N;
  u(3, 2) = -(1.0 - 4.0 / N);
  u(2, 3) = -1.0;

  const double c = std::cos(ph.omega2 / 2.0), s = std::sin(ph.omega2 / 2.0);
  Eigen::VectorXcd v(4);
  for (int sign : {+1, -1}) {
    const double g = sign;
    const cd e = std::polar(1.0, g * ph.omega2 / 2.0);
    v << c / r2, -g * kI * s / r2, -g * 0.5 * kI * std::conj(e), g * 0.5 * kI * e;
    detail::add_pair(op, sign > 0 ? "+omega2" : "-omega2", std::polar(1.0, g * ph.omega2), v,
                     EigenKind::exact);
    v << g * kI * s / r2, c / r2, g * 0.5 * kI * e, g * 0.5 * kI * std::conj(e);
    detail::add_pair(op, sign > 0 ? "+omega3" : "-omega3", std::polar(1.0, g * ph.omega3), v,
                     EigenKind::exact);
    v << 1.0 / r2, 0.0, -g * 0.5 * kI, g * 0.5 * kI;
    detail::add_pair(op, sign > 0 ? "+omega2~" : "-omega2~", std::polar(1.0, g * ph.omega2),
                     v, EigenKind::approximate);
    v << 0.0, 1.0 / r2, g * 0.5 * kI, g * 0.5 * kI;
    detail::add_pair(op, sign > 0 ? "+omega3~" : "-omega3~", std::polar(1.0, g * ph.omega3),
                     v, EigenKind::approximate);
  }

  op.unit_multiplicity = 0;
  op.phases =
      detail::sorted_phases({ph.omega2, -ph.omega2, ph.omega3, -ph.omega3});
  return op;
}

Eigen::MatrixXd twohub_symmetry_transform() {
  const double r2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(9, 9);
  for (int k = 0; k < 4; ++k) {
    q(2 * k, k) = r2;
    q(2 * k + 1, k) = r2;
    q(2 * k, 5 + k) = r2;
    q(2 * k + 1, 5 + k) = -r2;
  }
  q(8, 4) = 1.0;
  return q;
}

ReducedOperator twohub_reduced_matrix(int n) {
  const ReducedOperator plus = twohub_symmetric_block(n);
  const ReducedOperator minus = twohub_antisymmetric_block(n);
  const Eigen::MatrixXd q = twohub_symmetry_transform();

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(9, 9);
  block.topLeftCorner(5, 5) = plus.matrix;
  block.bottomRightCorner(4, 4) = minus.matrix;

  ReducedOperator op;
  op.labels = detail::nu_labels(9);
  op.matrix = q * block * q.transpose();
  const Eigen::MatrixXcd qc = q.cast<cd>();
  for (const auto& p : plus.eigenpairs) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    v.head(5) = p.vector;
    op.eigenpairs.push_back({p.label, p.eigenvalue, qc * v, p.kind});
  }
  for (const auto& p : minus.eigenpairs) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    v.tail(4) = p.vector;
    op.eigenpairs.push_back({p.label, p.eigenvalue, qc * v, p.kind});
  }
  op.unit_multiplicity = 2;
  std::vector<double> phases = plus.phases;
  phases.insert(phases.end(), minus.phases.begin(), minus.phases.end());
  op.phases = detail::sorted_phases(phases);
  return op;
}

TwohubAmplitudes twohub_amplitudes(int n, int t) {
  check_twohub(n);
  if (t < 0) throw InvalidArgument("step count must be non-negative");
  const double w2 = twohub_phases(n).omega2;
  TwohubAmplitudes out;
  out.t = t;
  out.even = t % 2 == 0;
  const double sign = out.even ? 1.0 : -1.0;
  out.sup_to_sup = 0.25 * (sign + std::cos(2.0 * w2 * t) -
                           std::cos(w2 * t) * (1.0 + sign));
  if (out.even) {
    const double x = w2 * (t / 2);
    const double s2 = std::pow(std::sin(x), 2);
    out.loop_to_loop = s2 * s2;
    out.arc_to_arc = s2 * s2;
    // Sign fixed by the exact reduced evolution.
    out.loop_to_sup = -s2 * std::sin(2.0 * x) / std::sqrt(2.0);
    out.sup_to_loop = -*out.loop_to_sup;
  }
  return out;
}

double qubit_transfer_fidelity(int n, double rho, double phi, int t) {
  if (t % 2 != 0) {
    throw ContractViolation("qubit transfer is defined on even step counts only");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidArgument("rho must lie in [0, 1]");
  const TwohubAmplitudes amp = twohub_amplitudes(n, t);
  const cd a = rho;
  const cd b = std::polar(std::sqrt(1.0 - rho * rho), phi);
  const cd amplitude = std::norm(a) * *amp.loop_to_loop + std::norm(b) * amp.sup_to_sup +
                       a * std::conj(b) * *amp.loop_to_sup +
                       std::conj(a) * b * *amp.sup_to_loop;
  return std::norm(amplitude);
}

Eigen::VectorXd twohub_superposition(int n, bool sender) {
  check_twohub(n);
  const double N = n;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
  c(sender ? 2 : 3) = 1.0 / std::sqrt(N - 1.0);
  c(sender ? 4 : 5) = std::sqrt((N - 2.0) / (N - 1.0));
  return c;
}

}  // namespace hubwalk::reduced
