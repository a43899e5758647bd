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

void check_multihub(int n, int s, int r) {
  if (s < 1 || r < 1) throw InvalidArgument("need S >= 1 and R >= 1");
  if (s + r >= n) throw InvalidArgument("transfer needs S + R < N");
}

std::vector<std::string> dropped_labels(int s, int r) {
  std::vector<std::string> out;
  if (s == 1) out.push_back("nu10");
  if (r == 1) out.push_back("nu11");
  return out;
}

}  // namespace

Phases multihub_phases(int n, int s, int r) {
  check_multihub(n, s, r);
  Phases p;
  p.omega1 = std::acos(1.0 - 2.0 * (r + s) / n);
  p.omega2 = p.omega1 / 2.0;
  p.omega3 = std::numbers::pi - p.omega2;
  return p;
}

ReducedOperator multihub_reduced_matrix(int n, int s, int r) {
  check_multihub(n, s, r);
  const double N = n, S = s, R = r, M = s + r;
  const double nm = std::sqrt(N - M);
  const double sq_s = std::sqrt(S), sq_r = std::sqrt(R);
  const double s1 = std::sqrt(S - 1.0), r1 = std::sqrt(R - 1.0);
  const Phases ph = multihub_phases(n, s, r);

  ReducedOperator op;
  Eigen::MatrixXd& u = op.matrix;
  u = Eigen::MatrixXd::Zero(11, 11);
  // Column j holds U nu_j; indices are zero-based.
  auto col = [&](int j, std::initializer_list<std::pair<int, double>> entries) {
    for (const auto& [i, x] : entries) u(i - 1, j - 1) = x;
  };
  col(1, {{1, 1 - 2 / N}, {4, -2 * sq_r / N}, {7, -2 * nm / N}, {10, -2 * s1 / N}});
  col(2, {{2, 1 - 2 / N}, {3, -2 * sq_s / N}, {8, -2 * nm / N}, {11, -2 * r1 / N}});
  col(3, {{1, -2 * sq_r / N},
          {4, 1 - 2 * R / N},
          {7, -2 * sq_r * nm / N},
          {10, -2 * sq_r * s1 / N}});
  col(4, {{2, -2 * sq_s / N},
          {3, 1 - 2 * S / N},
          {8, -2 * sq_s * nm / N},
          {11, -2 * sq_s * r1 / N}});
  col(5, {{1, -2 * nm / N}, {4, -2 * nm * sq_r / N}, {10, -2 * nm * s1 / N}, {7, -(1 - 2 * M / N)}});
  col(6, {{2, -2 * nm / N}, {3, -2 * nm * sq_s / N}, {11, -2 * nm * r1 / N}, {8, -(1 - 2 * M / N)}});
  col(7, {{5, -(1 - 2 * S / N)}, {6, 2 * sq_r * sq_s / N}, {9, 2 * sq_s * nm / N}});
  col(8, {{5, 2 * sq_r * sq_s / N}, {6, -(1 - 2 * R / N)}, {9, 2 * sq_r * nm / N}});
  col(9, {{5, 2 * nm * sq_s / N}, {6, 2 * nm * sq_r / N}, {9, 1 - 2 * M / N}});
  col(10, {{1, -2 * s1 / N},
           {4, -2 * s1 * sq_r / N},
           {7, -2 * s1 * nm / N},
           {10, 1 - 2 * (S - 1) / N}});
  col(11, {{2, -2 * r1 / N},
           {3, -2 * r1 * sq_s / N},
           {8, -2 * r1 * nm / N},
           {11, 1 - 2 * (R - 1) / N}});

  const double srs = std::sqrt(R * S);
  const double ss1 = std::sqrt(S * (S - 1.0)), rr1 = std::sqrt(R * (R - 1.0));
  Eigen::VectorXcd v(11);
  v << R / sq_s, S / sq_r, -srs, -srs, 0, 0, 0, 0, 0, R * s1 / sq_s, S * r1 / sq_r;
  detail::add_pair(op, "(1)_1", 1.0, v, EigenKind::exact);
  v << nm * sq_s, nm * sq_r, nm * srs, nm * srs, -M * sq_s, -M * sq_r, -M * sq_s, -M * sq_r,
      -M * nm, nm * ss1, nm * rr1;
  detail::add_pair(op, "(1)_2", 1.0, v, EigenKind::exact);
  if (s > 1) {
    v << s1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0;
    detail::add_pair(op, "(1)_3", 1.0, v, EigenKind::exact);
  }
  if (r > 1) {
    v << 0, r1, 0, 0, 0, 0, 0, 0, 0, 0, -1;
    detail::add_pair(op, "(1)_4", 1.0, v, EigenKind::exact);
  }
  v << sq_s, sq_r, srs, srs, nm * sq_s, nm * sq_r, nm * sq_s, nm * sq_r, -M, ss1, rr1;
  detail::add_pair(op, "-1", -1.0, v, EigenKind::exact);
  const double rm = std::sqrt(M);
  for (int sign : {+1, -1}) {
    const cd g = double(sign) * kI * rm;
    v << sq_s, sq_r, srs, srs, -g * sq_s, -g * sq_r, g * sq_s, g * sq_r, M, ss1, rr1;
    detail::add_pair(op, sign > 0 ? "+omega1" : "-omega1", std::polar(1.0, sign * ph.omega1),
                     v, EigenKind::exact);
  }

  v << sq_s, sq_r, srs, srs, 0, 0, 0, 0, -M, ss1, rr1;
  detail::add_pair(op, "(1)_2~", 1.0, v, EigenKind::approximate);
  v << 0, 0, 0, 0, sq_s, sq_r, sq_s, sq_r, 0, 0, 0;
  detail::add_pair(op, "-1~", -1.0, v, EigenKind::approximate);
  for (int sign : {+1, -1}) {
    const cd g = double(sign) * kI * rm;
    v << 2 * sq_r, -2 * sq_s, R - S, R - S, -g * sq_r, g * sq_s, g * sq_r, -g * sq_s, 0,
        2 * sq_r * s1, -2 * sq_s * r1;
    detail::add_pair(op, sign > 0 ? "+omega2~" : "-omega2~", std::polar(1.0, sign * ph.omega2),
                     v, EigenKind::approximate);
    v << 0, 0, M, -M, g * sq_r, -g * sq_s, g * sq_r, -g * sq_s, 0, 0, 0;
    detail::add_pair(op, sign > 0 ? "+omega3~" : "-omega3~", std::polar(1.0, sign * ph.omega3),
                     v, EigenKind::approximate);
  }

  op.unit_multiplicity = 2 + (s > 1 ? 1 : 0) + (r > 1 ? 1 : 0);
  std::vector<double> phases{std::numbers::pi, ph.omega1, -ph.omega1, ph.omega2,
                             -ph.omega2, ph.omega3, -ph.omega3};
  for (int k = 0; k < op.unit_multiplicity; ++k) phases.push_back(0.0);
  op.phases = detail::sorted_phases(phases);

  detail::drop_labels(op, detail::nu_labels(11), dropped_labels(s, r));
  return op;
}

double multihub_max_even(int s, int r) {
  const double m = s + r;
  return 4.0 * r * s / (m * m);
}

double multihub_max_odd(int s, int r) { return static_cast<double>(r) / (s + r); }

int multihub_even_steps(int n, int s, int r) {
  return closest_even(std::numbers::pi / multihub_phases(n, s, r).omega2);
}

int multihub_odd_steps(int n, int s, int r) {
  return closest_odd(std::numbers::pi / (2.0 * multihub_phases(n, s, r).omega2));
}

MultihubAmplitudes multihub_transfer_probability(int n, int s, int r, int t,
                                                 MultihubStart start) {
  check_multihub(n, s, r);
  if (t < 0) throw InvalidArgument("step count must be non-negative");
  const double S = s, R = r, M = s + r;
  const double w2 = multihub_phases(n, s, r).omega2;
  const double m3 = std::sqrt(R * S / (M * M * M));

  MultihubAmplitudes out;
  out.t = t;
  out.even = t % 2 == 0;
  out.start = start;
  if (start == MultihubStart::loops) {
    const double x = w2 * t;
    const double h2 = std::pow(std::sin(x / 2.0), 2);
    out.nu2 = 4.0 * std::sqrt(R * S) / (M * M) * h2 * h2;
    out.nu4 = -2.0 * std::sqrt(R) / (M * M) * (R + S * std::cos(x)) * h2;
    out.nu6 = -2.0 * m3 * std::sin(x) * h2;
    out.nu11 = 4.0 * std::sqrt(R * S * (R - 1.0)) / (M * M) * h2 * h2;
    out.probability = 4.0 * R / (M * M) * h2 * h2;
  } else if (out.even) {
    const double x = w2 * (t / 2);
    const double s2 = std::pow(std::sin(x), 2);
    out.nu2 = 2.0 * m3 * std::sin(2.0 * x) * s2;
    out.nu4 = std::sqrt(S) * out.nu2;
    out.nu6 = -2.0 * std::sqrt(R * S) / M * std::cos(2.0 * x) * s2;
    out.nu11 = std::sqrt(R - 1.0) * out.nu2;
    out.probability = 4.0 * R * S / (M * M) * s2 * s2;
  } else {
    const double x = w2 * t;
    out.nu2 = 2.0 * m3 * std::sin(x) * std::pow(std::sin(x / 2.0), 2);
    out.nu4 = -std::sqrt(R / (M * M * M)) * (R + S * std::cos(x)) * std::sin(x);
    out.nu6 = -std::sqrt(R * S) / M * std::pow(std::sin(x), 2);
    out.nu11 = std::sqrt(R - 1.0) * out.nu2;
    out.probability = R / M * std::pow(std::sin(x), 2);
  }
  out.amplitude_sum =
      out.nu2 * out.nu2 + out.nu4 * out.nu4 + out.nu6 * out.nu6 + out.nu11 * out.nu11;
  return out;
}

Eigen::VectorXd multihub_superposition(int n, int s, int r) {
  check_multihub(n, s, r);
  const double N = n, S = s, R = r, M = s + r;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(11);
  full(2) = std::sqrt(R / (N - 1.0));
  full(4) = std::sqrt((N - M) / (N - 1.0));
  full(9) = std::sqrt((S - 1.0) / (N - 1.0));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < 11; ++i) {
    if ((i == 9 && s == 1) || (i == 10 && r == 1)) continue;
    keep.push_back(i);
  }
  Eigen::VectorXd c(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) c(static_cast<Eigen::Index>(k)) = full(keep[k]);
  return c;
}

}  // namespace hubwalk::reduced
