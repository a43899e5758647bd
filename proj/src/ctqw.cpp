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

#include "hubwalk/ctqw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hubwalk/errors.hpp"

namespace hubwalk::ctqw {

namespace {

void check_transfer_config(int n, int s, int r) {
  if (s < 1 || r < 1) {
    throw InvalidArgument("need at least one sender and one receiver");
  }
  if (s + r >= n) {
    throw InvalidArgument("S + R = " + std::to_string(s + r) +
                          " must be smaller than N = " + std::to_string(n));
  }
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const Graph& g, const HubSpec& hubs,
                                  const Config& cfg) {
  hubs.validate(g);
  const int n = g.n_vertices();
  const double gamma = cfg.gamma_for(n);
  if (!(gamma > 0.0)) throw InvalidArgument("hopping rate gamma must be positive");
  Eigen::MatrixXd h = gamma * laplacian(g);
  const VertexSet marked = hubs.all();
  for (Vertex w : marked) {
    auto it = cfg.lambdas.find(w);
    h(w, w) += it != cfg.lambdas.end() ? it->second : cfg.default_lambda;
  }
  for (const auto& [v, lambda] : cfg.lambdas) {
    if (!g.contains(v)) throw InvalidArgument("potential on vertex out of range");
    if (!std::binary_search(marked.begin(), marked.end(), v)) {
      h(v, v) += lambda;
    }
  }
  return h;
}

State vertex_state(int n, Vertex v) {
  State psi = State::Zero(n);
  psi(v) = 1.0;
  return psi;
}

State group_state(int n, const VertexSet& vertices) {
  if (vertices.empty()) throw InvalidArgument("group state of empty vertex set");
  State psi = State::Zero(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(vertices.size()));
  for (Vertex v : vertices) psi(v) = amp;
  return psi;
}

State rest_state(int n, const VertexSet& excluded) {
  VertexSet rest;
  for (Vertex v = 0; v < n; ++v) {
    if (!std::binary_search(excluded.begin(), excluded.end(), v)) rest.push_back(v);
  }
  return group_state(n, rest);
}

Propagator::Propagator(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw ContractViolation("Hamiltonian must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ContractViolation("Hamiltonian is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigendecomposition failed");
  }
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

State Propagator::evolve(const State& psi0, double t) const {
  const Eigen::VectorXcd coeffs = eigenvectors_.transpose().cast<std::complex<double>>() * psi0;
  Eigen::VectorXcd phased(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    phased(k) = std::polar(1.0, -energies_(k) * t) * coeffs(k);
  }
  return eigenvectors_.cast<std::complex<double>>() * phased;
}

std::complex<double> Propagator::amplitude(const State& target, const State& psi0,
                                           double t) const {
  const Eigen::MatrixXcd vectors = eigenvectors_.cast<std::complex<double>>();
  const Eigen::VectorXcd in = vectors.transpose() * psi0;
  const Eigen::VectorXcd out = vectors.transpose() * target.conjugate();
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < in.size(); ++k) {
    sum += out(k) * std::polar(1.0, -energies_(k) * t) * in(k);
  }
  return sum;
}

State evolve(const Eigen::MatrixXd& h, const State& psi0, double t) {
  return Propagator(h).evolve(psi0, t);
}

Eigen::MatrixXd effective_hamiltonian(int n, int m, double gamma, double lambda) {
  if (m < 1 || m >= n) throw InvalidArgument("need 1 <= M < N");
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(m + 1, m + 1, -gamma);
  const double coupling = -gamma * std::sqrt(static_cast<double>(n - m));
  for (int w = 0; w < m; ++w) {
    h(w, w) = gamma * (n - 1 + lambda / gamma);
    h(w, m) = coupling;
    h(m, w) = coupling;
  }
  h(m, m) = gamma * m;
  return h;
}

Eigen::Matrix2d reduced_search_hamiltonian(int n, int m) {
  if (m < 1 || m >= n) throw InvalidArgument("need 1 <= M < N");
  const double off = std::sqrt(static_cast<double>(m) * (n - m));
  Eigen::Matrix2d h;
  h << m, off, off, -m;
  return -h / n;
}

ReducedModel reduced_transfer_hamiltonian(int n, int s, int r) {
  check_transfer_config(n, s, r);
  const int m = s + r;
  const double rs = std::sqrt(static_cast<double>(r) * s);
  const double sg = std::sqrt(static_cast<double>(s) * (n - m));
  const double rg = std::sqrt(static_cast<double>(r) * (n - m));
  ReducedModel model;
  model.labels = {"S", "R", "g"};
  model.matrix.resize(3, 3);
  model.matrix << s, rs, sg, rs, r, rg, sg, rg, -m;
  model.matrix *= -1.0 / n;

  const double e = std::sqrt(static_cast<double>(m) / n);
  model.e0 = 0.0;
  model.e_plus = e;
  model.e_minus = -e;

  const double root_s = std::sqrt(static_cast<double>(s));
  const double root_r = std::sqrt(static_cast<double>(r));
  model.eigenvectors.resize(3, 3);
  model.eigenvectors.col(0) << root_r, -root_s, 0.0;
  model.eigenvectors.col(0) /= std::sqrt(static_cast<double>(m));
  for (int sign : {+1, -1}) {
    const double energy = sign * e;
    const double a = std::sqrt((1.0 - energy) / (2.0 * m));
    const double b = -sign * std::sqrt((1.0 + energy) / 2.0);
    model.eigenvectors.col(sign > 0 ? 1 : 2) << a * root_s, a * root_r, b;
  }
  return model;
}

std::vector<State> transfer_basis(const Graph& g, const VertexSet& senders,
                                  const VertexSet& receivers) {
  HubSpec spec{.marked = {}, .senders = senders, .receivers = receivers};
  spec.validate(g);
  const int n = g.n_vertices();
  return {group_state(n, senders), group_state(n, receivers),
          rest_state(n, spec.all())};
}

std::complex<double> transfer_amplitude(int n, int s, int r, double t) {
  check_transfer_config(n, s, r);
  const int m = s + r;
  const double e = std::sqrt(static_cast<double>(m) / n);
  const double pre = std::sqrt(static_cast<double>(r) * s) / m;
  return pre * std::complex<double>(1.0 - std::cos(e * t), e * std::sin(e * t));
}

double transfer_fidelity(int n, int s, int r, double t) {
  check_transfer_config(n, s, r);
  const double m = s + r;
  const double e = std::sqrt(m / n);
  const double half = std::sin(e * t / 2.0);
  const double full = std::sin(e * t);
  return 4.0 * r * s / (m * m) * std::pow(half, 4) + r * s / (n * m) * full * full;
}

double max_transfer_fidelity(int s, int r) {
  const double m = s + r;
  return 4.0 * r * s / (m * m);
}

double transfer_time(int n, int s, int r) {
  check_transfer_config(n, s, r);
  return std::numbers::pi * std::sqrt(static_cast<double>(n) / (s + r));
}

double search_runtime(int n, int m) {
  if (m < 1 || m >= n) throw InvalidArgument("need 1 <= M < N");
  return std::numbers::pi / 2.0 * std::sqrt(static_cast<double>(n) / m);
}

}  // namespace hubwalk::ctqw
