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

#include "hubwalk/dtqw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "hubwalk/errors.hpp"

namespace hubwalk::dtqw {

ArcBasis::ArcBasis(Graph g) : graph_(std::move(g)) {
  const int n = graph_.n_vertices();
  offsets_.reserve(static_cast<std::size_t>(n) + 1);
  arcs_.reserve(2 * graph_.n_edges() + static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    offsets_.push_back(arcs_.size());
    for (Vertex w : graph_.neighbours(v)) arcs_.push_back({v, w});
    arcs_.push_back({v, v});
  }
  offsets_.push_back(arcs_.size());

  reverse_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    reverse_[i] = index(arcs_[i].target, arcs_[i].source);
  }
}

std::size_t ArcBasis::index(Vertex v, Vertex w) const {
  if (!graph_.contains(v) || !graph_.contains(w)) {
    throw InvalidArgument("arc (" + std::to_string(v) + "," + std::to_string(w) +
                          ") references a vertex out of range");
  }
  if (v == w) return loop_index(v);
  const auto& nbrs = graph_.neighbours(v);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), w);
  if (it == nbrs.end() || *it != w) {
    throw InvalidArgument("(" + std::to_string(v) + "," + std::to_string(w) +
                          ") is not an edge");
  }
  return offsets_[v] + static_cast<std::size_t>(it - nbrs.begin());
}

ArcBasis build_arc_basis(const Graph& g) { return ArcBasis(g); }

Eigen::MatrixXd grover_coin(int d, double l) {
  if (d < 1 || !(l >= 0.0)) {
    throw InvalidArgument("Grover coin needs degree >= 1 and loop weight >= 0");
  }
  Eigen::VectorXd w = Eigen::VectorXd::Ones(d + 1);
  w(d) = std::sqrt(l);
  w /= std::sqrt(d + l);
  return 2.0 * w * w.transpose() - Eigen::MatrixXd::Identity(d + 1, d + 1);
}

StepOperator::StepOperator(const ArcBasis& basis, VertexSet marked)
    : marked_(make_vertex_set(std::move(marked))),
      reverse_(basis.reverse_permutation()) {
  const Graph& g = basis.graph();
  const int n = g.n_vertices();
  offsets_.resize(static_cast<std::size_t>(n) + 1);
  loop_weight_.resize(static_cast<std::size_t>(n));
  sign_.assign(static_cast<std::size_t>(n), +1);
  for (Vertex v = 0; v < n; ++v) {
    offsets_[v] = basis.block_begin(v);
    loop_weight_[v] = static_cast<double>(n - g.degree(v));
  }
  offsets_[n] = basis.size();
  for (Vertex m : marked_) {
    if (!g.contains(m)) {
      throw InvalidArgument("marked vertex " + std::to_string(m) + " out of range");
    }
    if (!g.is_hub(m)) {
      throw ContractViolation("marked vertex " + std::to_string(m) +
                              " is not a hub (degree " + std::to_string(g.degree(m)) +
                              ", need " + std::to_string(n - 1) + ")");
    }
    sign_[m] = -1;
  }
}

State StepOperator::apply_coin(const State& psi) const {
  if (static_cast<std::size_t>(psi.size()) != dimension()) {
    throw InvalidArgument("state dimension does not match the arc basis");
  }
  State out(psi.size());
  const int n = n_vertices();
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t begin = offsets_[v];
    const std::size_t loop = offsets_[v + 1] - 1;
    const double d = static_cast<double>(loop - begin);
    const double root_l = std::sqrt(loop_weight_[v]);
    const double norm = 1.0 / std::sqrt(d + loop_weight_[v]);
    std::complex<double> overlap = root_l * psi(loop);
    for (std::size_t i = begin; i < loop; ++i) overlap += psi(i);
    overlap *= norm;
    // G x = 2 w (w . x) - x, scaled by the coin sign.
    const std::complex<double> arc_part = 2.0 * norm * overlap;
    const double sign = sign_[v];
    for (std::size_t i = begin; i < loop; ++i) out(i) = sign * (arc_part - psi(i));
    out(loop) = sign * (root_l * arc_part - psi(loop));
  }
  return out;
}

State StepOperator::apply_shift(const State& psi) const {
  State out(psi.size());
  for (std::size_t i = 0; i < reverse_.size(); ++i) out(reverse_[i]) = psi(i);
  return out;
}

void StepOperator::apply_into(const State& psi, State& out) const {
  if (static_cast<std::size_t>(psi.size()) != dimension()) {
    throw InvalidArgument("state dimension does not match the arc basis");
  }
  out.resize(psi.size());
  const int n = n_vertices();
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t begin = offsets_[v];
    const std::size_t loop = offsets_[v + 1] - 1;
    const double d = static_cast<double>(loop - begin);
    const double root_l = std::sqrt(loop_weight_[v]);
    const double norm = 1.0 / std::sqrt(d + loop_weight_[v]);
    std::complex<double> overlap = root_l * psi(loop);
    for (std::size_t i = begin; i < loop; ++i) overlap += psi(i);
    const std::complex<double> arc_part = 2.0 * norm * norm * overlap;
    const double sign = sign_[v];
    for (std::size_t i = begin; i < loop; ++i) {
      out(reverse_[i]) = sign * (arc_part - psi(i));
    }
    out(loop) = sign * (root_l * arc_part - psi(loop));
  }
}

State StepOperator::apply(const State& psi) const {
  State out;
  apply_into(psi, out);
  return out;
}

Eigen::MatrixXd StepOperator::to_dense() const {
  if (n_vertices() > 64) {
    throw InvalidArgument("dense step operator is limited to N <= 64");
  }
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd u(dim, dim);
  State e = State::Zero(dim);
  State col;
  for (Eigen::Index j = 0; j < dim; ++j) {
    e(j) = 1.0;
    apply_into(e, col);
    u.col(j) = col.real();
    e(j) = 0.0;
  }
  return u;
}

StepOperator build_step_operator(const ArcBasis& basis, const VertexSet& marked) {
  return StepOperator(basis, marked);
}

State apply_steps(const StepOperator& u, State psi, int t) {
  if (t < 0) throw InvalidArgument("step count must be non-negative");
  State scratch;
  for (int k = 0; k < t; ++k) {
    u.apply_into(psi, scratch);
    psi.swap(scratch);
  }
  return psi;
}

State uniform_eigenstate(const ArcBasis& basis) {
  const int n = basis.n_vertices();
  State psi(static_cast<Eigen::Index>(basis.size()));
  const double inv_n = 1.0 / n;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t begin = basis.block_begin(v);
    const std::size_t loop = basis.loop_index(v);
    for (std::size_t i = begin; i < loop; ++i) psi(i) = inv_n;
    psi(loop) = std::sqrt(static_cast<double>(n - basis.graph().degree(v))) * inv_n;
  }
  return psi;
}

LocalStates local_states(const ArcBasis& basis, Vertex v,
                         std::optional<double> loop_weight) {
  const Graph& g = basis.graph();
  if (!g.contains(v)) throw InvalidArgument("vertex out of range");
  const double d = g.degree(v);
  const double l = loop_weight.value_or(g.n_vertices() - d);
  if (!(l >= 0.0)) throw InvalidArgument("loop weight must be non-negative");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const std::size_t begin = basis.block_begin(v);
  const std::size_t loop = basis.loop_index(v);

  LocalStates out{State::Zero(dim), State::Zero(dim), State::Zero(dim)};
  out.loop(loop) = 1.0;
  for (std::size_t i = begin; i < loop; ++i) {
    out.omega(i) = 1.0 / std::sqrt(d);
    out.omega_weighted(i) = 1.0 / std::sqrt(d + l);
  }
  out.omega_weighted(loop) = std::sqrt(l / (d + l));
  return out;
}

State arc_state(const ArcBasis& basis, Vertex v, Vertex w) {
  State psi = State::Zero(static_cast<Eigen::Index>(basis.size()));
  psi(basis.index(v, w)) = 1.0;
  return psi;
}

double block_probability(const ArcBasis& basis, const State& psi,
                         const VertexSet& vertices) {
  double p = 0.0;
  for (Vertex v : vertices) {
    const std::size_t begin = basis.block_begin(v);
    p += psi.segment(begin, basis.block_size(v)).squaredNorm();
  }
  return p;
}

void write_state_csv(std::ostream& out, const ArcBasis& basis, const State& psi) {
  out << "src,dst,re,im\n";
  char buf[64];
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Arc& a = basis.arc(i);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", psi(i).real(), psi(i).imag());
    out << a.source << ',' << a.target << ',' << buf << '\n';
  }
}

}  // namespace hubwalk::dtqw
