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
#include <utility>

#include "hubwalk/errors.hpp"
#include "hubwalk/reduced.hpp"

namespace hubwalk::reduced {
namespace {

using Entries = std::vector<std::pair<std::size_t, double>>;

SparseState normalized(std::size_t dim, Entries entries) {
  std::sort(entries.begin(), entries.end());
  double norm2 = 0.0;
  for (const auto& [i, x] : entries) norm2 += x * x;
  if (norm2 == 0.0) throw ContractViolation("basis vector vanishes");
  const double inv = 1.0 / std::sqrt(norm2);
  SparseState v(static_cast<Eigen::Index>(dim));
  v.reserve(static_cast<Eigen::Index>(entries.size()));
  for (const auto& [i, x] : entries) v.insertBack(static_cast<Eigen::Index>(i)) = x * inv;
  return v;
}

// Sum of arcs (v, w) with v in `from`, w in `to`, v != w, normalized.
SparseState arc_group(const dtqw::ArcBasis& b, const VertexSet& from,
                      const VertexSet& to) {
  Entries e;
  for (Vertex v : from) {
    for (Vertex w : to) {
      if (v != w) e.emplace_back(b.index(v, w), 1.0);
    }
  }
  return normalized(b.size(), std::move(e));
}

SparseState loop_group(const dtqw::ArcBasis& b, const VertexSet& vertices) {
  Entries e;
  for (Vertex v : vertices) e.emplace_back(b.loop_index(v), 1.0);
  return normalized(b.size(), std::move(e));
}

// Weighted uniform state on the unmarked part of the graph: arcs between
// unmarked vertices and loops with amplitude sqrt(N - d_v).
SparseState rest_group(const dtqw::ArcBasis& b, const VertexSet& marked) {
  const Graph& g = b.graph();
  const int n = g.n_vertices();
  Entries e;
  for (Vertex v = 0; v < n; ++v) {
    if (std::binary_search(marked.begin(), marked.end(), v)) continue;
    for (Vertex w : g.neighbours(v)) {
      if (!std::binary_search(marked.begin(), marked.end(), w)) {
        e.emplace_back(b.index(v, w), 1.0);
      }
    }
    const double l = n - g.degree(v);
    if (l > 0.0) e.emplace_back(b.loop_index(v), std::sqrt(l));
  }
  return normalized(b.size(), std::move(e));
}

VertexSet complement(int n, const VertexSet& excluded) {
  VertexSet out;
  for (Vertex v = 0; v < n; ++v) {
    if (!std::binary_search(excluded.begin(), excluded.end(), v)) out.push_back(v);
  }
  return out;
}

SparseState combine(const SparseState& a, const SparseState& b, double sign) {
  SparseState out = (a + sign * b) / std::sqrt(2.0);
  out.prune(0.0);
  return out;
}

std::complex<double> dot(const SparseState& a, const dtqw::State& x) {
  std::complex<double> s = 0.0;
  for (SparseState::InnerIterator it(a); it; ++it) s += it.value() * x(it.index());
  return s;
}

dtqw::State to_state(const SparseState& a) {
  dtqw::State x = dtqw::State::Zero(a.size());
  for (SparseState::InnerIterator it(a); it; ++it) x(it.index()) = it.value();
  return x;
}

}  // namespace

std::optional<std::size_t> ReducedBasis::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

Eigen::MatrixXd ReducedBasis::dense() const {
  if (vectors.empty()) return {};
  Eigen::MatrixXd out(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = Eigen::VectorXd(vectors[j]);
  }
  return out;
}

ReducedBasis search_basis(const dtqw::ArcBasis& basis, const VertexSet& marked_in) {
  const Graph& g = basis.graph();
  const VertexSet marked = make_vertex_set(marked_in);
  HubSpec{marked, {}, {}}.validate(g);
  const int n = g.n_vertices();
  const int m = static_cast<int>(marked.size());
  if (m < 1 || m >= n) throw InvalidArgument("search needs 1 <= M < N");
  const VertexSet rest = complement(n, marked);

  ReducedBasis out;
  out.vectors.push_back(loop_group(basis, marked));
  out.labels.push_back("nu1");
  if (m > 1) {
    out.vectors.push_back(arc_group(basis, marked, marked));
    out.labels.push_back("nu2");
  } else {
    out.dropped.push_back("nu2");
  }
  out.vectors.push_back(arc_group(basis, marked, rest));
  out.labels.push_back("nu3");
  out.vectors.push_back(arc_group(basis, rest, marked));
  out.labels.push_back("nu4");
  out.vectors.push_back(rest_group(basis, marked));
  out.labels.push_back("nu5");
  return out;
}

ReducedBasis multihub_basis(const dtqw::ArcBasis& basis, const VertexSet& senders_in,
                            const VertexSet& receivers_in) {
  const Graph& g = basis.graph();
  const VertexSet senders = make_vertex_set(senders_in);
  const VertexSet receivers = make_vertex_set(receivers_in);
  HubSpec spec{{}, senders, receivers};
  spec.validate(g);
  const int n = g.n_vertices();
  const int s = static_cast<int>(senders.size());
  const int r = static_cast<int>(receivers.size());
  if (s < 1 || r < 1) throw InvalidArgument("need at least one sender and one receiver");
  if (s + r >= n) throw InvalidArgument("transfer needs S + R < N");
  const VertexSet marked = spec.all();
  const VertexSet rest = complement(n, marked);

  ReducedBasis out;
  auto add = [&](std::string label, SparseState v) {
    out.labels.push_back(std::move(label));
    out.vectors.push_back(std::move(v));
  };
  add("nu1", loop_group(basis, senders));
  add("nu2", loop_group(basis, receivers));
  add("nu3", arc_group(basis, senders, receivers));
  add("nu4", arc_group(basis, receivers, senders));
  add("nu5", arc_group(basis, senders, rest));
  add("nu6", arc_group(basis, receivers, rest));
  add("nu7", arc_group(basis, rest, senders));
  add("nu8", arc_group(basis, rest, receivers));
  add("nu9", rest_group(basis, marked));
  if (s > 1) {
    add("nu10", arc_group(basis, senders, senders));
  } else {
    out.dropped.push_back("nu10");
  }
  if (r > 1) {
    add("nu11", arc_group(basis, receivers, receivers));
  } else {
    out.dropped.push_back("nu11");
  }
  return out;
}

ReducedBasis twohub_basis(const dtqw::ArcBasis& basis, Vertex s, Vertex r) {
  if (s == r) throw ContractViolation("sender and receiver must differ");
  ReducedBasis out = multihub_basis(basis, {s}, {r});
  out.dropped.clear();
  return out;
}

ReducedBasis twohub_symmetric_basis(const dtqw::ArcBasis& basis, Vertex s, Vertex r) {
  const ReducedBasis nu = twohub_basis(basis, s, r);
  const auto& v = nu.vectors;
  ReducedBasis out;
  for (int k = 0; k < 4; ++k) {
    out.vectors.push_back(combine(v[2 * k], v[2 * k + 1], +1.0));
    out.labels.push_back("sigma" + std::to_string(k + 1));
  }
  out.vectors.push_back(v[8]);
  out.labels.push_back("sigma5");
  for (int k = 0; k < 4; ++k) {
    out.vectors.push_back(combine(v[2 * k], v[2 * k + 1], -1.0));
    out.labels.push_back("tau" + std::to_string(k + 1));
  }
  return out;
}

Projection project_onto(const ReducedBasis& basis, const dtqw::State& psi) {
  Projection out;
  out.coefficients.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis.vectors[i].size() != psi.size()) {
      throw InvalidArgument("state dimension does not match the reduced basis");
    }
    out.coefficients(static_cast<Eigen::Index>(i)) = dot(basis.vectors[i], psi);
  }
  out.residual = (psi - embed(basis, out.coefficients)).norm();
  return out;
}

dtqw::State embed(const ReducedBasis& basis, const Eigen::VectorXcd& coefficients) {
  if (basis.vectors.empty()) return {};
  if (static_cast<std::size_t>(coefficients.size()) != basis.size()) {
    throw InvalidArgument("coefficient count does not match the reduced basis");
  }
  dtqw::State x = dtqw::State::Zero(basis.vectors.front().size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::complex<double> c = coefficients(static_cast<Eigen::Index>(i));
    for (SparseState::InnerIterator it(basis.vectors[i]); it; ++it) {
      x(it.index()) += c * it.value();
    }
  }
  return x;
}

Eigen::MatrixXd project_operator(const ReducedBasis& basis, const dtqw::StepOperator& u) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd out(k, k);
  dtqw::State image;
  for (Eigen::Index j = 0; j < k; ++j) {
    u.apply_into(to_state(basis.vectors[j]), image);
    for (Eigen::Index i = 0; i < k; ++i) out(i, j) = dot(basis.vectors[i], image).real();
  }
  return out;
}

double closure_residual(const ReducedBasis& basis, const dtqw::StepOperator& u) {
  double worst = 0.0;
  dtqw::State image;
  for (const auto& v : basis.vectors) {
    u.apply_into(to_state(v), image);
    worst = std::max(worst, project_onto(basis, image).residual);
  }
  return worst;
}

}  // namespace hubwalk::reduced
