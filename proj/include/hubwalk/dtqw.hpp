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

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hubwalk/graph.hpp"

namespace hubwalk::dtqw {

/// Amplitudes over an ArcBasis.
using State = Eigen::VectorXcd;

/// Walker at `source` pointing towards `target`; a loop has source == target.
struct Arc {
  Vertex source;
  Vertex target;

  bool is_loop() const { return source == target; }
  auto operator<=>(const Arc&) const = default;
};

/// Ordered basis of the coined walk: for each vertex v in ascending order,
/// the arcs (v, w) for neighbours w in ascending order, then the loop (v, v).
/// This ordering is part of the public contract.
class ArcBasis {
 public:
  explicit ArcBasis(Graph g);

  const Graph& graph() const { return graph_; }
  int n_vertices() const { return graph_.n_vertices(); }
  /// 2|E| + N.
  std::size_t size() const { return arcs_.size(); }

  const Arc& arc(std::size_t i) const { return arcs_.at(i); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  /// Throws InvalidArgument if (v, w) is neither an edge arc nor a loop.
  std::size_t index(Vertex v, Vertex w) const;
  std::size_t block_begin(Vertex v) const { return offsets_.at(v); }
  std::size_t block_size(Vertex v) const { return offsets_.at(v + 1) - offsets_.at(v); }
  std::size_t loop_index(Vertex v) const { return offsets_.at(v + 1) - 1; }
  /// Index of the reversed arc; loops map to themselves.
  std::size_t reverse(std::size_t i) const { return reverse_[i]; }
  const std::vector<std::size_t>& reverse_permutation() const { return reverse_; }

 private:
  Graph graph_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> reverse_;
};

ArcBasis build_arc_basis(const Graph& g);

/// 2|w><w| - I with |w> = (1/sqrt(d+l)) (1, ..., 1, sqrt(l)): d arc entries
/// followed by the loop.
Eigen::MatrixXd grover_coin(int d, double l);

/// U = S C: per-vertex weighted-loop Grover coins followed by the flip-flop
/// shift. Unmarked vertices use loop weight N - d_v; marked hubs use
/// -G(1). Stored as block parameters plus the shift permutation.
class StepOperator {
 public:
  /// Throws ContractViolation if a marked vertex is not a hub.
  StepOperator(const ArcBasis& basis, VertexSet marked);

  std::size_t dimension() const { return reverse_.size(); }
  int n_vertices() const { return static_cast<int>(loop_weight_.size()); }
  const VertexSet& marked() const { return marked_; }
  double loop_weight(Vertex v) const { return loop_weight_.at(v); }
  /// -1 on marked hubs, +1 elsewhere.
  int coin_sign(Vertex v) const { return sign_.at(v); }

  State apply(const State& psi) const;
  /// out = U psi; `out` is resized as needed and must not alias `psi`.
  void apply_into(const State& psi, State& out) const;
  /// Coin only (no shift), for tests that factor U.
  State apply_coin(const State& psi) const;
  State apply_shift(const State& psi) const;

  /// Dense real matrix of U. Limited to graphs with N <= 64.
  Eigen::MatrixXd to_dense() const;

 private:
  VertexSet marked_;
  std::vector<std::size_t> offsets_;
  std::vector<double> loop_weight_;
  std::vector<int> sign_;
  std::vector<std::size_t> reverse_;
};

StepOperator build_step_operator(const ArcBasis& basis, const VertexSet& marked);

/// U^t psi.
State apply_steps(const StepOperator& u, State psi, int t);

/// (1/sqrt N) sum_v |Omega_v(N - d_v)>, the +1 eigenvector of the
/// unmarked walk.
State uniform_eigenstate(const ArcBasis& basis);

struct LocalStates {
  State loop;
  /// Equal superposition of the outgoing arcs of v.
  State omega;
  /// (sqrt(d) |Omega_v> + sqrt(l) |v,v>) / sqrt(d + l).
  State omega_weighted;
};

/// Loop weight defaults to N - d_v.
LocalStates local_states(const ArcBasis& basis, Vertex v,
                         std::optional<double> loop_weight = std::nullopt);

State arc_state(const ArcBasis& basis, Vertex v, Vertex w);

/// Total probability on the local spaces of `vertices`.
double block_probability(const ArcBasis& basis, const State& psi,
                         const VertexSet& vertices);

/// CSV with header "src,dst,re,im", one row per arc in basis order.
void write_state_csv(std::ostream& out, const ArcBasis& basis, const State& psi);

}  // namespace hubwalk::dtqw
