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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace hubwalk {

using Vertex = int;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// Undirected edge stored canonically with `u < v`.
struct Edge {
  Vertex u;
  Vertex v;

  auto operator<=>(const Edge&) const = default;
};

/// Simple connected undirected graph on vertices 0..N-1. Immutable after
/// construction.
class Graph {
 public:
  /// Validates that the edge list describes a simple connected graph.
  /// Edges may be given in either orientation.
  Graph(int n_vertices, std::vector<Edge> edges);

  int n_vertices() const { return n_vertices_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(Vertex v) const;
  /// Neighbours of `v` in ascending order.
  const std::vector<Vertex>& neighbours(Vertex v) const;
  bool has_edge(Vertex a, Vertex b) const;
  /// A hub is adjacent to every other vertex.
  bool is_hub(Vertex v) const { return degree(v) == n_vertices_ - 1; }
  bool contains(Vertex v) const { return v >= 0 && v < n_vertices_; }

  bool operator==(const Graph& other) const {
    return n_vertices_ == other.n_vertices_ && edges_ == other.edges_;
  }

 private:
  int n_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Roles of the fully connected vertices in one experiment. Search uses
/// `marked`; transfer uses `senders` and `receivers`.
struct HubSpec {
  VertexSet marked;
  VertexSet senders;
  VertexSet receivers;

  /// Union of all three roles, sorted.
  VertexSet all() const;

  /// Throws ContractViolation unless every listed vertex is a hub of `g`
  /// and the three roles are pairwise disjoint. Throws InvalidArgument on
  /// out-of-range or duplicated vertices.
  void validate(const Graph& g) const;
};

/// Sorts and deduplicates.
VertexSet make_vertex_set(std::vector<Vertex> vertices);

/// Contiguous set {first, first+1, ..., first+count-1}.
VertexSet vertex_range(Vertex first, int count);

bool is_connected(int n_vertices, const std::vector<Edge>& edges);

Graph make_complete(int n);

/// Hub edges are forced; every other pair is drawn independently with
/// probability `edge_prob`. Resamples up to 64 times until connected.
Graph make_random_hubbed(int n, const VertexSet& hubs, double edge_prob,
                         std::uint64_t seed);

Eigen::MatrixXd adjacency_matrix(const Graph& g);
Eigen::MatrixXd degree_matrix(const Graph& g);
/// L = D - A.
Eigen::MatrixXd laplacian(const Graph& g);

// Edge-list text format: first line "N", then one "u v" pair per line.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace hubwalk
