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

#include "hubwalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "hubwalk/errors.hpp"

namespace hubwalk {

namespace {

constexpr int kRetryBudget = 64;

std::vector<std::vector<Vertex>> build_adjacency(int n,
                                                 const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return adjacency;
}

// Portable mapping of a 64-bit draw onto [0, 1); the standard distributions
// are implementation-defined and would break cross-platform reproducibility.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph::Graph(int n_vertices, std::vector<Edge> edges) : n_vertices_(n_vertices) {
  if (n_vertices < 1) {
    throw InvalidArgument("graph must have at least one vertex, got " +
                          std::to_string(n_vertices));
  }
  for (Edge& e : edges) {
    if (!contains(e.u) || !contains(e.v)) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") references a vertex outside 0.." +
                            std::to_string(n_vertices - 1));
    }
    if (e.u == e.v) {
      throw InvalidArgument("loop edge at vertex " + std::to_string(e.u) +
                            " is not allowed in a simple graph");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->u) + "," +
                          std::to_string(dup->v) + ")");
  }
  if (!is_connected(n_vertices, edges)) {
    throw InvalidArgument("graph is not connected");
  }
  edges_ = std::move(edges);
  adjacency_ = build_adjacency(n_vertices_, edges_);
}

int Graph::degree(Vertex v) const {
  return static_cast<int>(neighbours(v).size());
}

const std::vector<Vertex>& Graph::neighbours(Vertex v) const {
  if (!contains(v)) {
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
  return adjacency_[v];
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  const auto& list = neighbours(a);
  return std::binary_search(list.begin(), list.end(), b);
}

VertexSet HubSpec::all() const {
  VertexSet out;
  out.insert(out.end(), marked.begin(), marked.end());
  out.insert(out.end(), senders.begin(), senders.end());
  out.insert(out.end(), receivers.begin(), receivers.end());
  return make_vertex_set(std::move(out));
}

void HubSpec::validate(const Graph& g) const {
  std::size_t listed = 0;
  for (const VertexSet* set : {&marked, &senders, &receivers}) {
    for (Vertex v : *set) {
      if (!g.contains(v)) {
        throw InvalidArgument("hub vertex " + std::to_string(v) + " out of range");
      }
      if (!g.is_hub(v)) {
        throw ContractViolation("vertex " + std::to_string(v) + " has degree " +
                                std::to_string(g.degree(v)) + ", a hub needs " +
                                std::to_string(g.n_vertices() - 1));
      }
    }
    listed += set->size();
  }
  if (all().size() != listed) {
    throw ContractViolation(
        "hub roles overlap: marked, sender and receiver sets must be disjoint");
  }
}

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet vertex_range(Vertex first, int count) {
  VertexSet out(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(out.begin(), out.end(), first);
  return out;
}

bool is_connected(int n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices <= 1) return true;
  const auto adjacency = build_adjacency(n_vertices, edges);
  std::vector<char> seen(static_cast<std::size_t>(n_vertices), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_vertices;
}

Graph make_complete(int n) {
  if (n < 2) {
    throw InvalidArgument("complete graph needs n >= 2, got " + std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph make_random_hubbed(int n, const VertexSet& hubs, double edge_prob,
                         std::uint64_t seed) {
  if (n < 2) {
    throw InvalidArgument("random graph needs n >= 2, got " + std::to_string(n));
  }
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw InvalidArgument("edge probability must lie in [0, 1]");
  }
  std::vector<char> is_hub(static_cast<std::size_t>(n), 0);
  for (Vertex h : hubs) {
    if (h < 0 || h >= n) {
      throw InvalidArgument("hub " + std::to_string(h) + " out of range 0.." +
                            std::to_string(n - 1));
    }
    is_hub[h] = 1;
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        // Draw for every pair so the stream layout does not depend on hubs.
        const bool sampled = unit_interval(rng) < edge_prob;
        if (is_hub[u] || is_hub[v] || sampled) edges.push_back({u, v});
      }
    }
    if (is_connected(n, edges)) return Graph(n, std::move(edges));
  }
  throw GenerationFailure("no connected graph after " +
                          std::to_string(kRetryBudget) +
                          " resamples; raise edge_prob or add a hub");
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const int n = g.n_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Eigen::MatrixXd degree_matrix(const Graph& g) {
  const int n = g.n_vertices();
  Eigen::VectorXd d(n);
  for (Vertex v = 0; v < n; ++v) d(v) = g.degree(v);
  return d.asDiagonal();
}

Eigen::MatrixXd laplacian(const Graph& g) {
  return degree_matrix(g) - adjacency_matrix(g);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_content_line()) throw InvalidArgument("edge list is empty");
  long long n = 0;
  {
    std::istringstream header(line);
    std::string rest;
    if (!(header >> n) || (header >> rest)) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": expected vertex count N");
    }
  }
  if (n < 1 || n > 1'000'000) {
    throw InvalidArgument("vertex count " + std::to_string(n) + " out of range");
  }
  std::vector<Edge> edges;
  while (next_content_line()) {
    std::istringstream row(line);
    long long u = 0;
    long long v = 0;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest)) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": expected \"u v\", got \"" + line + "\"");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": vertex out of range 0.." + std::to_string(n - 1));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open graph file '" + path.string() + "'");
  }
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace hubwalk
