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

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hubwalk/graph.hpp"

namespace hubwalk::ctqw {

/// Amplitudes over vertices.
using State = Eigen::VectorXcd;

struct Config {
  /// Hopping rate; 1/N when unset.
  std::optional<double> gamma;
  /// Per-vertex potential overrides. Marked hubs without an entry get
  /// `default_lambda`.
  std::map<Vertex, double> lambdas;
  double default_lambda = -1.0;

  double gamma_for(int n) const { return gamma.value_or(1.0 / n); }
};

/// H = gamma L + sum_w lambda_w |w><w| over every hub in `hubs.all()`.
Eigen::MatrixXd build_hamiltonian(const Graph& g, const HubSpec& hubs,
                                  const Config& cfg = {});

State vertex_state(int n, Vertex v);
/// Equal superposition over `vertices`.
State group_state(int n, const VertexSet& vertices);
/// Equal superposition over every vertex not in `excluded`.
State rest_state(int n, const VertexSet& excluded);

/// Exact propagator e^{-iHt} from a dense symmetric eigendecomposition.
/// Construct once and evaluate at many times.
class Propagator {
 public:
  /// Throws ContractViolation if `h` is not symmetric to 1e-12 (relative).
  explicit Propagator(const Eigen::MatrixXd& h);

  State evolve(const State& psi0, double t) const;
  /// <target| e^{-iHt} |psi0> without materializing the evolved state.
  std::complex<double> amplitude(const State& target, const State& psi0,
                                 double t) const;

  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd eigenvectors_;
};

State evolve(const Eigen::MatrixXd& h, const State& psi0, double t);

/// Action of H on span{|w_1>, ..., |w_M>, |g>} for M marked hubs sharing
/// one potential, in that basis order.
Eigen::MatrixXd effective_hamiltonian(int n, int m, double gamma, double lambda);

/// Two-level search model on {|w~>, |g>} at gamma = 1/N, lambda = -1.
Eigen::Matrix2d reduced_search_hamiltonian(int n, int m);

struct ReducedModel {
  std::vector<std::string> labels;
  Eigen::MatrixXd matrix;
  double e0 = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  /// Columns |0>, |+>, |->.
  Eigen::MatrixXd eigenvectors;
};

/// 3x3 transfer model on {|S>, |R>, |g>} at gamma = 1/N, lambda = -1.
ReducedModel reduced_transfer_hamiltonian(int n, int s, int r);

/// Full-space vectors {|S>, |R>, |g>} matching the reduced model.
std::vector<State> transfer_basis(const Graph& g, const VertexSet& senders,
                                  const VertexSet& receivers);

/// <R| psi(t) > for psi(0) = |S>.
std::complex<double> transfer_amplitude(int n, int s, int r, double t);
double transfer_fidelity(int n, int s, int r, double t);
/// 4RS / (R+S)^2.
double max_transfer_fidelity(int s, int r);
/// pi / E_+ = pi sqrt(N / (R+S)).
double transfer_time(int n, int s, int r);
/// (pi/2) sqrt(N/M).
double search_runtime(int n, int m);

}  // namespace hubwalk::ctqw
