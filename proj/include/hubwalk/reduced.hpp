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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hubwalk/dtqw.hpp"
#include "hubwalk/graph.hpp"

namespace hubwalk::reduced {

using SparseState = Eigen::SparseVector<double>;

/// Orthonormal full-space vectors spanning an invariant subspace, in the
/// order used by the reduced matrices.
struct ReducedBasis {
  std::vector<SparseState> vectors;
  /// "nu1", ..., or "sigma1"/"tau1" for the exchange-symmetric split.
  std::vector<std::string> labels;
  /// Labels removed because the vector vanishes for this configuration.
  std::vector<std::string> dropped;

  std::size_t size() const { return vectors.size(); }
  /// Position of `label`, or nullopt if absent or dropped.
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Columns are the basis vectors.
  Eigen::MatrixXd dense() const;
};

/// Loops, marked-marked arcs, marked-to-rest, rest-to-marked and the
/// rest-of-graph vector. nu2 is dropped when M = 1.
ReducedBasis search_basis(const dtqw::ArcBasis& basis, const VertexSet& marked);

/// nu1..nu9 for one sender and one receiver.
ReducedBasis twohub_basis(const dtqw::ArcBasis& basis, Vertex s, Vertex r);

/// sigma1..sigma5 (swap-even) followed by tau1..tau4 (swap-odd).
ReducedBasis twohub_symmetric_basis(const dtqw::ArcBasis& basis, Vertex s, Vertex r);

/// nu1..nu11; nu10 dropped when S = 1 and nu11 dropped when R = 1.
ReducedBasis multihub_basis(const dtqw::ArcBasis& basis, const VertexSet& senders,
                            const VertexSet& receivers);

struct Projection {
  Eigen::VectorXcd coefficients;
  double residual = 0.0;
};

Projection project_onto(const ReducedBasis& basis, const dtqw::State& psi);

/// Embeds reduced coefficients back into the arc space.
dtqw::State embed(const ReducedBasis& basis, const Eigen::VectorXcd& coefficients);

/// B^T U B.
Eigen::MatrixXd project_operator(const ReducedBasis& basis, const dtqw::StepOperator& u);

/// max_i || (I - B B^T) U nu_i ||.
double closure_residual(const ReducedBasis& basis, const dtqw::StepOperator& u);

enum class EigenKind { exact, approximate };

struct Eigenpair {
  std::string label;
  std::complex<double> eigenvalue;
  /// Normalized, in the operator's basis.
  Eigen::VectorXcd vector;
  EigenKind kind = EigenKind::exact;
};

struct ReducedOperator {
  std::vector<std::string> labels;
  Eigen::MatrixXd matrix;
  /// Closed-form eigenphases, one per eigenvalue with multiplicity, in
  /// (-pi, pi] and ascending.
  std::vector<double> phases;
  int unit_multiplicity = 0;
  std::vector<Eigenpair> eigenpairs;
};

/// Search operator on search_basis.
ReducedOperator search_reduced_matrix(int n, int m);

/// 9x9 operator on twohub_basis, assembled from the two exchange blocks.
ReducedOperator twohub_reduced_matrix(int n);
/// U restricted to sigma1..sigma5.
ReducedOperator twohub_symmetric_block(int n);
/// U restricted to tau1..tau4.
ReducedOperator twohub_antisymmetric_block(int n);
/// Orthogonal 9x9 Q with columns sigma1..sigma5, tau1..tau4 in nu coordinates.
Eigen::MatrixXd twohub_symmetry_transform();

/// Operator on multihub_basis with the same label dropping.
ReducedOperator multihub_reduced_matrix(int n, int s, int r);

/// Eigenphases of a real orthogonal matrix, ascending in (-pi, pi].
std::vector<double> numerical_spectrum(const Eigen::MatrixXd& matrix);

/// Number of eigenvalues within `tol` of +1.
int unit_multiplicity(const Eigen::MatrixXd& matrix, double tol = 1e-8);

/// max over eigenpairs of ||M v - lambda v||.
double eigenpair_residual(const ReducedOperator& op, EigenKind kind);

// ---- closed forms ----------------------------------------------------------

/// arccos(1 - 2M/N).
double search_phase(int n, int m);
/// round(pi / omega).
int search_optimal_steps(int n, int m);

struct SearchAmplitudes {
  int t = 0;
  bool even = true;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu3 = 0.0;
  /// Squares of the amplitudes above and their sum.
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p = 0.0;
  /// Large-N forms with the oscillating terms dropped.
  double p1_approx = 0.0;
  double p2_approx = 0.0;
  double p3_approx = 0.0;
  double p_approx = 0.0;
  /// sin^2(omega (2 floor(t/2) + 1) / 2).
  double p_parity = 0.0;
};

SearchAmplitudes search_probabilities(int n, int m, int t);

struct Phases {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
};

Phases twohub_phases(int n);
/// omega1 = arccos(1 - 2(R+S)/N), omega2 = omega1/2, omega3 = pi - omega2.
Phases multihub_phases(int n, int s, int r);

/// Halves round up.
int closest_even(double x);
int closest_odd(double x);

/// Closest even integer to pi / omega2.
int twohub_transfer_steps(int n);

struct TwohubAmplitudes {
  int t = 0;
  bool even = true;
  /// <Omega_r | U^t | Omega_s>, defined for every t.
  double sup_to_sup = 0.0;
  // The remaining amplitudes are only given for even t.
  std::optional<double> loop_to_loop;  // <r,r| U^t |s,s>
  std::optional<double> arc_to_arc;    // <r,s| U^t |s,r>
  std::optional<double> loop_to_sup;   // <Omega_r| U^t |s,s>
  std::optional<double> sup_to_loop;   // <r,r| U^t |Omega_s>
};

TwohubAmplitudes twohub_amplitudes(int n, int t);

/// |<psi_r| U^t |psi_s>|^2 for psi = rho |loop> + e^{i phi} sqrt(1-rho^2) |Omega>.
/// Throws ContractViolation for odd t.
double qubit_transfer_fidelity(int n, double rho, double phi, int t);

enum class MultihubStart { loops, superposition };

struct MultihubAmplitudes {
  int t = 0;
  bool even = true;
  MultihubStart start = MultihubStart::loops;
  /// Amplitudes on the receiver-side basis vectors nu2, nu4, nu6, nu11.
  double nu2 = 0.0;
  double nu4 = 0.0;
  double nu6 = 0.0;
  double nu11 = 0.0;
  /// Total transfer probability from the closed-form law.
  double probability = 0.0;
  /// Sum of the squared amplitudes above.
  double amplitude_sum = 0.0;
};

MultihubAmplitudes multihub_transfer_probability(int n, int s, int r, int t,
                                                 MultihubStart start);

/// 4RS / (R+S)^2.
double multihub_max_even(int s, int r);
/// R / (R+S).
double multihub_max_odd(int s, int r);
/// Closest even integer to pi / omega2.
int multihub_even_steps(int n, int s, int r);
/// Closest odd integer to pi / (2 omega2).
int multihub_odd_steps(int n, int s, int r);

// ---- reduced initial states ------------------------------------------------

/// |Omega> in search_basis coordinates.
Eigen::VectorXd search_initial_coefficients(int n, int m);
/// |Omega_s> (sender) or |Omega_r> in twohub_basis coordinates.
Eigen::VectorXd twohub_superposition(int n, bool sender);
/// |Omega_S>, the normalized outgoing-arc superposition over all senders,
/// in multihub_basis coordinates.
Eigen::VectorXd multihub_superposition(int n, int s, int r);
/// Unit vector for `label` in a basis of the given labels.
Eigen::VectorXd unit_coefficients(const std::vector<std::string>& labels,
                                  const std::string& label);

/// Coefficients after 0..t_max steps of `matrix`.
std::vector<Eigen::VectorXd> reduced_trajectory(const Eigen::MatrixXd& matrix,
                                                Eigen::VectorXd c0, int t_max);

}  // namespace hubwalk::reduced
