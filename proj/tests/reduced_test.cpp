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
#include <numbers>

#include <gtest/gtest.h>

#include "hubwalk/dtqw.hpp"
#include "hubwalk/errors.hpp"
#include "hubwalk/graph.hpp"
#include "hubwalk/reduced.hpp"

namespace hubwalk::reduced {
namespace {

using dtqw::ArcBasis;
using dtqw::State;
using dtqw::StepOperator;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd gram(const ReducedBasis& b) {
  Eigen::MatrixXd d = b.dense();
  return d.transpose() * d;
}

double orthonormality_error(const ReducedBasis& b) {
  const auto k = static_cast<Eigen::Index>(b.size());
  return max_abs(gram(b) - Eigen::MatrixXd::Identity(k, k));
}

// Vertex relabelling applied to arc amplitudes.
State permute_vertices(const ArcBasis& basis, const State& psi,
                       const std::vector<Vertex>& perm) {
  State out = State::Zero(psi.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const dtqw::Arc& a = basis.arc(i);
    out(static_cast<Eigen::Index>(basis.index(perm[a.source], perm[a.target]))) =
        psi(static_cast<Eigen::Index>(i));
  }
  return out;
}

void expect_phases_near(const std::vector<double>& got, const std::vector<double>& want,
                        double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << i;
}

// ---- search -----------------------------------------------------------------

TEST(SearchBasis, SingleMarkedDropsNu2) {
  ArcBasis basis(make_complete(10));
  ReducedBasis b = search_basis(basis, {0});
  EXPECT_EQ(b.labels, (std::vector<std::string>{"nu1", "nu3", "nu4", "nu5"}));
  EXPECT_EQ(b.dropped, (std::vector<std::string>{"nu2"}));
  EXPECT_FALSE(b.index_of("nu2").has_value());
  EXPECT_EQ(b.index_of("nu4"), 2u);
}

TEST(SearchBasis, UniformStateDecomposition) {
  ArcBasis k4(make_complete(4));
  Projection p = project_onto(search_basis(k4, {0, 1}), dtqw::uniform_eigenstate(k4));
  EXPECT_NEAR(p.coefficients(0).real(), std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_LT(p.residual, 1e-12);

  for (auto [n, m] : {std::pair{20, 1}, {20, 2}, {37, 5}}) {
    ArcBasis basis(make_complete(n));
    Projection q = project_onto(search_basis(basis, vertex_range(0, m)),
                                dtqw::uniform_eigenstate(basis));
    EXPECT_LT(q.residual, 1e-12);
    EXPECT_LT((q.coefficients.real() - search_initial_coefficients(n, m)).norm(), 1e-12);
  }
}

TEST(SearchBasis, OrthonormalOnHubbedGraph) {
  ArcBasis basis(make_random_hubbed(30, {0, 1, 2}, 0.2, 3));
  EXPECT_LT(orthonormality_error(search_basis(basis, {0, 1, 2})), 1e-12);
}

TEST(SearchBasis, RejectsNonHub) {
  ArcBasis basis(make_random_hubbed(12, {0}, 0.0, 1));
  EXPECT_THROW(search_basis(basis, {0, 5}), ContractViolation);
}

TEST(SearchOperator, MatchesProjection) {
  for (int m : {1, 2, 5}) {
    ArcBasis basis(make_complete(20));
    VertexSet marked = vertex_range(0, m);
    ReducedBasis b = search_basis(basis, marked);
    StepOperator u(basis, marked);
    ReducedOperator op = search_reduced_matrix(20, m);
    EXPECT_EQ(op.labels, b.labels);
    EXPECT_LT(max_abs(project_operator(b, u) - op.matrix), 1e-10) << "M=" << m;
    EXPECT_LT(closure_residual(b, u), 1e-10);
  }
}

TEST(SearchOperator, ClosedOnHubbedGraph) {
  ArcBasis basis(make_random_hubbed(25, {0, 1, 2}, 0.2, 11));
  StepOperator u(basis, {0, 1, 2});
  ReducedBasis b = search_basis(basis, {0, 1, 2});
  EXPECT_LT(closure_residual(b, u), 1e-10);
  EXPECT_LT(max_abs(project_operator(b, u) - search_reduced_matrix(25, 3).matrix), 1e-10);
}

TEST(SearchOperator, Spectrum) {
  for (auto [n, m] : {std::pair{100, 1}, {100, 3}, {20, 5}, {12, 11}}) {
    ReducedOperator op = search_reduced_matrix(n, m);
    const auto k = op.matrix.rows();
    EXPECT_LT(max_abs(op.matrix.transpose() * op.matrix - Eigen::MatrixXd::Identity(k, k)),
              1e-12);
    expect_phases_near(numerical_spectrum(op.matrix), op.phases, 1e-10);
    EXPECT_EQ(unit_multiplicity(op.matrix), m > 1 ? 2 : 1);
    EXPECT_EQ(op.unit_multiplicity, unit_multiplicity(op.matrix));
    EXPECT_LT(eigenpair_residual(op, EigenKind::exact), 1e-10);
    const double w = search_phase(n, m);
    for (double target : {w, -w, std::numbers::pi}) {
      auto hit = std::find_if(op.phases.begin(), op.phases.end(),
                              [&](double x) { return std::abs(x - target) < 1e-15; });
      EXPECT_NE(hit, op.phases.end()) << target;
    }
  }
}

TEST(SearchOperator, MinusOneEigenvectorSpansKernel) {
  for (auto [n, m] : {std::pair{4, 1}, {30, 4}}) {
    ReducedOperator op = search_reduced_matrix(n, m);
    const auto k = op.matrix.rows();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.matrix + Eigen::MatrixXd::Identity(k, k),
                                          Eigen::ComputeFullV);
    EXPECT_LT(svd.singularValues()(k - 1), 1e-12);
    EXPECT_GT(svd.singularValues()(k - 2), 1e-3);
    Eigen::VectorXd kernel = svd.matrixV().col(k - 1);
    auto it = std::find_if(op.eigenpairs.begin(), op.eigenpairs.end(),
                           [](const Eigenpair& e) { return e.label == "-1"; });
    ASSERT_NE(it, op.eigenpairs.end());
    EXPECT_NEAR(std::abs(it->vector.dot(kernel.cast<std::complex<double>>())), 1.0, 1e-12);
  }
}

// ---- two hubs ---------------------------------------------------------------

TEST(TwohubBasis, OverlapsWithLocalSuperposition) {
  const int n = 14;
  ArcBasis basis(make_complete(n));
  ReducedBasis b = twohub_basis(basis, 0, 1);
  EXPECT_EQ(b.size(), 9u);
  EXPECT_TRUE(b.dropped.empty());
  Projection p = project_onto(b, dtqw::local_states(basis, 0).omega);
  EXPECT_NEAR(p.coefficients(2).real(), 1.0 / std::sqrt(n - 1.0), 1e-15);
  EXPECT_LT(p.residual, 1e-12);
  EXPECT_LT((p.coefficients.real() - twohub_superposition(n, true)).norm(), 1e-12);
  Projection q = project_onto(b, dtqw::local_states(basis, 1).omega);
  EXPECT_LT((q.coefficients.real() - twohub_superposition(n, false)).norm(), 1e-12);
}

TEST(TwohubBasis, SymmetricSplitUnderSwap) {
  const int n = 11;
  ArcBasis basis(make_complete(n));
  ReducedBasis sym = twohub_symmetric_basis(basis, 0, 1);
  ReducedBasis nu = twohub_basis(basis, 0, 1);
  ASSERT_EQ(sym.size(), 9u);
  EXPECT_EQ(sym.labels.front(), "sigma1");
  EXPECT_EQ(sym.labels.back(), "tau4");
  std::vector<Vertex> swap(n);
  for (int v = 0; v < n; ++v) swap[v] = v;
  std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < 9; ++i) {
    State v = Eigen::VectorXd(sym.vectors[i]).cast<std::complex<double>>();
    const double parity = i < 5 ? 1.0 : -1.0;
    EXPECT_LT((permute_vertices(basis, v, swap) - parity * v).norm(), 1e-14) << sym.labels[i];
  }
  State sigma1 = Eigen::VectorXd(sym.vectors[0]).cast<std::complex<double>>();
  State expected = (Eigen::VectorXd(nu.vectors[0]) + Eigen::VectorXd(nu.vectors[1])) /
                   std::sqrt(2.0);
  EXPECT_LT((sigma1 - expected).norm(), 1e-15);
  EXPECT_LT(max_abs(nu.dense() * twohub_symmetry_transform() - sym.dense()), 1e-14);
}

TEST(TwohubOperator, MatchesProjectionOnK12) {
  ArcBasis basis(make_complete(12));
  StepOperator u(basis, {0, 1});
  EXPECT_LT(max_abs(project_operator(twohub_basis(basis, 0, 1), u) -
                    twohub_reduced_matrix(12).matrix),
            1e-10);
  ReducedBasis sym = twohub_symmetric_basis(basis, 0, 1);
  Eigen::MatrixXd projected = project_operator(sym, u);
  EXPECT_LT(max_abs(projected.topLeftCorner(5, 5) - twohub_symmetric_block(12).matrix), 1e-10);
  EXPECT_LT(max_abs(projected.bottomRightCorner(4, 4) - twohub_antisymmetric_block(12).matrix),
            1e-10);
  EXPECT_LT(max_abs(projected.topRightCorner(5, 4)), 1e-12);
  EXPECT_LT(max_abs(projected.bottomLeftCorner(4, 5)), 1e-12);
}

TEST(TwohubOperator, ClosedOnHubbedGraph) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ArcBasis basis(make_random_hubbed(25, {0, 1}, 0.2, seed));
    StepOperator u(basis, {0, 1});
    ReducedBasis b = twohub_basis(basis, 0, 1);
    EXPECT_LT(orthonormality_error(b), 1e-12);
    EXPECT_LT(closure_residual(b, u), 1e-10);
    EXPECT_LT(max_abs(project_operator(b, u) - twohub_reduced_matrix(25).matrix), 1e-10);
  }
}

TEST(TwohubOperator, Spectrum) {
  for (int n : {8, 12, 100, 1000}) {
    ReducedOperator op = twohub_reduced_matrix(n);
    expect_phases_near(numerical_spectrum(op.matrix), op.phases, 1e-10);
    EXPECT_EQ(unit_multiplicity(op.matrix), 2);
    EXPECT_EQ(op.unit_multiplicity, 2);
    EXPECT_LT(eigenpair_residual(op, EigenKind::exact), 1e-10);
    for (const ReducedOperator& block : {twohub_symmetric_block(n), twohub_antisymmetric_block(n)}) {
      expect_phases_near(numerical_spectrum(block.matrix), block.phases, 1e-10);
      EXPECT_LT(eigenpair_residual(block, EigenKind::exact), 1e-10);
    }
    Phases w = twohub_phases(n);
    EXPECT_NEAR(w.omega2, w.omega1 / 2.0, 1e-14);
    EXPECT_NEAR(w.omega3, std::numbers::pi - w.omega2, 1e-15);
  }
}

TEST(TwohubOperator, ApproximateEigenvectorsScaleAsInverseRoot) {
  double c = 0.0;
  for (int n : {100, 400, 1600, 6400}) {
    const double res = eigenpair_residual(twohub_reduced_matrix(n), EigenKind::approximate);
    EXPECT_GT(res, 0.0);
    c = std::max(c, res * std::sqrt(static_cast<double>(n)));
  }
  RecordProperty("fitted_c", std::to_string(c));
  EXPECT_LT(c, 3.0);
}

// ---- many hubs --------------------------------------------------------------

TEST(MultihubBasis, ReducesToTwohub) {
  ArcBasis basis(make_complete(13));
  ReducedBasis multi = multihub_basis(basis, {0}, {1});
  ReducedBasis two = twohub_basis(basis, 0, 1);
  EXPECT_EQ(multi.size(), 9u);
  EXPECT_EQ(multi.labels, two.labels);
  EXPECT_EQ(multi.dropped, (std::vector<std::string>{"nu10", "nu11"}));
  EXPECT_LT(max_abs(multi.dense() - two.dense()), 1e-15);
  EXPECT_LT(max_abs(multihub_reduced_matrix(13, 1, 1).matrix - twohub_reduced_matrix(13).matrix),
            1e-12);
}

TEST(MultihubBasis, DropsDegenerateLabels) {
  ArcBasis basis(make_complete(12));
  ReducedBasis a = multihub_basis(basis, {0}, {1, 2});
  EXPECT_EQ(a.dropped, (std::vector<std::string>{"nu10"}));
  EXPECT_TRUE(a.index_of("nu11").has_value());
  ReducedBasis b = multihub_basis(basis, {0, 1}, {2});
  EXPECT_EQ(b.dropped, (std::vector<std::string>{"nu11"}));
  EXPECT_EQ(multihub_reduced_matrix(12, 2, 1).labels, b.labels);
}

TEST(MultihubBasis, RejectsOverlappingRoles) {
  ArcBasis basis(make_complete(10));
  EXPECT_THROW(multihub_basis(basis, {0, 1}, {1, 2}), ContractViolation);
}

TEST(MultihubBasis, OrthonormalAndSuperpositionOverlap) {
  const int n = 40;
  ArcBasis basis(make_complete(n));
  ReducedBasis b = multihub_basis(basis, {0, 1}, {2, 3, 4});
  EXPECT_LT(orthonormality_error(b), 1e-12);
  State omega_s = (dtqw::local_states(basis, 0).omega + dtqw::local_states(basis, 1).omega) /
                  std::sqrt(2.0);
  Projection p = project_onto(b, omega_s);
  EXPECT_LT(p.residual, 1e-12);
  EXPECT_NEAR(p.coefficients(*b.index_of("nu5")).real(), std::sqrt((n - 5.0) / (n - 1.0)),
              1e-14);
  EXPECT_LT((p.coefficients.real() - multihub_superposition(n, 2, 3)).norm(), 1e-12);
}

TEST(MultihubOperator, MatchesProjection) {
  struct Case {
    Graph g;
    VertexSet senders, receivers;
  };
  std::vector<Case> cases{
      {make_complete(15), {0, 1}, {2, 3, 4}},
      {make_complete(15), {0}, {1, 2, 3}},
      {make_complete(15), {0, 1, 2}, {3}},
      {make_random_hubbed(25, {0, 1, 2, 3, 4}, 0.2, 7), {0, 1}, {2, 3, 4}},
  };
  for (const Case& c : cases) {
    ArcBasis basis(c.g);
    VertexSet all = c.senders;
    all.insert(all.end(), c.receivers.begin(), c.receivers.end());
    StepOperator u(basis, all);
    ReducedBasis b = multihub_basis(basis, c.senders, c.receivers);
    const int s = static_cast<int>(c.senders.size());
    const int r = static_cast<int>(c.receivers.size());
    ReducedOperator op = multihub_reduced_matrix(c.g.n_vertices(), s, r);
    EXPECT_EQ(op.labels, b.labels);
    EXPECT_LT(closure_residual(b, u), 1e-10);
    EXPECT_LT(max_abs(project_operator(b, u) - op.matrix), 1e-10) << "S=" << s << " R=" << r;
  }
}

TEST(MultihubOperator, Spectrum) {
  for (auto [n, s, r] : {std::tuple{15, 2, 3}, {1000, 10, 10}, {1000, 1, 20}, {50, 4, 1},
                         {200, 1, 1}}) {
    ReducedOperator op = multihub_reduced_matrix(n, s, r);
    expect_phases_near(numerical_spectrum(op.matrix), op.phases, 1e-10);
    const int expected = 2 + (s > 1) + (r > 1);
    EXPECT_EQ(unit_multiplicity(op.matrix), expected);
    EXPECT_EQ(op.unit_multiplicity, expected);
    EXPECT_LT(eigenpair_residual(op, EigenKind::exact), 1e-10);
    Phases w = multihub_phases(n, s, r);
    EXPECT_NEAR(w.omega1, std::acos(1.0 - 2.0 * (s + r) / n), 1e-15);
  }
}

TEST(MultihubOperator, ApproximateEigenvectorsScaleAsInverseRoot) {
  for (auto [s, r] : {std::pair{2, 3}, {10, 10}}) {
    double c = 0.0;
    for (int n : {400, 1600, 6400}) {
      const double res =
          eigenpair_residual(multihub_reduced_matrix(n, s, r), EigenKind::approximate);
      c = std::max(c, res * std::sqrt(static_cast<double>(n)));
    }
    RecordProperty("fitted_c_S" + std::to_string(s) + "_R" + std::to_string(r),
                   std::to_string(c));
    EXPECT_LT(c, 2.0 * std::sqrt(static_cast<double>(s + r)) + 1.0);
  }
}

// ---- projection plumbing ----------------------------------------------------

TEST(Projection, TrivialCases) {
  ArcBasis basis(make_complete(9));
  ReducedBasis b = search_basis(basis, {0, 1});
  State nu1 = Eigen::VectorXd(b.vectors[0]).cast<std::complex<double>>();
  Projection p = project_onto(b, nu1);
  EXPECT_LT((p.coefficients - Eigen::VectorXcd::Unit(5, 0)).norm(), 1e-15);
  EXPECT_LT(p.residual, 1e-15);

  // Antisymmetric combination of two rest loops lies outside the span.
  State outside = (dtqw::arc_state(basis, 4, 4) - dtqw::arc_state(basis, 5, 5)) / std::sqrt(2.0);
  Projection q = project_onto(b, outside);
  EXPECT_LT(q.coefficients.norm(), 1e-15);
  EXPECT_NEAR(q.residual, 1.0, 1e-15);
}

TEST(Projection, EmbedRoundTrip) {
  ArcBasis basis(make_complete(10));
  ReducedBasis b = multihub_basis(basis, {0, 1}, {2, 3});
  Eigen::VectorXcd c = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(b.size()));
  Projection p = project_onto(b, embed(b, c));
  EXPECT_LT((p.coefficients - c).norm(), 1e-14);
  EXPECT_LT(p.residual, 1e-14);
  EXPECT_THROW(embed(b, Eigen::VectorXcd::Zero(3)), InvalidArgument);
}

TEST(Projection, ReducedTrajectoryMatchesFullEvolution) {
  ArcBasis basis(make_random_hubbed(22, {0, 1, 2}, 0.25, 5));
  StepOperator u(basis, {0, 1, 2});
  ReducedBasis b = multihub_basis(basis, {0}, {1, 2});
  Eigen::VectorXd c0 = unit_coefficients(b.labels, "nu1");
  std::vector<Eigen::VectorXd> traj =
      reduced_trajectory(multihub_reduced_matrix(22, 1, 2).matrix, c0, 30);
  ASSERT_EQ(traj.size(), 31u);
  State psi = embed(b, c0.cast<std::complex<double>>());
  for (int t = 0; t <= 30; ++t) {
    Projection p = project_onto(b, psi);
    EXPECT_LT(p.residual, 1e-10);
    EXPECT_LT((p.coefficients.real() - traj[t]).norm(), 1e-10) << t;
    psi = u.apply(psi);
  }
}

}  // namespace
}  // namespace hubwalk::reduced
