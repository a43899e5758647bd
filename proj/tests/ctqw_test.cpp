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
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "hubwalk/ctqw.hpp"
#include "hubwalk/errors.hpp"
#include "hubwalk/graph.hpp"

namespace hubwalk::ctqw {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Classical RK4 on i d/dt psi = H psi.
State rk4(const Eigen::MatrixXd& h, State psi, double t, double dt) {
  const Eigen::MatrixXcd mh = cd(0, -1) * h.cast<cd>();
  const int steps = static_cast<int>(std::ceil(t / dt));
  const double step = t / steps;
  for (int k = 0; k < steps; ++k) {
    State k1 = mh * psi;
    State k2 = mh * (psi + 0.5 * step * k1);
    State k3 = mh * (psi + 0.5 * step * k2);
    State k4 = mh * (psi + step * k3);
    psi += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// <target| e^{-iMt} |source> for a small real symmetric matrix.
cd small_amplitude(const Eigen::MatrixXd& m, int target, int source, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  cd acc = 0.0;
  for (int k = 0; k < m.rows(); ++k) {
    acc += es.eigenvectors()(target, k) * es.eigenvectors()(source, k) *
           std::exp(cd(0, -es.eigenvalues()(k) * t));
  }
  return acc;
}

TEST(Hamiltonian, UnmarkedK2IsLaplacian) {
  Config cfg;
  cfg.gamma = 1.0;
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_EQ(build_hamiltonian(make_complete(2), {}, cfg), Eigen::MatrixXd(expected));
}

TEST(Hamiltonian, MarkedK4) {
  HubSpec hubs{{0}, {}, {}};
  Eigen::MatrixXd h = build_hamiltonian(make_complete(4), hubs);
  Eigen::Matrix4d expected = Eigen::Matrix4d::Constant(-0.25);
  expected.diagonal() << 0.75 - 1.0, 0.75, 0.75, 0.75;
  EXPECT_LT((h - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(h, h.transpose());
}

TEST(Hamiltonian, PotentialOverride) {
  Config cfg;
  cfg.lambdas[1] = -0.5;
  HubSpec hubs{{}, {0}, {1}};
  Eigen::MatrixXd h = build_hamiltonian(make_complete(5), hubs, cfg);
  EXPECT_DOUBLE_EQ(h(0, 0), 0.8 - 1.0);
  EXPECT_DOUBLE_EQ(h(1, 1), 0.8 - 0.5);
  EXPECT_DOUBLE_EQ(h(2, 2), 0.8);
}

TEST(Hamiltonian, RejectsNonPositiveGamma) {
  Config cfg;
  cfg.gamma = 0.0;
  EXPECT_THROW(build_hamiltonian(make_complete(3), {}, cfg), InvalidArgument);
}

TEST(Evolve, IdentityCases) {
  Eigen::MatrixXd h = build_hamiltonian(make_complete(6), {{0}, {}, {}});
  State psi = group_state(6, {1, 2});
  EXPECT_LT((evolve(h, psi, 0.0) - psi).norm(), 1e-14);
  EXPECT_LT((evolve(Eigen::MatrixXd::Zero(2, 2), vertex_state(2, 1), 3.7) -
             vertex_state(2, 1))
                .norm(),
            1e-15);
}

TEST(Evolve, RejectsNonSymmetric) {
  Eigen::Matrix2d h;
  h << 0, 1, 0, 0;
  EXPECT_THROW(Propagator{h}, ContractViolation);
}

TEST(Evolve, PreservesNorm) {
  Graph g = make_random_hubbed(30, {0, 1}, 0.3, 4);
  Propagator prop(build_hamiltonian(g, {{0, 1}, {}, {}}));
  State psi = rest_state(30, {0, 1});
  for (double t : {0.1, 1.0, 7.5, 40.0}) {
    EXPECT_NEAR(prop.evolve(psi, t).norm(), 1.0, 1e-10);
  }
}

TEST(Evolve, MatchesRk4OnK4Transfer) {
  Graph k4 = make_complete(4);
  HubSpec hubs{{}, {0}, {1}};
  Eigen::MatrixXd h = build_hamiltonian(k4, hubs);
  const double t = kPi * std::sqrt(2.0);
  State psi0 = vertex_state(4, 0);
  State exact = evolve(h, psi0, t);
  State integrated = rk4(h, psi0, t, 1e-4);
  EXPECT_LT((exact - integrated).norm(), 1e-9);
  EXPECT_NEAR(std::norm(exact(1)), 1.0, 1e-9);
  EXPECT_NEAR(std::norm(integrated(1)), 1.0, 1e-9);
}

TEST(ReducedModel, SmallestTransferMatrix) {
  ReducedModel model = reduced_transfer_hamiltonian(4, 1, 1);
  const double r2 = std::sqrt(2.0);
  Eigen::Matrix3d expected;
  expected << 1, 1, r2, 1, 1, r2, r2, r2, -2;
  expected *= -0.25;
  EXPECT_LT((model.matrix - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(model.e_plus, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(model.e_minus, -std::sqrt(0.5), 1e-15);
  Eigen::Vector3d zero = model.eigenvectors.col(0);
  Eigen::Vector3d expected_zero(1 / r2, -1 / r2, 0);
  EXPECT_NEAR(std::abs(zero.dot(expected_zero)), 1.0, 1e-14);
}

TEST(ReducedModel, SpectrumMatchesEigensolver) {
  ReducedModel model = reduced_transfer_hamiltonian(100, 3, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.matrix);
  const double e = std::sqrt(8.0 / 100.0);
  EXPECT_NEAR(es.eigenvalues()(0), -e, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(2), e, 1e-12);
  const double energies[3] = {model.e0, model.e_plus, model.e_minus};
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d v = model.eigenvectors.col(k);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT((model.matrix * v - energies[k] * v).norm(), 1e-12);
  }
}

TEST(ReducedModel, RejectsOversizedHubSets) {
  EXPECT_THROW(reduced_transfer_hamiltonian(5, 2, 3), InvalidArgument);
  EXPECT_THROW(reduced_transfer_hamiltonian(5, 0, 1), InvalidArgument);
}

TEST(ReducedModel, SpanIsInvariantOnHubbedGraphs) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = make_random_hubbed(35, {0, 1, 2, 3, 4}, 0.15, seed);
    HubSpec hubs{{}, {0, 1}, {2, 3, 4}};
    Eigen::MatrixXd h = build_hamiltonian(g, hubs);
    std::vector<State> basis = transfer_basis(g, {0, 1}, {2, 3, 4});
    Eigen::MatrixXcd b(35, 3);
    for (int k = 0; k < 3; ++k) b.col(k) = basis[k];
    Eigen::MatrixXcd hb = h.cast<cd>() * b;
    Eigen::MatrixXcd inside = b * (b.adjoint() * hb);
    EXPECT_LT((hb - inside).norm(), 1e-10);
    Eigen::MatrixXd projected = (b.adjoint() * hb).real();
    EXPECT_LT((projected - reduced_transfer_hamiltonian(35, 2, 3).matrix)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(ReducedModel, SearchSpanIsInvariant) {
  Graph g = make_random_hubbed(25, {0, 1, 2}, 0.2, 8);
  Eigen::MatrixXd h = build_hamiltonian(g, {{0, 1, 2}, {}, {}});
  Eigen::MatrixXd b(25, 4);
  for (int w = 0; w < 3; ++w) b.col(w) = vertex_state(25, w).real();
  b.col(3) = rest_state(25, {0, 1, 2}).real();
  Eigen::MatrixXd hb = h * b;
  EXPECT_LT((hb - b * (b.transpose() * hb)).norm(), 1e-10);
  EXPECT_LT((b.transpose() * hb - effective_hamiltonian(25, 3, 1.0 / 25, -1.0))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(ReducedModel, FullMatchesThreeLevelModel) {
  for (auto [n, s, r] : {std::tuple{20, 1, 1}, {60, 2, 5}, {200, 3, 3}}) {
    VertexSet senders = vertex_range(0, s);
    VertexSet receivers = vertex_range(s, r);
    Graph g = make_complete(n);
    Propagator prop(build_hamiltonian(g, {{}, senders, receivers}));
    std::vector<State> basis = transfer_basis(g, senders, receivers);
    ReducedModel model = reduced_transfer_hamiltonian(n, s, r);
    const double horizon = 2.0 * transfer_time(n, s, r);
    for (int k = 0; k < 50; ++k) {
      const double t = horizon * k / 49.0;
      cd full = prop.amplitude(basis[1], basis[0], t);
      cd small = small_amplitude(model.matrix, 1, 0, t);
      EXPECT_LT(std::abs(full - small), 1e-9) << "n=" << n << " t=" << t;
      EXPECT_NEAR(std::norm(full), transfer_fidelity(n, s, r, t), 1e-9);
      EXPECT_NEAR(std::norm(transfer_amplitude(n, s, r, t)),
                  transfer_fidelity(n, s, r, t), 1e-12);
    }
  }
}

TEST(Fidelity, ClosedFormValues) {
  EXPECT_EQ(transfer_fidelity(50, 2, 3, 0.0), 0.0);
  for (int s : {1, 2, 4, 7}) {
    EXPECT_NEAR(transfer_fidelity(100, s, s, transfer_time(100, s, s)), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(max_transfer_fidelity(1, 4), 0.64);
  EXPECT_DOUBLE_EQ(max_transfer_fidelity(1, 9), 0.36);
  EXPECT_NEAR(transfer_fidelity(80, 1, 4, transfer_time(80, 1, 4)), 0.64, 1e-12);
}

TEST(Fidelity, PeriodicWithMaximumAtTransferTime) {
  for (auto [n, s, r] : {std::tuple{40, 1, 3}, {150, 2, 2}, {500, 6, 1}}) {
    const double period = 2.0 * transfer_time(n, s, r);
    double best = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      const double t = period * k / 20000.0;
      const double f = transfer_fidelity(n, s, r, t);
      EXPECT_NEAR(f, transfer_fidelity(n, s, r, t + period), 1e-12);
      best = std::max(best, f);
    }
    const double fmax = max_transfer_fidelity(s, r);
    EXPECT_NEAR(transfer_fidelity(n, s, r, period / 2.0), fmax, 1e-12);
    EXPECT_LE(best, fmax + 1e-12);
    EXPECT_GT(best, fmax - 1e-6);
  }
}

TEST(Search, RuntimeValues) {
  EXPECT_NEAR(search_runtime(100, 1), 5.0 * kPi, 1e-12);
  EXPECT_NEAR(search_runtime(100, 4), 2.5 * kPi, 1e-12);
  EXPECT_THROW(search_runtime(10, 10), InvalidArgument);
}

TEST(Search, TwoLevelModelEigenvalues) {
  Eigen::Matrix2d h = reduced_search_hamiltonian(100, 4);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  EXPECT_NEAR(es.eigenvalues()(1) - es.eigenvalues()(0), 2.0 * std::sqrt(0.04), 1e-12);
}

TEST(Search, FullSimulationFindsMarkedHub) {
  Eigen::MatrixXd h = build_hamiltonian(make_complete(100), {{0}, {}, {}});
  State psi = evolve(h, group_state(100, vertex_range(0, 100)), search_runtime(100, 1));
  EXPECT_NEAR(std::norm(psi(0)), 1.0, 2e-2);
}

}  // namespace
}  // namespace hubwalk::ctqw
