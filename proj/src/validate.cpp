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
#include <cstdio>
#include <ostream>

#include "hubwalk/ctqw.hpp"
#include "hubwalk/dtqw.hpp"
#include "hubwalk/errors.hpp"
#include "hubwalk/experiments.hpp"
#include "hubwalk/reduced.hpp"

namespace hubwalk::experiments {
namespace {

namespace rd = hubwalk::reduced;
constexpr double kTol = 1e-9;

Check make(std::string group, std::string name, double value, std::string detail = {}) {
  return {std::move(group), std::move(name), value, kTol, false, std::move(detail)};
}

double gram_error(const rd::ReducedBasis& b) {
  const Eigen::MatrixXd d = b.dense();
  const auto k = d.cols();
  return (d.transpose() * d - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
}

double orthogonality_error(const Eigen::MatrixXd& m) {
  return (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double spectrum_error(const rd::ReducedOperator& op) {
  const auto num = rd::numerical_spectrum(op.matrix);
  if (num.size() != op.phases.size()) return 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    worst = std::max(worst, std::abs(num[i] - op.phases[i]));
  }
  return worst;
}

// Reduced-operator checks shared by the three constructions.
void operator_checks(ValidationReport& rep, const std::string& group,
                     const rd::ReducedBasis& basis, const dtqw::StepOperator& u,
                     const rd::ReducedOperator& op, int n) {
  rep.checks.push_back(make(group, "basis orthonormality", gram_error(basis)));
  rep.checks.push_back(make(group, "closure", rd::closure_residual(basis, u)));
  rep.checks.push_back(
      operator_check(group, rd::project_operator(basis, u), op.matrix, op.labels));
  rep.checks.push_back(make(group, "reduced orthogonality", orthogonality_error(op.matrix)));
  rep.checks.push_back(make(group, "eigenphases", spectrum_error(op)));
  const int mult = rd::unit_multiplicity(op.matrix);
  rep.checks.push_back({group, "unit eigenvalue multiplicity",
                        double(std::abs(mult - op.unit_multiplicity)), 0.5, false,
                        "found " + std::to_string(mult) + ", expected " +
                            std::to_string(op.unit_multiplicity)});
  rep.checks.push_back(
      make(group, "exact eigenvectors", rd::eigenpair_residual(op, rd::EigenKind::exact)));
  const double approx = rd::eigenpair_residual(op, rd::EigenKind::approximate);
  if (approx > 0.0) {
    rep.checks.push_back({group, "approximate eigenvectors (residual * sqrt N)",
                          approx * std::sqrt(double(n)), 0.0, true, ""});
  }
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

void ValidationReport::write_table(std::ostream& out) const {
  out << "group,check,value,threshold,status,detail\n";
  char buf[64];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%.3e,%.1e", c.value, c.threshold);
    const char* status = c.informational ? "info" : (c.passed() ? "pass" : "FAIL");
    out << c.group << ',' << c.name << ',' << buf << ',' << status << ',' << c.detail << '\n';
  }
  out << (passed() ? "PASS" : "FAIL") << '\n';
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"group", c.group},
                   {"check", c.name},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"informational", c.informational},
                   {"passed", c.passed()},
                   {"detail", c.detail}});
  }
  return j;
}

Check operator_check(const std::string& group, const Eigen::MatrixXd& projected,
                     const Eigen::MatrixXd& hand, const std::vector<std::string>& labels,
                     double threshold) {
  Check c{group, "projection vs hand-coded matrix", 0.0, threshold, false, ""};
  if (projected.rows() != hand.rows() || projected.cols() != hand.cols()) {
    c.value = 1.0;
    c.detail = "shape mismatch";
    return c;
  }
  Eigen::Index wi = 0, wj = 0;
  c.value = (projected - hand).cwiseAbs().maxCoeff(&wi, &wj);
  auto name = [&](Eigen::Index i) {
    return i < static_cast<Eigen::Index>(labels.size()) ? labels[i] : std::to_string(i);
  };
  char buf[128];
  std::snprintf(buf, sizeof buf, "worst <%s|U|%s>: projected %.12g hand-coded %.12g",
                name(wi).c_str(), name(wj).c_str(), projected(wi, wj), hand(wi, wj));
  c.detail = buf;
  return c;
}

ValidationReport run_validate(const Config& cfg) {
  static const std::vector<std::string> kPresets{"all", "search", "twohub", "multihub", "ctqw"};
  if (std::find(kPresets.begin(), kPresets.end(), cfg.preset) == kPresets.end()) {
    throw InvalidArgument("unknown preset '" + cfg.preset +
                          "' (all, search, twohub, multihub, ctqw)");
  }
  Config c = cfg;
  c.kind = Kind::validate;
  const HubSpec layout = hub_layout(c);
  const Graph g = build_graph(c, layout);
  const int n = g.n_vertices();
  if (n > 64) throw InvalidArgument("validation runs dense checks and needs N <= 64");
  const bool all = cfg.preset == "all";
  ValidationReport rep;
  const dtqw::ArcBasis basis(g);

  if (all || cfg.preset == "search") {
    const VertexSet marked = vertex_range(0, cfg.m);
    const dtqw::StepOperator u(basis, marked);
    const Eigen::MatrixXd dense = u.to_dense();
    rep.checks.push_back(make("search", "unitarity", orthogonality_error(dense)));
    const auto b = rd::search_basis(basis, marked);
    operator_checks(rep, "search", b, u, rd::search_reduced_matrix(n, cfg.m), n);
    const auto proj = rd::project_onto(b, dtqw::uniform_eigenstate(basis));
    const Eigen::VectorXd expect = rd::search_initial_coefficients(n, cfg.m);
    rep.checks.push_back(make("search", "initial state decomposition",
                              std::max(proj.residual, (proj.coefficients.real() - expect).cwiseAbs().maxCoeff())));
    const dtqw::State omega = dtqw::uniform_eigenstate(basis);
    const dtqw::StepOperator free_walk(basis, {});
    rep.checks.push_back(make("search", "uniform state invariance",
                              (free_walk.apply(omega) - omega).norm()));
  }

  if (all || cfg.preset == "twohub") {
    const dtqw::StepOperator u(basis, {0, 1});
    rep.checks.push_back(make("twohub", "unitarity", orthogonality_error(u.to_dense())));
    const auto b = rd::twohub_basis(basis, 0, 1);
    operator_checks(rep, "twohub", b, u, rd::twohub_reduced_matrix(n), n);
    const auto sb = rd::twohub_symmetric_basis(basis, 0, 1);
    const Eigen::MatrixXd p = rd::project_operator(sb, u);
    const auto plus = rd::twohub_symmetric_block(n);
    const auto minus = rd::twohub_antisymmetric_block(n);
    Check cp = operator_check("twohub", p.topLeftCorner(5, 5), plus.matrix, plus.labels);
    cp.name = "symmetric block";
    rep.checks.push_back(cp);
    std::vector<std::string> tl(sb.labels.begin() + 5, sb.labels.end());
    Check cm = operator_check("twohub", p.bottomRightCorner(4, 4), minus.matrix, tl);
    cm.name = "antisymmetric block";
    rep.checks.push_back(cm);
    rep.checks.push_back(make("twohub", "block decoupling",
                              std::max(p.topRightCorner(5, 4).cwiseAbs().maxCoeff(),
                                       p.bottomLeftCorner(4, 5).cwiseAbs().maxCoeff())));
    const auto proj = rd::project_onto(b, dtqw::local_states(basis, 0).omega);
    rep.checks.push_back(make(
        "twohub", "sender superposition decomposition",
        std::max(proj.residual,
                 (proj.coefficients.real() - rd::twohub_superposition(n, true)).cwiseAbs().maxCoeff())));
  }

  if (all || cfg.preset == "multihub") {
    const VertexSet senders = vertex_range(0, cfg.s);
    const VertexSet receivers = vertex_range(cfg.s, cfg.r);
    VertexSet marked = senders;
    marked.insert(marked.end(), receivers.begin(), receivers.end());
    const dtqw::StepOperator u(basis, marked);
    rep.checks.push_back(make("multihub", "unitarity", orthogonality_error(u.to_dense())));
    const auto b = rd::multihub_basis(basis, senders, receivers);
    operator_checks(rep, "multihub", b, u, rd::multihub_reduced_matrix(n, cfg.s, cfg.r), n);
    dtqw::State sup = dtqw::State::Zero(static_cast<Eigen::Index>(basis.size()));
    for (Vertex v : senders) sup += dtqw::local_states(basis, v).omega;
    sup /= std::sqrt(double(cfg.s));
    const auto proj = rd::project_onto(b, sup);
    rep.checks.push_back(make(
        "multihub", "sender superposition decomposition",
        std::max(proj.residual, (proj.coefficients.real() -
                                 rd::multihub_superposition(n, cfg.s, cfg.r)).cwiseAbs().maxCoeff())));
  }

  if (all || cfg.preset == "ctqw") {
    const VertexSet senders = vertex_range(0, cfg.s);
    const VertexSet receivers = vertex_range(cfg.s, cfg.r);
    const HubSpec hubs{{}, senders, receivers};
    const Eigen::MatrixXd h = ctqw::build_hamiltonian(g, hubs);
    const auto model = ctqw::reduced_transfer_hamiltonian(n, cfg.s, cfg.r);
    const auto vecs = ctqw::transfer_basis(g, senders, receivers);
    Eigen::MatrixXcd b(n, 3);
    for (int k = 0; k < 3; ++k) b.col(k) = vecs[k];
    const Eigen::MatrixXcd hb = h.cast<std::complex<double>>() * b;
    const Eigen::MatrixXcd red = b.adjoint() * hb;
    rep.checks.push_back(make("ctqw", "invariance", (hb - b * red).norm()));
    Check cc = operator_check("ctqw", red.real(), model.matrix, model.labels);
    cc.name = "projection vs 3x3 model";
    rep.checks.push_back(cc);
    const ctqw::Propagator full(h);
    const double t_opt = ctqw::transfer_time(n, cfg.s, cfg.r);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double t = 2.0 * t_opt * k / 49.0;
      worst = std::max(worst, std::abs(std::norm(full.amplitude(vecs[1], vecs[0], t)) -
                                       ctqw::transfer_fidelity(n, cfg.s, cfg.r, t)));
    }
    rep.checks.push_back(make("ctqw", "fidelity vs closed form", worst));
  }
  return rep;
}

}  // namespace hubwalk::experiments
