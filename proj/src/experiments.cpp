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

#include "hubwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "hubwalk/ctqw.hpp"
#include "hubwalk/dtqw.hpp"
#include "hubwalk/errors.hpp"
#include "hubwalk/reduced.hpp"

namespace hubwalk::experiments {
namespace {

using json = nlohmann::ordered_json;
using dtqw::State;
namespace rd = hubwalk::reduced;

double sq(double x) { return x * x; }

std::complex<double> overlap(const State& a, const State& b) { return a.dot(b); }

int step_horizon(const Config& cfg, int t_opt) {
  if (cfg.t_max) {
    if (*cfg.t_max < 0) throw InvalidArgument("--t-max must be non-negative");
    return static_cast<int>(std::ceil(*cfg.t_max));
  }
  return static_cast<int>(std::ceil(2.5 * t_opt));
}

json graph_json(const Config& cfg) {
  json g;
  switch (cfg.graph.model) {
    case GraphModel::complete:
      g["model"] = "complete";
      break;
    case GraphModel::random:
      g["model"] = "random";
      g["edge_prob"] = cfg.graph.edge_prob;
      g["seed"] = cfg.graph.seed;
      break;
    case GraphModel::file:
      g["model"] = "file";
      g["path"] = cfg.graph.path;
      break;
  }
  return g;
}

json config_json(const Config& cfg, int n) {
  json c;
  c["kind"] = to_string(cfg.kind);
  c["n"] = n;
  c["m"] = cfg.m;
  c["s"] = cfg.s;
  c["r"] = cfg.r;
  c["graph"] = graph_json(cfg);
  return c;
}

// Tracks the largest absolute difference between two layers.
struct MaxDelta {
  double value = 0.0;
  void add(double a, double b) { value = std::max(value, std::abs(a - b)); }
};

State scaled_sum(const std::vector<State>& parts) {
  State out = State::Zero(parts.front().size());
  for (const auto& p : parts) out += p;
  return out / std::sqrt(static_cast<double>(parts.size()));
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::search: return "search";
    case Kind::ctqw_transfer: return "ctqw-transfer";
    case Kind::twohub: return "twohub";
    case Kind::multihub: return "multihub";
    case Kind::scaling: return "scaling";
    case Kind::validate: return "validate";
  }
  return "unknown";
}

HubSpec hub_layout(const Config& cfg) {
  HubSpec h;
  switch (cfg.kind) {
    case Kind::search:
      if (cfg.m < 1) throw InvalidArgument("--m must be at least 1");
      h.marked = vertex_range(0, cfg.m);
      break;
    case Kind::twohub:
    case Kind::scaling:
      h.senders = {0};
      h.receivers = {1};
      break;
    case Kind::ctqw_transfer:
    case Kind::multihub:
      if (cfg.s < 1 || cfg.r < 1) throw InvalidArgument("--s and --r must be at least 1");
      h.senders = vertex_range(0, cfg.s);
      h.receivers = vertex_range(cfg.s, cfg.r);
      break;
    case Kind::validate:
      h.marked = vertex_range(0, std::max({cfg.m, cfg.s + cfg.r, 2}));
      break;
  }
  return h;
}

Graph build_graph(const Config& cfg, const HubSpec& hubs) {
  switch (cfg.graph.model) {
    case GraphModel::complete:
      return make_complete(cfg.n);
    case GraphModel::random:
      return make_random_hubbed(cfg.n, hubs.all(), cfg.graph.edge_prob, cfg.graph.seed);
    case GraphModel::file:
      return load_edge_list(cfg.graph.path);
  }
  throw InvalidArgument("unknown graph model");
}

std::string series_filename(const Config& cfg) {
  return to_string(cfg.kind) + "_N" + std::to_string(cfg.n) + "_M" + std::to_string(cfg.m) +
         "_S" + std::to_string(cfg.s) + "_R" + std::to_string(cfg.r) + ".csv";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("slope fit needs two or more matching points");
  }
  const auto k = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(k, 2);
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw InvalidArgument("log-log fit needs positive data");
    a(i, 0) = std::log(x[i]);
    a(i, 1) = 1.0;
    b(i) = std::log(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

std::pair<double, double> maximize(const std::function<double(double)>& f, double a,
                                   double b, int samples) {
  if (samples < 3 || !(b > a)) throw InvalidArgument("maximize needs b > a and 3+ samples");
  const double h = (b - a) / (samples - 1);
  int best = 0;
  double fbest = f(a);
  for (int k = 1; k < samples; ++k) {
    const double v = f(a + k * h);
    if (v > fbest) {
      fbest = v;
      best = k;
    }
  }
  double lo = a + std::max(best - 1, 0) * h;
  double hi = a + std::min(best + 1, samples - 1) * h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  const double t = 0.5 * (lo + hi);
  const double ft = f(t);
  if (ft >= fbest) return {t, ft};
  return {a + best * h, fbest};
}

std::vector<Series> parallel_map(int count, int jobs, const std::function<Series(int)>& f) {
  std::vector<Series> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return out;
  const int workers = std::clamp(jobs, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// ---- search ------------------------------------------------------------------

Series run_search(const Config& cfg) {
  const HubSpec hubs = hub_layout(cfg);
  const Graph g = build_graph(cfg, hubs);
  const int n = g.n_vertices();
  const int m = cfg.m;
  const int t_opt = rd::search_optimal_steps(n, m);
  const int t_max = step_horizon(cfg, t_opt);

  const dtqw::ArcBasis basis(g);
  const dtqw::StepOperator u(basis, hubs.marked);
  const rd::ReducedBasis rb = rd::search_basis(basis, hubs.marked);
  const rd::ReducedOperator op = rd::search_reduced_matrix(n, m);
  const auto traj = rd::reduced_trajectory(op.matrix, rd::search_initial_coefficients(n, m), t_max);
  const auto i1 = *rb.index_of("nu1");
  const auto i2 = rb.index_of("nu2");
  const auto i3 = *rb.index_of("nu3");

  Series out({"t", "p1", "p2", "p3", "p_total", "p1_formula", "p2_formula", "p3_formula",
              "p_formula", "p1_reduced", "p2_reduced", "p3_reduced", "p_reduced", "p_exact",
              "p_approx"});
  MaxDelta d_reduced, d_formula, d_exact;
  State psi = dtqw::uniform_eigenstate(basis), next;
  double peak = -1.0;
  int peak_t = 0;
  for (int t = 0; t <= t_max; ++t) {
    const auto proj = rd::project_onto(rb, psi);
    const double p1 = std::norm(proj.coefficients(i1));
    const double p2 = i2 ? std::norm(proj.coefficients(*i2)) : 0.0;
    const double p3 = std::norm(proj.coefficients(i3));
    const double p = dtqw::block_probability(basis, psi, hubs.marked);

    const Eigen::VectorXd& c = traj[t];
    const double r1 = sq(c(i1)), r2 = i2 ? sq(c(*i2)) : 0.0, r3 = sq(c(i3));
    const auto f = rd::search_probabilities(n, m, t);

    out.add_row({double(t), p1, p2, p3, p, f.p1, f.p2, f.p3, f.p, r1, r2, r3, r1 + r2 + r3,
                 f.p_parity, f.p_approx});
    for (auto [a, b] : {std::pair{p1, r1}, {p2, r2}, {p3, r3}, {p, r1 + r2 + r3}}) {
      d_reduced.add(a, b);
    }
    for (auto [a, b] : {std::pair{p1, f.p1}, {p2, f.p2}, {p3, f.p3}, {p, f.p}}) {
      d_formula.add(a, b);
    }
    d_exact.add(p, f.p_parity);
    if (p > peak) {
      peak = p;
      peak_t = t;
    }
    u.apply_into(psi, next);
    psi.swap(next);
  }

  out.meta["config"] = config_json(cfg, n);
  out.meta["omega"] = rd::search_phase(n, m);
  out.meta["T"] = t_opt;
  out.meta["peak_t"] = peak_t;
  out.meta["peak_p"] = peak;
  if (t_opt <= t_max) out.meta["p_at_T"] = out.rows[t_opt][out.column("p_total")];
  out.meta["max_abs_sim_minus_reduced"] = d_reduced.value;
  out.meta["max_abs_sim_minus_formula"] = d_formula.value;
  out.meta["max_abs_sim_minus_exact"] = d_exact.value;
  return out;
}

// ---- continuous-time transfer ---------------------------------------------

namespace {

struct CtqwRun {
  std::function<double(double)> sim;
  std::function<double(double)> reduced;
  double t_opt;
};

CtqwRun make_ctqw_run(const Config& cfg, const HubSpec& hubs, const Graph& g) {
  const int n = g.n_vertices();
  const int s = static_cast<int>(hubs.senders.size());
  const int r = static_cast<int>(hubs.receivers.size());
  ctqw::Config cc;
  cc.gamma = cfg.gamma;
  auto prop = std::make_shared<ctqw::Propagator>(ctqw::build_hamiltonian(g, hubs, cc));
  auto from = std::make_shared<ctqw::State>(ctqw::group_state(n, hubs.senders));
  auto to = std::make_shared<ctqw::State>(ctqw::group_state(n, hubs.receivers));
  const ctqw::ReducedModel model = ctqw::reduced_transfer_hamiltonian(n, s, r);
  auto red = std::make_shared<ctqw::Propagator>(model.matrix);
  auto e_s = std::make_shared<ctqw::State>(ctqw::State::Unit(3, 0));
  auto e_r = std::make_shared<ctqw::State>(ctqw::State::Unit(3, 1));
  CtqwRun run;
  run.sim = [=](double t) { return std::norm(prop->amplitude(*to, *from, t)); };
  run.reduced = [=](double t) { return std::norm(red->amplitude(*e_r, *e_s, t)); };
  run.t_opt = ctqw::transfer_time(n, s, r);
  return run;
}

}  // namespace

Series run_ctqw_transfer(const Config& cfg) {
  if (cfg.time_points < 3) throw InvalidArgument("time grid needs at least 3 points");
  const HubSpec hubs = hub_layout(cfg);
  const Graph g = build_graph(cfg, hubs);
  hubs.validate(g);
  const int n = g.n_vertices();
  const CtqwRun run = make_ctqw_run(cfg, hubs, g);
  const double horizon = cfg.t_max ? *cfg.t_max : 2.0 * run.t_opt;
  if (!(horizon > 0)) throw InvalidArgument("--t-max must be positive");

  Series out({"t", "fidelity", "fidelity_reduced", "fidelity_formula"});
  MaxDelta d_reduced, d_formula;
  for (int k = 0; k < cfg.time_points; ++k) {
    const double t = horizon * k / (cfg.time_points - 1);
    const double f = run.sim(t), fr = run.reduced(t);
    const double ff = ctqw::transfer_fidelity(n, cfg.s, cfg.r, t);
    out.add_row({t, f, fr, ff});
    d_reduced.add(f, fr);
    d_formula.add(f, ff);
  }
  const auto [t_best, f_best] = maximize(run.sim, 0.0, horizon, cfg.time_points);

  out.meta["config"] = config_json(cfg, n);
  out.meta["gamma"] = cfg.gamma.value_or(1.0 / n);
  out.meta["T"] = run.t_opt;
  out.meta["F_max"] = ctqw::max_transfer_fidelity(cfg.s, cfg.r);
  out.meta["fidelity_at_T"] = run.sim(run.t_opt);
  out.meta["max_fidelity"] = f_best;
  out.meta["t_at_max"] = t_best;
  out.meta["max_abs_sim_minus_reduced"] = d_reduced.value;
  out.meta["max_abs_sim_minus_formula"] = d_formula.value;
  return out;
}

Series run_ctqw_surface(const Config& cfg) {
  const int k = cfg.surface;
  if (k < 1) throw InvalidArgument("surface bound must be at least 1");
  if (cfg.time_points < 3) throw InvalidArgument("time grid needs at least 3 points");
  auto rows = parallel_map(k, cfg.jobs, [&](int i) {
    Series part({"s", "r", "max_fidelity", "max_fidelity_formula", "t_at_max"});
    const int s = i + 1;
    for (int r = 1; r <= k; ++r) {
      if (s + r >= cfg.n) continue;
      Config c = cfg;
      c.kind = Kind::ctqw_transfer;
      c.s = s;
      c.r = r;
      const HubSpec hubs = hub_layout(c);
      const Graph g = build_graph(c, hubs);
      hubs.validate(g);
      const CtqwRun run = make_ctqw_run(c, hubs, g);
      const double horizon = c.t_max ? *c.t_max : 2.0 * run.t_opt;
      const auto [t_best, f_best] = maximize(run.sim, 0.0, horizon, c.time_points);
      part.add_row({double(s), double(r), f_best, ctqw::max_transfer_fidelity(s, r), t_best});
    }
    return part;
  });
  Series out({"s", "r", "max_fidelity", "max_fidelity_formula", "t_at_max"});
  MaxDelta d;
  for (auto& part : rows) {
    for (auto& row : part.rows) {
      d.add(row[2], row[3]);
      out.add_row(row);
    }
  }
  out.meta["config"] = config_json(cfg, cfg.n);
  out.meta["surface"] = k;
  out.meta["max_abs_sim_minus_formula"] = d.value;
  return out;
}

// ---- two-hub transfer ----------------------------------------------------

Series run_twohub(const Config& cfg) {
  Config c = cfg;
  c.kind = Kind::twohub;
  const HubSpec hubs = hub_layout(c);
  const Graph g = build_graph(c, hubs);
  hubs.validate(g);
  const int n = g.n_vertices();
  const Vertex s = 0, r = 1;
  const int t_opt = rd::twohub_transfer_steps(n);
  const int t_max = step_horizon(cfg, t_opt);

  const dtqw::ArcBasis basis(g);
  const dtqw::StepOperator u(basis, hubs.all());
  const auto ls = dtqw::local_states(basis, s);
  const auto lr = dtqw::local_states(basis, r);
  const State arc_sr = dtqw::arc_state(basis, s, r);
  const State arc_rs = dtqw::arc_state(basis, r, s);

  const rd::ReducedOperator op = rd::twohub_reduced_matrix(n);
  const Eigen::VectorXd sup_s = rd::twohub_superposition(n, true);
  const Eigen::VectorXd sup_r = rd::twohub_superposition(n, false);
  const auto traj_loop = rd::reduced_trajectory(op.matrix, rd::unit_coefficients(op.labels, "nu1"), t_max);
  const auto traj_sup = rd::reduced_trajectory(op.matrix, sup_s, t_max);
  const auto traj_arc = rd::reduced_trajectory(op.matrix, rd::unit_coefficients(op.labels, "nu3"), t_max);

  std::vector<std::string> cols{"t",           "loop_sim", "loop_reduced", "loop_formula",
                                "sup_sim",     "sup_reduced", "sup_formula",
                                "arc_sim",     "arc_reduced", "arc_formula"};
  const bool qubit = cfg.qubit.has_value();
  State qs, qr;
  std::complex<double> qa, qb;
  if (qubit) {
    if (!(cfg.qubit->rho >= 0.0 && cfg.qubit->rho <= 1.0)) {
      throw InvalidArgument("--rho must lie in [0, 1]");
    }
    qa = cfg.qubit->rho;
    qb = std::polar(std::sqrt(1.0 - sq(cfg.qubit->rho)), cfg.qubit->phi);
    qs = qa * ls.loop + qb * ls.omega;
    qr = qa * lr.loop + qb * lr.omega;
    for (const char* name : {"qubit_sim", "qubit_reduced", "qubit_formula"}) cols.push_back(name);
  }
  Series out(cols);

  State psi_loop = ls.loop, psi_sup = ls.omega, psi_arc = arc_sr, psi_q = qs, next;
  MaxDelta d_reduced, d_arc;
  std::complex<double> at_t[4];  // loop->loop, sup->sup, loop->sup, sup->loop at T
  double peak_loop = -1, peak_sup = -1;
  int peak_loop_t = 0, peak_sup_t = 0;
  for (int t = 0; t <= t_max; ++t) {
    if (t % 2 == 0) {
      const double fl = std::norm(overlap(lr.loop, psi_loop));
      const double fs = std::norm(overlap(lr.omega, psi_sup));
      const double fa = std::norm(overlap(arc_rs, psi_arc));
      const double rl = sq(traj_loop[t](1));
      const double rs = sq(sup_r.dot(traj_sup[t]));
      const double ra = sq(traj_arc[t](3));
      const auto f = rd::twohub_amplitudes(n, t);
      std::vector<double> row{double(t), fl, rl, sq(*f.loop_to_loop), fs, rs, sq(f.sup_to_sup),
                              fa, ra, sq(*f.arc_to_arc)};
      d_reduced.add(fl, rl);
      d_reduced.add(fs, rs);
      d_reduced.add(fa, ra);
      d_arc.add(fa, fl);
      if (qubit) {
        const double fq = std::norm(overlap(qr, psi_q));
        const Eigen::VectorXcd cq = qa * traj_loop[t].cast<std::complex<double>>() +
                                    qb * traj_sup[t].cast<std::complex<double>>();
        const Eigen::VectorXcd tq = qa * rd::unit_coefficients(op.labels, "nu2").cast<std::complex<double>>() +
                                    qb * sup_r.cast<std::complex<double>>();
        const double rq = std::norm(tq.dot(cq));
        row.push_back(fq);
        row.push_back(rq);
        row.push_back(rd::qubit_transfer_fidelity(n, cfg.qubit->rho, cfg.qubit->phi, t));
        d_reduced.add(fq, rq);
      }
      out.add_row(row);
      if (fl > peak_loop) {
        peak_loop = fl;
        peak_loop_t = t;
      }
      if (fs > peak_sup) {
        peak_sup = fs;
        peak_sup_t = t;
      }
    }
    if (t == t_opt) {
      at_t[0] = overlap(lr.loop, psi_loop);
      at_t[1] = overlap(lr.omega, psi_sup);
      at_t[2] = overlap(lr.omega, psi_loop);
      at_t[3] = overlap(lr.loop, psi_sup);
    }
    if (t == t_max) break;
    u.apply_into(psi_loop, next);
    psi_loop.swap(next);
    u.apply_into(psi_sup, next);
    psi_sup.swap(next);
    u.apply_into(psi_arc, next);
    psi_arc.swap(next);
    if (qubit) {
      u.apply_into(psi_q, next);
      psi_q.swap(next);
    }
  }

  const rd::Phases ph = rd::twohub_phases(n);
  out.meta["config"] = config_json(c, n);
  out.meta["T"] = t_opt;
  out.meta["omega1"] = ph.omega1;
  out.meta["omega2"] = ph.omega2;
  out.meta["omega3"] = ph.omega3;
  out.meta["peak_t_loop"] = peak_loop_t;
  out.meta["peak_t_sup"] = peak_sup_t;
  out.meta["max_abs_sim_minus_reduced"] = d_reduced.value;
  out.meta["max_abs_arc_minus_loop"] = d_arc.value;

  if (cfg.qubit_grid > 0) {
    if (t_opt > t_max) throw InvalidArgument("--t-max is shorter than the transfer time");
    const int k = cfg.qubit_grid;
    double lo = 2.0, hi = -1.0;
    json lo_at, hi_at;
    for (int i = 0; i < k; ++i) {
      const double rho = k == 1 ? 1.0 : static_cast<double>(i) / (k - 1);
      for (int j = 0; j < k; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / k;
        const std::complex<double> a = rho;
        const std::complex<double> b = std::polar(std::sqrt(1.0 - rho * rho), phi);
        // Linear in the four simulated transfer amplitudes.
        const double f = std::norm(std::norm(a) * at_t[0] + std::norm(b) * at_t[1] +
                                   std::conj(b) * a * at_t[2] + std::conj(a) * b * at_t[3]);
        if (f < lo) {
          lo = f;
          lo_at = {{"rho", rho}, {"phi", phi}};
        }
        if (f > hi) {
          hi = f;
          hi_at = {{"rho", rho}, {"phi", phi}};
        }
      }
    }
    out.meta["qubit_grid"] = k;
    out.meta["min_fidelity"] = lo;
    out.meta["max_fidelity"] = hi;
    out.meta["min_fidelity_at"] = lo_at;
    out.meta["max_fidelity_at"] = hi_at;
  }
  return out;
}

// ---- multi-hub transfer --------------------------------------------------

Series run_multihub(const Config& cfg) {
  Config c = cfg;
  c.kind = Kind::multihub;
  const HubSpec hubs = hub_layout(c);
  const Graph g = build_graph(c, hubs);
  hubs.validate(g);
  const int n = g.n_vertices();
  const int s = cfg.s, r = cfg.r;
  const int t_even = rd::multihub_even_steps(n, s, r);
  const int t_odd = rd::multihub_odd_steps(n, s, r);
  const int t_max = step_horizon(cfg, t_even);

  const dtqw::ArcBasis basis(g);
  const dtqw::StepOperator u(basis, hubs.all());
  std::vector<State> loops, sups;
  for (Vertex v : hubs.senders) {
    const auto ls = dtqw::local_states(basis, v);
    loops.push_back(ls.loop);
    sups.push_back(ls.omega);
  }
  State psi_loop = scaled_sum(loops), psi_sup = scaled_sum(sups), next;
  loops.clear();
  sups.clear();

  const rd::ReducedOperator op = rd::multihub_reduced_matrix(n, s, r);
  const auto traj_loop = rd::reduced_trajectory(op.matrix, rd::unit_coefficients(op.labels, "nu1"), t_max);
  const auto traj_sup = rd::reduced_trajectory(op.matrix, rd::multihub_superposition(n, s, r), t_max);
  std::vector<Eigen::Index> targets;
  for (const char* label : {"nu2", "nu4", "nu6", "nu11"}) {
    auto it = std::find(op.labels.begin(), op.labels.end(), label);
    if (it != op.labels.end()) targets.push_back(it - op.labels.begin());
  }
  auto on_receivers = [&](const Eigen::VectorXd& cvec) {
    double p = 0.0;
    for (auto i : targets) p += sq(cvec(i));
    return p;
  };

  Series out({"t", "parity", "p_loop_sim", "p_loop_reduced", "p_loop_formula", "p_sup_sim",
              "p_sup_reduced", "p_sup_formula"});
  MaxDelta d_reduced, d_even, d_odd;
  double even_peak = -1, odd_peak = -1, loop_peak = -1;
  int even_t = 0, odd_t = 0, loop_t = 0;
  for (int t = 0; t <= t_max; ++t) {
    const double pl = dtqw::block_probability(basis, psi_loop, hubs.receivers);
    const double ps = dtqw::block_probability(basis, psi_sup, hubs.receivers);
    const double rl = on_receivers(traj_loop[t]);
    const double rs = on_receivers(traj_sup[t]);
    const double fl = rd::multihub_transfer_probability(n, s, r, t, rd::MultihubStart::loops).probability;
    const double fs =
        rd::multihub_transfer_probability(n, s, r, t, rd::MultihubStart::superposition).probability;
    out.add_row({double(t), double(t % 2), pl, rl, fl, ps, rs, fs});
    d_reduced.add(pl, rl);
    d_reduced.add(ps, rs);
    (t % 2 == 0 ? d_even : d_odd).add(ps, fs);
    if (t % 2 == 0 && ps > even_peak) {
      even_peak = ps;
      even_t = t;
    }
    if (t % 2 == 1 && ps > odd_peak) {
      odd_peak = ps;
      odd_t = t;
    }
    if (pl > loop_peak) {
      loop_peak = pl;
      loop_t = t;
    }
    if (t == t_max) break;
    u.apply_into(psi_loop, next);
    psi_loop.swap(next);
    u.apply_into(psi_sup, next);
    psi_sup.swap(next);
  }

  const rd::Phases ph = rd::multihub_phases(n, s, r);
  out.meta["config"] = config_json(c, n);
  out.meta["omega1"] = ph.omega1;
  out.meta["omega2"] = ph.omega2;
  out.meta["T"] = t_even;
  out.meta["T_half"] = 0.5 * t_even;
  out.meta["T_odd"] = t_odd;
  out.meta["pmax_even"] = rd::multihub_max_even(s, r);
  out.meta["pmax_odd"] = rd::multihub_max_odd(s, r);
  out.meta["pmax_loop"] = 4.0 * r / sq(s + r);
  out.meta["even_peak"] = {{"t", even_t}, {"p", even_peak}};
  out.meta["odd_peak"] = {{"t", odd_t}, {"p", odd_peak}};
  out.meta["loop_peak"] = {{"t", loop_t}, {"p", loop_peak}};
  if (t_even <= t_max) out.meta["p_sup_at_T"] = out.rows[t_even][out.column("p_sup_sim")];
  if (t_odd <= t_max) out.meta["p_sup_at_T_odd"] = out.rows[t_odd][out.column("p_sup_sim")];
  out.meta["max_abs_sim_minus_reduced"] = d_reduced.value;
  out.meta["max_abs_sim_minus_formula_even"] = d_even.value;
  out.meta["max_abs_sim_minus_formula_odd"] = d_odd.value;
  return out;
}

// ---- finite-size scaling ---------------------------------------------------

Series run_scaling(const Config& cfg) {
  if (cfg.sizes.empty()) throw InvalidArgument("scaling needs at least one size");
  for (int n : cfg.sizes) {
    if (n < 8) throw InvalidArgument("scaling sizes must be at least 8");
  }
  const std::vector<std::string> cols{"n",
                                      "T",
                                      "infidelity_loop",
                                      "infidelity_sup",
                                      "infidelity_loop_reduced",
                                      "infidelity_sup_reduced",
                                      "ref_2_over_n",
                                      "ref_3_over_n"};
  std::vector<int> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  auto parts = parallel_map(static_cast<int>(sizes.size()), cfg.jobs, [&](int i) {
    const int n = sizes[i];
    const Graph g = make_complete(n);
    const dtqw::ArcBasis basis(g);
    const dtqw::StepOperator u(basis, {0, 1});
    const auto ls = dtqw::local_states(basis, 0);
    const auto lr = dtqw::local_states(basis, 1);
    const int t = rd::twohub_transfer_steps(n);
    const State loop = dtqw::apply_steps(u, ls.loop, t);
    const State sup = dtqw::apply_steps(u, ls.omega, t);
    const double fl = std::norm(overlap(lr.loop, loop));
    const double fs = std::norm(overlap(lr.omega, sup));

    const rd::ReducedOperator op = rd::twohub_reduced_matrix(n);
    const auto tl = rd::reduced_trajectory(op.matrix, rd::unit_coefficients(op.labels, "nu1"), t);
    const auto ts = rd::reduced_trajectory(op.matrix, rd::twohub_superposition(n, true), t);
    const double rl = sq(tl[t](1));
    const double rs = sq(rd::twohub_superposition(n, false).dot(ts[t]));

    Series part(cols);
    part.add_row({double(n), double(t), 1.0 - fl, 1.0 - fs, 1.0 - rl, 1.0 - rs, 2.0 / n, 3.0 / n});
    return part;
  });

  Series out(cols);
  for (auto& p : parts) out.add_row(p.rows.front());
  const auto ns = out.values("n");
  const auto il = out.values("infidelity_loop");
  const auto is = out.values("infidelity_sup");
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double ratio = il[k] / (2.0 / ns[k]);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.meta["config"] = config_json(cfg, sizes.back());
  out.meta["sizes"] = sizes;
  if (ns.size() >= 2) {
    out.meta["slope_loop"] = loglog_slope(ns, il);
    out.meta["slope_sup"] = loglog_slope(ns, is);
  }
  out.meta["min_ratio_loop_to_2_over_n"] = lo;
  out.meta["max_ratio_loop_to_2_over_n"] = hi;
  return out;
}

}  // namespace hubwalk::experiments
