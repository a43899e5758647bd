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

#include "hubwalk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <algorithm>
#include <list>

#include <CLI11.hpp>

#include "hubwalk/errors.hpp"
#include "hubwalk/experiments.hpp"
#include "hubwalk/graph.hpp"

namespace hubwalk::cli {
namespace {

namespace ex = hubwalk::experiments;
namespace fs = std::filesystem;

struct Options {
  ex::Config cfg;
  std::string format = "csv";
  std::string output;
  std::string graph = "complete";
  std::string graph_file;
  double t_max = -1.0;
  double gamma = -1.0;
  double rho = -1.0;
  double phi = 0.0;
  /// Set for the graph subcommand.
  bool emit_graph = false;
  int hubs = 1;
};

void add_graph_flags(CLI::App* sub, Options& o) {
  sub->add_option("--graph", o.graph, "Graph model: complete, random or file")
      ->check(CLI::IsMember({"complete", "random", "file"}))
      ->capture_default_str();
  sub->add_option("--edge-prob", o.cfg.graph.edge_prob,
                  "Random model: probability of each non-hub edge, in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--seed", o.cfg.graph.seed, "Random model: generator seed")
      ->capture_default_str();
  sub->add_option("--graph-file", o.graph_file,
                  "Edge-list file (first line N, then one 'u v' per line); implies --graph file");
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", o.output,
                  "Output file, or an existing directory to use the standard series name "
                  "(default: standard output)");
}

void add_n(CLI::App* sub, Options& o, int def) {
  o.cfg.n = def;
  sub->add_option("--n", o.cfg.n, "Number of vertices N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_t_max(CLI::App* sub, Options& o, const char* what) {
  sub->add_option("--t-max", o.t_max, what)->check(CLI::NonNegativeNumber);
}

void add_sr(CLI::App* sub, Options& o, int s_def, int r_def) {
  o.cfg.s = s_def;
  o.cfg.r = r_def;
  sub->add_option("--s", o.cfg.s, "Number of sender hubs S")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--r", o.cfg.r, "Number of receiver hubs R")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_jobs(CLI::App* sub, Options& o) {
  sub->add_option("--jobs", o.cfg.jobs, "Worker threads for sweep points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void finish(Options& o) {
  if (!o.graph_file.empty()) {
    o.graph = "file";
    o.cfg.graph.path = o.graph_file;
  }
  if (o.graph == "file") {
    if (o.cfg.graph.path.empty()) throw InvalidArgument("--graph file needs --graph-file PATH");
    o.cfg.graph.model = ex::GraphModel::file;
  } else if (o.graph == "random") {
    o.cfg.graph.model = ex::GraphModel::random;
  }
  if (o.t_max >= 0.0) o.cfg.t_max = o.t_max;
  if (o.gamma > 0.0) o.cfg.gamma = o.gamma;
}

// Writes through `out` unless --output names a file or directory.
void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (o.output.empty() || o.output == "-") {
    write(out);
    return;
  }
  fs::path path = o.output;
  if (fs::is_directory(path)) {
    std::string name = ex::series_filename(o.cfg);
    if (o.format == "json") name.replace(name.size() - 4, 4, ".json");
    path /= name;
  }
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write output file '" + path.string() + "'");
  write(file);
}

void emit_series(const Options& o, std::ostream& out, const Series& s) {
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "json") {
      os << s.to_json().dump(2) << '\n';
    } else {
      s.write_csv(os);
    }
  });
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Quantum-walk search and state transfer between hubs", "hubwalk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // One option set per subcommand so defaults do not leak between them.
  std::list<Options> store;
  Options* active = nullptr;
  auto add = [&](const char* name, const char* desc) -> std::pair<CLI::App*, Options&> {
    Options& o = store.emplace_back();
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->callback([&o, &active] { active = &o; });
    return {sub, o};
  };

  {
    auto [sub, o] = add("search", "Discrete-time search for M marked hubs");
    o.cfg.kind = ex::Kind::search;
    add_n(sub, o, 100);
    sub->add_option("--m", o.cfg.m, "Number of marked hubs M")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_t_max(sub, o, "Last step (steps; default ceil(2.5 T) with T the optimal step count)");
    add_graph_flags(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("ctqw-transfer", "Continuous-time transfer from S to R hubs");
    o.cfg.kind = ex::Kind::ctqw_transfer;
    add_n(sub, o, 100);
    add_sr(sub, o, 1, 1);
    sub->add_option("--gamma", o.gamma, "Hopping rate gamma (default 1/N)");
    add_t_max(sub, o, "Time horizon (time units; default 2T with T = pi sqrt(N/(S+R)))");
    sub->add_option("--points", o.cfg.time_points, "Samples on the time grid")
        ->check(CLI::Range(3, 1000000))
        ->capture_default_str();
    sub->add_option("--surface", o.cfg.surface,
                    "Sweep maximal fidelity over (S, R) in [1, K]^2 instead of a time series "
                    "(0 disables)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_jobs(sub, o);
    add_graph_flags(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("twohub", "Discrete-time transfer between two hubs");
    o.cfg.kind = ex::Kind::twohub;
    add_n(sub, o, 100);
    add_t_max(sub, o, "Last step (steps; default ceil(2.5 T))");
    sub->add_option("--qubit-grid", o.cfg.qubit_grid,
                    "Side K of the (rho, phi) grid evaluated at T (0 disables)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--rho", o.rho, "Qubit amplitude on the loop state, in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--phi", o.phi, "Qubit relative phase (radians)")->capture_default_str();
    add_graph_flags(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("multihub", "Discrete-time transfer from S to R hubs");
    o.cfg.kind = ex::Kind::multihub;
    add_n(sub, o, 1000);
    add_sr(sub, o, 10, 10);
    add_t_max(sub, o, "Last step (steps; default ceil(2.5 T))");
    add_graph_flags(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("scaling", "Two-hub infidelity at T against graph size");
    o.cfg.kind = ex::Kind::scaling;
    sub->add_option("--sizes", o.cfg.sizes, "Graph sizes N (each >= 8)")
        ->delimiter(',')
        ->capture_default_str();
    add_jobs(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("validate", "Check reduced models against the full walk");
    o.cfg.kind = ex::Kind::validate;
    o.cfg.m = 3;
    add_n(sub, o, 20);
    sub->add_option("--m", o.cfg.m, "Marked hubs for the search checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_sr(sub, o, 2, 3);
    sub->add_option("--preset", o.cfg.preset, "Checks to run: all, search, twohub, multihub, ctqw")
        ->check(CLI::IsMember({"all", "search", "twohub", "multihub", "ctqw"}))
        ->capture_default_str();
    add_graph_flags(sub, o);
    add_output_flags(sub, o);
  }
  {
    auto [sub, o] = add("graph", "Generate a graph and print its edge list");
    o.emit_graph = true;
    add_n(sub, o, 100);
    sub->add_option("--m", o.hubs, "Hubs forced at vertices 0..M-1 (random model)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_graph_flags(sub, o);
    sub->add_option("--output", o.output, "Output file (default: standard output)");
  }
  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int(kOk) : int(kUsageError);
  }
  if (active == nullptr) return kUsageError;
  Options& o = *active;
  try {
    finish(o);
    if (o.emit_graph) {
      const Graph g = ex::build_graph(o.cfg, HubSpec{vertex_range(0, o.hubs), {}, {}});
      emit(o, out, [&](std::ostream& os) { write_edge_list(os, g); });
      return kOk;
    }
    switch (o.cfg.kind) {
      case ex::Kind::search:
        emit_series(o, out, ex::run_search(o.cfg));
        return kOk;
      case ex::Kind::ctqw_transfer:
        emit_series(o, out, o.cfg.surface > 0 ? ex::run_ctqw_surface(o.cfg)
                                              : ex::run_ctqw_transfer(o.cfg));
        return kOk;
      case ex::Kind::twohub:
        o.cfg.s = 1;
        o.cfg.r = 1;
        if (o.rho >= 0.0) o.cfg.qubit = ex::QubitState{o.rho, o.phi};
        emit_series(o, out, ex::run_twohub(o.cfg));
        return kOk;
      case ex::Kind::multihub:
        emit_series(o, out, ex::run_multihub(o.cfg));
        return kOk;
      case ex::Kind::scaling:
        if (!o.cfg.sizes.empty()) {
          o.cfg.n = *std::max_element(o.cfg.sizes.begin(), o.cfg.sizes.end());
        }
        emit_series(o, out, ex::run_scaling(o.cfg));
        return kOk;
      case ex::Kind::validate: {
        const auto rep = ex::run_validate(o.cfg);
        emit(o, out, [&](std::ostream& os) {
          if (o.format == "json") {
            os << rep.to_json().dump(2) << '\n';
          } else {
            rep.write_table(os);
          }
        });
        return rep.passed() ? kOk : kValidationFailure;
      }
    }
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err) {
  return parse_and_dispatch(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace hubwalk::cli
