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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hubwalk/graph.hpp"
#include "hubwalk/series.hpp"

namespace hubwalk::experiments {

enum class Kind { search, ctqw_transfer, twohub, multihub, scaling, validate };

std::string to_string(Kind kind);

enum class GraphModel { complete, random, file };

struct GraphConfig {
  GraphModel model = GraphModel::complete;
  double edge_prob = 0.2;
  std::uint64_t seed = 1;
  std::string path;
};

struct QubitState {
  double rho = 1.0;
  double phi = 0.0;
};

struct Config {
  Kind kind = Kind::search;
  int n = 100;
  int m = 1;
  int s = 1;
  int r = 1;
  GraphConfig graph;
  /// Horizon in steps (discrete runs) or time units (continuous runs).
  /// Defaults: ceil(2.5 T) steps, or 2T time.
  std::optional<double> t_max;
  /// Continuous-time hopping rate; 1/N when unset.
  std::optional<double> gamma;
  /// Samples on the continuous-time grid.
  int time_points = 400;
  /// Single qubit input for the two-hub run.
  std::optional<QubitState> qubit;
  /// Side of the (rho, phi) grid; 0 disables the sweep.
  int qubit_grid = 0;
  /// Graph sizes for the scaling run.
  std::vector<int> sizes{16, 32, 64, 128, 256, 512};
  /// Continuous-time (S, R) surface up to this bound; 0 disables it.
  int surface = 0;
  /// Validation subset: all, search, twohub, multihub or ctqw.
  std::string preset = "all";
  int jobs = 1;
};

/// Hubs placed at the lowest vertex indices: marked 0..M-1 for search,
/// senders 0..S-1 then receivers S..S+R-1 for transfer.
HubSpec hub_layout(const Config& cfg);

/// Builds the configured graph with `hubs.all()` forced to be hubs for the
/// random model. File graphs are loaded as-is.
Graph build_graph(const Config& cfg, const HubSpec& hubs);

/// `{kind}_N{n}_M{m}_S{s}_R{r}.csv`.
std::string series_filename(const Config& cfg);

Series run_search(const Config& cfg);
Series run_ctqw_transfer(const Config& cfg);
/// Maximal fidelity over the (S, R) grid [1, cfg.surface]^2.
Series run_ctqw_surface(const Config& cfg);
Series run_twohub(const Config& cfg);
Series run_multihub(const Config& cfg);
Series run_scaling(const Config& cfg);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Maximum of f on [a, b]: dense scan over `samples` points, then
/// golden-section refinement around the best sample. Returns (t, f(t)).
std::pair<double, double> maximize(const std::function<double(double)>& f, double a,
                                   double b, int samples);

/// Runs f(0..count-1) on up to `jobs` threads; results keep index order.
std::vector<Series> parallel_map(int count, int jobs,
                                 const std::function<Series(int)>& f);

// ---- validation ------------------------------------------------------------

struct Check {
  std::string group;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// Informational rows are reported but never fail the run.
  bool informational = false;
  std::string detail;

  bool passed() const { return informational || value < threshold; }
};

struct ValidationReport {
  std::vector<Check> checks;

  bool passed() const;
  /// Columns group, check, value, threshold, status, detail.
  void write_table(std::ostream& out) const;
  nlohmann::ordered_json to_json() const;
};

/// Entrywise comparison of a projected operator with a hand-coded one.
/// The detail names the worst entry.
Check operator_check(const std::string& group, const Eigen::MatrixXd& projected,
                     const Eigen::MatrixXd& hand, const std::vector<std::string>& labels,
                     double threshold = 1e-9);

/// Threshold 1e-9 on every non-informational residual. Dense checks need
/// N <= 64.
ValidationReport run_validate(const Config& cfg);

}  // namespace hubwalk::experiments
