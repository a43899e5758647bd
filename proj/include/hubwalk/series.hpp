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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace hubwalk {

/// Column-oriented numeric table with free-form metadata.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  Series() = default;
  explicit Series(std::vector<std::string> cols) : columns(std::move(cols)) {}

  /// Throws InvalidArgument if the width does not match `columns`.
  void add_row(std::vector<double> row);
  /// Throws InvalidArgument for unknown names.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;

  /// Header line then one record per row, 12 significant digits.
  void write_csv(std::ostream& out) const;
  /// {"meta": ..., "columns": [...], "rows": [{column: value}, ...]}
  nlohmann::ordered_json to_json() const;
};

/// printf("%.12g").
std::string format_number(double x);

}  // namespace hubwalk
