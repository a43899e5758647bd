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

#include "hubwalk/series.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "hubwalk/errors.hpp"

namespace hubwalk {

void Series::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("row has " + std::to_string(row.size()) + " values, expected " +
                          std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Series::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Series::values(const std::string& name) const {
  const std::size_t k = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[k]);
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void Series::write_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out << (j ? "," : "") << columns[j];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << format_number(row[j]);
    }
    out << '\n';
  }
}

nlohmann::ordered_json Series::to_json() const {
  nlohmann::ordered_json j;
  j["meta"] = meta;
  j["columns"] = columns;
  auto& rs = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) r[columns[k]] = row[k];
    rs.push_back(std::move(r));
  }
  return j;
}

}  // namespace hubwalk
