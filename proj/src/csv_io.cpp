// Copyright 2026 The sparsebench Authors
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

#include "sparsebench/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace sparsebench::core {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() ||
          ptr != field.data() + field.size() || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << path.string() << ":" << line_no << ": bad number '" << field
            << "'";
        throw CsvError(msg.str());
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected "
          << rows.front().size() << " fields, got " << row.size();
      throw CsvError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw CsvError("'" + path.string() + "' contains no data");
  }
  return rows;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(rows.front().size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(m * n));
  for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
  return DenseMatrix(m, n, std::move(entries));
}

RealVector read_vector_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.size() == 1) {
    return Eigen::Map<const RealVector>(rows[0].data(),
                                        static_cast<Index>(rows[0].size()));
  }
  if (rows.front().size() != 1) {
    throw CsvError("'" + path.string() +
                   "' is neither a single row nor a single column");
  }
  RealVector v(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) v[static_cast<Index>(i)] = rows[i][0];
  return v;
}

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& a) {
  auto out = open_for_write(path);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_vector_csv(const std::filesystem::path& path, const RealVector& x) {
  auto out = open_for_write(path);
  for (Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace sparsebench::core
