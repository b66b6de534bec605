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

#ifndef SPARSEBENCH_CSV_IO_HPP_
#define SPARSEBENCH_CSV_IO_HPP_

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sparsebench/core.hpp"

namespace sparsebench::core {

/// Malformed or unreadable CSV input. The message carries the path and, for
/// parse failures, the 1-based line number.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw matrices are headerless CSV: one row per line, '.' as the decimal
// separator, dimensions inferred. Blank lines are skipped.
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// A vector is accepted either as a single row or as a single column.
RealVector read_vector_csv(const std::filesystem::path& path);

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& a);
/// One value per line.
void write_vector_csv(const std::filesystem::path& path, const RealVector& x);

/// 17 significant digits (exact round trip); zero prints as "0".
std::string format_double(double value);

}  // namespace sparsebench::core

#endif  // SPARSEBENCH_CSV_IO_HPP_
