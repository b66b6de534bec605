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

#include "sparsebench/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace sparsebench::core {

namespace {

void require_finite_entries(const RowMajorMatrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("matrix contains non-finite entries");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : data_(RowMajorMatrix::Zero(rows, cols)) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<double> row_major) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    std::ostringstream msg;
    msg << "matrix " << rows << "x" << cols << " needs " << rows * cols
        << " entries, got " << row_major.size();
    throw std::invalid_argument(msg.str());
  }
  data_ = Eigen::Map<const RowMajorMatrix>(row_major.data(), rows, cols);
  require_finite_entries(data_);
}

DenseMatrix::DenseMatrix(RowMajorMatrix data) : data_(std::move(data)) {
  require_finite_entries(data_);
}

DenseMatrix DenseMatrix::identity(Index n) {
  return DenseMatrix(RowMajorMatrix::Identity(n, n));
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(m * n));
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) {
      throw std::invalid_argument("ragged rows in matrix literal");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseMatrix(m, n, std::move(entries));
}

DenseMatrix DenseMatrix::transpose() const {
  return DenseMatrix(RowMajorMatrix(data_.transpose()));
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::equal(a.data_.data(), a.data_.data() + a.data_.size(),
                    b.data_.data(), [](double x, double y) {
                      return std::bit_cast<std::uint64_t>(x) ==
                             std::bit_cast<std::uint64_t>(y);
                    });
}

IndexSet::IndexSet(std::vector<Index> sorted) : indices_(std::move(sorted)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) {
      throw std::invalid_argument("negative index in IndexSet");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw std::invalid_argument("IndexSet entries must be strictly increasing");
    }
  }
}

IndexSet IndexSet::from_unsorted(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet(std::move(indices));
}

IndexSet IndexSet::all(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return IndexSet(std::move(idx));
}

IndexSet IndexSet::complement(Index n) const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(n));
  auto it = indices_.begin();
  for (Index i = 0; i < n; ++i) {
    while (it != indices_.end() && *it < i) ++it;
    if (it == indices_.end() || *it != i) out.push_back(i);
  }
  return IndexSet(std::move(out));
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

void IndexSet::check_bound(Index n) const {
  if (!indices_.empty() && indices_.back() >= n) {
    std::ostringstream msg;
    msg << "index " << indices_.back() << " out of range for dimension " << n;
    throw std::out_of_range(msg.str());
  }
}

std::string IndexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << '}';
  return out.str();
}

void require_finite(const RealVector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + " contains non-finite entries");
  }
}

RealVector matvec(const DenseMatrix& a, const RealVector& x) {
  if (a.cols() != x.size()) {
    std::ostringstream msg;
    msg << "matvec: matrix has " << a.cols() << " columns, vector has "
        << x.size() << " entries";
    throw std::invalid_argument(msg.str());
  }
  RealVector out(a.rows());
  const double* entries = a.eigen().data();
  for (Index i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    const double* row = entries + i * a.cols();
    for (Index j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

DenseMatrix submatrix_columns(const DenseMatrix& a, const IndexSet& columns) {
  columns.check_bound(a.cols());
  RowMajorMatrix out(a.rows(), static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.col(static_cast<Index>(j)) = a.eigen().col(columns[j]);
  }
  return DenseMatrix(std::move(out));
}

double default_rank_tolerance(Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

Index numerical_rank(const DenseMatrix& a, std::optional<double> tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const double threshold = tol.value_or(default_rank_tolerance(a.rows(), a.cols()));
  if (threshold < 0.0) {
    throw std::invalid_argument("rank tolerance must be nonnegative");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.eigen());
  if (qr.maxPivot() == 0.0) return 0;
  // setThreshold(0) would mean "use Eigen's default", so compare directly.
  const auto diag = qr.matrixQR().diagonal().cwiseAbs();
  const double cutoff = threshold * qr.maxPivot();
  Index rank = 0;
  for (Index i = 0; i < diag.size(); ++i) {
    if (diag[i] > cutoff) ++rank;
  }
  return rank;
}

RealVector solve_least_squares(const DenseMatrix& a, const RealVector& y) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("solve_least_squares: row count does not match y");
  }
  if (a.cols() == 0) return RealVector(0);
  if (a.rows() == 0) return RealVector::Zero(a.cols());
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a.eigen());
  cod.setThreshold(default_rank_tolerance(a.rows(), a.cols()));
  return cod.solve(y);
}

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (Index i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

bool next_combination(std::vector<Index>& comb, Index n) {
  const Index k = static_cast<Index>(comb.size());
  Index i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

double l1_norm(const RealVector& x) { return x.cwiseAbs().sum(); }

double linf_norm(const RealVector& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double residual_inf(const DenseMatrix& a, const RealVector& x,
                    const RealVector& y) {
  return linf_norm(matvec(a, x) - y);
}

}  // namespace sparsebench::core
