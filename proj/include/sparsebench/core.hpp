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

#ifndef SPARSEBENCH_CORE_HPP_
#define SPARSEBENCH_CORE_HPP_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sparsebench::core {

using Index = Eigen::Index;
using RealVector = Eigen::VectorXd;
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised when a combinatorial search would exceed its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, double count, double limit)
      : std::runtime_error(what), count_(count), limit_(limit) {}

  double count() const { return count_; }
  double limit() const { return limit_; }

 private:
  double count_;
  double limit_;
};

/// Dense real matrix with row-major storage. Entries are always finite and
/// cannot be modified after construction.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// Zero matrix of the given shape.
  DenseMatrix(Index rows, Index cols);

  /// Takes `row_major` entries; throws if the length is not rows*cols or any
  /// entry is not finite.
  DenseMatrix(Index rows, Index cols, std::vector<double> row_major);

  explicit DenseMatrix(RowMajorMatrix data);

  static DenseMatrix identity(Index n);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  double operator()(Index i, Index j) const { return data_(i, j); }

  RealVector column(Index j) const { return data_.col(j); }
  DenseMatrix transpose() const;

  const RowMajorMatrix& eigen() const { return data_; }

  /// Bitwise equality of shape and entries.
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  RowMajorMatrix data_;
};

/// Strictly increasing list of 0-based indices.
class IndexSet {
 public:
  IndexSet() = default;

  /// Throws std::invalid_argument unless `sorted` is strictly increasing and
  /// nonnegative.
  explicit IndexSet(std::vector<Index> sorted);
  IndexSet(std::initializer_list<Index> sorted)
      : IndexSet(std::vector<Index>(sorted)) {}

  static IndexSet from_unsorted(std::vector<Index> indices);
  /// {0, 1, ..., n-1}
  static IndexSet all(Index n);

  /// Indices in [0, n) not in this set.
  IndexSet complement(Index n) const;
  bool contains(Index i) const;
  bool is_subset_of(const IndexSet& other) const;

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  Index operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<Index>& indices() const { return indices_; }

  /// Throws std::out_of_range if any index is >= n.
  void check_bound(Index n) const;

  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> indices_;
};

/// Throws std::invalid_argument naming `what` if any entry is NaN or Inf.
void require_finite(const RealVector& v, const char* what);

/// Ax, accumulated in index order.
RealVector matvec(const DenseMatrix& a, const RealVector& x);

/// The m x |T| matrix whose j-th column is column T[j] of `a`.
DenseMatrix submatrix_columns(const DenseMatrix& a, const IndexSet& columns);

/// Relative pivot tolerance used when none is given: max(m, n) * epsilon.
double default_rank_tolerance(Index rows, Index cols);

/// Rank from a column-pivoted Householder QR. A pivot counts iff its
/// magnitude exceeds tol times the largest pivot magnitude.
Index numerical_rank(const DenseMatrix& a, std::optional<double> tol = {});

/// Minimizer of ||Ax - y||_2; the minimum-norm one when `a` is rank
/// deficient.
RealVector solve_least_squares(const DenseMatrix& a, const RealVector& y);

/// C(n, k) as a double; 0 when k is outside [0, n].
double binomial(Index n, Index k);

/// Steps a sorted k-subset of {0, ..., n-1} to its lexicographic successor.
/// Returns false (leaving `comb` unspecified) after the last subset.
bool next_combination(std::vector<Index>& comb, Index n);

double l1_norm(const RealVector& x);
double linf_norm(const RealVector& x);
/// ||Ax - y||_inf
double residual_inf(const DenseMatrix& a, const RealVector& x,
                    const RealVector& y);

}  // namespace sparsebench::core

#endif  // SPARSEBENCH_CORE_HPP_
