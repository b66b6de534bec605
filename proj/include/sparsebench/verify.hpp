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

#ifndef SPARSEBENCH_VERIFY_HPP_
#define SPARSEBENCH_VERIFY_HPP_

#include <optional>

#include "sparsebench/core.hpp"

namespace sparsebench::verify {

using core::DenseMatrix;
using core::Index;
using core::IndexSet;
using core::RealVector;

inline constexpr double kDefaultSupportTol = 1e-4;

/// Ground-truth sparse signal: dimension, support and the values on it.
class SparseSignal {
 public:
  SparseSignal() = default;
  /// Throws if support and values differ in length, the support exceeds
  /// `dim`, or a value is non-finite.
  SparseSignal(Index dim, IndexSet support, RealVector values);

  static SparseSignal from_dense(const RealVector& x);

  Index dim() const { return dim_; }
  const IndexSet& support() const { return support_; }
  const RealVector& values() const { return values_; }
  RealVector dense() const;

 private:
  Index dim_ = 0;
  IndexSet support_;
  RealVector values_;
};

struct RecoveryVerdict {
  bool support_match = false;
  double linf_error = 0.0;
  double l1_error = 0.0;
  IndexSet detected_support;
};

/// {i : |x_i| > tol * max(1, ||x||_inf)}
IndexSet support(const RealVector& x, double tol = kDefaultSupportTol);

/// Exact support-set equality plus error norms against the dense truth.
RecoveryVerdict support_recovered(const RealVector& x_hat,
                                  const SparseSignal& truth,
                                  double tol = kDefaultSupportTol);

/// Largest number of column subsets the rank condition check will examine.
inline constexpr double kRankCheckLimit = 1e6;

/// First 2s-column subset (lexicographic) whose submatrix has numerical
/// rank below 2s, or nullopt if there is none. Requires 2s <= m and
/// C(n, 2s) <= kRankCheckLimit; throws core::GuardExceeded with the count
/// otherwise.
std::optional<IndexSet> find_rank_deficient_subset(const DenseMatrix& a, Index s);

/// True iff every 2s-column submatrix of `a` has rank 2s, which is
/// equivalent to l0 decoding recovering every s-sparse vector.
bool check_lemma1_condition(const DenseMatrix& a, Index s);

}  // namespace sparsebench::verify

#endif  // SPARSEBENCH_VERIFY_HPP_
