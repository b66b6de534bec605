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

#include "sparsebench/verify.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sparsebench::verify {

SparseSignal::SparseSignal(Index dim, IndexSet support, RealVector values)
    : dim_(dim), support_(std::move(support)), values_(std::move(values)) {
  if (static_cast<Index>(support_.size()) != values_.size()) {
    throw std::invalid_argument("SparseSignal: support and values differ in length");
  }
  support_.check_bound(dim_);
  core::require_finite(values_, "signal values");
}

SparseSignal SparseSignal::from_dense(const RealVector& x) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) idx.push_back(i);
  }
  RealVector values(static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) values[static_cast<Index>(j)] = x[idx[j]];
  return SparseSignal(x.size(), IndexSet(std::move(idx)), std::move(values));
}

RealVector SparseSignal::dense() const {
  RealVector x = RealVector::Zero(dim_);
  for (std::size_t j = 0; j < support_.size(); ++j) {
    x[support_[j]] = values_[static_cast<Index>(j)];
  }
  return x;
}

IndexSet support(const RealVector& x, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("support tolerance must be >= 0");
  const double cutoff = tol * std::max(1.0, core::linf_norm(x));
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > cutoff) idx.push_back(i);
  }
  return IndexSet(std::move(idx));
}

RecoveryVerdict support_recovered(const RealVector& x_hat,
                                  const SparseSignal& truth, double tol) {
  if (x_hat.size() != truth.dim()) {
    throw std::invalid_argument("support_recovered: dimension mismatch");
  }
  const RealVector diff = x_hat - truth.dense();
  RecoveryVerdict verdict;
  verdict.detected_support = support(x_hat, tol);
  verdict.support_match = verdict.detected_support == truth.support();
  verdict.linf_error = core::linf_norm(diff);
  verdict.l1_error = core::l1_norm(diff);
  return verdict;
}

std::optional<IndexSet> find_rank_deficient_subset(const DenseMatrix& a, Index s) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index k = 2 * s;
  if (s < 0 || k > m) {
    throw std::invalid_argument("rank condition needs 0 <= 2s <= m");
  }
  if (k > n) {
    // No 2s-column subset exists; the condition cannot be met.
    throw std::invalid_argument("rank condition needs 2s <= n");
  }
  const double count = core::binomial(n, k);
  if (count > kRankCheckLimit) {
    std::ostringstream msg;
    msg << std::fixed << std::setprecision(0) << "rank condition check needs C(" << n << ", " << k << ") = " << count
        << " submatrices, limit " << kRankCheckLimit;
    throw core::GuardExceeded(msg.str(), count, kRankCheckLimit);
  }
  if (k == 0) return std::nullopt;
  std::vector<Index> cols(static_cast<std::size_t>(k));
  std::iota(cols.begin(), cols.end(), Index{0});
  while (true) {
    IndexSet subset(cols);
    if (core::numerical_rank(core::submatrix_columns(a, subset)) < k) return subset;
    if (!core::next_combination(cols, n)) return std::nullopt;
  }
}

bool check_lemma1_condition(const DenseMatrix& a, Index s) {
  return !find_rank_deficient_subset(a, s).has_value();
}

}  // namespace sparsebench::verify
