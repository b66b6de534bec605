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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "sparsebench/lp.hpp"

namespace sparsebench::lp {

namespace {

constexpr double kVertexTol = 1e-9;

LpSolution infeasible(Index n) {
  LpSolution out;
  out.x = RealVector::Zero(n);
  out.status = Status::kInfeasible;
  return out;
}

}  // namespace

double oracle_candidate_count(Index rows, Index cols) {
  return core::binomial(2 * cols, rows);
}

LpSolution vertex_oracle(const DenseMatrix& a, const RealVector& y,
                         const WeightVector& w) {
  if (a.rows() != y.size() || a.cols() != w.dim()) {
    throw std::invalid_argument("vertex_oracle: dimension mismatch");
  }
  core::require_finite(y, "measurement vector");
  const Index m = a.rows();
  const Index n = a.cols();
  const double count = oracle_candidate_count(m, n);
  if (count > kOracleCandidateLimit) {
    std::ostringstream msg;
    msg << std::fixed << std::setprecision(0) << "vertex oracle refuses " << m << "x" << n << ": C(" << 2 * n << ", "
        << m << ") = " << count << " candidate bases exceeds "
        << kOracleCandidateLimit;
    throw core::GuardExceeded(msg.str(), count, kOracleCandidateLimit);
  }
  const double y_scale = 1.0 + core::linf_norm(y);

  // Work on a maximal set of independent rows; dependent rows are either
  // implied or make the system infeasible, which the full residual catches.
  const Index rank = core::numerical_rank(a);
  if (rank == 0) {
    if (core::linf_norm(y) > kVertexTol * y_scale) return infeasible(n);
    LpSolution out;
    out.x = RealVector::Zero(n);
    out.status = Status::kOptimal;
    return out;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> row_qr(a.eigen().transpose());
  std::vector<Index> rows(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) {
    rows[static_cast<std::size_t>(i)] = row_qr.colsPermutation().indices()[i];
  }
  std::sort(rows.begin(), rows.end());
  Eigen::MatrixXd a_rows(rank, n);
  RealVector y_rows(rank);
  for (Index i = 0; i < rank; ++i) {
    a_rows.row(i) = a.eigen().row(rows[static_cast<std::size_t>(i)]);
    y_rows[i] = y[rows[static_cast<std::size_t>(i)]];
  }

  LpSolution best = infeasible(n);
  bool found = false;
  std::vector<Index> basis(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) basis[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXd b(rank, rank);
  std::vector<char> used(static_cast<std::size_t>(n));
  do {
    // p_j and q_j are negatives of each other: never jointly nonsingular.
    std::fill(used.begin(), used.end(), 0);
    bool paired = false;
    for (Index v : basis) {
      char& slot = used[static_cast<std::size_t>(v % n)];
      if (slot) paired = true;
      slot = 1;
    }
    if (paired) continue;
    for (Index i = 0; i < rank; ++i) {
      const Index v = basis[static_cast<std::size_t>(i)];
      if (v < n) {
        b.col(i) = a_rows.col(v);
      } else {
        b.col(i) = -a_rows.col(v - n);
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) continue;
    const RealVector xb = lu.solve(y_rows);
    if ((xb.array() < -kVertexTol).any()) continue;
    RealVector x = RealVector::Zero(n);
    for (Index i = 0; i < rank; ++i) {
      const Index v = basis[static_cast<std::size_t>(i)];
      if (v < n) {
        x[v] += xb[i];
      } else {
        x[v - n] -= xb[i];
      }
    }
    if (core::residual_inf(a, x, y) > kVertexTol * y_scale) continue;
    const double objective = w.weighted_l1(x);
    if (!found || objective < best.objective - 1e-12 * (1.0 + std::abs(best.objective))) {
      found = true;
      best.x = std::move(x);
      best.objective = objective;
      best.status = Status::kOptimal;
    }
  } while (core::next_combination(basis, 2 * n));
  return best;
}

}  // namespace sparsebench::lp
