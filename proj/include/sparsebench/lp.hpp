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

#ifndef SPARSEBENCH_LP_HPP_
#define SPARSEBENCH_LP_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "sparsebench/core.hpp"

namespace sparsebench::lp {

using core::DenseMatrix;
using core::Index;
using core::IndexSet;
using core::RealVector;

/// Nonnegative per-coordinate weights of a weighted l1 objective.
class WeightVector {
 public:
  /// Throws std::invalid_argument on negative or non-finite weights.
  explicit WeightVector(RealVector weights);

  static WeightVector uniform(Index n, double value = 1.0);
  /// Weight 0 on `unpenalized`, 1 everywhere else.
  static WeightVector mask(Index n, const IndexSet& unpenalized);

  Index dim() const { return weights_.size(); }
  double operator[](Index i) const { return weights_[i]; }
  const RealVector& values() const { return weights_; }

  /// sum_i w_i |x_i|
  double weighted_l1(const RealVector& x) const;

 private:
  RealVector weights_;
};

enum class Status { kOptimal, kInfeasible, kUnboundedDegenerate };

std::string_view to_string(Status status);

struct LpSolution {
  RealVector x;
  double objective = 0.0;
  Status status = Status::kInfeasible;
  int iterations = 0;
};

struct SolverOptions {
  /// Pivot cap over both phases; 0 selects 50 * (2n + m).
  int max_iters = 0;
  double feas_tol = 1e-9;
  double pivot_tol = 1e-10;
};

/// The simplex hit its iteration cap or lost feasibility numerically.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimizes sum_i w_i |x_i| subject to Ax = y.
///
/// The problem is posed as the linear program over x = p - q, p, q >= 0,
/// minimize w'(p + q) subject to A(p - q) = y, and solved with a two-phase
/// revised simplex. Pricing is Dantzig's rule until the objective stalls for
/// 2(m + n) pivots, after which Bland's rule takes over for the rest of the
/// phase. When the optimal face is not a single point (zero weights, ties)
/// the vertex reached by the pivot rule is returned; the result is a pure
/// function of the inputs.
///
/// Infeasible systems are reported through `status`. Non-finite inputs and
/// dimension mismatches throw std::invalid_argument; exceeding the iteration
/// cap throws SolverError.
LpSolution solve_weighted_l1(const DenseMatrix& a, const RealVector& y,
                             const WeightVector& w,
                             const SolverOptions& options = {});

/// Largest number of candidate bases vertex_oracle will enumerate.
inline constexpr double kOracleCandidateLimit = 1e6;

/// Number of candidate bases for an m-row, n-column instance: C(2n, m).
double oracle_candidate_count(Index rows, Index cols);

/// Exhaustive reference solver for tiny instances. Enumerates every basis of
/// the split program, keeps the feasible ones (components >= -1e-9, residual
/// within 1e-9 relative to 1 + ||y||_inf) and returns the cheapest. Ties go to
/// the lexicographically smallest basis. Throws core::GuardExceeded when
/// oracle_candidate_count exceeds kOracleCandidateLimit.
LpSolution vertex_oracle(const DenseMatrix& a, const RealVector& y,
                         const WeightVector& w);

}  // namespace sparsebench::lp

#endif  // SPARSEBENCH_LP_HPP_
