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

#include "sparsebench/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace sparsebench::lp {

WeightVector::WeightVector(RealVector weights) : weights_(std::move(weights)) {
  for (Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      std::ostringstream msg;
      msg << "weight " << i << " is " << weights_[i]
          << "; weights must be finite and nonnegative";
      throw std::invalid_argument(msg.str());
    }
  }
}

WeightVector WeightVector::uniform(Index n, double value) {
  return WeightVector(RealVector::Constant(n, value));
}

WeightVector WeightVector::mask(Index n, const IndexSet& unpenalized) {
  unpenalized.check_bound(n);
  RealVector w = RealVector::Ones(n);
  for (Index i : unpenalized) w[i] = 0.0;
  return WeightVector(std::move(w));
}

double WeightVector::weighted_l1(const RealVector& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("weighted_l1: dimension mismatch");
  }
  double total = 0.0;
  for (Index i = 0; i < x.size(); ++i) total += weights_[i] * std::abs(x[i]);
  return total;
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnboundedDegenerate: return "unbounded-degenerate";
  }
  return "unknown";
}

namespace {

// Reduced-cost tolerance, relative to the largest cost.
constexpr double kOptTol = 1e-9;
constexpr int kRefactorPeriod = 50;
constexpr Index kNone = -1;

// Revised simplex on min c'v, [A -A S] v = y, v >= 0, where the last m
// columns are artificials S = diag(sign(y)). Variables are numbered p_0..p_{n-1},
// q_0..q_{n-1}, r_0..r_{m-1}. The basis inverse is kept explicitly and
// rebuilt from an LU factorization every kRefactorPeriod pivots.
class SplitSimplex {
 public:
  SplitSimplex(const DenseMatrix& a, const RealVector& y, const RealVector& w,
               const SolverOptions& options)
      : source_(a),
        a_(a.eigen()),
        y_(y),
        w_(w),
        options_(options),
        m_(a.rows()),
        n_(a.cols()),
        sign_(m_),
        head_(static_cast<std::size_t>(m_)),
        position_(static_cast<std::size_t>(2 * n_ + m_), kNone),
        max_iters_(options.max_iters > 0 ? options.max_iters
                                         : static_cast<int>(50 * (2 * n_ + m_))) {
    for (Index i = 0; i < m_; ++i) sign_[i] = y_[i] < 0.0 ? -1.0 : 1.0;
  }

  LpSolution run() {
    LpSolution out;
    const double y_scale = 1.0 + core::linf_norm(y_);

    // Phase I from the all-artificial basis.
    binv_ = sign_.asDiagonal();
    xb_ = y_.cwiseAbs();
    for (Index i = 0; i < m_; ++i) set_basic(i, artificial(i));
    RealVector cost = RealVector::Zero(2 * n_ + m_);
    cost.tail(m_).setOnes();
    if (!run_phase(cost, kOptTol)) {
      return finish(out, Status::kUnboundedDegenerate);
    }
    if (phase_objective(cost) > options_.feas_tol * y_scale) {
      out.x = RealVector::Zero(n_);
      out.objective = 0.0;
      out.status = Status::kInfeasible;
      out.iterations = iterations_;
      return out;
    }
    drive_out_artificials();

    // Phase II on the true weights. Artificials left in the basis sit on
    // redundant rows and stay at zero.
    cost.head(n_) = w_;
    cost.segment(n_, n_) = w_;
    cost.tail(m_).setZero();
    const double w_max = n_ > 0 ? w_.maxCoeff() : 0.0;
    if (!run_phase(cost, w_max > 0.0 ? kOptTol * w_max : kOptTol)) {
      return finish(out, Status::kUnboundedDegenerate);
    }
    finish(out, Status::kOptimal);
    const double residual = core::residual_inf(source_, out.x, y_);
    if (!(residual <= options_.feas_tol * y_scale)) {
      std::ostringstream msg;
      msg << "simplex lost feasibility: residual " << residual;
      throw SolverError(msg.str());
    }
    return out;
  }

 private:
  Index artificial(Index row) const { return 2 * n_ + row; }
  bool is_artificial(Index var) const { return var >= 2 * n_; }

  void set_basic(Index pos, Index var) {
    head_[static_cast<std::size_t>(pos)] = var;
    position_[static_cast<std::size_t>(var)] = pos;
  }

  void load_column(Index var, RealVector& out) const {
    if (var < n_) {
      out = a_.col(var);
    } else if (var < 2 * n_) {
      out = -a_.col(var - n_);
    } else {
      out.setZero(m_);
      out[var - 2 * n_] = sign_[var - 2 * n_];
    }
  }

  double phase_objective(const RealVector& cost) const {
    double total = 0.0;
    for (Index i = 0; i < m_; ++i) {
      total += cost[head_[static_cast<std::size_t>(i)]] * xb_[i];
    }
    return total;
  }

  void refactor() {
    Eigen::MatrixXd basis(m_, m_);
    RealVector col(m_);
    for (Index i = 0; i < m_; ++i) {
      load_column(head_[static_cast<std::size_t>(i)], col);
      basis.col(i) = col;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    binv_ = lu.inverse();
    xb_ = lu.solve(y_);
    since_refactor_ = 0;
  }

  void pivot(Index r, Index entering, const RealVector& alpha, double theta) {
    xb_ -= theta * alpha;
    xb_[r] = theta;
    binv_.row(r) /= alpha[r];
    for (Index i = 0; i < m_; ++i) {
      if (i != r && alpha[i] != 0.0) binv_.row(i) -= alpha[i] * binv_.row(r);
    }
    position_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = kNone;
    set_basic(r, entering);
    if (++iterations_ > max_iters_) {
      std::ostringstream msg;
      msg << "simplex exceeded the iteration cap of " << max_iters_;
      throw SolverError(msg.str());
    }
    if (++since_refactor_ >= kRefactorPeriod) refactor();
  }

  // Returns the entering variable or kNone at optimality.
  Index price(const RealVector& cost, double opt_tol, bool bland) {
    RealVector cb(m_);
    for (Index i = 0; i < m_; ++i) cb[i] = cost[head_[static_cast<std::size_t>(i)]];
    const RealVector pi = binv_.transpose() * cb;
    const RealVector g = a_.transpose() * pi;
    Index entering = kNone;
    double best = -opt_tol;
    for (Index j = 0; j < 2 * n_; ++j) {
      if (position_[static_cast<std::size_t>(j)] != kNone) continue;
      const double d = j < n_ ? cost[j] - g[j] : cost[j] + g[j - n_];
      if (d < best) {
        entering = j;
        if (bland) break;
        best = d;
      }
    }
    return entering;
  }

  // Leaving position for the entering column, or kNone when unbounded.
  Index ratio_test(const RealVector& alpha, bool bland, double& theta) const {
    const double piv = options_.pivot_tol;
    if (bland) {
      double best = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m_; ++i) {
        if (alpha[i] > piv) best = std::min(best, std::max(xb_[i], 0.0) / alpha[i]);
      }
      if (!std::isfinite(best)) return kNone;
      // Among the minimizing rows, the smallest variable index leaves.
      Index leave = kNone;
      for (Index i = 0; i < m_; ++i) {
        if (alpha[i] <= piv || std::max(xb_[i], 0.0) / alpha[i] > best * (1.0 + 1e-12)) {
          continue;
        }
        if (leave == kNone || head_[static_cast<std::size_t>(i)] <
                                  head_[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      theta = std::max(xb_[leave], 0.0) / alpha[leave];
      return leave;
    }
    // Harris two-pass: bound the step with relaxed bounds, then pick the
    // largest pivot element among the rows that block within that bound.
    double bound = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m_; ++i) {
      if (alpha[i] > piv) {
        bound = std::min(bound, (std::max(xb_[i], 0.0) + options_.feas_tol) / alpha[i]);
      }
    }
    if (!std::isfinite(bound)) return kNone;
    Index leave = kNone;
    for (Index i = 0; i < m_; ++i) {
      if (alpha[i] <= piv || std::max(xb_[i], 0.0) / alpha[i] > bound) continue;
      if (leave == kNone || alpha[i] > alpha[leave]) leave = i;
    }
    theta = std::max(xb_[leave], 0.0) / alpha[leave];
    return leave;
  }

  // Runs pivots until no reduced cost is below -opt_tol. Returns false when
  // the entering column has no blocking row.
  bool run_phase(const RealVector& cost, double opt_tol) {
    const int stall_limit = static_cast<int>(2 * (m_ + n_));
    bool bland = false;
    int stall = 0;
    double best_objective = std::numeric_limits<double>::infinity();
    RealVector col(m_);
    while (true) {
      const Index entering = price(cost, opt_tol, bland);
      if (entering == kNone) return true;
      load_column(entering, col);
      const RealVector alpha = binv_ * col;
      double theta = 0.0;
      const Index leave = ratio_test(alpha, bland, theta);
      if (leave == kNone) return false;
      pivot(leave, entering, alpha, theta);

      const double objective = phase_objective(cost);
      if (best_objective == std::numeric_limits<double>::infinity() ||
          objective < best_objective - 1e-13 * std::abs(best_objective)) {
        best_objective = objective;
        stall = 0;
      } else if (!bland && ++stall >= stall_limit) {
        bland = true;
      }
    }
  }

  // Replaces artificial basics by structural columns wherever the row of
  // B^-1 A has a usable pivot. Rows with none are linearly dependent.
  void drive_out_artificials() {
    RealVector col(m_);
    for (Index r = 0; r < m_; ++r) {
      if (!is_artificial(head_[static_cast<std::size_t>(r)])) continue;
      const RealVector row_a = a_.transpose() * binv_.row(r).transpose();
      Index best = kNone;
      for (Index j = 0; j < n_; ++j) {
        if (position_[static_cast<std::size_t>(j)] != kNone ||
            position_[static_cast<std::size_t>(j + n_)] != kNone) {
          continue;
        }
        if (best == kNone || std::abs(row_a[j]) > std::abs(row_a[best])) best = j;
      }
      if (best == kNone || std::abs(row_a[best]) <= options_.pivot_tol) continue;
      // Choose p or q so that the (tiny) step stays nonnegative.
      const Index entering = row_a[best] * xb_[r] >= 0.0 ? best : best + n_;
      load_column(entering, col);
      const RealVector alpha = binv_ * col;
      pivot(r, entering, alpha, xb_[r] / alpha[r]);
    }
    refactor();
  }

  LpSolution& finish(LpSolution& out, Status status) {
    if (m_ > 0) refactor();
    out.x = RealVector::Zero(n_);
    for (Index i = 0; i < m_; ++i) {
      const Index var = head_[static_cast<std::size_t>(i)];
      if (var < n_) {
        out.x[var] += xb_[i];
      } else if (var < 2 * n_) {
        out.x[var - n_] -= xb_[i];
      }
    }
    out.objective = 0.0;
    for (Index j = 0; j < n_; ++j) out.objective += w_[j] * std::abs(out.x[j]);
    out.status = status;
    out.iterations = iterations_;
    return out;
  }

  const DenseMatrix& source_;
  Eigen::MatrixXd a_;
  RealVector y_;
  RealVector w_;
  SolverOptions options_;
  Index m_;
  Index n_;
  RealVector sign_;
  std::vector<Index> head_;
  std::vector<Index> position_;
  Eigen::MatrixXd binv_;
  RealVector xb_;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int max_iters_;
};

}  // namespace

LpSolution solve_weighted_l1(const DenseMatrix& a, const RealVector& y,
                             const WeightVector& w,
                             const SolverOptions& options) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("solve_weighted_l1: A has " +
                                std::to_string(a.rows()) + " rows but y has " +
                                std::to_string(y.size()) + " entries");
  }
  if (a.cols() != w.dim()) {
    throw std::invalid_argument("solve_weighted_l1: A has " +
                                std::to_string(a.cols()) + " columns but w has " +
                                std::to_string(w.dim()) + " entries");
  }
  core::require_finite(y, "measurement vector");
  if (!(options.feas_tol > 0.0) || !(options.pivot_tol > 0.0) ||
      options.max_iters < 0) {
    throw std::invalid_argument("solver options must be positive");
  }
  return SplitSimplex(a, y, w.values(), options).run();
}

}  // namespace sparsebench::lp
