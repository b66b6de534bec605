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

#include "sparsebench/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace sparsebench::decoders {

namespace {

constexpr double kFitTol = 1e-8;

void check_problem(const DenseMatrix& a, const RealVector& y) {
  if (a.rows() != y.size()) {
    std::ostringstream msg;
    msg << "A has " << a.rows() << " rows but y has " << y.size() << " entries";
    throw std::invalid_argument(msg.str());
  }
  core::require_finite(y, "measurement vector");
}

// One weighted-l1 stage with decoder context attached to any failure.
StageRecord solve_stage(const DenseMatrix& a, const RealVector& y,
                        const lp::WeightVector& w,
                        const lp::SolverOptions& options, std::string_view decoder,
                        int index, RealVector& x_out) {
  lp::LpSolution sol;
  try {
    sol = lp::solve_weighted_l1(a, y, w, options);
  } catch (const lp::SolverError& e) {
    std::ostringstream msg;
    msg << decoder << " stage " << index << ": " << e.what();
    throw lp::SolverError(msg.str());
  }
  if (sol.status == lp::Status::kInfeasible) {
    std::ostringstream msg;
    msg << decoder << " stage " << index << ": Ax = y is infeasible";
    throw InfeasibleSystem(msg.str());
  }
  if (sol.status != lp::Status::kOptimal) {
    std::ostringstream msg;
    msg << decoder << " stage " << index << ": solver reported "
        << lp::to_string(sol.status);
    throw lp::SolverError(msg.str());
  }
  StageRecord rec;
  rec.index = index;
  rec.weights = w.values();
  rec.objective = sol.objective;
  rec.residual = core::residual_inf(a, sol.x, y);
  rec.lp_iterations = sol.iterations;
  x_out = std::move(sol.x);
  return rec;
}

double support_count(Index n, Index s_max) {
  double total = 0.0;
  for (Index s = 0; s <= s_max; ++s) total += core::binomial(n, s);
  return total;
}

}  // namespace

std::string_view decoder_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kL0: return "l0";
    case DecoderKind::kL1: return "l1";
    case DecoderKind::kReweighted: return "rew-l1";
    case DecoderKind::kAlternating: return "alt-l1";
    case DecoderKind::kTwoStage: return "2stage-l1";
  }
  return "unknown";
}

std::optional<DecoderKind> parse_decoder_name(std::string_view name) {
  for (auto kind : {DecoderKind::kL0, DecoderKind::kL1, DecoderKind::kReweighted,
                    DecoderKind::kAlternating, DecoderKind::kTwoStage}) {
    if (decoder_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void DecoderParams::validate() const {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw std::invalid_argument("u must be a positive finite number");
  }
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  if (!(rho > 0.0 && rho < 0.5)) {
    throw std::invalid_argument("rho must lie strictly between 0 and 1/2");
  }
  if (s_max < 0) throw std::invalid_argument("s_max must be nonnegative");
}

DecodeResult decode_l0(const DenseMatrix& a, const RealVector& y, int s_max) {
  check_problem(a, y);
  const Index m = a.rows();
  const Index n = a.cols();
  if (s_max < 0 || s_max > m) {
    throw std::invalid_argument("s_max must lie in [0, m]");
  }
  const Index max_size = std::min<Index>(s_max, n);
  const double count = support_count(n, max_size);
  if (count > kL0SearchLimit) {
    std::ostringstream msg;
    msg << std::fixed << std::setprecision(0) << "l0 search over supports of size <= " << max_size << " in dimension "
        << n << " needs " << count << " candidates, limit " << kL0SearchLimit;
    throw core::GuardExceeded(msg.str(), count, kL0SearchLimit);
  }

  const double tol = kFitTol * (1.0 + core::linf_norm(y));
  DecodeResult out;
  out.decoder_name = std::string(decoder_name(DecoderKind::kL0));
  out.x_hat = RealVector::Zero(n);
  StageRecord rec;
  rec.residual = core::linf_norm(y);
  if (rec.residual <= tol) {
    out.converged = true;
    out.stages.push_back(rec);
    return out;
  }
  for (Index size = 1; size <= max_size; ++size) {
    std::vector<Index> support(static_cast<std::size_t>(size));
    std::iota(support.begin(), support.end(), Index{0});
    while (true) {
      const IndexSet candidate(support);
      const RealVector coeffs =
          core::solve_least_squares(core::submatrix_columns(a, candidate), y);
      RealVector x = RealVector::Zero(n);
      for (std::size_t j = 0; j < candidate.size(); ++j) {
        x[candidate[j]] = coeffs[static_cast<Index>(j)];
      }
      const double residual = core::residual_inf(a, x, y);
      if (residual <= tol) {
        rec.index_set = candidate;
        rec.objective = static_cast<double>(size);
        rec.residual = residual;
        out.x_hat = std::move(x);
        out.converged = true;
        out.stages.push_back(rec);
        return out;
      }
      if (!core::next_combination(support, n)) break;
    }
  }
  out.stages.push_back(rec);
  return out;
}

DecodeResult decode_l1(const DenseMatrix& a, const RealVector& y,
                       const lp::SolverOptions& options) {
  check_problem(a, y);
  DecodeResult out;
  out.decoder_name = std::string(decoder_name(DecoderKind::kL1));
  out.stages.push_back(solve_stage(a, y, lp::WeightVector::uniform(a.cols()),
                                   options, out.decoder_name, 0, out.x_hat));
  out.converged = true;
  return out;
}

DecodeResult decode_reweighted(const DenseMatrix& a, const RealVector& y,
                               double u, int L, const lp::SolverOptions& options) {
  check_problem(a, y);
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw std::invalid_argument("rew-l1: u must be positive");
  }
  if (L < 0) throw std::invalid_argument("rew-l1: L must be nonnegative");
  DecodeResult out;
  out.decoder_name = std::string(decoder_name(DecoderKind::kReweighted));
  out.stages.push_back(solve_stage(a, y, lp::WeightVector::uniform(a.cols()),
                                   options, out.decoder_name, 0, out.x_hat));
  for (int l = 1; l <= L; ++l) {
    const RealVector w = (out.x_hat.cwiseAbs().array() + u).inverse().matrix();
    RealVector next;
    out.stages.push_back(solve_stage(a, y, lp::WeightVector(w), options,
                                     out.decoder_name, l, next));
    out.x_hat = std::move(next);
  }
  out.converged = true;
  return out;
}

DecodeResult decode_alternating(const DenseMatrix& a, const RealVector& y,
                                double u, int L, const lp::SolverOptions& options) {
  check_problem(a, y);
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw std::invalid_argument("alt-l1: u must be positive");
  }
  if (L < 1) throw std::invalid_argument("alt-l1: L must be at least 1");
  const Index n = a.cols();
  const double threshold = 1.0 / u;
  DecodeResult out;
  out.decoder_name = std::string(decoder_name(DecoderKind::kAlternating));
  out.stages.push_back(solve_stage(a, y, lp::WeightVector::uniform(n), options,
                                   out.decoder_name, 0, out.x_hat));
  out.stages.back().index_set = IndexSet::all(n);
  for (int l = 1; l <= L; ++l) {
    std::vector<Index> small;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(out.x_hat[i]) < threshold) small.push_back(i);
    }
    IndexSet penalized(std::move(small));
    if (penalized.empty()) {
      // Every feasible point would be optimal; keep the current iterate.
      out.converged = true;
      return out;
    }
    const bool repeated = penalized == out.stages.back().index_set;
    RealVector next;
    StageRecord rec = solve_stage(a, y, lp::WeightVector::mask(n, penalized.complement(n)),
                                  options, out.decoder_name, l, next);
    rec.index_set = std::move(penalized);
    out.stages.push_back(std::move(rec));
    out.x_hat = std::move(next);
    if (repeated) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

IndexSet top_k_indices(const RealVector& x, Index k) {
  if (k < 0 || k > x.size()) {
    throw std::invalid_argument("top_k_indices: k must lie in [0, n]");
  }
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&x](Index i, Index j) {
    return std::abs(x[i]) > std::abs(x[j]);
  });
  order.resize(static_cast<std::size_t>(k));
  return IndexSet::from_unsorted(std::move(order));
}

Index two_stage_count(double rho, Index m) {
  // The small slack keeps products such as 0.29 * 100 from flooring down.
  return static_cast<Index>(std::floor(rho * static_cast<double>(m) + 1e-9));
}

DecodeResult decode_two_stage(const DenseMatrix& a, const RealVector& y,
                              double rho, const lp::SolverOptions& options) {
  check_problem(a, y);
  if (!(rho > 0.0 && rho < 0.5)) {
    throw std::invalid_argument("2stage-l1: rho must lie strictly between 0 and 1/2");
  }
  const Index n = a.cols();
  const Index keep = std::min(two_stage_count(rho, a.rows()), n);
  if (keep >= a.rows() && a.rows() > 0) {
    throw std::invalid_argument("2stage-l1: floor(rho m) must be below m");
  }
  DecodeResult out;
  out.decoder_name = std::string(decoder_name(DecoderKind::kTwoStage));
  RealVector first;
  out.stages.push_back(solve_stage(a, y, lp::WeightVector::uniform(n), options,
                                   out.decoder_name, 0, first));
  IndexSet top = top_k_indices(first, keep);
  out.stages.push_back(solve_stage(a, y, lp::WeightVector::mask(n, top), options,
                                   out.decoder_name, 1, out.x_hat));
  out.stages.back().index_set = std::move(top);
  out.converged = true;
  return out;
}

DecodeResult decode(const DecoderSpec& spec, const DenseMatrix& a,
                    const RealVector& y, const lp::SolverOptions& options) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case DecoderKind::kL0:
      return decode_l0(a, y, p.s_max > 0 ? p.s_max : static_cast<int>(a.rows() / 2));
    case DecoderKind::kL1:
      return decode_l1(a, y, options);
    case DecoderKind::kReweighted:
      return decode_reweighted(a, y, p.u, p.L, options);
    case DecoderKind::kAlternating:
      return decode_alternating(a, y, p.u, p.L, options);
    case DecoderKind::kTwoStage:
      return decode_two_stage(a, y, p.rho, options);
  }
  throw std::invalid_argument("unknown decoder");
}

}  // namespace sparsebench::decoders
