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

#ifndef SPARSEBENCH_DECODERS_HPP_
#define SPARSEBENCH_DECODERS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparsebench/core.hpp"
#include "sparsebench/lp.hpp"

namespace sparsebench::decoders {

using core::DenseMatrix;
using core::Index;
using core::IndexSet;
using core::RealVector;

/// Some stage's linear program reported Ax = y as infeasible.
class InfeasibleSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One solve inside a decoder.
struct StageRecord {
  int index = 0;
  /// Weights handed to the l1 solver; empty for the l0 search.
  RealVector weights;
  /// Alt-l1: the penalized set. Two-stage: the unpenalized top set.
  /// l0: the support found. Empty otherwise.
  IndexSet index_set;
  double objective = 0.0;
  double residual = 0.0;
  int lp_iterations = 0;
};

struct DecodeResult {
  RealVector x_hat;
  std::vector<StageRecord> stages;
  std::string decoder_name;
  bool converged = false;
};

enum class DecoderKind { kL0, kL1, kReweighted, kAlternating, kTwoStage };

/// "l0", "l1", "rew-l1", "alt-l1", "2stage-l1"
std::string_view decoder_name(DecoderKind kind);
std::optional<DecoderKind> parse_decoder_name(std::string_view name);

struct DecoderParams {
  double u = 3.0;
  int L = 4;
  double rho = 0.25;
  /// Largest support the l0 search tries; 0 means floor(m / 2).
  int s_max = 0;

  /// Throws std::invalid_argument unless u > 0, L >= 1, 0 < rho < 1/2 and
  /// s_max >= 0.
  void validate() const;
};

struct DecoderSpec {
  DecoderKind kind = DecoderKind::kL1;
  DecoderParams params;
};

/// Largest number of candidate supports decode_l0 will examine.
inline constexpr double kL0SearchLimit = 1e7;

/// Exhaustive sparsest-solution search. Supports of size 0..s_max are tried
/// in lexicographic order, each by least squares on its columns; the first
/// whose residual is within 1e-8 (1 + ||y||_inf) wins. `converged` is false
/// when no support of size <= s_max fits.
DecodeResult decode_l0(const DenseMatrix& a, const RealVector& y, int s_max);

/// Basis pursuit: min ||x||_1 subject to Ax = y.
DecodeResult decode_l1(const DenseMatrix& a, const RealVector& y,
                       const lp::SolverOptions& options = {});

/// Stage 0 is plain l1. Each of the following L stages reweights with
/// w_i = 1 / (|x_i| + u) from the previous iterate and re-solves. Runs
/// exactly L updates; L = 0 reduces to decode_l1.
DecodeResult decode_reweighted(const DenseMatrix& a, const RealVector& y,
                               double u, int L,
                               const lp::SolverOptions& options = {});

// Truncated-l1 iteration: stage l penalizes only T = {i : |x_i| < 1/u} of the
// previous iterate (weight 1 on T, 0 elsewhere). Stops as soon as T repeats
// (converged), or returns the previous iterate if T comes out empty. Running
// all L stages without T repeating leaves converged false.
DecodeResult decode_alternating(const DenseMatrix& a, const RealVector& y,
                                double u, int L,
                                const lp::SolverOptions& options = {});

/// Indices of the k largest |x_i|, ties to the smaller index, returned sorted.
IndexSet top_k_indices(const RealVector& x, Index k);

/// Number of coordinates the two-stage method leaves unpenalized:
/// floor(rho * m).
Index two_stage_count(double rho, Index m);

/// Plain l1, then min ||x_{T^c}||_1 subject to Ax = y where T holds the
/// floor(rho m) largest entries of the first solution.
DecodeResult decode_two_stage(const DenseMatrix& a, const RealVector& y,
                              double rho,
                              const lp::SolverOptions& options = {});

/// Dispatch by kind. s_max = 0 resolves to floor(m / 2).
DecodeResult decode(const DecoderSpec& spec, const DenseMatrix& a,
                    const RealVector& y, const lp::SolverOptions& options = {});

}  // namespace sparsebench::decoders

#endif  // SPARSEBENCH_DECODERS_HPP_
