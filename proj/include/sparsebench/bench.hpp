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

#ifndef SPARSEBENCH_BENCH_HPP_
#define SPARSEBENCH_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsebench/core.hpp"
#include "sparsebench/decoders.hpp"
#include "sparsebench/lp.hpp"
#include "sparsebench/verify.hpp"

namespace sparsebench::bench {

using core::DenseMatrix;
using core::Index;
using core::RealVector;

/// One decoding instance y = A x*, with the ground truth when known.
struct MeasurementProblem {
  DenseMatrix a;
  RealVector y;
  std::optional<verify::SparseSignal> truth;
};

/// A decoder as configured for a sweep. `label` keys the output rows and
/// must be unique within an experiment; it defaults to the decoder name.
struct NamedDecoder {
  std::string label;
  decoders::DecoderSpec spec;
};

NamedDecoder make_named_decoder(decoders::DecoderKind kind,
                                const decoders::DecoderParams& params = {});

struct ExperimentConfig {
  Index n = 128;
  Index m = 50;
  std::vector<int> k_values;
  int trials_per_k = 300;
  std::vector<NamedDecoder> decoders;
  std::uint64_t base_seed = 42;
  double support_tol = verify::kDefaultSupportTol;
  lp::SolverOptions solver;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  /// Copy with every defaulted field made explicit (l0's s_max).
  ExperimentConfig resolved() const;
};

struct TrialRecord {
  int k = 0;
  int trial_index = 0;
  std::string decoder_name;
  verify::RecoveryVerdict verdict;
  double wall_time = 0.0;  // seconds
  std::uint64_t seed_used = 0;
  /// Empty on a clean decode; otherwise "infeasible", "solver-failure",
  /// "guard-refused" or "invalid-input". Tagged trials count as failures.
  std::string error_tag;
};

struct CurvePoint {
  std::string decoder_name;
  int k = 0;
  int trials = 0;
  int successes = 0;
  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / trials; }
};

struct SuccessCurve {
  std::vector<CurvePoint> points;

  /// Null when the (decoder, k) cell is absent.
  const CurvePoint* find(const std::string& decoder_name, int k) const;
};

struct ExperimentResult {
  SuccessCurve curve;
  /// Ordered by decoder (config order), then k (config order), then trial.
  std::vector<TrialRecord> records;
};

/// Gaussian ensemble: A and the nonzero values i.i.d. N(0, 1), support a
/// uniform k-subset. Draw order from one CounterRng(seed): the m*n entries
/// of A row by row, then k partial Fisher-Yates steps over {0..n-1}, then
/// the k values assigned to the sorted support in increasing index order.
MeasurementProblem generate_problem(Index n, Index m, Index k, std::uint64_t seed);

/// Decodes and scores one problem. Decoder failures are returned as tagged
/// unsuccessful records, never thrown. Fills everything except trial_index
/// and seed_used; k is the size of the true support.
TrialRecord run_trial(const MeasurementProblem& problem,
                      const NamedDecoder& decoder, double support_tol,
                      const lp::SolverOptions& solver = {});

/// Called after each (k, trial) cell finishes, from the worker that ran it.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every decoder on the same generated problem for each (k, trial),
/// with problem seeds trial_seed(base_seed, k, trial). The output does not
/// depend on `workers` (0 picks the hardware concurrency).
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 1,
                                const ProgressFn& progress = {});

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
/// Missing keys take their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct OutputPaths {
  std::filesystem::path curve;
  std::filesystem::path trials;
  std::filesystem::path config;
};

/// Writes <prefix>_curve.csv, <prefix>_trials.csv and <prefix>_config.json.
/// Wall times are left out unless `include_timing` is set, which keeps the
/// files byte-identical across runs.
OutputPaths write_results(const ExperimentConfig& config,
                          const ExperimentResult& result,
                          const std::filesystem::path& prefix,
                          bool include_timing = false);

/// Size ranges for random weighted-l1 instances, inclusive.
struct OracleCheckBounds {
  Index m_min = 2;
  Index m_max = 5;
  Index n_min = 4;
  Index n_max = 8;
};

enum class WeightRegime { kUniform, kRandomPositive, kZeroBlock };

struct WeightedL1Instance {
  DenseMatrix a;
  RealVector y;
  lp::WeightVector w;
  WeightRegime regime;
};

/// Gaussian A and y with m and n uniform in the bounds. Weights are all ones,
/// uniform in [0.1, 2], or ones with a random contiguous block of zeros
/// covering between 1 and max(1, n/2) coordinates.
WeightedL1Instance random_weighted_l1_instance(const OracleCheckBounds& bounds,
                                               WeightRegime regime,
                                               std::uint64_t seed);

struct OracleCheckReport {
  int count = 0;
  int failures = 0;
  int status_mismatches = 0;
  /// max |simplex - oracle| / (1 + |oracle|) over instances where both are optimal
  double max_discrepancy = 0.0;
  bool passed() const { return failures == 0; }
};

inline constexpr double kOracleAgreementTol = 1e-8;

/// Runs `count` random instances through solve_weighted_l1 and vertex_oracle,
/// cycling the three weight regimes. Instance i uses seed
/// trial_seed(seed, i, 0). Throws std::invalid_argument for inconsistent
/// bounds and core::GuardExceeded when the largest size is beyond the oracle.
OracleCheckReport oracle_check(int count, const OracleCheckBounds& bounds,
                               std::uint64_t seed,
                               const lp::SolverOptions& solver = {});

}  // namespace sparsebench::bench

#endif  // SPARSEBENCH_BENCH_HPP_
