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

#include "sparsebench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "sparsebench/csv_io.hpp"
#include "sparsebench/random.hpp"

namespace sparsebench::bench {

using decoders::DecoderKind;
using decoders::DecoderParams;

NamedDecoder make_named_decoder(DecoderKind kind, const DecoderParams& params) {
  return NamedDecoder{std::string(decoders::decoder_name(kind)), {kind, params}};
}

void ExperimentConfig::validate() const {
  if (m < 1 || n < m) throw std::invalid_argument("need 1 <= m <= n");
  if (k_values.empty()) throw std::invalid_argument("k_values is empty");
  for (int k : k_values) {
    if (k < 1 || k > m) {
      throw std::invalid_argument("k = " + std::to_string(k) + " is outside [1, m]");
    }
  }
  if (std::set<int>(k_values.begin(), k_values.end()).size() != k_values.size()) {
    throw std::invalid_argument("k_values contains duplicates");
  }
  if (trials_per_k < 1) throw std::invalid_argument("trials_per_k must be >= 1");
  if (decoders.empty()) throw std::invalid_argument("no decoders configured");
  std::set<std::string> labels;
  for (const auto& d : decoders) {
    d.spec.params.validate();
    if (d.label.empty()) throw std::invalid_argument("decoder label is empty");
    if (!labels.insert(d.label).second) {
      throw std::invalid_argument("duplicate decoder label '" + d.label + "'");
    }
  }
  if (!(support_tol >= 0.0)) throw std::invalid_argument("support_tol must be >= 0");
  if (!(solver.feas_tol > 0.0) || !(solver.pivot_tol > 0.0) || solver.max_iters < 0) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig out = *this;
  for (auto& d : out.decoders) {
    if (d.spec.kind == DecoderKind::kL0 && d.spec.params.s_max == 0) {
      d.spec.params.s_max = static_cast<int>(m / 2);
    }
  }
  return out;
}

const CurvePoint* SuccessCurve::find(const std::string& decoder_name, int k) const {
  for (const auto& p : points) {
    if (p.decoder_name == decoder_name && p.k == k) return &p;
  }
  return nullptr;
}

MeasurementProblem generate_problem(Index n, Index m, Index k, std::uint64_t seed) {
  if (k < 0 || m < 1 || k > m || m > n) {
    throw std::invalid_argument("generate_problem needs 0 <= k <= m <= n and m >= 1");
  }
  CounterRng rng(seed);
  std::vector<double> entries(static_cast<std::size_t>(m * n));
  for (double& e : entries) e = rng.next_normal();
  DenseMatrix a(m, n, std::move(entries));

  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  perm.resize(static_cast<std::size_t>(k));
  core::IndexSet support = core::IndexSet::from_unsorted(std::move(perm));
  RealVector values(k);
  for (Index i = 0; i < k; ++i) values[i] = rng.next_normal();

  verify::SparseSignal truth(n, std::move(support), std::move(values));
  RealVector y = core::matvec(a, truth.dense());
  return MeasurementProblem{std::move(a), std::move(y), std::move(truth)};
}

TrialRecord run_trial(const MeasurementProblem& problem, const NamedDecoder& decoder,
                      double support_tol, const lp::SolverOptions& solver) {
  if (!problem.truth) throw std::invalid_argument("run_trial needs ground truth");
  const auto& truth = *problem.truth;
  TrialRecord rec;
  rec.k = static_cast<int>(truth.support().size());
  rec.decoder_name = decoder.label;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto result = decoders::decode(decoder.spec, problem.a, problem.y, solver);
    rec.verdict = verify::support_recovered(result.x_hat, truth, support_tol);
    if (!result.converged && decoder.spec.kind == DecoderKind::kL0) {
      rec.verdict.support_match = false;
    }
  } catch (const decoders::InfeasibleSystem&) {
    rec.error_tag = "infeasible";
  } catch (const lp::SolverError&) {
    rec.error_tag = "solver-failure";
  } catch (const core::GuardExceeded&) {
    rec.error_tag = "guard-refused";
  } catch (const std::invalid_argument&) {
    rec.error_tag = "invalid-input";
  }
  if (!rec.error_tag.empty()) {
    rec.verdict = verify::RecoveryVerdict{};
    rec.verdict.linf_error = core::linf_norm(truth.values());
    rec.verdict.l1_error = core::l1_norm(truth.values());
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& raw_config, int workers,
                                const ProgressFn& progress) {
  raw_config.validate();
  const ExperimentConfig config = raw_config.resolved();
  const std::size_t num_k = config.k_values.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials_per_k);
  const std::size_t num_dec = config.decoders.size();
  const std::size_t cells = num_k * trials;

  // Slot layout matches the output order: decoder, then k, then trial.
  std::vector<TrialRecord> records(num_dec * cells);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= cells) return;
      const std::size_t ki = cell / trials;
      const std::size_t t = cell % trials;
      const int k = config.k_values[ki];
      const std::uint64_t seed = trial_seed(config.base_seed, static_cast<std::uint64_t>(k), t);
      const MeasurementProblem problem = generate_problem(config.n, config.m, k, seed);
      for (std::size_t d = 0; d < num_dec; ++d) {
        TrialRecord rec = run_trial(problem, config.decoders[d], config.support_tol,
                                    config.solver);
        rec.k = k;
        rec.trial_index = static_cast<int>(t);
        rec.seed_used = seed;
        records[d * cells + cell] = std::move(rec);
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, cells);
      }
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), cells));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  ExperimentResult result;
  for (std::size_t d = 0; d < num_dec; ++d) {
    for (std::size_t ki = 0; ki < num_k; ++ki) {
      CurvePoint point;
      point.decoder_name = config.decoders[d].label;
      point.k = config.k_values[ki];
      point.trials = config.trials_per_k;
      for (std::size_t t = 0; t < trials; ++t) {
        if (records[d * cells + ki * trials + t].verdict.support_match) ++point.successes;
      }
      result.curve.points.push_back(std::move(point));
    }
  }
  result.records = std::move(records);
  return result;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& raw) {
  const ExperimentConfig config = raw.resolved();
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["m"] = config.m;
  j["k_values"] = config.k_values;
  j["trials_per_k"] = config.trials_per_k;
  auto decs = nlohmann::ordered_json::array();
  for (const auto& d : config.decoders) {
    nlohmann::ordered_json e;
    e["name"] = std::string(decoders::decoder_name(d.spec.kind));
    e["label"] = d.label;
    e["u"] = d.spec.params.u;
    e["L"] = d.spec.params.L;
    e["rho"] = d.spec.params.rho;
    e["s_max"] = d.spec.params.s_max;
    decs.push_back(std::move(e));
  }
  j["decoders"] = std::move(decs);
  j["base_seed"] = config.base_seed;
  j["support_tol"] = config.support_tol;
  j["solver"] = {{"max_iters", config.solver.max_iters},
                 {"feas_tol", config.solver.feas_tol},
                 {"pivot_tol", config.solver.pivot_tol}};
  return j;
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read_if_present(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"n", "m", "k_values", "trials_per_k", "decoders", "base_seed",
                          "support_tol", "solver"},
                      "config");
  ExperimentConfig config;
  try {
    read_if_present(j, "n", config.n);
    read_if_present(j, "m", config.m);
    read_if_present(j, "k_values", config.k_values);
    read_if_present(j, "trials_per_k", config.trials_per_k);
    read_if_present(j, "base_seed", config.base_seed);
    read_if_present(j, "support_tol", config.support_tol);
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      reject_unknown_keys(s, {"max_iters", "feas_tol", "pivot_tol"}, "solver");
      read_if_present(s, "max_iters", config.solver.max_iters);
      read_if_present(s, "feas_tol", config.solver.feas_tol);
      read_if_present(s, "pivot_tol", config.solver.pivot_tol);
    }
    if (j.contains("decoders")) {
      for (const auto& e : j.at("decoders")) {
        reject_unknown_keys(e, {"name", "label", "u", "L", "rho", "s_max"}, "decoder entry");
        const auto name = e.at("name").get<std::string>();
        const auto kind = decoders::parse_decoder_name(name);
        if (!kind) throw std::invalid_argument("unknown decoder '" + name + "'");
        NamedDecoder d = make_named_decoder(*kind);
        read_if_present(e, "label", d.label);
        read_if_present(e, "u", d.spec.params.u);
        read_if_present(e, "L", d.spec.params.L);
        read_if_present(e, "rho", d.spec.params.rho);
        read_if_present(e, "s_max", d.spec.params.s_max);
        config.decoders.push_back(std::move(d));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

OutputPaths write_results(const ExperimentConfig& config, const ExperimentResult& result,
                          const std::filesystem::path& prefix, bool include_timing) {
  using core::format_double;
  OutputPaths paths{prefix.string() + "_curve.csv", prefix.string() + "_trials.csv",
                    prefix.string() + "_config.json"};

  auto curve = open_output(paths.curve);
  curve << "decoder,k,trials,successes,rate\n";
  for (const auto& p : result.curve.points) {
    curve << p.decoder_name << ',' << p.k << ',' << p.trials << ',' << p.successes << ','
          << format_double(p.rate()) << '\n';
  }
  close_output(curve, paths.curve);

  auto trials = open_output(paths.trials);
  trials << "decoder,k,trial_index,seed,success,linf_error,l1_error,detected_support_size,"
            "error";
  if (include_timing) trials << ",wall_time";
  trials << '\n';
  for (const auto& r : result.records) {
    trials << r.decoder_name << ',' << r.k << ',' << r.trial_index << ',' << r.seed_used
           << ',' << (r.verdict.support_match ? 1 : 0) << ','
           << format_double(r.verdict.linf_error) << ','
           << format_double(r.verdict.l1_error) << ','
           << r.verdict.detected_support.size() << ',' << r.error_tag;
    if (include_timing) trials << ',' << format_double(r.wall_time);
    trials << '\n';
  }
  close_output(trials, paths.trials);

  auto json_out = open_output(paths.config);
  json_out << config_to_json(config).dump(2) << '\n';
  close_output(json_out, paths.config);
  return paths;
}

WeightedL1Instance random_weighted_l1_instance(const OracleCheckBounds& bounds,
                                               WeightRegime regime,
                                               std::uint64_t seed) {
  CounterRng rng(seed);
  const Index m = bounds.m_min +
                  static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(bounds.m_max - bounds.m_min + 1)));
  const Index n = bounds.n_min +
                  static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(bounds.n_max - bounds.n_min + 1)));
  std::vector<double> entries(static_cast<std::size_t>(m * n));
  for (double& e : entries) e = rng.next_normal();
  RealVector y(m);
  for (Index i = 0; i < m; ++i) y[i] = rng.next_normal();
  RealVector w = RealVector::Ones(n);
  if (regime == WeightRegime::kRandomPositive) {
    for (Index i = 0; i < n; ++i) w[i] = 0.1 + 1.9 * rng.next_uniform();
  } else if (regime == WeightRegime::kZeroBlock) {
    const Index len = 1 + static_cast<Index>(rng.next_below(
                              static_cast<std::uint64_t>(std::max<Index>(1, n / 2))));
    const Index start = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n - len + 1)));
    w.segment(start, len).setZero();
  }
  return WeightedL1Instance{DenseMatrix(m, n, std::move(entries)), std::move(y),
                            lp::WeightVector(std::move(w)), regime};
}

OracleCheckReport oracle_check(int count, const OracleCheckBounds& bounds,
                               std::uint64_t seed, const lp::SolverOptions& solver) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  if (bounds.m_min < 1 || bounds.m_min > bounds.m_max || bounds.n_min < 1 ||
      bounds.n_min > bounds.n_max) {
    throw std::invalid_argument("size bounds need 1 <= min <= max");
  }
  double worst = 0.0;
  for (Index m = bounds.m_min; m <= bounds.m_max; ++m) {
    worst = std::max(worst, lp::oracle_candidate_count(m, bounds.n_max));
  }
  if (worst > lp::kOracleCandidateLimit) {
    std::ostringstream msg;
    msg << std::fixed << std::setprecision(0) << "bounds allow " << worst << " candidate bases per instance, oracle limit is "
        << lp::kOracleCandidateLimit;
    throw core::GuardExceeded(msg.str(), worst, lp::kOracleCandidateLimit);
  }
  constexpr WeightRegime kRegimes[] = {WeightRegime::kUniform, WeightRegime::kRandomPositive,
                                       WeightRegime::kZeroBlock};
  OracleCheckReport report;
  report.count = count;
  for (int i = 0; i < count; ++i) {
    const auto inst = random_weighted_l1_instance(
        bounds, kRegimes[i % 3], trial_seed(seed, static_cast<std::uint64_t>(i), 0));
    const auto oracle = lp::vertex_oracle(inst.a, inst.y, inst.w);
    lp::LpSolution simplex;
    try {
      simplex = lp::solve_weighted_l1(inst.a, inst.y, inst.w, solver);
    } catch (const lp::SolverError&) {
      ++report.failures;
      continue;
    }
    if (simplex.status != oracle.status) {
      ++report.failures;
      ++report.status_mismatches;
      continue;
    }
    if (oracle.status != lp::Status::kOptimal) continue;
    const double gap =
        std::abs(simplex.objective - oracle.objective) / (1.0 + std::abs(oracle.objective));
    report.max_discrepancy = std::max(report.max_discrepancy, gap);
    if (!(gap <= kOracleAgreementTol)) ++report.failures;
  }
  return report;
}

}  // namespace sparsebench::bench
