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

#include "sparsebench/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsebench/bench.hpp"
#include "sparsebench/csv_io.hpp"
#include "sparsebench/decoders.hpp"
#include "sparsebench/lp.hpp"
#include "sparsebench/verify.hpp"

namespace sparsebench::cli {

namespace {

using core::format_double;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    out.emplace_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

int parse_int(std::string_view s, std::string_view context) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  return value;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return 42;
  std::uint64_t value = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" +
                     std::string(s) + "'");
  }
  return value;
}

void add_solver_options(CLI::App* cmd, lp::SolverOptions& solver) {
  cmd->add_option("--max-iters", solver.max_iters,
                  "Simplex pivot cap; 0 means 50 * (2n + m)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--feas-tol", solver.feas_tol, "Simplex feasibility tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--pivot-tol", solver.pivot_tol, "Simplex pivot tolerance")
      ->check(CLI::PositiveNumber);
}

void add_decoder_params(CLI::App* cmd, decoders::DecoderParams& params) {
  cmd->add_option("--u", params.u, "Reweighting offset / threshold parameter u > 0");
  cmd->add_option("--L", params.L, "Number of reweighting / alternating iterations");
  cmd->add_option("--rho", params.rho, "Two-stage fraction of m left unpenalized, in (0, 1/2)");
  cmd->add_option("--s-max", params.s_max, "Largest support tried by l0; 0 means floor(m/2)");
}

void print_solver(std::ostream& out, const lp::SolverOptions& solver) {
  out << "max_iters: " << solver.max_iters << (solver.max_iters == 0 ? " (auto)" : "")
      << "\n"
      << "feas_tol: " << format_double(solver.feas_tol) << "\n"
      << "pivot_tol: " << format_double(solver.pivot_tol) << "\n";
}

// ---------------------------------------------------------------- decode

struct DecodeArgs {
  std::string matrix_file;
  std::string measurement_file;
  std::string signal_file;
  std::string out_file;
  std::string decoder = "l1";
  decoders::DecoderParams params;
  double support_tol = verify::kDefaultSupportTol;
  lp::SolverOptions solver;
};

int cmd_decode(const DecodeArgs& args, std::ostream& out) {
  const auto kind = decoders::parse_decoder_name(args.decoder);
  if (!kind) throw UsageError("unknown decoder '" + args.decoder + "'");
  args.params.validate();
  const auto a = core::read_matrix_csv(args.matrix_file);
  const auto y = core::read_vector_csv(args.measurement_file);
  if (y.size() != a.rows()) {
    throw UsageError("'" + args.measurement_file + "' has " + std::to_string(y.size()) +
                     " entries but the matrix has " + std::to_string(a.rows()) + " rows");
  }
  decoders::DecoderParams params = args.params;
  if (*kind == decoders::DecoderKind::kL0 && params.s_max == 0) {
    params.s_max = static_cast<int>(a.rows() / 2);
  }

  out << "# configuration\n"
      << "matrix_file: " << args.matrix_file << " (" << a.rows() << "x" << a.cols() << ")\n"
      << "measurement_file: " << args.measurement_file << "\n"
      << "decoder: " << args.decoder << "\n"
      << "u: " << format_double(params.u) << "\n"
      << "L: " << params.L << "\n"
      << "rho: " << format_double(params.rho) << "\n"
      << "s_max: " << params.s_max << "\n"
      << "support_tol: " << format_double(args.support_tol) << "\n";
  print_solver(out, args.solver);

  const auto result = decoders::decode({*kind, params}, a, y, args.solver);
  out << "# result\n"
      << "converged: " << (result.converged ? "true" : "false") << "\n"
      << "objective: " << format_double(result.stages.back().objective) << "\n"
      << "l1_norm: " << format_double(core::l1_norm(result.x_hat)) << "\n"
      << "residual: " << format_double(core::residual_inf(a, result.x_hat, y)) << "\n";
  for (const auto& st : result.stages) {
    out << "stage " << st.index << ": objective=" << format_double(st.objective)
        << " residual=" << format_double(st.residual)
        << " lp_iterations=" << st.lp_iterations;
    if (!st.index_set.empty()) out << " set=" << st.index_set.to_string();
    out << "\n";
  }
  out << "support: " << verify::support(result.x_hat, args.support_tol).to_string() << "\n";
  out << "x_hat:\n";
  for (Eigen::Index i = 0; i < result.x_hat.size(); ++i) {
    out << format_double(result.x_hat[i]) << "\n";
  }
  if (!args.signal_file.empty()) {
    const auto truth = verify::SparseSignal::from_dense(core::read_vector_csv(args.signal_file));
    if (truth.dim() != a.cols()) throw UsageError("signal dimension does not match the matrix");
    const auto verdict = verify::support_recovered(result.x_hat, truth, args.support_tol);
    out << "support_match: " << (verdict.support_match ? "true" : "false") << "\n"
        << "linf_error: " << format_double(verdict.linf_error) << "\n"
        << "l1_error: " << format_double(verdict.l1_error) << "\n";
  }
  if (!args.out_file.empty()) {
    core::write_vector_csv(args.out_file, result.x_hat);
    out << "wrote " << args.out_file << "\n";
  }
  if (!result.converged) {
    out << "no support of size <= " << params.s_max << " reproduces y\n";
    return kExitDomainFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------ experiment

struct ExperimentArgs {
  std::string config_file;
  bench::ExperimentConfig config;
  std::string k_list = "1..30";
  std::string decoder_list = "l1,rew-l1,alt-l1,2stage-l1";
  decoders::DecoderParams params;
  int workers = 1;
  std::string out_prefix = "sparsebench";
  bool timing = false;
  bool progress = false;
};

int cmd_experiment(ExperimentArgs& args, const CLI::App& cmd, std::ostream& out,
                   std::ostream& err) {
  bench::ExperimentConfig config;
  config.base_seed = default_seed();
  config.k_values = parse_k_list(args.k_list);
  for (const auto& name : split_commas(args.decoder_list)) {
    const auto kind = decoders::parse_decoder_name(name);
    if (!kind) throw UsageError("unknown decoder '" + name + "'");
    config.decoders.push_back(bench::make_named_decoder(*kind, args.params));
  }
  if (!args.config_file.empty()) {
    std::ifstream in(args.config_file);
    if (!in) throw UsageError("cannot open config '" + args.config_file + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(args.config_file + ": " + e.what());
    }
    bench::ExperimentConfig from_file = bench::config_from_json(j);
    if (!j.contains("base_seed")) from_file.base_seed = config.base_seed;
    if (!j.contains("k_values")) from_file.k_values = config.k_values;
    if (!j.contains("decoders")) from_file.decoders = config.decoders;
    config = std::move(from_file);
  }
  // Flags given explicitly win over the config file.
  const auto given = [&cmd](const char* name) { return cmd.count(name) > 0; };
  if (given("--n")) config.n = args.config.n;
  if (given("--m")) config.m = args.config.m;
  if (given("--trials")) config.trials_per_k = args.config.trials_per_k;
  if (given("--seed")) config.base_seed = args.config.base_seed;
  if (given("--support-tol")) config.support_tol = args.config.support_tol;
  if (given("--max-iters")) config.solver.max_iters = args.config.solver.max_iters;
  if (given("--feas-tol")) config.solver.feas_tol = args.config.solver.feas_tol;
  if (given("--pivot-tol")) config.solver.pivot_tol = args.config.solver.pivot_tol;
  if (!args.config_file.empty()) {
    if (given("--k")) config.k_values = parse_k_list(args.k_list);
    if (given("--decoders")) {
      config.decoders.clear();
      for (const auto& name : split_commas(args.decoder_list)) {
        const auto kind = decoders::parse_decoder_name(name);
        if (!kind) throw UsageError("unknown decoder '" + name + "'");
        config.decoders.push_back(bench::make_named_decoder(*kind, args.params));
      }
    }
    for (auto& d : config.decoders) {
      if (given("--u")) d.spec.params.u = args.params.u;
      if (given("--L")) d.spec.params.L = args.params.L;
      if (given("--rho")) d.spec.params.rho = args.params.rho;
      if (given("--s-max")) d.spec.params.s_max = args.params.s_max;
    }
  }
  config.validate();
  config = config.resolved();

  out << "# configuration\n" << bench::config_to_json(config).dump(2) << "\n"
      << "workers: " << args.workers << (args.workers == 0 ? " (auto)" : "") << "\n"
      << "out_prefix: " << args.out_prefix << "\n";

  bench::ProgressFn progress;
  if (args.progress) {
    progress = [&err, last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
      const std::size_t pct = done * 100 / total;
      if (pct / 10 != last / 10 || done == total) {
        err << "progress: " << done << "/" << total << "\n";
        last = pct;
      }
    };
  }
  const auto result = bench::run_experiment(config, args.workers, progress);
  const auto paths = bench::write_results(config, result, args.out_prefix, args.timing);

  out << "# success rate\n" << std::left << std::setw(6) << "k";
  for (const auto& d : config.decoders) out << " " << std::setw(22) << d.label;
  out << "\n";
  for (int k : config.k_values) {
    out << std::setw(6) << k;
    for (const auto& d : config.decoders) {
      out << " " << std::setw(22) << format_double(result.curve.find(d.label, k)->rate());
    }
    out << "\n";
  }
  out << std::right;
  out << "wrote " << paths.curve.string() << "\n"
      << "wrote " << paths.trials.string() << "\n"
      << "wrote " << paths.config.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------- oracle-check

struct OracleArgs {
  int count = 200;
  bench::OracleCheckBounds bounds;
  std::optional<std::uint64_t> seed;
  lp::SolverOptions solver;
};

int cmd_oracle_check(const OracleArgs& args, std::ostream& out) {
  const std::uint64_t seed = args.seed.value_or(default_seed());
  out << "# configuration\n"
      << "count: " << args.count << "\n"
      << "m: " << args.bounds.m_min << ".." << args.bounds.m_max << "\n"
      << "n: " << args.bounds.n_min << ".." << args.bounds.n_max << "\n"
      << "seed: " << seed << "\n";
  print_solver(out, args.solver);
  const auto report = bench::oracle_check(args.count, args.bounds, seed, args.solver);
  out << "# result\n";
  if (report.count == 0) {
    out << "no instances requested; vacuous pass\n";
    return kExitOk;
  }
  out << "instances: " << report.count << "\n"
      << "status_mismatches: " << report.status_mismatches << "\n"
      << "max_discrepancy: " << format_double(report.max_discrepancy) << "\n"
      << "tolerance: " << format_double(bench::kOracleAgreementTol) << "\n"
      << (report.passed() ? "PASS" : "FAIL") << " (" << report.failures << " failing)\n";
  return report.passed() ? kExitOk : kExitDomainFailure;
}

// ---------------------------------------------------------- lemma1-check

struct RankCheckArgs {
  std::string matrix_file;
  int s = 1;
};

int cmd_lemma1_check(const RankCheckArgs& args, std::ostream& out) {
  const auto a = core::read_matrix_csv(args.matrix_file);
  out << "# configuration\n"
      << "matrix_file: " << args.matrix_file << " (" << a.rows() << "x" << a.cols() << ")\n"
      << "s: " << args.s << "\n"
      << "rank_tolerance: max(m, n) * eps relative\n";
  if (args.s < 0 || 2 * args.s > a.rows()) {
    throw UsageError("s must satisfy 0 <= 2s <= m = " + std::to_string(a.rows()));
  }
  const auto witness = verify::find_rank_deficient_subset(a, args.s);
  out << "# result\n" << (witness ? "false" : "true") << "\n";
  if (witness) {
    out << "rank-deficient columns: " << witness->to_string() << "\n";
  }
  return kExitOk;
}

}  // namespace

std::vector<int> parse_k_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& item : split_commas(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item, "k list"));
      continue;
    }
    const int lo = parse_int(trim(std::string_view(item).substr(0, dots)), "k range");
    const int hi = parse_int(trim(std::string_view(item).substr(dots + 2)), "k range");
    if (hi < lo) throw std::invalid_argument("empty k range '" + item + "'");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse recovery by l1-based decoders and Monte Carlo sweeps", "sparsebench"};
  app.require_subcommand(1);

  DecodeArgs decode_args;
  auto* decode = app.add_subcommand("decode", "Decode one measurement vector");
  decode->add_option("--matrix-file", decode_args.matrix_file, "CSV matrix A")->required();
  decode->add_option("--measurement-file,--y-file", decode_args.measurement_file,
                     "CSV measurement vector y")
      ->required();
  decode->add_option("--decoder", decode_args.decoder, "l0 | l1 | rew-l1 | alt-l1 | 2stage-l1")
      ->capture_default_str();
  decode->add_option("--signal-file", decode_args.signal_file,
                     "Optional CSV ground truth; adds a recovery verdict");
  decode->add_option("--out", decode_args.out_file, "Write x_hat as CSV");
  decode->add_option("--support-tol", decode_args.support_tol, "Relative support threshold")
      ->check(CLI::NonNegativeNumber);
  add_decoder_params(decode, decode_args.params);
  add_solver_options(decode, decode_args.solver);

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo sparsity sweep");
  experiment->add_option("--config", exp_args.config_file, "JSON experiment config");
  experiment->add_option("--n", exp_args.config.n, "Signal dimension")->capture_default_str();
  experiment->add_option("--m", exp_args.config.m, "Number of measurements")
      ->capture_default_str();
  experiment->add_option("--k", exp_args.k_list, "Sparsity sweep, e.g. 1..30 or 2,4,6")
      ->capture_default_str();
  experiment->add_option("--trials", exp_args.config.trials_per_k, "Trials per k")
      ->capture_default_str();
  experiment->add_option("--decoders", exp_args.decoder_list, "Comma-separated decoder names")
      ->capture_default_str();
  experiment->add_option("--seed", exp_args.config.base_seed,
                         std::string("Base seed (default 42, or $") + kSeedEnvVar + ")");
  experiment->add_option("--support-tol", exp_args.config.support_tol,
                         "Relative support threshold")
      ->check(CLI::NonNegativeNumber);
  experiment->add_option("--workers", exp_args.workers, "Worker threads; 0 = all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  experiment->add_option("--out-prefix", exp_args.out_prefix, "Output path prefix")
      ->capture_default_str();
  experiment->add_flag("--timing", exp_args.timing, "Add wall_time to the trials CSV");
  experiment->add_flag("--progress", exp_args.progress, "Report progress on stderr");
  add_decoder_params(experiment, exp_args.params);
  add_solver_options(experiment, exp_args.config.solver);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-check",
                                    "Cross-check the simplex against vertex enumeration");
  oracle->add_option("--count", oracle_args.count, "Number of random instances")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  oracle->add_option("--m-min", oracle_args.bounds.m_min)->capture_default_str();
  oracle->add_option("--m-max", oracle_args.bounds.m_max)->capture_default_str();
  oracle->add_option("--n-min", oracle_args.bounds.n_min)->capture_default_str();
  oracle->add_option("--n-max", oracle_args.bounds.n_max)->capture_default_str();
  oracle->add_option("--seed", oracle_args.seed, std::string("Seed (default 42, or $") + kSeedEnvVar + ")");
  add_solver_options(oracle, oracle_args.solver);

  RankCheckArgs lemma_args;
  auto* lemma1 = app.add_subcommand(
      "lemma1-check", "Check that every 2s-column submatrix has full column rank");
  lemma1->add_option("--matrix-file", lemma_args.matrix_file, "CSV matrix A")->required();
  lemma1->add_option("--s", lemma_args.s, "Sparsity level s")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*decode) return cmd_decode(decode_args, out);
    if (*experiment) return cmd_experiment(exp_args, *experiment, out, err);
    if (*oracle) return cmd_oracle_check(oracle_args, out);
    if (*lemma1) return cmd_lemma1_check(lemma_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const core::CsvError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const core::GuardExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const decoders::InfeasibleSystem& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitDomainFailure;
  }
  return kExitUsage;
}

}  // namespace sparsebench::cli
