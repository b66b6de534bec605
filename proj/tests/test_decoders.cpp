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

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sparsebench/bench.hpp"
#include "sparsebench/decoders.hpp"
#include "sparsebench/random.hpp"
#include "sparsebench/verify.hpp"
#include "test_helpers.hpp"

using sparsebench::bench::CounterRng;
using sparsebench::bench::generate_problem;
using sparsebench::bench::trial_seed;
using sparsebench::core::DenseMatrix;
using sparsebench::core::IndexSet;
using sparsebench::core::linf_norm;
using sparsebench::core::RealVector;
using sparsebench::core::residual_inf;
using namespace sparsebench::decoders;

namespace {

const DenseMatrix kFixture = DenseMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
const RealVector kFixtureY{{1.0, 1.0}};

bool bitwise_equal(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

bool recovers(const RealVector& x_hat, const sparsebench::verify::SparseSignal& truth) {
  return sparsebench::verify::support_recovered(x_hat, truth).support_match;
}

void check_all_stages_feasible(const DecodeResult& r, const DenseMatrix& a, const RealVector& y) {
  REQUIRE_FALSE(r.stages.empty());
  const double bound = 1e-8 * (1.0 + linf_norm(y));
  for (const auto& stage : r.stages) CHECK(stage.residual <= bound);
  CHECK(residual_inf(a, r.x_hat, y) <= bound);
}

double l1_on(const RealVector& x, const IndexSet& set) {
  double s = 0.0;
  for (auto i : set) s += std::abs(x[i]);
  return s;
}

}  // namespace

TEST_CASE("decode_l0 examples") {
  const auto zero = decode_l0(kFixture, RealVector::Zero(2), 1);
  CHECK(zero.converged);
  CHECK(linf_norm(zero.x_hat) == 0.0);
  CHECK(zero.stages.front().index_set.empty());

  const auto fixture = decode_l0(kFixture, kFixtureY, 1);
  CHECK(fixture.converged);
  CHECK(linf_norm(fixture.x_hat - RealVector{{0.0, 0.0, 1.0}}) <= 1e-12);
  CHECK((fixture.stages.front().index_set == IndexSet{2}));

  // Every 2-column submatrix of a Gaussian 2x4 is invertible, so each
  // 1-sparse signal is the unique sparsest solution.
  CounterRng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto a = testing::gaussian_matrix(rng, 2, 4);
    RealVector x = RealVector::Zero(4);
    x[t % 4] = rng.next_normal();
    const auto r = decode_l0(a, a.eigen() * x, 1);
    CHECK(r.converged);
    CHECK(linf_norm(r.x_hat - x) <= 1e-8);
  }
}

TEST_CASE("decode_l0 failure modes") {
  // No single column reproduces y.
  const auto r = decode_l0(DenseMatrix::identity(3), RealVector{{1.0, 1.0, 0.0}}, 1);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(decode_l0(kFixture, kFixtureY, 3), std::invalid_argument);
  CHECK_THROWS_AS(decode_l0(DenseMatrix(50, 128), RealVector::Zero(50), 25),
                  sparsebench::core::GuardExceeded);
}

TEST_CASE("decode_l1 examples") {
  CounterRng rng(32);
  const auto a = testing::gaussian_matrix(rng, 5, 5);
  const RealVector y = testing::gaussian_vector(rng, 5);
  const RealVector expected = a.eigen().fullPivLu().solve(y);
  const auto square = decode_l1(a, y);
  CHECK(linf_norm(square.x_hat - expected) <= 1e-9 * (1.0 + linf_norm(expected)));
  CHECK(square.stages.size() == 1);
  CHECK(square.decoder_name == "l1");

  const auto fixture = decode_l1(kFixture, kFixtureY);
  CHECK(linf_norm(fixture.x_hat - RealVector{{0.0, 0.0, 1.0}}) <= 1e-12);
  CHECK(linf_norm(decode_l1(kFixture, RealVector::Zero(2)).x_hat) == 0.0);

  CHECK_THROWS_AS(decode_l1(DenseMatrix::from_rows({{0, 0}}), RealVector{{1.0}}), InfeasibleSystem);
}

TEST_CASE("decode_reweighted examples") {
  CounterRng rng(33);
  const auto a = testing::gaussian_matrix(rng, 4, 4);
  const RealVector y = testing::gaussian_vector(rng, 4);
  const RealVector expected = a.eigen().fullPivLu().solve(y);
  for (double u : {0.01, 1.0, 100.0}) {
    for (int L : {1, 3}) {
      const auto r = decode_reweighted(a, y, u, L);
      CHECK(r.stages.size() == static_cast<std::size_t>(L + 1));
      CHECK(linf_norm(r.x_hat - expected) <= 1e-9 * (1.0 + linf_norm(expected)));
    }
  }

  SUBCASE("huge u leaves the weights uniform") {
    for (int t = 0; t < 10; ++t) {
      const auto p = generate_problem(30, 12, 4, trial_seed(5, 4, t));
      const auto l1 = decode_l1(p.a, p.y);
      const auto rew = decode_reweighted(p.a, p.y, 1e12, 1);
      CHECK(linf_norm(rew.x_hat - l1.x_hat) <= 1e-6);
    }
  }

  SUBCASE("zero updates is plain l1") {
    for (int t = 0; t < 10; ++t) {
      const auto p = generate_problem(40, 16, 6, trial_seed(6, 6, t));
      CHECK(bitwise_equal(decode_reweighted(p.a, p.y, 0.5, 0).x_hat, decode_l1(p.a, p.y).x_hat));
    }
  }

  SUBCASE("regression fixture where reweighting fixes l1") {
    // Gaussian n=20, m=8, k=3 instance frozen from a seed search.
    const auto p = generate_problem(20, 8, 3, 16);
    REQUIRE(p.truth.has_value());
    const auto l0 = decode_l0(p.a, p.y, 3);
    REQUIRE(l0.converged);
    CHECK(linf_norm(l0.x_hat - p.truth->dense()) <= 1e-8);
    CHECK_FALSE(recovers(decode_l1(p.a, p.y).x_hat, *p.truth));
    const auto rew = decode_reweighted(p.a, p.y, 0.1, 4);
    CHECK(rew.stages.size() == 5);
    CHECK(recovers(rew.x_hat, *p.truth));
  }
}

TEST_CASE("decode_alternating examples") {
  SUBCASE("tiny u keeps every index penalized") {
    const auto p = generate_problem(30, 12, 5, 77);
    const auto r = decode_alternating(p.a, p.y, 1e-9, 4);
    CHECK(r.converged);
    REQUIRE(r.stages.size() == 2);
    CHECK(r.stages[1].index_set == IndexSet::all(30));
    CHECK(bitwise_equal(r.x_hat, decode_l1(p.a, p.y).x_hat));
  }
  SUBCASE("large u keeps exactly the off-support indices") {
    const auto r = decode_alternating(kFixture, kFixtureY, 1e6, 4);
    REQUIRE(r.stages.size() >= 2);
    CHECK((r.stages[1].index_set == IndexSet{0, 1}));
    CHECK(linf_norm(r.x_hat - RealVector{{0.0, 0.0, 1.0}}) <= 1e-12);
  }
  SUBCASE("empty threshold set returns the previous iterate") {
    const RealVector y{{2.0, 3.0, 4.0}};
    const auto r = decode_alternating(DenseMatrix::identity(3), y, 1.0, 4);
    CHECK(r.converged);
    CHECK(r.stages.size() == 1);
    CHECK(linf_norm(r.x_hat - y) <= 1e-12);
  }
  SUBCASE("one more iteration at the fixed point changes nothing") {
    const double u = 3.0;
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
      const auto p = generate_problem(60, 24, 6, trial_seed(8, 6, t));
      const auto r = decode_alternating(p.a, p.y, u, 6);
      if (!r.converged || r.stages.size() < 2) continue;
      ++checked;
      std::vector<Eigen::Index> small;
      for (Eigen::Index i = 0; i < r.x_hat.size(); ++i) {
        if (std::abs(r.x_hat[i]) < 1.0 / u) small.push_back(i);
      }
      const IndexSet next(small);
      CHECK(next == r.stages.back().index_set);
      const auto again = sparsebench::lp::solve_weighted_l1(
          p.a, p.y, sparsebench::lp::WeightVector::mask(60, next.complement(60)));
      CHECK(again.objective == doctest::Approx(r.stages.back().objective).epsilon(1e-12));
    }
    CHECK(checked >= 30);
  }
}

TEST_CASE("top_k_indices examples") {
  CHECK((top_k_indices(RealVector{{3.0, -5.0, 2.0}}, 1) == IndexSet{1}));
  CHECK((top_k_indices(RealVector{{1.0, 1.0, 0.0}}, 2) == IndexSet{0, 1}));
  CHECK((top_k_indices(RealVector{{0.5, -4.0, 2.0, 0.0}}, 4) == IndexSet::all(4)));
  CHECK(top_k_indices(RealVector{{1.0}}, 0).empty());
  CHECK_THROWS_AS(top_k_indices(RealVector{{1.0}}, 2), std::invalid_argument);
}

TEST_CASE("decode_two_stage examples") {
  CHECK(two_stage_count(0.25, 50) == 12);
  CHECK(two_stage_count(0.29, 100) == 29);

  CounterRng rng(34);
  const auto a = testing::gaussian_matrix(rng, 6, 6);
  const RealVector y = testing::gaussian_vector(rng, 6);
  const RealVector expected = a.eigen().fullPivLu().solve(y);
  const auto square = decode_two_stage(a, y, 0.25);
  CHECK(square.stages.size() == 2);
  CHECK(linf_norm(square.x_hat - expected) <= 1e-9 * (1.0 + linf_norm(expected)));

  const auto p = generate_problem(128, 50, 10, 3);
  const auto r = decode_two_stage(p.a, p.y, 0.25);
  CHECK(r.stages[1].index_set.size() == 12);
  for (auto i : r.stages[1].index_set) CHECK(r.stages[1].weights[i] == 0.0);
  CHECK(r.stages[1].weights.sum() == doctest::Approx(128 - 12));

  CHECK_THROWS_AS(decode_two_stage(p.a, p.y, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(decode_two_stage(p.a, p.y, 0.0), std::invalid_argument);
}

TEST_CASE("two-stage is exact once the top set covers the support") {
  // n=128, m=50, rho=0.45 so keep=22, at k=16. Whenever step 0 puts every true index in T and the
  // unpenalized columns are independent, x* is the unique point with zero
  // stage-1 objective.
  int qualifying = 0;
  for (int t = 0; t < 60; ++t) {
    const auto p = generate_problem(128, 50, 16, trial_seed(9, 16, t));
    const auto r = decode_two_stage(p.a, p.y, 0.45);
    const IndexSet& top = r.stages[1].index_set;
    if (!p.truth->support().is_subset_of(top)) continue;
    ++qualifying;
    CHECK(sparsebench::core::numerical_rank(sparsebench::core::submatrix_columns(p.a, top)) ==
          static_cast<Eigen::Index>(top.size()));
    CHECK(linf_norm(r.x_hat - p.truth->dense()) <= 1e-8);
    CHECK(std::abs(r.stages[1].objective) <= 1e-8);
  }
  CHECK(qualifying >= 20);
}

TEST_CASE("decoder invariants on generated instances") {
  const DecoderSpec specs[] = {
      {DecoderKind::kL1, {}}, {DecoderKind::kReweighted, {}}, {DecoderKind::kAlternating, {}},
      {DecoderKind::kTwoStage, {}}};
  for (int t = 0; t < 40; ++t) {
    const int k = 2 + t % 15;
    const auto p = generate_problem(64, 32, k, trial_seed(10, k, t));
    const RealVector truth = p.truth->dense();
    for (const auto& spec : specs) {
      const auto r = decode(spec, p.a, p.y);
      CHECK(r.decoder_name == decoder_name(spec.kind));
      check_all_stages_feasible(r, p.a, p.y);
    }
    const auto l1 = decode_l1(p.a, p.y);
    CHECK(sparsebench::core::l1_norm(l1.x_hat) <= sparsebench::core::l1_norm(truth) + 1e-8);

    // Both x* and the step-0 point are feasible for the stage-1 program.
    const auto two = decode_two_stage(p.a, p.y, 0.25);
    const IndexSet rest = two.stages[1].index_set.complement(64);
    CHECK(l1_on(two.x_hat, rest) <= l1_on(truth, rest) + 1e-8);
    CHECK(l1_on(two.x_hat, rest) <= l1_on(l1.x_hat, rest) + 1e-8);
  }
}

TEST_CASE("permuting columns permutes every decoder's output") {
  // Only instances where each stage's program has a single minimizer are
  // asserted on; uniqueness comes from the determinant-based enumerator.
  const DecoderSpec specs[] = {
      {DecoderKind::kL1, {}}, {DecoderKind::kReweighted, {1.0, 2, 0.25, 0}},
      {DecoderKind::kAlternating, {}}, {DecoderKind::kTwoStage, {}}};
  const Eigen::Index n = 10;
  const Eigen::Index m = 5;
  int asserted = 0;
  for (int t = 0; t < 30; ++t) {
    const auto p = generate_problem(n, m, 1 + t % 3, trial_seed(11, 0, t));
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    CounterRng rng(static_cast<std::uint64_t>(t));
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    }
    // Column j of the permuted matrix is column perm[j] of the original.
    sparsebench::core::RowMajorMatrix pa(m, n);
    for (Eigen::Index j = 0; j < n; ++j) pa.col(j) = p.a.eigen().col(perm[static_cast<std::size_t>(j)]);
    const DenseMatrix b(pa);

    for (const auto& spec : specs) {
      const auto r = decode(spec, p.a, p.y);
      bool unique = true;
      for (const auto& stage : r.stages) {
        const auto summary = oracle::enumerate_vertices(oracle::to_dense(p.a), testing::to_std(p.y),
                                                        testing::to_std(stage.weights));
        unique = unique && summary && summary->distinct_optimal_points == 1;
      }
      if (!unique) continue;
      const auto rp = decode(spec, b, p.y);
      if (rp.stages.size() != r.stages.size()) {
        FAIL_CHECK("stage count differs under permutation for " << r.decoder_name);
        continue;
      }
      ++asserted;
      for (Eigen::Index j = 0; j < n; ++j) {
        CHECK(std::abs(rp.x_hat[j] - r.x_hat[perm[static_cast<std::size_t>(j)]]) <= 1e-9);
      }
    }
  }
  CHECK(asserted >= 60);
}

TEST_CASE("alternating l1 beats plain l1 at k=12 over 300 trials") {
  int alt_successes = 0;
  int l1_successes = 0;
  for (int t = 0; t < 300; ++t) {
    const auto p = generate_problem(128, 50, 12, trial_seed(42, 12, t));
    if (recovers(decode_l1(p.a, p.y).x_hat, *p.truth)) ++l1_successes;
    if (recovers(decode_alternating(p.a, p.y, 3.0, 4).x_hat, *p.truth)) ++alt_successes;
  }
  MESSAGE("alt-l1 " << alt_successes << "/300, l1 " << l1_successes << "/300");
  CHECK(alt_successes > l1_successes);
}

TEST_CASE("decoder names and parameters") {
  for (auto kind : {DecoderKind::kL0, DecoderKind::kL1, DecoderKind::kReweighted,
                    DecoderKind::kAlternating, DecoderKind::kTwoStage}) {
    CHECK(parse_decoder_name(decoder_name(kind)) == kind);
  }
  CHECK_FALSE(parse_decoder_name("omp").has_value());
  CHECK_NOTHROW(DecoderParams{}.validate());
  CHECK_THROWS_AS((DecoderParams{0.0, 4, 0.25, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DecoderParams{3.0, 0, 0.25, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DecoderParams{3.0, 4, 0.5, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DecoderParams{3.0, 4, 0.25, -1}.validate()), std::invalid_argument);
}
