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

#include <cmath>

#include "oracles.hpp"
#include "sparsebench/decoders.hpp"
#include "sparsebench/random.hpp"
#include "sparsebench/verify.hpp"
#include "test_helpers.hpp"

using sparsebench::bench::CounterRng;
using sparsebench::core::DenseMatrix;
using sparsebench::core::IndexSet;
using sparsebench::core::linf_norm;
using sparsebench::core::RealVector;
using namespace sparsebench::verify;

TEST_CASE("support examples") {
  CHECK((support(RealVector{{0.0, 1e-12, 5.0}}, 1e-4) == IndexSet{2}));
  CHECK(support(RealVector::Zero(4)).empty());
  CHECK((support(RealVector{{1.0, -1.0}}, 0.0) == IndexSet{0, 1}));
  // The threshold is floored at the absolute tolerance for small vectors.
  CHECK(support(RealVector{{5e-5, 0.0}}, 1e-4).empty());
}

TEST_CASE("support is invariant under rescaling") {
  // With the max(1, ||x||_inf) floor the threshold scales with x as long as
  // both x and lambda x have a largest entry of at least 1.
  CounterRng rng(41);
  for (int t = 0; t < 100; ++t) {
    RealVector x = RealVector::Zero(20);
    for (int i = 0; i < 20; ++i) {
      const double r = rng.next_uniform();
      if (r < 0.3) x[i] = rng.next_normal();
      if (r > 0.9) x[i] = 1e-9 * rng.next_normal();
    }
    x[t % 20] = 2.0;
    for (double lambda : {-1.0, 3.0, 0.5, -1e6}) {
      CHECK(support(lambda * x) == support(x));
    }
  }
}

TEST_CASE("support_recovered examples") {
  const SparseSignal truth(5, IndexSet{1, 3}, RealVector{{2.0, -0.5}});
  const RealVector exact = truth.dense();

  auto v = support_recovered(exact, truth);
  CHECK(v.support_match);
  CHECK(v.linf_error == 0.0);
  CHECK(v.l1_error == 0.0);

  RealVector noisy = exact;
  noisy[0] = 1e-12;
  v = support_recovered(noisy, truth);
  CHECK(v.support_match);
  CHECK(v.linf_error == doctest::Approx(1e-12));

  RealVector missing = exact;
  missing[3] = 0.0;
  v = support_recovered(missing, truth);
  CHECK_FALSE(v.support_match);
  CHECK((v.detected_support == IndexSet{1}));
  CHECK(v.l1_error == doctest::Approx(0.5));

  CHECK_THROWS_AS(support_recovered(RealVector::Zero(4), truth), std::invalid_argument);
}

TEST_CASE("SparseSignal validation") {
  CHECK_THROWS_AS(SparseSignal(3, IndexSet{0, 1}, RealVector{{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseSignal(3, IndexSet{5}, RealVector{{1.0}}), std::exception);
  CHECK_THROWS_AS(SparseSignal(3, IndexSet{0}, RealVector{{NAN}}), std::invalid_argument);
  const auto s = SparseSignal::from_dense(RealVector{{0.0, 4.0, 0.0, -1.0}});
  CHECK((s.support() == IndexSet{1, 3}));
  CHECK(s.dense() == RealVector{{0.0, 4.0, 0.0, -1.0}});
}

TEST_CASE("rank condition examples") {
  CHECK(check_lemma1_condition(DenseMatrix::identity(4), 2));
  CHECK_FALSE(find_rank_deficient_subset(DenseMatrix::identity(4), 2).has_value());

  const auto dup = DenseMatrix::from_rows({{1, 0, 1}, {0, 1, 0}, {2, 3, 2}});
  CHECK_FALSE(check_lemma1_condition(dup, 1));
  const auto witness = find_rank_deficient_subset(dup, 1);
  REQUIRE(witness.has_value());
  CHECK((*witness == IndexSet{0, 2}));
}

TEST_CASE("random 6x10 satisfies the condition for s=3, confirmed by determinants") {
  CounterRng rng(42);
  const auto a = testing::gaussian_matrix(rng, 6, 10);
  CHECK(check_lemma1_condition(a, 3));
  const auto dense = oracle::to_dense(a);
  std::vector<Eigen::Index> cols{0, 1, 2, 3, 4, 5};
  int subsets = 0;
  do {
    oracle::Dense sub(6, std::vector<double>(6));
    double bound = 1.0;
    for (int j = 0; j < 6; ++j) {
      double norm2 = 0.0;
      for (int i = 0; i < 6; ++i) {
        sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])];
        norm2 += std::pow(sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 2);
      }
      bound *= std::sqrt(norm2);
    }
    CHECK(std::abs(oracle::determinant(sub)) > 1e-9 * bound);
    ++subsets;
  } while (sparsebench::core::next_combination(cols, 10));
  CHECK(subsets == 210);
}

TEST_CASE("rank condition check agrees with the determinant oracle on planted defects") {
  CounterRng rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto base = testing::gaussian_matrix(rng, 6, 10);
    sparsebench::core::RowMajorMatrix e = base.eigen();
    const bool plant = t % 2 == 0;
    if (plant) {
      // Column 9 becomes a combination of columns 2, 4 and 7.
      e.col(9) = 0.5 * e.col(2) - 1.5 * e.col(4) + e.col(7);
    }
    const DenseMatrix a(e);
    const auto witness = find_rank_deficient_subset(a, 2);
    CHECK(witness.has_value() == plant);
    if (witness) {
      CHECK(witness->size() == 4);
      CHECK(oracle::minor_rank(oracle::to_dense(sparsebench::core::submatrix_columns(a, *witness))) < 4);
    }
  }
}

TEST_CASE("rank condition guards and preconditions") {
  CHECK_THROWS_AS(check_lemma1_condition(DenseMatrix(2, 5), 2), std::invalid_argument);
  // C(60, 10) is far beyond the guard.
  CHECK_THROWS_AS(check_lemma1_condition(DenseMatrix(10, 60), 5), sparsebench::core::GuardExceeded);
  try {
    check_lemma1_condition(DenseMatrix(10, 60), 5);
  } catch (const sparsebench::core::GuardExceeded& e) {
    CHECK(e.count() == doctest::Approx(75394027566.0).epsilon(1e-9));
    CHECK(e.limit() == kRankCheckLimit);
  }
}

TEST_CASE("condition holding means l0 decoding returns every s-sparse signal") {
  CounterRng rng(44);
  int matrices = 0;
  for (int t = 0; t < 30; ++t) {
    const auto a = testing::gaussian_matrix(rng, 4, 8);
    if (!check_lemma1_condition(a, 1)) continue;
    ++matrices;
    for (int j = 0; j < 8; ++j) {
      RealVector x = RealVector::Zero(8);
      x[j] = rng.next_normal();
      const auto r = sparsebench::decoders::decode_l0(a, a.eigen() * x, 1);
      CHECK(r.converged);
      CHECK(linf_norm(r.x_hat - x) <= 1e-8);
    }
  }
  CHECK(matrices == 30);
}

TEST_CASE("dependent columns admit two distinct 1-sparse solutions") {
  // Column 2 is twice column 0, so 2 e_0 and e_2 give the same measurement.
  const auto a = DenseMatrix::from_rows({{1, 0, 2, 0}, {3, 1, 6, 0}, {-1, 0, -2, 1}});
  CHECK_FALSE(check_lemma1_condition(a, 1));
  const RealVector x1{{2.0, 0.0, 0.0, 0.0}};
  const RealVector x2{{0.0, 0.0, 1.0, 0.0}};
  const RealVector y = a.eigen() * x1;
  CHECK(sparsebench::core::residual_inf(a, x2, y) == 0.0);
  CHECK(linf_norm(x1 - x2) > 0.0);
  const auto r = sparsebench::decoders::decode_l0(a, y, 1);
  REQUIRE(r.converged);
  // The search returns the lexicographically first fit; the other signal is
  // therefore not recovered.
  CHECK(linf_norm(r.x_hat - x1) <= 1e-12);
  CHECK(linf_norm(r.x_hat - x2) > 0.5);
}
