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
#include "sparsebench/core.hpp"
#include "sparsebench/csv_io.hpp"
#include "test_helpers.hpp"

using sparsebench::bench::CounterRng;
using namespace sparsebench::core;

TEST_CASE("matvec examples") {
  CHECK((matvec(DenseMatrix::identity(2), RealVector{{3.0, -1.0}}) == RealVector{{3.0, -1.0}}));
  const auto a = DenseMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  CHECK((matvec(a, RealVector{{0.0, 0.0, 1.0}}) == RealVector{{1.0, 1.0}}));
  CHECK((matvec(DenseMatrix(3, 4), RealVector{{1.0, -2.0, 3.5, 7.0}}) == RealVector::Zero(3)));
  CHECK_THROWS_AS(matvec(a, RealVector::Zero(2)), std::invalid_argument);
}

TEST_CASE("matvec is linear") {
  CounterRng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::gaussian_matrix(rng, 7, 13);
    const RealVector x = testing::gaussian_vector(rng, 13);
    const RealVector z = testing::gaussian_vector(rng, 13);
    const double alpha = rng.next_normal();
    const double beta = rng.next_normal();
    const RealVector lhs = matvec(a, alpha * x + beta * z);
    const RealVector rhs = alpha * matvec(a, x) + beta * matvec(a, z);
    CHECK(linf_norm(lhs - rhs) <= 1e-12 * (1.0 + linf_norm(rhs)));
  }
}

TEST_CASE("DenseMatrix rejects bad construction") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {INFINITY}), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("IndexSet invariants") {
  CHECK_THROWS_AS(IndexSet({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet({-1}), std::invalid_argument);
  CHECK((IndexSet::from_unsorted({4, 1, 4, 0}) == IndexSet{0, 1, 4}));
  CHECK((IndexSet{1, 3}.complement(5) == IndexSet{0, 2, 4}));
  CHECK((IndexSet{}.complement(2) == IndexSet{0, 1}));
  CHECK((IndexSet{1, 3}.is_subset_of(IndexSet{0, 1, 3})));
  CHECK_FALSE((IndexSet{1, 2}.is_subset_of(IndexSet{0, 1, 3})));
  CHECK_THROWS_AS((IndexSet{0, 5}.check_bound(5)), std::out_of_range);
}

TEST_CASE("submatrix_columns examples") {
  const auto eye = DenseMatrix::identity(3);
  CHECK((submatrix_columns(eye, {0, 2}) == DenseMatrix::from_rows({{1, 0}, {0, 0}, {0, 1}})));
  CHECK(submatrix_columns(eye, IndexSet::all(3)) == eye);
  const auto empty = submatrix_columns(eye, IndexSet{});
  CHECK(empty.rows() == 3);
  CHECK(empty.cols() == 0);
  CHECK_THROWS_AS(submatrix_columns(eye, {3}), std::out_of_range);
}

TEST_CASE("submatrix over all columns is bitwise identity") {
  CounterRng rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto a = testing::gaussian_matrix(rng, 1 + t % 5, 1 + (3 * t) % 9);
    CHECK(submatrix_columns(a, IndexSet::all(a.cols())) == a);
  }
}

TEST_CASE("numerical_rank examples") {
  CHECK(numerical_rank(DenseMatrix::identity(4), 1e-10) == 4);
  CHECK((numerical_rank(DenseMatrix::from_rows({{1, 1}, {2, 2}}), 1e-10) == 1));
  CHECK(numerical_rank(DenseMatrix(3, 5)) == 0);
  CHECK(numerical_rank(DenseMatrix(3, 0)) == 0);
  CHECK_THROWS_AS(numerical_rank(DenseMatrix::identity(2), -1.0), std::invalid_argument);

  // Gaussian 8x16 has full row rank almost surely; the minor oracle confirms.
  CounterRng rng(13);
  const auto a = testing::gaussian_matrix(rng, 8, 16);
  CHECK(oracle::minor_rank(oracle::to_dense(a)) == 8);
  CHECK(numerical_rank(a, 1e-10) == 8);
}

TEST_CASE("numerical_rank agrees with the minor oracle and its transpose") {
  CounterRng rng(14);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index m = 2 + t % 4;
    const Eigen::Index n = 3 + (t * 7) % 5;
    const Eigen::Index r = 1 + t % std::min(m, n);
    // Product of m x r and r x n factors has rank r generically.
    const auto left = testing::gaussian_matrix(rng, m, r);
    const auto right = testing::gaussian_matrix(rng, r, n);
    const DenseMatrix a(RowMajorMatrix(left.eigen() * right.eigen()));
    const auto rank = numerical_rank(a);
    CHECK(rank == r);
    CHECK(rank == oracle::minor_rank(oracle::to_dense(a), 1e-7));
    CHECK(numerical_rank(a.transpose()) == rank);
  }
}

TEST_CASE("solve_least_squares examples") {
  const RealVector y{{1.5, -2.0, 0.25}};
  CHECK(linf_norm(solve_least_squares(DenseMatrix::identity(3), y) - y) <= 1e-15);

  const auto x = solve_least_squares(DenseMatrix::from_rows({{1}, {1}}), RealVector{{1.0, 3.0}});
  REQUIRE(x.size() == 1);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-14));

  // Minimum-norm solution of an underdetermined system.
  const auto a = DenseMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  const auto expected = oracle::min_norm_full_row_rank(oracle::to_dense(a), {1.0, 1.0});
  CHECK(expected[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(expected[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(expected[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const auto got = solve_least_squares(a, RealVector{{1.0, 1.0}});
  for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));

  CHECK_THROWS_AS(solve_least_squares(a, RealVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("least squares satisfies the normal equations") {
  CounterRng rng(15);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index m = 4 + t % 9;
    const Eigen::Index n = 1 + t % 4;
    const auto a = testing::gaussian_matrix(rng, m, n);
    const RealVector y = testing::gaussian_vector(rng, m);
    const RealVector x = solve_least_squares(a, y);
    const RealVector grad = a.eigen().transpose() * (a.eigen() * x - y);
    const RealVector aty = a.eigen().transpose() * y;
    CHECK(linf_norm(grad) <= 1e-8 * (1.0 + linf_norm(aty)));
  }
}

TEST_CASE("least squares picks the minimum-norm solution") {
  CounterRng rng(16);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index m = 2 + t % 4;
    const Eigen::Index n = m + 1 + t % 5;
    const auto a = testing::gaussian_matrix(rng, m, n);
    const RealVector y = testing::gaussian_vector(rng, m);
    const auto expected = oracle::min_norm_full_row_rank(oracle::to_dense(a), testing::to_std(y));
    const RealVector got = solve_least_squares(a, y);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(std::abs(got[i] - expected[static_cast<std::size_t>(i)]) <= 1e-9);
    }
  }
  // Rank deficient: duplicated column splits the weight evenly.
  const auto dup = DenseMatrix::from_rows({{1, 1}, {2, 2}});
  const RealVector x = solve_least_squares(dup, RealVector{{1.0, 2.0}});
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("csv round trip and errors") {
  testing::TempDir dir;
  const auto a = DenseMatrix::from_rows({{1.0 / 3.0, -2.5e-17}, {7.0, 0.1}});
  write_matrix_csv(dir / "a.csv", a);
  CHECK(read_matrix_csv(dir / "a.csv") == a);

  testing::write_text(dir / "row.csv", "1, 2.5 ,-3\n");
  CHECK((read_vector_csv(dir / "row.csv") == RealVector{{1.0, 2.5, -3.0}}));
  testing::write_text(dir / "col.csv", "1\n\n2\n3e-2\n");
  CHECK((read_vector_csv(dir / "col.csv") == RealVector{{1.0, 2.0, 0.03}}));

  testing::write_text(dir / "bad.csv", "1,2\n3,x\n");
  try {
    read_matrix_csv(dir / "bad.csv");
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(std::string(e.what()).find("bad.csv:2") != std::string::npos);
  }
  testing::write_text(dir / "ragged.csv", "1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(dir / "ragged.csv"), CsvError);
  testing::write_text(dir / "matrix.csv", "1,2\n3,4\n");
  CHECK_THROWS_AS(read_vector_csv(dir / "matrix.csv"), CsvError);
  try {
    read_matrix_csv(dir / "missing.csv");
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(std::string(e.what()).find("missing.csv") != std::string::npos);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
}
