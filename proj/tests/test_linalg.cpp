#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "random_elements.hpp"
#include "whittaker/linalg.hpp"

using namespace whittaker;

namespace {

std::vector<std::vector<Rational>> random_matrix(std::mt19937_64& rng, int rows, int cols, int density_pct) {
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
  for (auto& r : m) {
    for (auto& x : r) {
      if (static_cast<int>(rng() % 100) < density_pct) x = testgen::small_rational(rng);
    }
  }
  return m;
}

}  // namespace

TEST(Nullspace, VermaStyleBidiagonal) {
  // Columns f^k v, k = 0..5; rows = coefficient of f^{k-1} v in e f^k v with λ = 2.
  const int n = 6;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
  for (int k = 1; k < n; ++k) m[k - 1][k] = oracle::verma_e_coefficient(2, k);
  const auto ker = linalg::nullspace_dense(m, n);
  ASSERT_EQ(ker.basis.size(), 2u);
  std::vector<Rational> v0(n, 0), v3(n, 0);
  v0[0] = 1;
  v3[3] = 1;
  EXPECT_EQ(ker.basis[0], v0);
  EXPECT_EQ(ker.basis[1], v3);
}

TEST(Nullspace, MatchesDenseGaussJordan) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 9);
    const int cols = 1 + static_cast<int>(rng() % 9);
    auto m = random_matrix(rng, rows, cols, 45);
    // Force some rank deficiency.
    if (rows > 2 && trial % 3 == 0) {
      for (int j = 0; j < cols; ++j) m[rows - 1][j] = m[0][j] * Rational(3, 2) - m[1][j];
    }
    const auto got = linalg::nullspace_dense(m, cols);
    const auto expected = oracle::dense_kernel(m, cols);
    EXPECT_EQ(got.rank, expected.rank);
    EXPECT_EQ(got.basis, expected.basis) << "trial " << trial;
  }
}

TEST(Nullspace, IndependentOfRowOrder) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, 6, 7, 40);
    const auto a = linalg::nullspace_dense(m, 7);
    std::shuffle(m.begin(), m.end(), rng);
    const auto b = linalg::nullspace_dense(m, 7);
    EXPECT_EQ(a.basis, b.basis);
  }
}

TEST(Nullspace, KernelVectorsAnnihilate) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, 5, 9, 35);
    const auto ker = linalg::nullspace_dense(m, 9);
    EXPECT_EQ(ker.rank + static_cast<int>(ker.basis.size()), 9);
    for (const auto& v : ker.basis) {
      for (const auto& row : m) {
        Rational s = 0;
        for (int j = 0; j < 9; ++j) s += row[j] * v[j];
        EXPECT_EQ(s, 0);
      }
    }
  }
}

TEST(Nullspace, EmptyAndZeroRows) {
  const auto none = linalg::nullspace(std::vector<linalg::SparseRow>{}, 3);
  EXPECT_EQ(none.basis.size(), 3u);
  EXPECT_EQ(none.rank, 0);
  const auto zero = linalg::nullspace(std::vector<linalg::SparseRow>{{}, {}}, 2);
  EXPECT_EQ(zero.basis.size(), 2u);
  const auto full = linalg::nullspace(std::vector<linalg::SparseRow>{{{0, Rational(1, 3)}}}, 1);
  EXPECT_TRUE(full.basis.empty());
}

TEST(Nullspace, Primitive) {
  EXPECT_EQ(linalg::primitive({Rational(1, 2), Rational(1)}), (std::vector<Rational>{1, 2}));
  EXPECT_EQ(linalg::primitive({Rational(0), Rational(-3, 4), Rational(3, 2)}), (std::vector<Rational>{0, 1, -2}));
  EXPECT_EQ(linalg::primitive({Rational(0)}), (std::vector<Rational>{0}));
}
