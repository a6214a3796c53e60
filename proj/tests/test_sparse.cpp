#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qball/error.hpp"
#include "qball/sparse.hpp"

using namespace qball::sparse;

namespace {

CscMatrix random_matrix(int rows, int cols, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0), v(-1.0, 1.0);
  std::vector<Triplet> t;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (u(rng) < density) t.push_back({r, c, Complex(v(rng), v(rng))});
  return CscMatrix::from_triplets(rows, cols, std::move(t));
}

oracle::Dense dense(const CscMatrix& m) {
  oracle::Dense d = oracle::zeros(static_cast<std::size_t>(m.rows));
  for (const auto& t : m.triplets()) d[t.row][t.col] = t.value;
  return d;
}

}  // namespace

TEST(Csc, FromTripletsSumsDuplicatesAndDropsZeros) {
  const auto m = CscMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 1.0}, {1, 0, -1.0}});
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.at(0, 1), Complex(3.0));
  EXPECT_EQ(m.at(1, 0), Complex(0.0));
  EXPECT_THROW(CscMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), qball::PreconditionError);
}

TEST(Csc, IdentityDiagonalAndAdjoint) {
  const auto i = CscMatrix::identity(4);
  EXPECT_TRUE(i.is_diagonal());
  EXPECT_EQ(i.nnz(), 4u);
  const auto m = CscMatrix::from_triplets(3, 3, {{0, 2, Complex(1, 2)}});
  EXPECT_FALSE(m.is_diagonal());
  const auto a = adjoint(m);
  EXPECT_EQ(a.at(2, 0), Complex(1, -2));
  EXPECT_EQ(adjoint(a), m);
  EXPECT_DOUBLE_EQ(m.max_abs(), std::sqrt(5.0));
}

TEST(Csc, AddScalePrune) {
  std::mt19937_64 rng(1);
  const auto a = random_matrix(7, 7, 0.3, rng), b = random_matrix(7, 7, 0.3, rng);
  EXPECT_LT(oracle::max_abs_diff(dense(add(a, b, 2.0, Complex(0, 1))),
                                 oracle::add(oracle::add(oracle::zeros(7), dense(a), 2.0), dense(b), Complex(0, 1))),
            1e-15);
  EXPECT_EQ(add(a, a, 1.0, -1.0).nnz(), 0u);
  EXPECT_EQ(scale(a, 0.0).nnz(), 0u);
  const auto p = prune(CscMatrix::from_triplets(2, 2, {{0, 0, 1e-20}, {1, 1, 1.0}}), 1e-15);
  EXPECT_EQ(p.nnz(), 1u);
}

TEST(Kernels, SerialMultiplyMatchesDenseOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(12, 12, 0.2, rng), b = random_matrix(12, 12, 0.2, rng);
    EXPECT_LT(oracle::max_abs_diff(dense(serial::multiply(a, b)), oracle::multiply(dense(a), dense(b))), 1e-14);
  }
}

TEST(Kernels, ParallelMultiplyIsBitwiseEqualToSerial) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(60, 60, 0.05, rng), b = random_matrix(60, 60, 0.05, rng);
    EXPECT_EQ(parallel::multiply(a, b), serial::multiply(a, b));
  }
}

TEST(Kernels, ColumnNorms) {
  std::mt19937_64 rng(4);
  const auto a = random_matrix(30, 30, 0.2, rng);
  std::vector<int> cols{0, 3, 29, 7};
  const auto s = serial::column_norms(a, cols), p = parallel::column_norms(a, cols);
  EXPECT_EQ(s, p);
  const auto d = dense(a);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    double sum = 0.0;
    for (int r = 0; r < 30; ++r) sum += std::norm(d[r][cols[k]]);
    EXPECT_NEAR(s[k], std::sqrt(sum), 1e-14);
  }
  EXPECT_EQ(max_column_norm(a, std::vector<int>{}), 0.0);
  EXPECT_THROW(max_column_norm(a, std::vector<int>{30}), qball::PreconditionError);
}

TEST(Kernels, DimensionMismatchThrows) {
  EXPECT_THROW(serial::multiply(CscMatrix::zero(2, 3), CscMatrix::zero(2, 3)), qball::PreconditionError);
  EXPECT_THROW(parallel::multiply(CscMatrix::zero(2, 3), CscMatrix::zero(2, 3)), qball::PreconditionError);
  EXPECT_THROW(add(CscMatrix::zero(2, 2), CscMatrix::zero(3, 3)), qball::PreconditionError);
}
