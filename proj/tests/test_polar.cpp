#include <gtest/gtest.h>

#include <cmath>

#include "qball/error.hpp"
#include "qball/polar.hpp"

using namespace qball;

namespace {

struct Setup {
  std::shared_ptr<const DirectedGraph> graph;
  SpacePtr space;
  GeneratorFamily gens;
};

Setup make(int n, int cutoff) {
  auto g = std::make_shared<const DirectedGraph>(ball_graph(n));
  auto space = std::make_shared<const TruncatedPathSpace>(g, 0, cutoff);
  return {g, space, build_generators(space)};
}

double gap(const SparseOperator& a, const SparseOperator& b, int h) {
  return sparse::max_column_norm((a - b).matrix(), a.space()->interior(h));
}

int index(const Setup& s, const std::string& label) {
  for (int i = 0; i < s.space->dimension(); ++i)
    if (s.space->label(i) == label) return i;
  return -1;
}

}  // namespace

TEST(Corner, RequiresDiagonalZeroOneProjection) {
  const auto s = make(2, 2);
  EXPECT_NO_THROW(CornerContext(corner_projection(s.gens, 1)));
  EXPECT_THROW(CornerContext(Complex(2.0) * s.gens.P(0)), PreconditionError);
  EXPECT_THROW(CornerContext(aggregate_shift(s.gens, 1)), PreconditionError);
  const CornerContext ctx(s.gens.P(1));
  for (int i : ctx.selected()) EXPECT_EQ(s.space->path(i).source(), 1);
}

TEST(Modulus, DiscGeneratorAndRoutesAgree) {
  const double q = 0.5;
  const auto s = make(2, 6);
  const auto z1 = weighted_shift(s.gens, 1, QParam(q));
  const auto m = modulus(z1);
  EXPECT_NEAR(m.entry(index(s, "v0"), index(s, "v0")).real(), std::sqrt(1 - q), 1e-15);
  // sqrt(1 - q^2) evaluated independently
  EXPECT_NEAR(m.entry(index(s, "b^0 e"), index(s, "b^0 e")).real(), 0.8660254037844386, 1e-15);
  EXPECT_LT((modulus_eigen(z1) - modulus_diagonal(z1)).matrix().max_abs(), 1e-10);
}

TEST(Modulus, PartialIsometryGivesItsDomainProjection) {
  const auto s = make(3, 4);
  for (EdgeIndex e = 0; e < s.graph->num_edges(); ++e) {
    const auto& S = s.gens.edges[e];
    EXPECT_EQ((modulus(S) - S.adjoint() * S).matrix().max_abs(), 0.0);
  }
  for (int i = 0; i <= 3; ++i) {
    const auto P = corner_projection(s.gens, i);
    EXPECT_EQ(modulus(P).matrix(), P.matrix());
  }
}

TEST(Modulus, NonDiagonalGramUsesEigendecomposition) {
  const auto s = make(1, 3);
  // T = |v0><v0| + |v0><b^0 e| has T^*T with an off-diagonal block
  const int a = index(s, "v0"), b = index(s, "b^0 e");
  SparseOperator t(s.space, sparse::CscMatrix::from_triplets(s.space->dimension(), s.space->dimension(),
                                                             {{a, a, 1.0}, {a, b, 1.0}}));
  EXPECT_THROW(modulus_diagonal(t), PreconditionError);
  const auto m = modulus(t);
  EXPECT_LT((m * m - t.adjoint() * t).matrix().max_abs(), 1e-14);
  EXPECT_LT((m - m.adjoint()).matrix().max_abs(), 1e-15);
  // T^*T = [[1,1],[1,1]] has square root T^*T / sqrt(2)
  EXPECT_NEAR(m.entry(a, b).real(), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(CornerInverse, DiagonalInverseOfDiscModulus) {
  const double q = 0.3;
  const auto s = make(2, 6);
  const CornerContext ctx(corner_projection(s.gens, 1));
  const auto inv = corner_inverse(modulus(weighted_shift(s.gens, 1, QParam(q))), ctx);
  EXPECT_NEAR(inv.entry(index(s, "v0"), index(s, "v0")).real(), 1 / std::sqrt(1 - q), 1e-14);
  for (int m = 0; m < 6; ++m) {
    const int c = index(s, "b^" + std::to_string(m) + " e");
    EXPECT_NEAR(inv.entry(c, c).real(), 1 / std::sqrt(1 - std::pow(q, m + 2)), 1e-14);
  }
  const auto P = ctx.projection();
  EXPECT_EQ((P * inv * P - inv).matrix().nnz(), 0u);
  EXPECT_EQ(corner_inverse(P, ctx).matrix(), P.matrix());
}

TEST(CornerInverse, SingularInteriorIsReported) {
  const auto s = make(1, 3);
  const CornerContext ctx(SparseOperator::identity(s.space));
  try {
    corner_inverse(s.gens.P(1), ctx);
    FAIL() << "expected NotPolarDecomposable";
  } catch (const NotPolarDecomposable& e) {
    EXPECT_NE(std::string(e.what()).find("v0"), std::string::npos);
  }
  EXPECT_THROW(corner_inverse(aggregate_shift(s.gens, 1), CornerContext(s.gens.P(0))), PreconditionError);
}

TEST(Phase, RecoversTheShifts) {
  for (int n = 1; n <= 4; ++n)
    for (double q : {0.3, 0.5, 0.9}) {
      const auto s = make(n, 6);
      for (int i = 1; i <= n; ++i) {
        const CornerContext ctx(corner_projection(s.gens, i));
        const auto z = weighted_shift(s.gens, i, QParam(q));
        const auto u = phase_in_corner(z, ctx);
        EXPECT_LT(gap(u, aggregate_shift(s.gens, i), 1), 1e-12) << n << " " << i << " " << q;
        EXPECT_LT(gap(u * modulus(z), z, 1), 1e-12);
        EXPECT_LT(gap(u.adjoint() * u, ctx.projection(), 1), 1e-12);
      }
    }
}

TEST(Phase, DiscPhaseMapsVacuumToFirstPath) {
  const auto s = make(2, 5);
  const CornerContext ctx(corner_projection(s.gens, 1));
  const auto z1 = weighted_shift(s.gens, 1, QParam(0.5));
  const auto u = z1 * corner_inverse(modulus(z1), ctx);
  EXPECT_NEAR(u.entry(index(s, "b^0 e"), index(s, "v0")).real(), 1.0, 1e-15);
}

TEST(Phase, DiagonalPositiveGivesSupport) {
  const auto s = make(2, 3);
  const auto P = corner_projection(s.gens, 1);
  std::vector<Complex> diag(static_cast<std::size_t>(s.space->dimension()));
  for (int i = 0; i < s.space->dimension(); ++i)
    if (P.entry(i, i) == Complex(1.0)) diag[i] = 0.5 + i;
  SparseOperator d(s.space, sparse::CscMatrix::diagonal(diag));
  EXPECT_LT((phase_in_corner(d, CornerContext(P)) - P).matrix().max_abs(), 1e-14);
  EXPECT_THROW(phase_in_corner(s.gens.P(2), CornerContext(P)), PreconditionError);
}
