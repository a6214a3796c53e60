#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qball/error.hpp"
#include "qball/representation.hpp"

using namespace qball;

namespace {

struct Setup {
  std::shared_ptr<const DirectedGraph> graph;
  SpacePtr space;
  GeneratorFamily gens;
};

Setup make(int n, int cutoff, int end = 0, double theta = 0.0) {
  auto g = std::make_shared<const DirectedGraph>(ball_graph(n));
  auto space = std::make_shared<const TruncatedPathSpace>(g, end, cutoff);
  return {g, space, build_generators(space, theta)};
}

int index(const Setup& s, const std::string& label) {
  for (int i = 0; i < s.space->dimension(); ++i)
    if (s.space->label(i) == label) return i;
  ADD_FAILURE() << "no basis vector " << label;
  return -1;
}

oracle::Dense dense(const SparseOperator& op) {
  oracle::Dense d = oracle::zeros(static_cast<std::size_t>(op.dimension()));
  for (const auto& t : op.matrix().triplets()) d[t.row][t.col] = t.value;
  return d;
}

std::vector<oracle::EdgeSeq> oracle_basis(const Setup& s) {
  std::vector<oracle::EdgeSeq> out;
  for (const auto& p : s.space->basis()) {
    oracle::EdgeSeq seq;
    for (EdgeIndex e : to_path(*s.graph, p).edges) seq.emplace_back(s.graph->edge(e).src, s.graph->edge(e).dst);
    out.push_back(seq);
  }
  return out;
}

double interior_gap(const SparseOperator& a, const SparseOperator& b, int h) {
  return sparse::max_column_norm((a - b).matrix(), a.space()->interior(h));
}

}  // namespace

TEST(QParam, RejectsOutOfRange) {
  EXPECT_THROW(QParam(0.0), PreconditionError);
  EXPECT_THROW(QParam(1.0), PreconditionError);
  EXPECT_THROW(QParam(-0.2), PreconditionError);
  EXPECT_THROW(QParam(1.5), PreconditionError);
  EXPECT_NO_THROW(QParam(0.5));
}

TEST(Lambda, ValuesAndTelescoping) {
  for (double q : {0.3, 0.5, 0.9}) {
    const QParam qp(q);
    EXPECT_NEAR(lambda_coeff(0, qp), std::sqrt(1.0 - q), 1e-15);
    double sum = 0.0;
    for (int i = 0; i < 40; ++i) {
      EXPECT_GT(lambda_coeff(i, qp), 0.0);
      EXPECT_NEAR(lambda_coeff(i, qp), oracle::lambda_naive(i, q), 1e-14);
      sum += lambda_coeff(i, qp);
      EXPECT_NEAR(sum, std::sqrt(1.0 - std::pow(q, i + 1)), 1e-14);
    }
  }
  // sqrt(0.75) - sqrt(0.5)
  EXPECT_NEAR(lambda_coeff(1, QParam(0.5)), 0.158918622597891, 1e-12);
  EXPECT_THROW(lambda_coeff(-1, QParam(0.5)), PreconditionError);
}

TEST(Space, DimensionsAndInterior) {
  const auto s = make(2, 2);
  EXPECT_EQ(s.space->dimension(), 16);
  EXPECT_EQ(make(4, 6).space->dimension(), 4096);
  EXPECT_EQ(s.space->interior(0).size(), 16u);
  EXPECT_EQ(s.space->interior(1).size(), 9u);  // 1 + 2 + 2 + 4
  EXPECT_EQ(s.space->interior(2).size(), 4u);
  EXPECT_THROW(s.space->interior(3), HeadroomError);
  for (int i : s.space->interior(1)) EXPECT_LE(s.space->path(i).max_loops(), 1);
  EXPECT_THROW(TruncatedPathSpace(std::make_shared<const DirectedGraph>(point_graph()), 0, 2), PreconditionError);
}

TEST(Generators, MatchDenseOracle) {
  for (int n = 1; n <= 3; ++n)
    for (int end = 0; end <= n; ++end) {
      const double theta = end == 0 ? 0.0 : 0.9;
      const auto s = make(n, 3, end, theta);
      const auto basis = oracle_basis(s);
      for (EdgeIndex e = 0; e < s.graph->num_edges(); ++e) {
        const auto& ed = s.graph->edge(e);
        EXPECT_LT(oracle::max_abs_diff(dense(s.gens.edges[e]),
                                       oracle::prepend_operator(basis, {ed.src, ed.dst}, end, theta)),
                  1e-15)
            << "n=" << n << " end=" << end << " edge " << ed.id;
      }
      for (VertexIndex v = 0; v <= n; ++v)
        for (int c = 0; c < s.space->dimension(); ++c) {
          const int src = basis[c].empty() ? end : basis[c].front().first;
          EXPECT_EQ(s.gens.P(v).entry(c, c), Complex(src == v ? 1.0 : 0.0));
        }
    }
}

TEST(Generators, FourBallExamples) {
  const auto s = make(2, 4);
  const auto& g = *s.graph;
  const auto& Se = s.gens.edges[*g.find_edge("e")];
  const auto& Sa = s.gens.edges[*g.find_edge("a")];
  EXPECT_EQ(Se.entry(index(s, "b^0 e"), index(s, "v0")), Complex(1.0));
  for (int m = 0; m <= 4; ++m) {
    const int col = index(s, "b^" + std::to_string(m) + " e");
    for (int r = 0; r < s.space->dimension(); ++r) EXPECT_EQ(Sa.entry(r, col), Complex(0.0));
  }
  EXPECT_EQ(s.gens.P(0).entry(index(s, "v0"), index(s, "v0")), Complex(1.0));
  EXPECT_EQ(s.gens.P(0).entry(index(s, "b^0 e"), index(s, "b^0 e")), Complex(0.0));
}

TEST(Generators, PartialIsometriesOnInterior) {
  const auto s = make(3, 4);
  for (EdgeIndex e = 0; e < s.graph->num_edges(); ++e) {
    const auto& S = s.gens.edges[e];
    EXPECT_EQ(interior_gap(S.adjoint() * S, s.gens.P(s.graph->edge(e).dst), 1), 0.0);
  }
}

TEST(Shifts, AggregateShiftsAndTheirDomains) {
  const auto s = make(2, 5);
  const auto& g = *s.graph;
  auto E = [&](const char* l) { return s.gens.edges[*g.find_edge(l)]; };
  EXPECT_EQ((aggregate_shift(s.gens, 1) - (E("b") + E("e"))).matrix().nnz(), 0u);
  EXPECT_EQ((aggregate_shift(s.gens, 2) - (E("a") + E("c") + E("d"))).matrix().nnz(), 0u);
  EXPECT_THROW(aggregate_shift(s.gens, 0), PreconditionError);
  EXPECT_THROW(aggregate_shift(s.gens, 3), PreconditionError);
  for (int n = 1; n <= 4; ++n) {
    const auto t = make(n, 4);
    const auto Sn = aggregate_shift(t.gens, n);
    EXPECT_EQ(interior_gap(Sn.adjoint() * Sn, SparseOperator::identity(t.space), 1), 0.0);
    for (int i = 1; i <= n; ++i) {
      const auto Si = aggregate_shift(t.gens, i);
      EXPECT_EQ(interior_gap(Si.adjoint() * Si, corner_projection(t.gens, i), 1), 0.0);
    }
  }
}

TEST(Shifts, DiscShiftIsTheUnilateralShift) {
  const auto s = make(1, 6);
  const auto S = aggregate_shift(s.gens, 1);
  // basis order is zeta_0 = v0, zeta_{m+1} = b^m e
  for (int i = 0; i + 1 < s.space->dimension(); ++i)
    for (int r = 0; r < s.space->dimension(); ++r) EXPECT_EQ(S.entry(r, i), Complex(r == i + 1 ? 1.0 : 0.0));
}

TEST(WeightedShift, DiscRepresentation) {
  for (double q : {0.3, 0.5, 0.9}) {
    const auto s = make(1, 6);
    const auto z = weighted_shift(s.gens, 1, QParam(q));
    for (int i = 0; i + 1 < s.space->dimension(); ++i)
      for (int r = 0; r < s.space->dimension(); ++r)
        EXPECT_NEAR(std::abs(z.entry(r, i) - (r == i + 1 ? std::sqrt(1.0 - std::pow(q, i + 1)) : 0.0)), 0.0, 1e-15);
  }
}

TEST(WeightedShift, FourBallActions) {
  const double q = 0.5;
  const auto s = make(2, 5);
  const auto z1 = weighted_shift(s.gens, 1, QParam(q));
  const auto z2 = weighted_shift(s.gens, 2, QParam(q));
  EXPECT_NEAR(z1.entry(index(s, "b^0 e"), index(s, "v0")).real(), std::sqrt(1 - q), 1e-15);
  for (int m = 0; m < 5; ++m)
    EXPECT_NEAR(z2.entry(index(s, "a^" + std::to_string(m + 1) + " d"), index(s, "a^" + std::to_string(m) + " d")).real(),
                std::sqrt(1 - std::pow(q, m + 2)), 1e-15);
  // sqrt(1 - 0.25) computed independently
  EXPECT_NEAR(z2.entry(index(s, "a^1 d"), index(s, "a^0 d")).real(), 0.8660254037844386, 1e-15);
}

TEST(WeightedShift, SeriesMatchesDenseLambdaSum) {
  const double q = 0.3;
  const auto s = make(2, 3);
  const auto basis = oracle_basis(s);
  for (int i = 1; i <= 2; ++i) {
    oracle::Dense S = oracle::zeros(basis.size());
    for (int j = 0; j <= i; ++j) S = oracle::add(S, oracle::prepend_operator(basis, {i, j}, 0));
    const auto St = oracle::adjoint(S);
    oracle::Dense z = oracle::zeros(basis.size()), up = S, down = oracle::zeros(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) down[k][k] = 1.0;
    for (int k = 0; k <= 3 + 1; ++k) {
      z = oracle::add(z, oracle::multiply(up, down), oracle::lambda_naive(k, q));
      up = oracle::multiply(S, up);
      down = oracle::multiply(St, down);
    }
    EXPECT_LT(oracle::max_abs_diff(dense(weighted_shift(s.gens, i, QParam(q))), z), 1e-14);
  }
}

TEST(WeightedShift, SupportedOnTheCornerAndAdjointFormula) {
  const double q = 0.5;
  const auto s = make(3, 5);
  for (int i = 1; i <= 3; ++i) {
    const auto z = weighted_shift(s.gens, i, QParam(q));
    const auto P = corner_projection(s.gens, i);
    EXPECT_EQ((P * z * P - z).matrix().nnz(), 0u);
    // z_i^* removes a loop e_ii with weight sqrt(1 - q^{m_i+1}), or the edge
    // e_ij with weight sqrt(1 - q) when m_i = 0
    const auto zt = z.adjoint();
    for (int c : s.space->interior(1)) {
      const auto& p = s.space->path(c);
      if (p.steps.empty() || p.steps.front().vertex != i) {
        for (int r = 0; r < s.space->dimension(); ++r) EXPECT_EQ(zt.entry(r, c), Complex(0.0));
        continue;
      }
      LoopEncodedPath image = p;
      double w;
      if (p.steps.front().loops > 0) {
        --image.steps.front().loops;
        w = std::sqrt(1 - std::pow(q, p.steps.front().loops + 1));
      } else {
        image.steps.erase(image.steps.begin());
        w = std::sqrt(1 - q);
      }
      EXPECT_NEAR(zt.entry(*s.space->index_of(image), c).real(), w, 1e-15);
    }
  }
}

TEST(Irreps, Catalogue) {
  EXPECT_EQ(list_irreps(1).size(), 2u);
  EXPECT_EQ(list_irreps(2).size(), 3u);
  EXPECT_EQ(list_irreps(4).size(), 5u);
  int circles = 0;
  for (const auto& f : list_irreps(4)) circles += f.circle;
  EXPECT_EQ(circles, 4);
  // cross-check against the ideal filtration: one family per proper quotient
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(list_irreps(n).size(), hereditary_saturated_sets(ball_graph(n)).size() - 1);
  EXPECT_THROW(list_irreps(0), PreconditionError);
  EXPECT_EQ(sample_irreps(3, {0.0, 1.0}).size(), 1u + 2 * 2 + 2);
}

TEST(Irreps, PathRepresentationOfDisc) {
  const auto rep = build_irrep(PiRep{}, 1, QParam(0.5), 6);
  const auto s = make(1, 6);
  EXPECT_EQ((rep.X(1) - SparseOperator(rep.space(), weighted_shift(s.gens, 1, QParam(0.5)).matrix())).matrix().nnz(),
            0u);
}

TEST(Irreps, EpsilonOnFourBall) {
  const double q = 0.5, theta = 2.0;
  const auto rep = build_irrep(EpsilonRep{1, theta}, 2, QParam(q), 5);
  const auto& sp = *rep.space();
  auto at = [&](const std::string& l) {
    for (int i = 0; i < sp.dimension(); ++i)
      if (sp.label(i) == l) return i;
    return -1;
  };
  EXPECT_EQ(sp.dimension(), 1 + 6);  // v1 and a^m c
  EXPECT_NEAR(std::abs(rep.X(1).entry(at("v1"), at("v1")) - std::polar(1.0, theta)), 0.0, 1e-15);
  EXPECT_NEAR(rep.X(2).entry(at("a^0 c"), at("v1")).real(), std::sqrt(1 - q), 1e-15);
  for (int m = 0; m < 5; ++m)
    EXPECT_NEAR(rep.X(2).entry(at("a^" + std::to_string(m + 1) + " c"), at("a^" + std::to_string(m) + " c")).real(),
                std::sqrt(1 - std::pow(q, m + 2)), 1e-15);
}

TEST(Irreps, EpsilonMatchesShiftedPathRepresentation) {
  // epsilon_{k,theta}(x_i) for i > k against pi of E_{n-k} under v'_i = v_{i-k}
  const double q = 0.3;
  const int n = 4, cutoff = 3;
  for (int k = 1; k < n; ++k) {
    const auto eps = build_irrep(EpsilonRep{k, 0.4}, n, QParam(q), cutoff);
    const auto pi = build_irrep(PiRep{}, n - k, QParam(q), cutoff);
    ASSERT_EQ(eps.space()->dimension(), pi.space()->dimension());
    for (int c = 0; c < eps.space()->dimension(); ++c) {
      // relabelled basis vectors line up index by index
      const auto& a = eps.space()->path(c);
      const auto& b = pi.space()->path(c);
      ASSERT_EQ(a.steps.size(), b.steps.size());
      for (std::size_t t = 0; t < a.steps.size(); ++t) {
        EXPECT_EQ(a.steps[t].vertex - k, b.steps[t].vertex);
        EXPECT_EQ(a.steps[t].loops, b.steps[t].loops);
      }
    }
    for (int i = k + 1; i <= n; ++i) EXPECT_EQ(eps.X(i).matrix(), pi.X(i - k).matrix());
    for (int i = 1; i < k; ++i) EXPECT_EQ(eps.X(i).matrix().nnz(), 0u);
  }
}

TEST(Irreps, SigmaIsOneDimensional) {
  const double theta = -1.0;
  for (int n = 1; n <= 3; ++n) {
    const auto rep = build_irrep(SigmaRep{theta}, n, QParam(0.5), 4);
    ASSERT_EQ(rep.space()->dimension(), 1);
    const Complex t = rep.X(n).entry(0, 0);
    EXPECT_NEAR(std::abs(t - std::polar(1.0, theta)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(std::conj(t) * t - 0.5 * t * std::conj(t) - 0.5), 0.0, 1e-15);
    for (int i = 1; i < n; ++i) EXPECT_EQ(rep.X(i).entry(0, 0), Complex(0.0));
  }
}

TEST(Irreps, Validation) {
  EXPECT_THROW(build_irrep(EpsilonRep{0, 0.0}, 3, QParam(0.5), 3), PreconditionError);
  EXPECT_THROW(build_irrep(EpsilonRep{3, 0.0}, 3, QParam(0.5), 3), PreconditionError);
  EXPECT_THROW(build_irrep(EpsilonRep{1, 0.0}, 1, QParam(0.5), 3), PreconditionError);
  EXPECT_EQ(to_string(RepSpec{PiRep{}}), "pi");
}

TEST(EvaluateWord, ProjectionsUnitAndMatrixUnits) {
  const auto s = make(2, 3);
  for (VertexIndex v = 0; v <= 2; ++v)
    EXPECT_EQ(evaluate_word(WordExpr::projection(s.graph, v), s.gens).matrix(), s.gens.P(v).matrix());
  EXPECT_EQ(evaluate_word(WordExpr::unit(s.graph), s.gens).matrix(), sparse::CscMatrix::identity(25));
  const auto u = evaluate_word(parse_word_expr(s.graph, "S[b e]S[e]*"), s.gens);
  EXPECT_EQ(u.matrix().nnz(), 1u);
  EXPECT_EQ(u.entry(index(s, "b^1 e"), index(s, "b^0 e")), Complex(1.0));
  auto other = std::make_shared<const DirectedGraph>(ball_graph(3));
  EXPECT_THROW(evaluate_word(WordExpr::unit(other), s.gens), PreconditionError);
}

TEST(Operators, CooExportAndDeterminism) {
  const auto s = make(1, 2);
  const auto z = weighted_shift(s.gens, 1, QParam(0.5));
  const std::string coo = z.to_coo();
  EXPECT_EQ(coo, weighted_shift(make(1, 2).gens, 1, QParam(0.5)).to_coo());
  EXPECT_EQ(coo.substr(0, 4), "1 0 ");
  EXPECT_EQ(std::count(coo.begin(), coo.end(), '\n'), 3);
  EXPECT_THROW(s.gens.P(0) + make(1, 2).gens.P(0), PreconditionError);
}
