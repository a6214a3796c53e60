#include "qball/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qball/error.hpp"

namespace qball {

namespace {

std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string idx(int i) { return std::to_string(i); }

double projection_residual(const SparseOperator& d, int headroom) {
  return std::max(interior_residual(d * d - d, headroom), interior_residual(d.adjoint() - d, headroom));
}

}  // namespace

// ---- suite bookkeeping ----------------------------------------------------

bool CheckSuite::all_pass() const {
  return std::all_of(reports_.begin(), reports_.end(), [](const RelationReport& r) { return r.pass; });
}

void CheckSuite::add(RelationReport r) {
  for (const auto& existing : reports_)
    if (existing.id == r.id) throw PreconditionError("duplicate check id " + r.id);
  reports_.push_back(std::move(r));
}

void CheckSuite::add_all(std::vector<RelationReport> rs, const std::string& prefix) {
  for (auto& r : rs) {
    if (!prefix.empty()) r.id = prefix + r.id;
    add(std::move(r));
  }
}

double interior_residual(const SparseOperator& d, int headroom) {
  const auto cols = d.space()->interior(headroom);
  return sparse::max_column_norm(d.matrix(), cols);
}

double strict_projection_residual(const SparseOperator& d, int headroom) {
  double trace = 0.0;
  for (int c : d.space()->interior(headroom)) trace += d.entry(c, c).real();
  return std::max(projection_residual(d, headroom), std::max(0.0, 1.0 - trace));
}

RelationReport make_report(std::string id, int headroom, double residual, double tol, CheckContext ctx) {
  RelationReport r;
  r.id = std::move(id);
  r.headroom = headroom;
  r.residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  r.context = std::move(ctx);
  return r;
}

RelationReport check_identity(std::string id, int headroom, const SparseOperator& lhs, const SparseOperator& rhs,
                              double tol, CheckContext ctx) {
  return make_report(std::move(id), headroom, interior_residual(lhs - rhs, headroom), tol, std::move(ctx));
}

CheckContext context_of(const Irrep& rep, int cutoff) { return {rep.n, rep.q, cutoff, to_string(rep.spec)}; }

std::vector<SparseOperator> phases(const Irrep& rep) {
  std::vector<SparseOperator> out;
  for (int i = 1; i <= rep.n; ++i)
    out.push_back(phase_in_corner(rep.X(i), CornerContext(corner_projection(rep.gens, i))));
  return out;
}

// ---- Cuntz-Krieger --------------------------------------------------------

std::vector<RelationReport> check_cuntz_krieger(const GeneratorFamily& gens, double tol, CheckContext ctx) {
  const auto& g = gens.graph();
  std::vector<RelationReport> out;
  auto zero = SparseOperator::zero(gens.space);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const auto& p = gens.P(v);
    out.push_back(make_report("G1.projection[" + g.vertex_id(v) + "]", 0, projection_residual(p, 0), tol, ctx));
    for (VertexIndex w = v + 1; w < g.num_vertices(); ++w)
      out.push_back(check_identity("G1[" + g.vertex_id(v) + "," + g.vertex_id(w) + "]", 0, p * gens.P(w), zero,
                                   tol, ctx));
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto& s = gens.edges[e];
    out.push_back(check_identity("G2[" + g.edge_label(e) + "]", 1, s.adjoint() * s, gens.P(g.edge(e).dst), tol, ctx));
  }
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (g.is_sink(v)) continue;
    SparseOperator rhs = zero;
    for (EdgeIndex e : g.out_edges(v)) rhs = rhs + gens.edges[e] * gens.edges[e].adjoint();
    out.push_back(check_identity("G3[" + g.vertex_id(v) + "]", 1, gens.P(v), rhs, tol, ctx));
  }
  return out;
}

// ---- representation formulas ----------------------------------------------

std::vector<RelationReport> check_shift_formulas(const Irrep& rep, double tol) {
  const auto& space = rep.space();
  const auto ctx = context_of(rep, space->cutoff());
  const double q = rep.q;
  std::vector<RelationReport> out;
  for (int i = space->end_vertex() + 1; i <= rep.n; ++i) {
    std::vector<sparse::Triplet> trips;
    for (int col = 0; col < space->dimension(); ++col) {
      const auto& alpha = space->path(col);
      const int j = alpha.source();
      LoopEncodedPath image = alpha;
      double weight = 0.0;
      if (j < i) {
        image.steps.insert(image.steps.begin(), LoopStep{i, 0});
        weight = std::sqrt(1.0 - q);
      } else if (j == i) {
        const int m = image.steps.front().loops++;
        weight = std::sqrt(1.0 - std::pow(q, m + 2));
      } else {
        continue;
      }
      if (auto row = space->index_of(image)) trips.push_back({*row, col, weight});
    }
    SparseOperator closed(space, sparse::CscMatrix::from_triplets(space->dimension(), space->dimension(), trips));
    out.push_back(check_identity("formula.x" + idx(i), 1, rep.X(i), closed, tol, ctx));
  }
  return out;
}

// ---- ball relations -------------------------------------------------------

std::vector<RelationReport> check_ball_relations(const Irrep& rep, double tol) {
  const auto ctx = context_of(rep, rep.space()->cutoff());
  const auto zero = SparseOperator::zero(rep.space());
  const int n = rep.n;
  std::vector<RelationReport> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back(check_identity("ball.x" + idx(i) + "x" + idx(j) + "=0", 2, rep.X(i) * rep.X(j), zero, tol, ctx));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        out.push_back(
            check_identity("ball.x" + idx(i) + "*x" + idx(j) + "=0", 2, rep.X(i).adjoint() * rep.X(j), zero, tol, ctx));
  for (int i = 1; i <= n; ++i) {
    const auto& x = rep.X(i);
    const SparseOperator lhs = x.adjoint() * x - Complex(rep.q) * (x * x.adjoint());
    out.push_back(check_identity("ball.qrel[x" + idx(i) + "]", 2, lhs,
                                 Complex(1.0 - rep.q) * corner_projection(rep.gens, i), tol, ctx));
  }
  return out;
}

// ---- polar ----------------------------------------------------------------

std::vector<RelationReport> check_polar(const Irrep& rep, const std::vector<SparseOperator>& alpha, double tol) {
  const auto ctx = context_of(rep, rep.space()->cutoff());
  constexpr double kRouteTol = 1e-10;
  std::vector<RelationReport> out;
  for (int i = 1; i <= rep.n; ++i) {
    const auto& x = rep.X(i);
    const auto& u = alpha[i - 1];
    const std::string name = "[x" + idx(i) + "]";
    const SparseOperator mod = modulus(x);
    out.push_back(check_identity("polar.reconstruct" + name, 1, u * mod, x, tol, ctx));
    out.push_back(check_identity("polar.domain" + name, 1, u.adjoint() * u, corner_projection(rep.gens, i), tol, ctx));
    const double gap =
        sparse::add(modulus_diagonal(x).matrix(), modulus_eigen(x).matrix(), 1.0, -1.0).max_abs();
    out.push_back(make_report("polar.modulus_routes" + name, 0, gap, kRouteTol, ctx));
  }
  return out;
}

// ---- projection lemma -----------------------------------------------------

std::vector<RelationReport> check_projection_lemma(const Irrep& rep, const std::vector<SparseOperator>& alpha,
                                                   double tol, bool strict) {
  const auto& space = rep.space();
  const auto ctx = context_of(rep, space->cutoff());
  const auto one = SparseOperator::identity(space);
  const auto zero = SparseOperator::zero(space);
  const int n = rep.n;
  constexpr int h = 2;

  // Q[i] and R[i] for i = 1..n (slot 0 unused)
  std::vector<SparseOperator> Q{zero}, R{zero};
  for (int i = 1; i <= n; ++i) {
    Q.push_back(alpha[i - 1].adjoint() * alpha[i - 1]);
    R.push_back(alpha[i - 1] * alpha[i - 1].adjoint());
  }

  std::vector<RelationReport> out;
  out.push_back(check_identity("lemma.Q" + idx(n) + "=1", h, Q[n], one, tol, ctx));
  for (int i = 1; i <= n; ++i)
    out.push_back(check_identity("lemma.Q" + idx(i) + "=P0+..+P" + idx(i), h, Q[i], corner_projection(rep.gens, i),
                                 tol, ctx));
  for (int i = 2; i <= n; ++i) {
    out.push_back(check_identity("lemma.Q" + idx(i - 1) + "=Q" + idx(i) + "-R" + idx(i), h, Q[i - 1], Q[i] - R[i],
                                 tol, ctx));
    SparseOperator tail = zero;
    for (int j = i; j <= n; ++j) tail = tail + R[j];
    out.push_back(check_identity("lemma.Q" + idx(i - 1) + "=1-(R" + idx(i) + "+..+R" + idx(n) + ")", h, Q[i - 1],
                                 one - tail, tol, ctx));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const SparseOperator d = Q[j] - R[i];
      if (strict)
        out.push_back(make_report("lemma.R" + idx(i) + "<Q" + idx(j), h, strict_projection_residual(d, h), tol, ctx));
      else
        out.push_back(make_report("lemma.R" + idx(i) + "<=Q" + idx(j), h, projection_residual(d, h), tol, ctx));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back(check_identity("lemma.R" + idx(i) + "R" + idx(j) + "=0", h, R[i] * R[j], zero, tol, ctx));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back(check_identity("lemma.Q" + idx(i) + "R" + idx(j) + "=0", h, Q[i] * R[j], zero, tol, ctx));
  return out;
}

// ---- universal relations --------------------------------------------------

std::vector<RelationReport> check_universal_relations(const Irrep& rep, double tol, bool strict) {
  const auto& space = rep.space();
  const auto ctx = context_of(rep, space->cutoff());
  const auto one = SparseOperator::identity(space);
  const auto zero = SparseOperator::zero(space);
  const int n = rep.n;
  std::vector<SparseOperator> T;
  for (int i = 1; i <= n; ++i) T.push_back(aggregate_shift(rep.gens, i));
  auto t = [&](int i) -> const SparseOperator& { return T[i - 1]; };
  const std::string tn = "T" + idx(n);

  std::vector<RelationReport> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back(check_identity("T.T" + idx(i) + "T" + idx(j) + "=0", 2, t(i) * t(j), zero, tol, ctx));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        out.push_back(check_identity("T.T" + idx(i) + "*T" + idx(j) + "=0", 2, t(i).adjoint() * t(j), zero, tol, ctx));
  out.push_back(check_identity("T." + tn + "*" + tn + "=1", 1, t(n).adjoint() * t(n), one, tol, ctx));
  for (int i = 2; i <= n; ++i) {
    const std::string a = "T" + idx(i - 1), b = "T" + idx(i);
    out.push_back(check_identity("T." + a + "*" + a + "=" + b + "*" + b + "-" + b + b + "*", 1,
                                 t(i - 1).adjoint() * t(i - 1), t(i).adjoint() * t(i) - t(i) * t(i).adjoint(), tol,
                                 ctx));
  }
  const SparseOperator d1 = t(1).adjoint() * t(1) - t(1) * t(1).adjoint();
  const SparseOperator dn = one - t(n) * t(n).adjoint();
  if (strict) {
    out.push_back(make_report("T.T1T1*<T1*T1", 2, strict_projection_residual(d1, 2), tol, ctx));
    out.push_back(make_report("T." + tn + tn + "*<1", 2, strict_projection_residual(dn, 2), tol, ctx));
  } else {
    out.push_back(make_report("T.T1T1*<=T1*T1", 2, projection_residual(d1, 2), tol, ctx));
    out.push_back(make_report("T." + tn + tn + "*<=1", 2, projection_residual(dn, 2), tol, ctx));
  }
  return out;
}

// ---- generator recovery ---------------------------------------------------

std::vector<RelationReport> check_generator_recovery(const Irrep& rep, const std::vector<SparseOperator>& alpha,
                                                     double tol) {
  const auto& gens = rep.gens;
  const auto& g = gens.graph();
  const auto& space = rep.space();
  const auto ctx = context_of(rep, space->cutoff());
  const auto one = SparseOperator::identity(space);
  const int n = rep.n;
  std::vector<SparseOperator> S;
  for (int i = 1; i <= n; ++i) S.push_back(aggregate_shift(gens, i));
  auto s = [&](int i) -> const SparseOperator& { return S[i - 1]; };
  auto a = [&](int i) -> const SparseOperator& { return alpha[i - 1]; };
  auto edge_name = [&](int i, int j) { return "S[" + g.edge_label(*g.edge_between(i, j)) + "]"; };

  std::vector<RelationReport> out;
  // (a) Cuntz-Krieger generators in terms of S_1..S_n
  const SparseOperator p0 = s(1).adjoint() * s(1) - s(1) * s(1).adjoint();
  out.push_back(check_identity("recover.P[v0]=S1*S1-S1S1*", 1, gens.P(0), p0, tol, ctx));
  for (int i = 1; i <= n; ++i) {
    out.push_back(check_identity("recover.P[v" + idx(i) + "]=S" + idx(i) + "S" + idx(i) + "*", 1, gens.P(i),
                                 s(i) * s(i).adjoint(), tol, ctx));
    out.push_back(check_identity("recover.S" + idx(i) + "*S" + idx(i) + "=P0+..+P" + idx(i), 1,
                                 s(i).adjoint() * s(i), corner_projection(gens, i), tol, ctx));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= i; ++j) {
      const auto& sij = gens.S(i, j);
      out.push_back(
          check_identity("recover." + edge_name(i, j) + "=S" + idx(i) + "P" + idx(j), 1, sij, s(i) * gens.P(j), tol, ctx));
      const SparseOperator via = j == 0 ? s(i) * p0 : s(i) * s(j) * s(j).adjoint();
      out.push_back(check_identity("recover." + edge_name(i, j) + "=word(S)", 2, sij, via, tol, ctx));
    }
  out.push_back(check_identity("recover." + edge_name(1, 0) + "=S1(1-S1S1*)", 2, gens.S(1, 0),
                               s(1) * (one - s(1) * s(1).adjoint()), tol, ctx));

  // (b) the phase of x_i is S_i
  for (int i = 1; i <= n; ++i)
    out.push_back(check_identity("recover.phase(x" + idx(i) + ")=S" + idx(i), 1, a(i), s(i), tol, ctx));

  // (c) phi-images built from alpha_i reproduce the generators
  const SparseOperator q1r1 = a(1).adjoint() * a(1) - a(1) * a(1).adjoint();
  out.push_back(check_identity("phi.P[v0]", 2, q1r1, gens.P(0), tol, ctx));
  for (int j = 1; j <= n; ++j)
    out.push_back(check_identity("phi.P[v" + idx(j) + "]", 2, a(j) * a(j).adjoint(), gens.P(j), tol, ctx));
  for (int i = 1; i <= n; ++i) {
    SparseOperator phi_si = SparseOperator::zero(space);
    for (int j = 0; j <= i; ++j) {
      const SparseOperator img = j == 0 ? a(i) * q1r1 : a(i) * a(j) * a(j).adjoint();
      out.push_back(check_identity("phi." + edge_name(i, j), 2, img, gens.S(i, j), tol, ctx));
      phi_si = phi_si + img;
    }
    out.push_back(check_identity("phi.S" + idx(i) + "=alpha" + idx(i), 2, phi_si, a(i), tol, ctx));
  }
  // x_i as the lambda-series in its phase. Only where alpha_i is a truncated
  // shift: there the series terminates on every interior vector.
  const QParam q(rep.q);
  for (int i = space->end_vertex() + 1; i <= n; ++i) {
    SparseOperator up = a(i), down = one, series = SparseOperator::zero(space);
    for (int k = 0; k < space->cutoff() + 2; ++k) {
      series = series + Complex(lambda_coeff(k, q)) * (up * down);
      up = a(i) * up;
      down = a(i).adjoint() * down;
    }
    out.push_back(check_identity("phi.x" + idx(i) + "=series(alpha" + idx(i) + ")", 2, series, rep.X(i), tol, ctx));
  }
  return out;
}

// ---- partial sums ---------------------------------------------------------

double partial_sum_bound(QParam q, int m, int n) {
  return std::sqrt(1.0 - std::pow(q.value(), n + 1)) - std::sqrt(1.0 - std::pow(q.value(), m + 1));
}

double partial_sum_norm(QParam q, int m, int n, int cutoff) {
  if (m < 0 || n < m) throw PreconditionError("partial sums need 0 <= m <= n");
  auto graph = std::make_shared<const DirectedGraph>(ball_graph(1));
  auto space = std::make_shared<const TruncatedPathSpace>(graph, 0, cutoff);
  const auto gens = build_generators(space);
  const SparseOperator s = aggregate_shift(gens, 1);
  SparseOperator sum = SparseOperator::zero(space);
  SparseOperator up = s, down = SparseOperator::identity(space);
  for (int k = 0; k <= n; ++k) {
    if (k > m) sum = sum + Complex(lambda_coeff(k, q)) * (up * down);
    up = s * up;
    down = s.adjoint() * down;
  }
  const int d = space->dimension();
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& t : sum.matrix().triplets()) dense(t.row, t.col) = t.value;
  if (d == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues()(0);
}

RelationReport check_partial_sum_bound(QParam q, int m, int n, int cutoff, double tol) {
  const double norm = partial_sum_norm(q, m, n, cutoff);
  const double bound = partial_sum_bound(q, m, n);
  return make_report("partial_sum[m=" + idx(m) + ",n=" + idx(n) + "]", 0, std::max(0.0, norm - bound), tol,
                     {1, q.value(), cutoff, "pi"});
}

// ---- matrix units ---------------------------------------------------------

std::vector<RelationReport> check_matrix_units(int n, int cutoff, double tol, std::uint64_t seed, int exhaustive_limit,
                                               int samples) {
  if (cutoff < 0) throw PreconditionError("cutoff must be non-negative");
  auto graph = std::make_shared<const DirectedGraph>(ball_graph(n));
  auto space = std::make_shared<const TruncatedPathSpace>(graph, 0, cutoff);
  const auto gens = build_generators(space);
  const int d = space->dimension();
  std::vector<SparseOperator> s, s_adj;
  for (const auto& p : space->basis()) {
    s.push_back(path_operator(gens, to_path(*graph, p)));
    s_adj.push_back(s.back().adjoint());
  }
  auto unit = [&](int a, int b) { return s[a] * s_adj[b]; };
  const CheckContext ctx{n, 0.0, cutoff, "pi"};

  double product = 0.0, adjoint_gap = 0.0;
  auto check = [&](int a, int b, int c, int e) {
    const SparseOperator lhs = unit(a, b) * unit(c, e);
    const SparseOperator rhs = b == c ? unit(a, e) : SparseOperator::zero(space);
    product = std::max(product, interior_residual(lhs - rhs, 0));
  };
  if (d <= exhaustive_limit) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        adjoint_gap = std::max(adjoint_gap, interior_residual(unit(a, b).adjoint() - unit(b, a), 0));
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) check(a, b, c, e);
      }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, d - 1);
    for (int t = 0; t < samples; ++t) {
      const int a = pick(rng), b = pick(rng), e = pick(rng);
      const int c = t % 2 == 0 ? b : pick(rng);  // half the samples on the diagonal b = c
      check(a, b, c, e);
      adjoint_gap = std::max(adjoint_gap, interior_residual(unit(a, b).adjoint() - unit(b, a), 0));
    }
  }
  return {make_report("matrix_units.product", 0, product, tol, ctx),
          make_report("matrix_units.adjoint", 0, adjoint_gap, tol, ctx)};
}

// ---- symbolic against numeric ---------------------------------------------

RelationReport symbolic_numeric_crosscheck(std::string id, const WordExpr& a, const WordExpr& b,
                                           const GeneratorFamily& gens, int headroom, double tol) {
  a.require_same_graph(b);
  const auto& space = gens.space;
  if (headroom > space->cutoff())
    throw HeadroomError("headroom " + idx(headroom) + " exceeds cutoff " + idx(space->cutoff()) +
                        "; use a larger cutoff");
  const CheckContext ctx{space->ball_dimension(), 0.0, space->cutoff(), "pi"};
  return check_identity(std::move(id), headroom, evaluate_word(a, gens), evaluate_word(b, gens), tol, ctx);
}

namespace {

struct PiSetup {
  std::shared_ptr<const DirectedGraph> graph;
  GeneratorFamily gens;
};

PiSetup pi_setup(int n, int cutoff) {
  auto graph = std::make_shared<const DirectedGraph>(ball_graph(n));
  auto space = std::make_shared<const TruncatedPathSpace>(graph, 0, cutoff);
  return {graph, build_generators(space)};
}

// Random letters, biased towards products that do not vanish at once: most
// letters are chosen to compose with the vertex the product currently ends at.
std::vector<GeneratorLetter> random_letters(const DirectedGraph& g, int length, std::mt19937_64& rng) {
  std::vector<GeneratorLetter> out;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> any_vertex(0, g.num_vertices() - 1);
  int right = any_vertex(rng);
  for (int t = 0; t < length; ++t) {
    std::vector<GeneratorLetter> options;
    const bool follow = coin(rng) < 0.8;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      if (!follow || g.edge(e).src == right) options.push_back(GeneratorLetter::edge(e));
      if (!follow || g.edge(e).dst == right) options.push_back(GeneratorLetter::edge_adjoint(e));
    }
    for (VertexIndex v = 0; v < g.num_vertices(); ++v)
      if (!follow || v == right) options.push_back(GeneratorLetter::projection(v));
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const auto letter = options[pick(rng)];
    out.push_back(letter);
    switch (letter.kind) {
      case GeneratorLetter::Kind::Edge: right = g.edge(letter.index).dst; break;
      case GeneratorLetter::Kind::EdgeAdjoint: right = g.edge(letter.index).src; break;
      case GeneratorLetter::Kind::Projection: right = letter.index; break;
      case GeneratorLetter::Kind::Unit: break;
    }
  }
  return out;
}

SparseOperator numeric_letter(const GeneratorFamily& gens, const GeneratorLetter& l) {
  switch (l.kind) {
    case GeneratorLetter::Kind::Edge: return gens.edges.at(l.index);
    case GeneratorLetter::Kind::EdgeAdjoint: return gens.edges.at(l.index).adjoint();
    case GeneratorLetter::Kind::Projection: return gens.P(l.index);
    case GeneratorLetter::Kind::Unit: break;
  }
  return SparseOperator::identity(gens.space);
}

}  // namespace

std::vector<RelationReport> check_random_words(int n, int cutoff, int count, std::uint64_t seed, double tol) {
  const auto setup = pi_setup(n, cutoff);
  const auto& g = *setup.graph;
  const CheckContext ctx{n, 0.0, cutoff, "pi"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, 8);
  double reduce_res = 0.0, multiply_res = 0.0;
  int max_headroom = 0;
  for (int t = 0; t < count; ++t) {
    const auto letters = random_letters(g, length(rng), rng);
    const int headroom = static_cast<int>(std::count_if(letters.begin(), letters.end(), [](const auto& l) {
      return l.kind == GeneratorLetter::Kind::Edge;
    }));
    if (headroom > cutoff) throw HeadroomError("random word needs headroom " + idx(headroom));
    max_headroom = std::max(max_headroom, headroom);

    SparseOperator numeric = SparseOperator::identity(setup.gens.space);
    for (const auto& l : letters) numeric = numeric * numeric_letter(setup.gens, l);

    const WordExpr reduced = reduce(setup.graph, letters);
    reduce_res = std::max(reduce_res, interior_residual(evaluate_word(reduced, setup.gens) - numeric, headroom));

    std::uniform_int_distribution<std::size_t> split_at(0, letters.size());
    const std::size_t split = split_at(rng);
    const std::span<const GeneratorLetter> all(letters);
    const WordExpr product = multiply(reduce(setup.graph, all.first(split)), reduce(setup.graph, all.subspan(split)));
    multiply_res = std::max(multiply_res, interior_residual(evaluate_word(product, setup.gens) - numeric, headroom));
  }
  return {make_report("symbolic.reduce", max_headroom, reduce_res, tol, ctx),
          make_report("symbolic.multiply", max_headroom, multiply_res, tol, ctx)};
}

std::vector<RelationReport> check_gauge_invariance(int n, int cutoff, std::uint64_t seed, double tol) {
  const auto setup = pi_setup(n, cutoff);
  const auto& gp = setup.graph;
  const auto& g = *gp;
  const CheckContext ctx{n, 0.0, cutoff, "pi"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;
  const WordExpr zero = WordExpr::zero(gp);
  for (int trial = 0; trial < 3; ++trial) {
    const double t = angle(rng);
    auto s = [&](EdgeIndex e) { return gauge(WordExpr::edge(gp, e), t); };
    auto p = [&](VertexIndex v) { return gauge(WordExpr::projection(gp, v), t); };
    for (VertexIndex v = 0; v < g.num_vertices(); ++v)
      for (VertexIndex w = 0; w < g.num_vertices(); ++w) {
        const WordExpr lhs = v == w ? p(v) * p(v) - p(v) : p(v) * p(w);
        g1 = std::max(g1, symbolic_numeric_crosscheck("", lhs, zero, setup.gens, 0, tol).residual);
      }
    for (EdgeIndex e = 0; e < g.num_edges(); ++e)
      g2 = std::max(g2, symbolic_numeric_crosscheck("", adjoint(s(e)) * s(e), p(g.edge(e).dst), setup.gens, 1, tol)
                            .residual);
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      if (g.is_sink(v)) continue;
      WordExpr rhs = zero;
      for (EdgeIndex e : g.out_edges(v)) rhs += s(e) * adjoint(s(e));
      g3 = std::max(g3, symbolic_numeric_crosscheck("", p(v), rhs, setup.gens, 1, tol).residual);
    }
  }
  return {make_report("gauge.G1", 0, g1, tol, ctx), make_report("gauge.G2", 1, g2, tol, ctx),
          make_report("gauge.G3", 1, g3, tol, ctx)};
}

// ---- driver ---------------------------------------------------------------

namespace {
constexpr int kPartialSumCutoff = 8;
constexpr int kMatrixUnitCutoff = 2;
constexpr int kWordCutoff = 10;
constexpr int kRandomWords = 100;
}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ck",         "formula",   "ball",        "polar",
                                              "projection", "universal", "recovery",    "partial_sum",
                                              "matrix_units", "symbolic", "gauge"};
  return names;
}

CheckSuite run_verification(const VerifyConfig& config) {
  if (config.n < 1) throw PreconditionError("n must be >= 1");
  if (config.cutoff < 2) throw PreconditionError("cutoff must be >= 2");
  if (!(config.tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (config.qs.empty()) throw PreconditionError("at least one q is required");
  std::vector<QParam> qs;
  for (double q : config.qs) qs.emplace_back(q);
  const auto& known = suite_names();
  for (const auto& s : config.suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw PreconditionError("unknown suite " + s);
  auto enabled = [&](const std::string& name) {
    return config.suites.empty() || std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end();
  };

  CheckSuite suite(config.tol);
  const double tol = config.tol;
  const bool per_rep = enabled("ck") || enabled("formula") || enabled("ball") || enabled("polar") ||
                       enabled("projection") || enabled("universal") || enabled("recovery");
  for (const QParam& q : qs) {
    const std::string qtag = "q=" + fmt(q.value()) + "/";
    if (per_rep) {
      for (const auto& spec : sample_irreps(config.n, config.angles)) {
        const Irrep rep = build_irrep(spec, config.n, q, config.cutoff);
        const bool faithful = std::holds_alternative<PiRep>(spec);
        const std::string prefix = qtag + to_string(spec) + "/";
        if (enabled("ck")) suite.add_all(check_cuntz_krieger(rep.gens, tol, context_of(rep, config.cutoff)), prefix);
        if (enabled("formula")) suite.add_all(check_shift_formulas(rep, tol), prefix);
        if (enabled("ball")) suite.add_all(check_ball_relations(rep, tol), prefix);
        if (enabled("universal")) suite.add_all(check_universal_relations(rep, tol, faithful), prefix);
        if (enabled("polar") || enabled("projection") || enabled("recovery")) {
          const auto alpha = phases(rep);
          if (enabled("polar")) suite.add_all(check_polar(rep, alpha, tol), prefix);
          if (enabled("projection")) suite.add_all(check_projection_lemma(rep, alpha, tol, faithful), prefix);
          if (enabled("recovery")) suite.add_all(check_generator_recovery(rep, alpha, tol), prefix);
        }
      }
    }
    if (enabled("partial_sum")) {
      std::vector<RelationReport> sums;
      for (int hi = 1; hi <= 4; ++hi)
        for (int lo = 0; lo < hi; ++lo) sums.push_back(check_partial_sum_bound(q, lo, hi, kPartialSumCutoff, tol));
      suite.add_all(std::move(sums), qtag);
    }
  }
  if (enabled("matrix_units"))
    suite.add_all(check_matrix_units(config.n, kMatrixUnitCutoff, tol, config.seed), "n=" + idx(config.n) + "/");
  const int word_cutoff = std::max(config.cutoff, kWordCutoff);
  if (enabled("symbolic"))
    suite.add_all(check_random_words(config.n, word_cutoff, kRandomWords, config.seed, tol), "n=" + idx(config.n) + "/");
  if (enabled("gauge"))
    suite.add_all(check_gauge_invariance(config.n, word_cutoff, config.seed, tol), "n=" + idx(config.n) + "/");
  return suite;
}

}  // namespace qball
