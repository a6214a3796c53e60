#include "qball/representation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qball/error.hpp"

namespace qball {

QParam::QParam(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("q must satisfy 0 < q < 1");
}

double lambda_coeff(int k, QParam q) {
  if (k < 0) throw PreconditionError("lambda_k needs k >= 0");
  const double qk = std::pow(q.value(), k);
  const double qk1 = qk * q.value();
  // sqrt(a) - sqrt(b) = (a - b) / (sqrt(a) + sqrt(b)) with a - b = q^k - q^{k+1}
  return (qk - qk1) / (std::sqrt(1.0 - qk1) + std::sqrt(1.0 - qk));
}

// ---- spaces ---------------------------------------------------------------

TruncatedPathSpace::TruncatedPathSpace(std::shared_ptr<const DirectedGraph> graph, VertexIndex end_vertex,
                                       int cutoff)
    : graph_(std::move(graph)), end_(end_vertex), cutoff_(cutoff) {
  if (!graph_) throw PreconditionError("space needs a graph");
  auto n = qball::ball_dimension(*graph_);
  if (!n) throw PreconditionError("truncated path spaces are defined for ball graphs");
  n_ = *n;
  basis_ = enumerate_paths(*graph_, end_vertex, cutoff);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<int>(i));
}

std::optional<int> TruncatedPathSpace::index_of(const LoopEncodedPath& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> TruncatedPathSpace::interior(int headroom) const {
  if (headroom < 0) throw PreconditionError("headroom must be non-negative");
  if (headroom > cutoff_)
    throw HeadroomError("headroom " + std::to_string(headroom) + " exceeds cutoff " + std::to_string(cutoff_));
  std::vector<int> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].max_loops() <= cutoff_ - headroom) out.push_back(static_cast<int>(i));
  return out;
}

// ---- operators ------------------------------------------------------------

SparseOperator::SparseOperator(SpacePtr space, sparse::CscMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (!space_) throw PreconditionError("operator needs a space");
  if (matrix_.rows != space_->dimension() || matrix_.cols != space_->dimension())
    throw PreconditionError("operator dimensions do not match its space");
}

SparseOperator SparseOperator::zero(SpacePtr space) {
  const int d = space->dimension();
  return SparseOperator(std::move(space), sparse::CscMatrix::zero(d, d));
}

SparseOperator SparseOperator::identity(SpacePtr space) {
  const int d = space->dimension();
  return SparseOperator(std::move(space), sparse::CscMatrix::identity(d));
}

SparseOperator SparseOperator::adjoint() const { return SparseOperator(space_, sparse::adjoint(matrix_)); }

void SparseOperator::require_same_space(const SparseOperator& o) const {
  if (space_ != o.space_) throw PreconditionError("operators act on different spaces");
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  a.require_same_space(b);
  return SparseOperator(a.space_, sparse::add(a.matrix_, b.matrix_));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  a.require_same_space(b);
  return SparseOperator(a.space_, sparse::add(a.matrix_, b.matrix_, 1.0, -1.0));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  a.require_same_space(b);
  return SparseOperator(a.space_, sparse::multiply(a.matrix_, b.matrix_));
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
  return SparseOperator(a.space_, sparse::scale(a.matrix_, s));
}

std::string SparseOperator::to_coo() const {
  std::string out;
  char buf[128];
  for (const auto& t : matrix_.triplets()) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", t.row, t.col, t.value.real(), t.value.imag());
    out += buf;
  }
  return out;
}

// ---- generators -----------------------------------------------------------

const SparseOperator& GeneratorFamily::S(VertexIndex i, VertexIndex j) const {
  auto e = graph().edge_between(i, j);
  if (!e) throw PreconditionError("no edge e_" + std::to_string(i) + std::to_string(j));
  return edges.at(static_cast<std::size_t>(*e));
}

GeneratorFamily build_generators(SpacePtr space, double theta) {
  const auto& g = space->graph();
  const int d = space->dimension();
  const Complex phase = std::polar(1.0, theta);

  GeneratorFamily fam;
  fam.space = space;
  std::vector<std::vector<sparse::Triplet>> edge_trips(static_cast<std::size_t>(g.num_edges()));
  std::vector<std::vector<Complex>> proj_diag(static_cast<std::size_t>(g.num_vertices()),
                                              std::vector<Complex>(static_cast<std::size_t>(d)));

  for (int col = 0; col < d; ++col) {
    const auto& alpha = space->path(col);
    const VertexIndex s = alpha.source();
    proj_diag[s][col] = 1.0;
    for (VertexIndex i = s; i < g.num_vertices(); ++i) {
      auto e = g.edge_between(i, s);
      if (!e) continue;
      if (i == s && alpha.steps.empty()) {
        // loop at the end vertex: not part of the basis, acts by the angle
        edge_trips[*e].push_back({col, col, phase});
        continue;
      }
      LoopEncodedPath image = alpha;
      if (i == s) {
        ++image.steps.front().loops;
        if (image.steps.front().loops > space->cutoff()) continue;
      } else {
        image.steps.insert(image.steps.begin(), LoopStep{i, 0});
      }
      auto row = space->index_of(image);
      if (row) edge_trips[*e].push_back({*row, col, 1.0});
    }
  }
  for (auto& diag : proj_diag) fam.projections.emplace_back(space, sparse::CscMatrix::diagonal(diag));
  for (auto& trips : edge_trips)
    fam.edges.emplace_back(space, sparse::CscMatrix::from_triplets(d, d, std::move(trips)));
  return fam;
}

SparseOperator aggregate_shift(const GeneratorFamily& gens, int i) {
  const int n = gens.space->ball_dimension();
  if (i < 1 || i > n) throw PreconditionError("aggregate shift index out of range");
  SparseOperator out = SparseOperator::zero(gens.space);
  for (int j = 0; j <= i; ++j) out = out + gens.S(i, j);
  return out;
}

SparseOperator corner_projection(const GeneratorFamily& gens, int i) {
  const int n = gens.space->ball_dimension();
  if (i < 0 || i > n) throw PreconditionError("corner index out of range");
  SparseOperator out = SparseOperator::zero(gens.space);
  for (int j = 0; j <= i; ++j) out = out + gens.P(j);
  return out;
}

SparseOperator weighted_shift(const GeneratorFamily& gens, int i, QParam q) {
  const SparseOperator s = aggregate_shift(gens, i);
  const SparseOperator s_adj = s.adjoint();
  SparseOperator up = s;                                        // S^{k+1}
  SparseOperator down = SparseOperator::identity(gens.space);  // (S^*)^k
  SparseOperator z = SparseOperator::zero(gens.space);
  const int terms = gens.space->cutoff() + 2;
  for (int k = 0; k < terms; ++k) {
    z = z + Complex(lambda_coeff(k, q)) * (up * down);
    up = s * up;
    down = s_adj * down;
  }
  return z;
}

SparseOperator path_operator(const GeneratorFamily& gens, const Path& mu) {
  if (mu.empty()) return gens.P(mu.base);
  SparseOperator out = gens.edges.at(static_cast<std::size_t>(mu.edges.front()));
  for (std::size_t t = 1; t < mu.edges.size(); ++t) out = out * gens.edges.at(static_cast<std::size_t>(mu.edges[t]));
  return out;
}

SparseOperator evaluate_word(const WordExpr& a, const GeneratorFamily& gens) {
  if (!(a.graph() == gens.graph())) throw PreconditionError("word and generators use different graphs");
  SparseOperator out = SparseOperator::zero(gens.space);
  for (const auto& [w, c] : a.terms())
    out = out + c * (path_operator(gens, w.mu()) * path_operator(gens, w.nu()).adjoint());
  return out;
}

// ---- irreps ---------------------------------------------------------------

std::string to_string(const RepSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiRep>) {
          os << "pi";
        } else if constexpr (std::is_same_v<T, EpsilonRep>) {
          os << "epsilon(k=" << r.k << ",theta=" << r.theta << ")";
        } else {
          os << "sigma(theta=" << r.theta << ")";
        }
      },
      spec);
  return os.str();
}

void validate(const RepSpec& spec, int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (const auto* e = std::get_if<EpsilonRep>(&spec))
    if (e->k < 1 || e->k > n - 1) throw PreconditionError("epsilon representation needs 1 <= k <= n-1");
}

Irrep build_irrep(const RepSpec& spec, int n, QParam q, int cutoff) {
  validate(spec, n);
  int end = 0;
  double theta = 0.0;
  if (const auto* e = std::get_if<EpsilonRep>(&spec)) {
    end = e->k;
    theta = e->theta;
  } else if (const auto* s = std::get_if<SigmaRep>(&spec)) {
    end = n;
    theta = s->theta;
  }
  auto graph = std::make_shared<const DirectedGraph>(ball_graph(n));
  auto space = std::make_shared<const TruncatedPathSpace>(graph, end, cutoff);

  Irrep rep;
  rep.spec = spec;
  rep.n = n;
  rep.q = q.value();
  rep.gens = build_generators(space, theta);
  for (int i = 1; i <= n; ++i) {
    if (i < end)
      rep.x.push_back(SparseOperator::zero(space));
    else if (i == end)
      rep.x.push_back(std::polar(1.0, theta) * rep.gens.P(end));
    else
      rep.x.push_back(weighted_shift(rep.gens, i, q));
  }
  return rep;
}

std::vector<RepFamily> list_irreps(int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  std::vector<RepFamily> out;
  out.push_back({RepFamily::Kind::Point, 0, false, "pi"});
  for (int k = 1; k <= n - 1; ++k)
    out.push_back({RepFamily::Kind::Epsilon, k, true, "epsilon_" + std::to_string(k)});
  out.push_back({RepFamily::Kind::Sigma, 0, true, "sigma"});
  return out;
}

std::vector<RepSpec> sample_irreps(int n, const std::vector<double>& angles) {
  std::vector<RepSpec> out;
  for (const auto& fam : list_irreps(n)) {
    switch (fam.kind) {
      case RepFamily::Kind::Point:
        out.emplace_back(PiRep{});
        break;
      case RepFamily::Kind::Epsilon:
        for (double t : angles) out.emplace_back(EpsilonRep{fam.k, t});
        break;
      case RepFamily::Kind::Sigma:
        for (double t : angles) out.emplace_back(SigmaRep{t});
        break;
    }
  }
  return out;
}

}  // namespace qball
