#include "qball/word.hpp"

#include <algorithm>
#include <cmath>

#include "qball/error.hpp"

namespace qball {

NormalWord::NormalWord(const DirectedGraph& g, Path mu, Path nu) : mu_(std::move(mu)), nu_(std::move(nu)) {
  if (range(g, mu_) != range(g, nu_))
    throw PreconditionError("normal word S_mu S_nu^* needs r(mu) == r(nu)");
}

NormalWord swap_sides(const NormalWord& w) { return NormalWord(w.nu_, w.mu_); }

WordExpr::WordExpr(std::shared_ptr<const DirectedGraph> g) : graph_(std::move(g)) {
  if (!graph_) throw PreconditionError("WordExpr needs a graph");
}

WordExpr WordExpr::zero(std::shared_ptr<const DirectedGraph> g) { return WordExpr(std::move(g)); }

WordExpr WordExpr::unit(std::shared_ptr<const DirectedGraph> g) {
  WordExpr out(g);
  for (VertexIndex v = 0; v < g->num_vertices(); ++v)
    out.add_term(NormalWord(*g, vertex_path(v), vertex_path(v)), 1.0);
  return out;
}

WordExpr WordExpr::projection(std::shared_ptr<const DirectedGraph> g, VertexIndex v) {
  if (v < 0 || v >= g->num_vertices()) throw PreconditionError("vertex out of range");
  return word(g, vertex_path(v), vertex_path(v));
}

WordExpr WordExpr::edge(std::shared_ptr<const DirectedGraph> g, EdgeIndex e) {
  if (e < 0 || e >= g->num_edges()) throw PreconditionError("edge out of range");
  auto p = make_path(*g, {e});
  return word(g, p, vertex_path(g->edge(e).dst));
}

WordExpr WordExpr::edge_adjoint(std::shared_ptr<const DirectedGraph> g, EdgeIndex e) {
  if (e < 0 || e >= g->num_edges()) throw PreconditionError("edge out of range");
  auto p = make_path(*g, {e});
  return word(g, vertex_path(g->edge(e).dst), p);
}

WordExpr WordExpr::word(std::shared_ptr<const DirectedGraph> g, const Path& mu, const Path& nu,
                        Complex coeff) {
  WordExpr out(g);
  out.add_term(NormalWord(*g, mu, nu), coeff);
  return out;
}

Complex WordExpr::coefficient(const NormalWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

void WordExpr::add_term(const NormalWord& w, Complex c) {
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

std::size_t WordExpr::max_raise() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.mu().length());
  return m;
}

std::size_t WordExpr::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max({m, w.mu().length(), w.nu().length()});
  return m;
}

void WordExpr::require_same_graph(const WordExpr& o) const {
  if (graph_ != o.graph_ && !(*graph_ == *o.graph_))
    throw PreconditionError("word expressions live over different graphs");
}

WordExpr& WordExpr::operator+=(const WordExpr& o) {
  require_same_graph(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

WordExpr& WordExpr::operator-=(const WordExpr& o) {
  require_same_graph(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

WordExpr& WordExpr::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < kPruneThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool operator==(const WordExpr& a, const WordExpr& b) {
  return *a.graph_ == *b.graph_ && a.terms_ == b.terms_;
}

WordExpr multiply(const WordExpr& a, const WordExpr& b) {
  a.require_same_graph(b);
  const auto& g = a.graph();
  WordExpr out(a.graph_ptr());
  for (const auto& [left, cl] : a.terms()) {
    for (const auto& [right, cr] : b.terms()) {
      // (S_mu S_nu^*)(S_gamma S_delta^*)
      const Path& mu = left.mu();
      const Path& nu = left.nu();
      const Path& gamma = right.mu();
      const Path& delta = right.nu();
      if (auto rest = strip_prefix(g, gamma, nu)) {
        out.add_term(NormalWord(g, concat(g, mu, *rest), delta), cl * cr);
      } else if (auto rest2 = strip_prefix(g, nu, gamma)) {
        out.add_term(NormalWord(g, mu, concat(g, delta, *rest2)), cl * cr);
      }
    }
  }
  return out;
}

WordExpr operator*(const WordExpr& a, const WordExpr& b) { return multiply(a, b); }

WordExpr lift(const std::shared_ptr<const DirectedGraph>& g, const GeneratorLetter& letter) {
  switch (letter.kind) {
    case GeneratorLetter::Kind::Edge:
      return WordExpr::edge(g, letter.index);
    case GeneratorLetter::Kind::EdgeAdjoint:
      return WordExpr::edge_adjoint(g, letter.index);
    case GeneratorLetter::Kind::Projection:
      return WordExpr::projection(g, letter.index);
    case GeneratorLetter::Kind::Unit:
      break;
  }
  return WordExpr::unit(g);
}

WordExpr reduce(const std::shared_ptr<const DirectedGraph>& g, std::span<const GeneratorLetter> letters) {
  WordExpr acc = WordExpr::unit(g);
  for (const auto& l : letters) {
    acc = multiply(acc, lift(g, l));
    if (acc.is_zero()) break;
  }
  return acc;
}

WordExpr adjoint(const WordExpr& a) {
  WordExpr out(a.graph_ptr());
  for (const auto& [w, c] : a.terms()) out.add_term(swap_sides(w), std::conj(c));
  return out;
}

WordExpr ck_expand(const WordExpr& a, VertexIndex v, int depth) {
  const auto& g = a.graph();
  if (v < 0 || v >= g.num_vertices()) throw PreconditionError("vertex out of range");
  if (g.is_sink(v)) throw PreconditionError("Cuntz-Krieger expansion does not apply at a sink");
  if (depth < 1) throw PreconditionError("expansion depth must be >= 1");
  WordExpr cur = a;
  for (int round = 0; round < depth; ++round) {
    WordExpr next(a.graph_ptr());
    for (const auto& [w, c] : cur.terms()) {
      if (range(g, w.mu()) != v) {
        next.add_term(w, c);
        continue;
      }
      for (EdgeIndex e : g.out_edges(v)) {
        auto step = make_path(g, {e});
        next.add_term(NormalWord(g, concat(g, w.mu(), step), concat(g, w.nu(), step)), c);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

WordExpr gauge(const WordExpr& a, double angle) {
  WordExpr out(a.graph_ptr());
  for (const auto& [w, c] : a.terms())
    out.add_term(w, c * std::polar(1.0, angle * static_cast<double>(w.degree())));
  return out;
}

}  // namespace qball
