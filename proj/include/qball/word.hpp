#pragma once

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qball/graph.hpp"

namespace qball {

using Complex = std::complex<double>;

/// Coefficients smaller than this in magnitude are dropped after every step.
inline constexpr double kPruneThreshold = 1e-14;

/// S_mu S_nu^* with r(mu) == r(nu). mu == nu == v is the projection P_v.
class NormalWord {
 public:
  /// Throws PreconditionError when r(mu) != r(nu).
  NormalWord(const DirectedGraph& g, Path mu, Path nu);

  const Path& mu() const { return mu_; }
  const Path& nu() const { return nu_; }
  /// |mu| - |nu|, the gauge degree.
  int degree() const { return static_cast<int>(mu_.length()) - static_cast<int>(nu_.length()); }

  auto operator<=>(const NormalWord&) const = default;

 private:
  NormalWord(Path mu, Path nu) : mu_(std::move(mu)), nu_(std::move(nu)) {}
  friend NormalWord swap_sides(const NormalWord& w);

  Path mu_;
  Path nu_;
};

/// The word S_nu S_mu^* (the adjoint word without its coefficient).
NormalWord swap_sides(const NormalWord& w);

/// Finite linear combination of normal words over one graph.
class WordExpr {
 public:
  using Terms = std::map<NormalWord, Complex>;

  explicit WordExpr(std::shared_ptr<const DirectedGraph> g);

  static WordExpr zero(std::shared_ptr<const DirectedGraph> g);
  /// Sum of P_v over all vertices.
  static WordExpr unit(std::shared_ptr<const DirectedGraph> g);
  static WordExpr projection(std::shared_ptr<const DirectedGraph> g, VertexIndex v);
  static WordExpr edge(std::shared_ptr<const DirectedGraph> g, EdgeIndex e);
  static WordExpr edge_adjoint(std::shared_ptr<const DirectedGraph> g, EdgeIndex e);
  static WordExpr word(std::shared_ptr<const DirectedGraph> g, const Path& mu, const Path& nu,
                       Complex coeff = 1.0);

  const DirectedGraph& graph() const { return *graph_; }
  const std::shared_ptr<const DirectedGraph>& graph_ptr() const { return graph_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const NormalWord& w) const;

  void add_term(const NormalWord& w, Complex c);

  /// max |mu| over the support: how far the word can raise a path.
  std::size_t max_raise() const;
  /// max(|mu|, |nu|) over the support.
  std::size_t max_length() const;

  WordExpr& operator+=(const WordExpr& o);
  WordExpr& operator-=(const WordExpr& o);
  WordExpr& operator*=(Complex c);

  friend WordExpr operator+(WordExpr a, const WordExpr& b) { return a += b; }
  friend WordExpr operator-(WordExpr a, const WordExpr& b) { return a -= b; }
  friend WordExpr operator*(Complex c, WordExpr a) { return a *= c; }
  friend WordExpr operator*(const WordExpr& a, const WordExpr& b);
  friend bool operator==(const WordExpr& a, const WordExpr& b);

  /// Throws PreconditionError unless `o` lives over the same graph.
  void require_same_graph(const WordExpr& o) const;

 private:

  std::shared_ptr<const DirectedGraph> graph_;
  Terms terms_;
};

/// Bilinear product of normal forms.
WordExpr multiply(const WordExpr& a, const WordExpr& b);

struct GeneratorLetter {
  enum class Kind { Edge, EdgeAdjoint, Projection, Unit };
  Kind kind = Kind::Unit;
  int index = 0;  // edge or vertex index; unused for Unit

  static GeneratorLetter edge(EdgeIndex e) { return {Kind::Edge, e}; }
  static GeneratorLetter edge_adjoint(EdgeIndex e) { return {Kind::EdgeAdjoint, e}; }
  static GeneratorLetter projection(VertexIndex v) { return {Kind::Projection, v}; }
  static GeneratorLetter unit() { return {Kind::Unit, 0}; }

  friend bool operator==(const GeneratorLetter&, const GeneratorLetter&) = default;
};

WordExpr lift(const std::shared_ptr<const DirectedGraph>& g, const GeneratorLetter& letter);
/// Normal form of the product of `letters`; the empty product is the unit.
WordExpr reduce(const std::shared_ptr<const DirectedGraph>& g, std::span<const GeneratorLetter> letters);

WordExpr adjoint(const WordExpr& a);

/// Rewrites every word ending at v through P_v = sum_{s(e)=v} S_e S_e^*,
/// `depth` times. Throws PreconditionError if v is a sink or depth < 1.
WordExpr ck_expand(const WordExpr& a, VertexIndex v, int depth);

/// Gauge action: S_mu S_nu^* picks up exp(i t (|mu| - |nu|)).
WordExpr gauge(const WordExpr& a, double angle);

// ---- text form ------------------------------------------------------------
//
//   expr    := "0" | term { ("+" | "-") term }
//   term    := [ "-" ] [ coeff ] { factor }       empty product = unit
//   coeff   := real | "(" real ("+"|"-") real "i" ")"
//   factor  := "S[" label { label } "]" [ "*" ] | "P[" vertex "]" | "1"
//
// Rendering emits one term per normal word in map order, e.g.
// "S[b]S[e]* - 0.5 P[v1]".

std::string render(const WordExpr& a);
std::string render(const DirectedGraph& g, const NormalWord& w);

/// Parses a sum of coefficient-weighted generator products and reduces each
/// product. Throws ParseError with the failing offset.
WordExpr parse_word_expr(const std::shared_ptr<const DirectedGraph>& g, std::string_view text);

/// Parses a single coefficient-free product into its letters.
std::vector<GeneratorLetter> parse_letters(const DirectedGraph& g, std::string_view text);

}  // namespace qball
