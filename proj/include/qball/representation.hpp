#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qball/graph.hpp"
#include "qball/sparse.hpp"
#include "qball/word.hpp"

namespace qball {

/// Deformation parameter, 0 < q < 1.
class QParam {
 public:
  explicit QParam(double q);
  double value() const { return q_; }

 private:
  double q_;
};

/// lambda_k = sqrt(1 - q^{k+1}) - sqrt(1 - q^k), evaluated without cancellation.
double lambda_coeff(int k, QParam q);

/// Span of the basis vectors zeta_alpha for the paths of a ball graph that
/// end at `end_vertex` (no loop at the end), all loop exponents <= cutoff.
class TruncatedPathSpace {
 public:
  TruncatedPathSpace(std::shared_ptr<const DirectedGraph> graph, VertexIndex end_vertex, int cutoff);

  const DirectedGraph& graph() const { return *graph_; }
  const std::shared_ptr<const DirectedGraph>& graph_ptr() const { return graph_; }
  int ball_dimension() const { return n_; }
  VertexIndex end_vertex() const { return end_; }
  int cutoff() const { return cutoff_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  const std::vector<LoopEncodedPath>& basis() const { return basis_; }
  const LoopEncodedPath& path(int index) const { return basis_.at(static_cast<std::size_t>(index)); }
  std::optional<int> index_of(const LoopEncodedPath& p) const;
  std::string label(int index) const { return to_string(*graph_, path(index)); }

  /// Basis vectors whose loop exponents are all <= cutoff - headroom.
  /// Throws HeadroomError if headroom > cutoff.
  std::vector<int> interior(int headroom) const;

 private:
  std::shared_ptr<const DirectedGraph> graph_;
  int n_ = 0;
  VertexIndex end_ = 0;
  int cutoff_ = 0;
  std::vector<LoopEncodedPath> basis_;
  std::map<LoopEncodedPath, int> index_;
};

using SpacePtr = std::shared_ptr<const TruncatedPathSpace>;

/// A linear operator on a truncated path space.
class SparseOperator {
 public:
  SparseOperator(SpacePtr space, sparse::CscMatrix matrix);

  static SparseOperator zero(SpacePtr space);
  static SparseOperator identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const sparse::CscMatrix& matrix() const { return matrix_; }
  int dimension() const { return matrix_.rows; }
  Complex entry(int row, int col) const { return matrix_.at(row, col); }

  SparseOperator adjoint() const;

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(Complex s, const SparseOperator& a);

  /// Coordinate list, one "row col re im" line per stored entry.
  std::string to_coo() const;

 private:
  void require_same_space(const SparseOperator& o) const;

  SpacePtr space_;
  sparse::CscMatrix matrix_;
};

/// pi(P_v), pi(S_e) on a truncated path space. S_f prepends f to a path when
/// r(f) = s(path) and the result stays within the cutoff; otherwise 0. The
/// loop at the end vertex (if any) acts on the vertex path as exp(i theta).
struct GeneratorFamily {
  SpacePtr space;
  std::vector<SparseOperator> projections;  // by vertex index
  std::vector<SparseOperator> edges;        // by edge index

  const DirectedGraph& graph() const { return space->graph(); }
  const SparseOperator& P(VertexIndex v) const { return projections.at(static_cast<std::size_t>(v)); }
  /// S_{ij}, the edge v_i -> v_j.
  const SparseOperator& S(VertexIndex i, VertexIndex j) const;
};

GeneratorFamily build_generators(SpacePtr space, double theta = 0.0);

/// S_i = sum_{j <= i} S_{ij}, 1 <= i <= n.
SparseOperator aggregate_shift(const GeneratorFamily& gens, int i);
/// P_0 + ... + P_i (i may be n, giving the identity).
SparseOperator corner_projection(const GeneratorFamily& gens, int i);
/// z_i = sum_{k=0}^{N+1} lambda_k S_i^{k+1} (S_i^*)^k.
SparseOperator weighted_shift(const GeneratorFamily& gens, int i, QParam q);
/// pi(S_mu); a vertex path gives pi(P_v).
SparseOperator path_operator(const GeneratorFamily& gens, const Path& mu);
/// Linear extension of pi(S_mu S_nu^*) = pi(S_mu) pi(S_nu)^*.
SparseOperator evaluate_word(const WordExpr& a, const GeneratorFamily& gens);

// ---- irreducible representations ------------------------------------------

struct PiRep {};
struct EpsilonRep {
  int k = 1;
  double theta = 0.0;  // radians
};
struct SigmaRep {
  double theta = 0.0;  // radians
};
using RepSpec = std::variant<PiRep, EpsilonRep, SigmaRep>;

std::string to_string(const RepSpec& spec);
/// Throws PreconditionError if the spec does not exist for this n.
void validate(const RepSpec& spec, int n);

/// A representation of x_1..x_n together with the Cuntz-Krieger family it
/// factors through.
struct Irrep {
  RepSpec spec;
  int n = 0;
  double q = 0.0;
  GeneratorFamily gens;
  std::vector<SparseOperator> x;  // x[i-1] is x_i

  const SparseOperator& X(int i) const { return x.at(static_cast<std::size_t>(i - 1)); }
  const SpacePtr& space() const { return gens.space; }
};

/// pi: paths ending at v_0. epsilon_{k,theta}: paths ending at v_k without
/// e_kk loops; x_i = 0 for i < k, x_k = theta on zeta_{v_k}, z_i for i > k.
/// sigma_theta: the one-dimensional space spanned by v_n, x_n = theta.
Irrep build_irrep(const RepSpec& spec, int n, QParam q, int cutoff);

struct RepFamily {
  enum class Kind { Point, Epsilon, Sigma };
  Kind kind = Kind::Point;
  int k = 0;  // epsilon index
  bool circle = false;
  std::string name;
};

/// One point family (pi) and n circle families.
std::vector<RepFamily> list_irreps(int n);
/// Instantiates every family, circles at each of `angles`.
std::vector<RepSpec> sample_irreps(int n, const std::vector<double>& angles);

}  // namespace qball
