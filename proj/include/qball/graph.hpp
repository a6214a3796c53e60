#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qball {

using VertexIndex = int;
using EdgeIndex = int;

struct Edge {
  std::string id;
  VertexIndex src = 0;
  VertexIndex dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite directed graph E = (E^0, E^1, r, s). Immutable after construction.
///
/// Vertices and edges are addressed by their position; ids are unique
/// strings used for serialization and rendering. An optional alias table
/// gives short display letters to edges (only the ball graphs E_1, E_2 carry
/// one: a..e as in the usual pictures of the quantum disc and 4-ball).
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Throws PreconditionError on duplicate ids or dangling endpoints.
  DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                std::map<std::string, EdgeIndex> edge_aliases = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_id(VertexIndex v) const { return vertices_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Looks up an edge by id or by display alias.
  std::optional<EdgeIndex> find_edge(std::string_view id_or_alias) const;
  /// The edge from src to dst, if any (first one in edge order).
  std::optional<EdgeIndex> edge_between(VertexIndex src, VertexIndex dst) const;

  /// Display name: the alias if one exists, else the id.
  const std::string& edge_label(EdgeIndex e) const;
  const std::map<std::string, EdgeIndex>& edge_aliases() const { return aliases_; }

  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_.at(v); }
  bool is_sink(VertexIndex v) const { return out_.at(v).empty(); }

  /// Label-canonical equality: same vertex ids, same edges in order.
  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, EdgeIndex> aliases_;
  std::vector<std::string> labels_;
  std::vector<std::vector<EdgeIndex>> out_;
};

/// Finite path: an edge sequence, or a single vertex when empty.
/// Edges are listed in traversal order: r(edges[i]) == s(edges[i+1]).
struct Path {
  VertexIndex base = 0;  // meaningful only when edges is empty
  std::vector<EdgeIndex> edges;

  bool empty() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }

  auto operator<=>(const Path& o) const {
    if (auto c = edges.size() <=> o.edges.size(); c != 0) return c;
    if (edges.empty()) return base <=> o.base;
    return edges <=> o.edges;
  }
  bool operator==(const Path& o) const = default;
};

VertexIndex source(const DirectedGraph& g, const Path& p);
VertexIndex range(const DirectedGraph& g, const Path& p);
Path vertex_path(VertexIndex v);
/// Throws PreconditionError unless consecutive edges compose.
Path make_path(const DirectedGraph& g, std::vector<EdgeIndex> edges);
/// Concatenation a then b; requires r(a) == s(b).
Path concat(const DirectedGraph& g, const Path& a, const Path& b);
/// If `p` starts with `prefix`, returns the remainder (a vertex path at
/// r(prefix) when they are equal).
std::optional<Path> strip_prefix(const DirectedGraph& g, const Path& p, const Path& prefix);
/// Space separated edge labels, or the vertex id for an empty path.
std::string to_string(const DirectedGraph& g, const Path& p);

/// One step of a descending vertex chain in E_n: `loops` copies of the loop
/// e_{vv} followed by the edge leaving `vertex` for the next chain vertex.
struct LoopStep {
  VertexIndex vertex = 0;
  int loops = 0;

  auto operator<=>(const LoopStep&) const = default;
};

/// A path in a ball graph ending at `end`, written as
/// e_{i1 i1}^{m1} e_{i1 i2} e_{i2 i2}^{m2} ... e_{i_r end}, with
/// i1 > i2 > ... > end. The end vertex carries no loop slot.
struct LoopEncodedPath {
  std::vector<LoopStep> steps;
  VertexIndex end = 0;

  VertexIndex source() const { return steps.empty() ? end : steps.front().vertex; }
  int max_loops() const;
  auto operator<=>(const LoopEncodedPath&) const = default;
};

/// Descending chain of vertices with loop slots on all but the last.
struct PathClass {
  std::vector<VertexIndex> chain;  // strictly decreasing, ends at the end vertex
  int loop_slots() const { return static_cast<int>(chain.size()) - 1; }
  auto operator<=>(const PathClass&) const = default;
};

// ---- construction ---------------------------------------------------------

/// The single-vertex graph (the 0-ball).
DirectedGraph point_graph();

/// Adds a top vertex with an edge to every vertex, itself included.
/// Existing labels are kept; the new vertex is v_k with k = |E^0| and its
/// edges are e_{kk}, e_{k,k-1}, ..., e_{k0}.
DirectedGraph double_suspension(const DirectedGraph& g);

/// E_n: vertices v_0..v_n, edges e_{ij} for 0 <= j <= i <= n, i != 0.
DirectedGraph ball_graph(int n);

/// Returns n if `g` is label-identical to ball_graph(n).
std::optional<int> ball_dimension(const DirectedGraph& g);

// ---- ideals ---------------------------------------------------------------

using VertexSet = std::vector<VertexIndex>;  // sorted, unique

bool is_hereditary(const DirectedGraph& g, const VertexSet& h);
bool is_saturated(const DirectedGraph& g, const VertexSet& h);

/// All hereditary and saturated subsets, ordered by size then lexicographically.
std::vector<VertexSet> hereditary_saturated_sets(const DirectedGraph& g);

/// E \ H. Throws PreconditionError unless h is hereditary and saturated.
DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h);

// ---- paths of ball graphs -------------------------------------------------

/// All paths of the ball graph `g` that end at `end` without looping there,
/// with every loop exponent <= cutoff. Ordered by class (chain
/// lexicographic) then by exponent tuple. For the sink this is every path
/// ending at v_0.
std::vector<LoopEncodedPath> enumerate_paths(const DirectedGraph& g, VertexIndex end, int cutoff);

/// The loop-equivalence classes of paths ending at the sink (2^n of them).
std::vector<PathClass> path_classes(const DirectedGraph& g);
std::vector<PathClass> path_classes(const DirectedGraph& g, VertexIndex end);

Path to_path(const DirectedGraph& g, const LoopEncodedPath& p);
/// Inverse of to_path. Throws PreconditionError if `p` does not have the
/// descending-chain shape.
LoopEncodedPath encode_path(const DirectedGraph& g, const Path& p);
/// e.g. "a^2 c b^0 e", or "v0" for the empty path.
std::string to_string(const DirectedGraph& g, const LoopEncodedPath& p);

// ---- serialization --------------------------------------------------------

/// {"vertices": [...], "edges": [{"id","src","dst"}, ...]} with fixed key order.
std::string to_json(const DirectedGraph& g);
DirectedGraph graph_from_json(std::string_view text);

}  // namespace qball
