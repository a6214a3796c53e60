#include "qball/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "json.hpp"
#include "qball/error.hpp"

namespace qball {

namespace {

std::string vertex_name(int i) { return "v" + std::to_string(i); }

std::string edge_name(int i, int j) {
  if (i < 10 && j < 10) return "e" + std::to_string(i) + std::to_string(j);
  return "e" + std::to_string(i) + "_" + std::to_string(j);
}

std::string unique_name(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

// Letters used for the quantum disc (b, e) and the 4-ball (a..e).
std::map<std::string, EdgeIndex> ball_letters(const DirectedGraph& g, int n) {
  static const std::vector<std::tuple<const char*, int, int>> kLetters = {
      {"a", 2, 2}, {"b", 1, 1}, {"c", 2, 1}, {"d", 2, 0}, {"e", 1, 0}};
  std::map<std::string, EdgeIndex> out;
  if (n > 2) return out;
  for (const auto& [name, i, j] : kLetters) {
    if (i > n) continue;
    if (auto e = g.edge_between(i, j)) out.emplace(name, *e);
  }
  return out;
}

DirectedGraph with_letters(DirectedGraph g) {
  auto n = ball_dimension(g);
  if (!n || *n > 2) return g;
  auto letters = ball_letters(g, *n);
  return DirectedGraph(g.vertices(), g.edges(), std::move(letters));
}

}  // namespace

DirectedGraph::DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                             std::map<std::string, EdgeIndex> edge_aliases)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), aliases_(std::move(edge_aliases)) {
  std::set<std::string> ids(vertices_.begin(), vertices_.end());
  if (ids.size() != vertices_.size()) throw PreconditionError("duplicate vertex id");
  std::set<std::string> eids;
  for (const auto& e : edges_) {
    if (!eids.insert(e.id).second) throw PreconditionError("duplicate edge id '" + e.id + "'");
    if (e.src < 0 || e.src >= num_vertices() || e.dst < 0 || e.dst >= num_vertices())
      throw PreconditionError("edge '" + e.id + "' has an endpoint outside the vertex set");
  }
  labels_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) labels_[i] = edges_[i].id;
  for (const auto& [alias, e] : aliases_) {
    if (e < 0 || e >= num_edges()) throw PreconditionError("alias '" + alias + "' names no edge");
    if (ids.count(alias) || (eids.count(alias) && edges_[e].id != alias))
      throw PreconditionError("alias '" + alias + "' collides with an id");
    labels_[e] = alias;
  }
  out_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) out_[edges_[i].src].push_back(static_cast<EdgeIndex>(i));
}

std::optional<VertexIndex> DirectedGraph::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == id) return static_cast<VertexIndex>(i);
  return std::nullopt;
}

std::optional<EdgeIndex> DirectedGraph::find_edge(std::string_view id_or_alias) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id_or_alias) return static_cast<EdgeIndex>(i);
  if (auto it = aliases_.find(std::string(id_or_alias)); it != aliases_.end()) return it->second;
  return std::nullopt;
}

std::optional<EdgeIndex> DirectedGraph::edge_between(VertexIndex src, VertexIndex dst) const {
  if (src < 0 || src >= num_vertices()) return std::nullopt;
  for (EdgeIndex e : out_[src])
    if (edges_[e].dst == dst) return e;
  return std::nullopt;
}

const std::string& DirectedGraph::edge_label(EdgeIndex e) const { return labels_.at(e); }

// ---- paths ----------------------------------------------------------------

VertexIndex source(const DirectedGraph& g, const Path& p) {
  return p.empty() ? p.base : g.edge(p.edges.front()).src;
}

VertexIndex range(const DirectedGraph& g, const Path& p) {
  return p.empty() ? p.base : g.edge(p.edges.back()).dst;
}

Path vertex_path(VertexIndex v) { return Path{v, {}}; }

Path make_path(const DirectedGraph& g, std::vector<EdgeIndex> edges) {
  if (edges.empty()) throw PreconditionError("make_path needs at least one edge; use vertex_path");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] < 0 || edges[i] >= g.num_edges()) throw PreconditionError("edge index out of range");
    if (i > 0 && g.edge(edges[i - 1]).dst != g.edge(edges[i]).src)
      throw PreconditionError("edges do not compose into a path");
  }
  Path p;
  p.base = g.edge(edges.front()).src;
  p.edges = std::move(edges);
  return p;
}

Path concat(const DirectedGraph& g, const Path& a, const Path& b) {
  if (range(g, a) != source(g, b)) throw PreconditionError("concat: r(a) != s(b)");
  if (a.empty()) return b;
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

std::optional<Path> strip_prefix(const DirectedGraph& g, const Path& p, const Path& prefix) {
  if (prefix.empty()) {
    if (source(g, p) != prefix.base) return std::nullopt;
    return p;
  }
  if (prefix.length() > p.length()) return std::nullopt;
  if (!std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin())) return std::nullopt;
  if (prefix.length() == p.length()) return vertex_path(range(g, p));
  Path rest;
  rest.edges.assign(p.edges.begin() + static_cast<std::ptrdiff_t>(prefix.length()), p.edges.end());
  rest.base = g.edge(rest.edges.front()).src;
  return rest;
}

std::string to_string(const DirectedGraph& g, const Path& p) {
  if (p.empty()) return g.vertex_id(p.base);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += ' ';
    out += g.edge_label(p.edges[i]);
  }
  return out;
}

// ---- construction ---------------------------------------------------------

DirectedGraph point_graph() { return DirectedGraph({vertex_name(0)}, {}); }

DirectedGraph double_suspension(const DirectedGraph& g) {
  std::set<std::string> taken(g.vertices().begin(), g.vertices().end());
  for (const auto& e : g.edges()) taken.insert(e.id);

  const int top = g.num_vertices();
  auto vertices = g.vertices();
  vertices.push_back(unique_name(vertex_name(top), taken));
  taken.insert(vertices.back());

  auto edges = g.edges();
  for (int j = top; j >= 0; --j) {
    auto id = unique_name(edge_name(top, j), taken);
    taken.insert(id);
    edges.push_back(Edge{id, top, j});
  }
  return with_letters(DirectedGraph(std::move(vertices), std::move(edges)));
}

DirectedGraph ball_graph(int n) {
  if (n < 1) throw PreconditionError("ball_graph requires n >= 1 (use point_graph for n = 0)");
  std::vector<std::string> vertices;
  for (int i = 0; i <= n; ++i) vertices.push_back(vertex_name(i));
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 0; --j) edges.push_back(Edge{edge_name(i, j), i, j});
  DirectedGraph g(std::move(vertices), std::move(edges));
  return DirectedGraph(g.vertices(), g.edges(), ball_letters(g, n));
}

std::optional<int> ball_dimension(const DirectedGraph& g) {
  const int n = g.num_vertices() - 1;
  if (n < 1 || g.num_edges() != n * (n + 3) / 2) return std::nullopt;
  int k = 0;
  for (int i = 0; i <= n; ++i)
    if (g.vertex_id(i) != vertex_name(i)) return std::nullopt;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 0; --j, ++k) {
      const auto& e = g.edge(k);
      if (e.src != i || e.dst != j || e.id != edge_name(i, j)) return std::nullopt;
    }
  return n;
}

// ---- ideals ---------------------------------------------------------------

namespace {

std::vector<bool> membership(const DirectedGraph& g, const VertexSet& h) {
  std::vector<bool> in(g.num_vertices(), false);
  for (VertexIndex v : h) {
    if (v < 0 || v >= g.num_vertices()) throw PreconditionError("vertex index out of range");
    in[v] = true;
  }
  return in;
}

}  // namespace

bool is_hereditary(const DirectedGraph& g, const VertexSet& h) {
  auto in = membership(g, h);
  for (const auto& e : g.edges())
    if (in[e.src] && !in[e.dst]) return false;
  return true;
}

bool is_saturated(const DirectedGraph& g, const VertexSet& h) {
  auto in = membership(g, h);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (in[v] || g.is_sink(v)) continue;
    bool all_in = true;
    for (EdgeIndex e : g.out_edges(v)) all_in = all_in && in[g.edge(e).dst];
    if (all_in) return false;
  }
  return true;
}

std::vector<VertexSet> hereditary_saturated_sets(const DirectedGraph& g) {
  const int nv = g.num_vertices();
  if (nv > 24) throw PreconditionError("hereditary_saturated_sets enumerates subsets; too many vertices");
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
    VertexSet h;
    for (int v = 0; v < nv; ++v)
      if (mask & (1u << v)) h.push_back(v);
    if (is_hereditary(g, h) && is_saturated(g, h)) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw PreconditionError("quotient_graph: vertex set is not hereditary and saturated");
  auto in = membership(g, h);
  std::vector<int> remap(g.num_vertices(), -1);
  std::vector<std::string> vertices;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (in[v]) continue;
    remap[v] = static_cast<int>(vertices.size());
    vertices.push_back(g.vertex_id(v));
  }
  std::vector<Edge> edges;
  std::map<EdgeIndex, EdgeIndex> edge_remap;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (in[ed.src] || in[ed.dst]) continue;
    edge_remap[e] = static_cast<EdgeIndex>(edges.size());
    edges.push_back(Edge{ed.id, remap[ed.src], remap[ed.dst]});
  }
  std::map<std::string, EdgeIndex> aliases;
  for (const auto& [alias, e] : g.edge_aliases())
    if (auto it = edge_remap.find(e); it != edge_remap.end()) aliases.emplace(alias, it->second);
  return DirectedGraph(std::move(vertices), std::move(edges), std::move(aliases));
}

// ---- serialization --------------------------------------------------------

std::string to_json(const DirectedGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices();
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["src"] = g.vertex_id(e.src);
    je["dst"] = g.vertex_id(e.dst);
    j["edges"].push_back(std::move(je));
  }
  return j.dump();
}

DirectedGraph graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid graph JSON: ") + e.what(), e.byte);
  }
  try {
    auto vertices = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, VertexIndex> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<VertexIndex>(i);
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      auto lookup = [&](const char* key) {
        auto name = je.at(key).get<std::string>();
        auto it = index.find(name);
        if (it == index.end()) throw PreconditionError("edge endpoint '" + name + "' is not a vertex");
        return it->second;
      };
      edges.push_back(Edge{je.at("id").get<std::string>(), lookup("src"), lookup("dst")});
    }
    return with_letters(DirectedGraph(std::move(vertices), std::move(edges)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what(), 0);
  }
}

}  // namespace qball
