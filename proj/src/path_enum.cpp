// Path bookkeeping for the ball graphs E_n: descending vertex chains with
// loop exponents, and the canonical ordering used for Hilbert-space bases.
#include <algorithm>

#include "qball/error.hpp"
#include "qball/graph.hpp"

namespace qball {

namespace {

int require_ball(const DirectedGraph& g) {
  auto n = ball_dimension(g);
  if (!n) throw PreconditionError("operation requires a ball graph E_n");
  return *n;
}

EdgeIndex edge_or_throw(const DirectedGraph& g, VertexIndex i, VertexIndex j) {
  auto e = g.edge_between(i, j);
  if (!e) throw PreconditionError("missing edge in ball graph");
  return *e;
}

}  // namespace

int LoopEncodedPath::max_loops() const {
  int m = 0;
  for (const auto& s : steps) m = std::max(m, s.loops);
  return m;
}

std::vector<PathClass> path_classes(const DirectedGraph& g, VertexIndex end) {
  const int n = require_ball(g);
  if (end < 0 || end > n) throw PreconditionError("end vertex not in graph");
  const int above = n - end;
  std::vector<PathClass> out;
  for (std::uint32_t mask = 0; mask < (1u << above); ++mask) {
    PathClass c;
    for (int v = n; v > end; --v)
      if (mask & (1u << (v - end - 1))) c.chain.push_back(v);
    c.chain.push_back(end);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PathClass> path_classes(const DirectedGraph& g) { return path_classes(g, 0); }

std::vector<LoopEncodedPath> enumerate_paths(const DirectedGraph& g, VertexIndex end, int cutoff) {
  if (cutoff < 0) throw PreconditionError("loop cutoff must be non-negative");
  std::vector<LoopEncodedPath> out;
  for (const auto& cls : path_classes(g, end)) {
    const int slots = cls.loop_slots();
    LoopEncodedPath p;
    p.end = end;
    for (int t = 0; t < slots; ++t) p.steps.push_back(LoopStep{cls.chain[t], 0});
    // Odometer over exponent tuples, first slot most significant.
    while (true) {
      out.push_back(p);
      int t = slots - 1;
      while (t >= 0 && p.steps[t].loops == cutoff) p.steps[t--].loops = 0;
      if (t < 0) break;
      ++p.steps[t].loops;
    }
  }
  return out;
}

Path to_path(const DirectedGraph& g, const LoopEncodedPath& p) {
  if (p.steps.empty()) return vertex_path(p.end);
  std::vector<EdgeIndex> edges;
  for (std::size_t t = 0; t < p.steps.size(); ++t) {
    const VertexIndex v = p.steps[t].vertex;
    const VertexIndex next = t + 1 < p.steps.size() ? p.steps[t + 1].vertex : p.end;
    if (next >= v) throw PreconditionError("loop-encoded chain must strictly decrease");
    if (p.steps[t].loops < 0) throw PreconditionError("negative loop exponent");
    if (p.steps[t].loops > 0) edges.insert(edges.end(), p.steps[t].loops, edge_or_throw(g, v, v));
    edges.push_back(edge_or_throw(g, v, next));
  }
  return make_path(g, std::move(edges));
}

LoopEncodedPath encode_path(const DirectedGraph& g, const Path& p) {
  LoopEncodedPath out;
  if (p.empty()) {
    out.end = p.base;
    return out;
  }
  VertexIndex cur = source(g, p);
  int loops = 0;
  for (EdgeIndex e : p.edges) {
    const auto& ed = g.edge(e);
    if (ed.src != cur) throw PreconditionError("edges do not compose");
    if (ed.dst == cur) {
      ++loops;
      continue;
    }
    if (ed.dst > cur) throw PreconditionError("path does not descend");
    out.steps.push_back(LoopStep{cur, loops});
    loops = 0;
    cur = ed.dst;
  }
  if (loops != 0) throw PreconditionError("path ends with loops at its final vertex");
  out.end = cur;
  return out;
}

std::string to_string(const DirectedGraph& g, const LoopEncodedPath& p) {
  if (p.steps.empty()) return g.vertex_id(p.end);
  std::string out;
  for (std::size_t t = 0; t < p.steps.size(); ++t) {
    const VertexIndex v = p.steps[t].vertex;
    const VertexIndex next = t + 1 < p.steps.size() ? p.steps[t + 1].vertex : p.end;
    if (t) out += ' ';
    out += g.edge_label(edge_or_throw(g, v, v)) + "^" + std::to_string(p.steps[t].loops) + " ";
    out += g.edge_label(edge_or_throw(g, v, next));
  }
  return out;
}

}  // namespace qball
