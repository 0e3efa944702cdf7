#include "wlpa/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "wlpa/error.hpp"

namespace wlpa {

WeightedGraph::WeightedGraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                             std::map<VertexId, EdgeId> special)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), special_(std::move(special)) {
  if (vertices_.empty() && !edges_.empty()) {
    throw Error(Errc::unknown_vertex, "edge '" + edges_.front().id + "' uses undeclared vertex '" +
                                          edges_.front().source + "'");
  }
  if (vertices_.empty()) {
    throw Error(Errc::empty_graph, "a weighted graph needs at least one vertex");
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!vertex_lookup_.emplace(vertices_[v], v).second) {
      throw Error(Errc::duplicate_id, "duplicate vertex id '" + vertices_[v] + "'");
    }
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  vertex_weight_.assign(vertices_.size(), 0);
  source_.reserve(edges_.size());
  range_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!edge_lookup_.emplace(edge.id, e).second) {
      throw Error(Errc::duplicate_id, "duplicate edge id '" + edge.id + "'");
    }
    auto s = find_vertex(edge.source);
    auto r = find_vertex(edge.range);
    if (!s || !r) {
      throw Error(Errc::unknown_vertex, "edge '" + edge.id + "' uses undeclared vertex '" +
                                            (s ? edge.range : edge.source) + "'");
    }
    if (edge.weight < 1) {
      throw Error(Errc::bad_weight, "edge '" + edge.id + "' has weight " +
                                        std::to_string(edge.weight) + " < 1");
    }
    source_.push_back(*s);
    range_.push_back(*r);
    out_[*s].push_back(e);
    in_[*r].push_back(e);
    vertex_weight_[*s] = std::max(vertex_weight_[*s], edge.weight);
    max_weight_ = std::max(max_weight_, edge.weight);
  }
  for (const auto& [vid, eid] : special_) {
    auto v = find_vertex(vid);
    if (!v) throw Error(Errc::unknown_vertex, "special declaration names undeclared vertex '" + vid + "'");
    auto e = find_edge(eid);
    if (!e) throw Error(Errc::unknown_edge, "special declaration names undeclared edge '" + eid + "'");
    if (source_[*e] != *v) {
      throw Error(Errc::bad_special, "special edge '" + eid + "' is not emitted by '" + vid + "'");
    }
    if (edges_[*e].weight != vertex_weight_[*v]) {
      throw Error(Errc::bad_special, "special edge '" + eid + "' does not have maximal weight at '" +
                                         vid + "'");
    }
  }
}

std::optional<std::size_t> WeightedGraph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WeightedGraph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeightedGraph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error(Errc::unknown_vertex, "unknown vertex '" + std::string(id) + "'");
}

std::size_t WeightedGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error(Errc::unknown_edge, "unknown edge '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------

std::vector<bool> reachable(const WeightedGraph& g, std::span<const std::size_t> seeds) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue;
  for (std::size_t v : seeds) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges(v)) {
      std::size_t r = g.range(e);
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

namespace {

std::vector<std::size_t> indices_of(const WeightedGraph& g, const VertexSet& x) {
  std::vector<std::size_t> out;
  out.reserve(x.size());
  for (const auto& id : x) out.push_back(g.vertex_index(id));
  return out;
}

VertexSet set_of(const WeightedGraph& g, const std::vector<bool>& mask) {
  VertexSet out;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.insert(g.vertex(v));
  }
  return out;
}

}  // namespace

VertexSet tree(const WeightedGraph& g, const VertexSet& x) {
  auto seeds = indices_of(g, x);
  return set_of(g, reachable(g, seeds));
}

bool is_hereditary(const WeightedGraph& g, const VertexSet& h) {
  for (const auto& id : h) {
    for (std::size_t e : g.out_edges(g.vertex_index(id))) {
      if (!h.contains(g.vertex(g.range(e)))) return false;
    }
  }
  return true;
}

WeightedGraph subgraph_by_hereditary(const WeightedGraph& g, const VertexSet& h) {
  if (h.empty()) {
    throw Error(Errc::empty_graph, "cannot build a subgraph on the empty vertex set");
  }
  if (!is_hereditary(g, h)) {
    throw Error(Errc::not_hereditary, "vertex set is not hereditary");
  }
  std::vector<VertexId> vertices;
  for (const auto& v : g.vertices()) {
    if (h.contains(v)) vertices.push_back(v);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (h.contains(e.source)) edges.push_back(e);
  }
  std::map<VertexId, EdgeId> special;
  for (const auto& [v, e] : g.declared_special()) {
    if (h.contains(v)) special.emplace(v, e);
  }
  return WeightedGraph(std::move(vertices), std::move(edges), std::move(special));
}

VertexSet weighted_vertices(const WeightedGraph& g) {
  VertexSet out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex_weight(v) > 1) out.insert(g.vertex(v));
  }
  return out;
}

std::optional<WeightedGraph> weighted_part(const WeightedGraph& g) {
  VertexSet w = weighted_vertices(g);
  if (w.empty()) return std::nullopt;
  return subgraph_by_hereditary(g, tree(g, w));
}

// ---------------------------------------------------------------------------

void validate_path(const WeightedGraph& g, const Path& p) {
  std::size_t at = g.vertex_index(p.start);
  for (const auto& id : p.edges) {
    std::size_t e = g.edge_index(id);
    if (g.source(e) != at) {
      throw Error(Errc::invalid_argument, "edge '" + id + "' does not continue the path at '" +
                                              g.vertex(at) + "'");
    }
    at = g.range(e);
  }
}

VertexId path_range(const WeightedGraph& g, const Path& p) {
  validate_path(g, p);
  if (p.trivial()) return p.start;
  return g.edge(g.edge_index(p.edges.back())).range;
}

bool is_cycle(const WeightedGraph& g, const Path& p) {
  if (p.trivial()) return false;
  validate_path(g, p);
  if (path_range(g, p) != p.start) return false;
  std::set<std::size_t> sources;
  for (const auto& id : p.edges) {
    if (!sources.insert(g.source(g.edge_index(id))).second) return false;
  }
  return true;
}

std::vector<Path> cycles(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Path> out;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> stack;

  for (std::size_t base = 0; base < n; ++base) {
    const VertexId& base_id = g.vertex(base);
    // Only vertices greater than the base may appear, so every cycle is
    // produced once, from its least vertex.
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      for (std::size_t e : g.out_edges(v)) {
        std::size_t r = g.range(e);
        if (r == base) {
          Path p{base_id, {}};
          for (std::size_t x : stack) p.edges.push_back(g.edge(x).id);
          p.edges.push_back(g.edge(e).id);
          out.push_back(std::move(p));
        } else if (!on_path[r] && g.vertex(r) > base_id) {
          on_path[r] = true;
          stack.push_back(e);
          dfs(r);
          stack.pop_back();
          on_path[r] = false;
        }
      }
    };
    on_path[base] = true;
    dfs(base);
    on_path[base] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_acyclic(const WeightedGraph& g) {
  // Kahn's algorithm: acyclic iff every vertex can be peeled.
  std::vector<std::size_t> indegree(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) ++indegree[g.range(e)];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t peeled = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++peeled;
    for (std::size_t e : g.out_edges(v)) {
      if (--indegree[g.range(e)] == 0) ready.push_back(g.range(e));
    }
  }
  return peeled == g.vertex_count();
}

std::vector<EdgeId> cycle_exits(const WeightedGraph& g, const Path& c) {
  if (!is_cycle(g, c)) {
    throw Error(Errc::invalid_argument, "path is not a cycle");
  }
  std::map<std::size_t, std::size_t> edge_at;  // source vertex -> cycle edge
  for (const auto& id : c.edges) {
    std::size_t e = g.edge_index(id);
    edge_at.emplace(g.source(e), e);
  }
  std::vector<EdgeId> exits;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto it = edge_at.find(g.source(e));
    if (it != edge_at.end() && it->second != e) exits.push_back(g.edge(e).id);
  }
  return exits;
}

bool in_line(const WeightedGraph& g, const EdgeId& e, const EdgeId& f) {
  std::size_t ei = g.edge_index(e);
  std::size_t fi = g.edge_index(f);
  if (ei == fi) return true;
  std::size_t re = g.range(ei);
  std::size_t rf = g.range(fi);
  return reachable(g, std::span(&re, 1))[g.source(fi)] ||
         reachable(g, std::span(&rf, 1))[g.source(ei)];
}

EdgeClasses edge_classes(const WeightedGraph& g) {
  EdgeClasses out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (edge.weight == 1) {
      out.unweighted.push_back(edge.id);
      continue;
    }
    out.weighted.push_back(edge.id);
    if (g.out_edges(g.source(e)).size() == 1) {
      out.weighted_a.push_back(edge.id);
    } else {
      out.weighted_b.push_back(edge.id);
    }
  }
  return out;
}

}  // namespace wlpa
