#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wlpa {

using VertexId = std::string;
using EdgeId = std::string;
using VertexSet = std::set<VertexId>;

struct Edge {
  EdgeId id;
  VertexId source;
  VertexId range;
  int weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A path in a weighted graph. A trivial path is a single vertex and has
/// no edges; otherwise `edges` is a composable sequence starting at `start`.
struct Path {
  VertexId start;
  std::vector<EdgeId> edges;

  bool trivial() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// A finite weighted graph (E, w). Vertices and edges keep declaration order.
///
/// Construction validates every structural invariant: at least one vertex,
/// unique ids per class, endpoints declared, weights >= 1, and every declared
/// special edge is emitted by its vertex with maximal weight there. Instances
/// are immutable afterwards.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                std::map<VertexId, EdgeId> special = {});

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<VertexId, EdgeId>& declared_special() const { return special_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const VertexId& vertex(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::size_t source(std::size_t e) const { return source_[e]; }
  std::size_t range(std::size_t e) const { return range_[e]; }
  int weight(std::size_t e) const { return edges_[e].weight; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  // Throwing lookups (Errc::unknown_vertex / Errc::unknown_edge).
  std::size_t vertex_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;

  std::span<const std::size_t> out_edges(std::size_t v) const { return out_[v]; }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_[v]; }

  /// w(v): the maximal weight of an edge emitted by v, 0 for sinks.
  int vertex_weight(std::size_t v) const { return vertex_weight_[v]; }
  /// n: the maximal edge weight, 0 for edgeless graphs.
  int max_weight() const { return max_weight_; }
  bool is_sink(std::size_t v) const { return out_[v].empty(); }
  bool is_unweighted() const { return max_weight_ <= 1; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.special_ == b.special_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, EdgeId> special_;

  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<std::size_t> source_;
  std::vector<std::size_t> range_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<int> vertex_weight_;
  int max_weight_ = 0;
};

// ---------------------------------------------------------------------------
// Reachability, trees and hereditary sets

/// Forward-reachable vertex mask from `seeds` (seeds included).
std::vector<bool> reachable(const WeightedGraph& g, std::span<const std::size_t> seeds);

/// T(X): every vertex reachable from some vertex of X.
VertexSet tree(const WeightedGraph& g, const VertexSet& x);

bool is_hereditary(const WeightedGraph& g, const VertexSet& h);

/// The weighted subgraph on a hereditary set H: vertices H, edges emitted by H.
WeightedGraph subgraph_by_hereditary(const WeightedGraph& g, const VertexSet& h);

/// E^0_w: vertices v with w(v) > 1.
VertexSet weighted_vertices(const WeightedGraph& g);

/// The subgraph on T(E^0_w); std::nullopt when the graph has no weighted vertex.
std::optional<WeightedGraph> weighted_part(const WeightedGraph& g);

// ---------------------------------------------------------------------------
// Paths and cycles

/// Throws Errc::invalid_argument unless `p` is a path of `g`.
void validate_path(const WeightedGraph& g, const Path& p);
VertexId path_range(const WeightedGraph& g, const Path& p);

bool is_cycle(const WeightedGraph& g, const Path& p);

/// Every cycle exactly once up to rotation, based at its lexicographically
/// least vertex, sorted by (base, edge-id sequence).
std::vector<Path> cycles(const WeightedGraph& g);

bool is_acyclic(const WeightedGraph& g);

/// Exits of cycle `c`, in edge declaration order.
std::vector<EdgeId> cycle_exits(const WeightedGraph& g, const Path& c);

/// e and f are in line iff e = f, r(e) >= s(f) or r(f) >= s(e).
bool in_line(const WeightedGraph& g, const EdgeId& e, const EdgeId& f);

struct EdgeClasses {
  std::vector<EdgeId> weighted;
  std::vector<EdgeId> unweighted;
  std::vector<EdgeId> weighted_a;  // weighted, the only edge emitted by its source
  std::vector<EdgeId> weighted_b;  // weighted, source emits further edges
};

EdgeClasses edge_classes(const WeightedGraph& g);

}  // namespace wlpa
