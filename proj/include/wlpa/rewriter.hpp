#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlpa/graph.hpp"

namespace wlpa {

/// Replacement vertex ids per vertex of the replaced region. Each image list
/// is nonempty with pairwise distinct members.
using VertexImageMap = std::map<VertexId, std::vector<VertexId>>;

enum class RewriteRule { type_a_reversal, type_b_elimination };

/// New id -> the id it was derived from. Vertex and edge ids live in separate
/// namespaces, so they are kept apart.
struct GeneratedIds {
  std::map<VertexId, VertexId> vertices;
  std::map<EdgeId, EdgeId> edges;

  friend bool operator==(const GeneratedIds&, const GeneratedIds&) = default;
};

std::string_view to_string(RewriteRule rule);

/// One graph rewrite, recorded so that it can be replayed on its input.
///
/// Applying a step keeps the surviving vertices and edges in their order,
/// then appends the added ones. Declared specials referring to removed
/// vertices or edges are dropped.
struct RewriteStep {
  RewriteRule rule = RewriteRule::type_a_reversal;
  VertexSet region;  // Z for a reversal, H for an elimination
  std::vector<VertexId> removed_vertices;
  std::vector<EdgeId> removed_edges;
  std::vector<VertexId> added_vertices;
  std::vector<Edge> added_edges;
  GeneratedIds generated;
  VertexImageMap vertex_images;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;

  friend bool operator==(const RewriteTrace&, const RewriteTrace&) = default;
};

/// Throws Errc::unknown_vertex / Errc::unknown_edge if the step removes
/// something `g` does not have.
WeightedGraph apply_step(const WeightedGraph& g, const RewriteStep& step);
WeightedGraph replay_trace(const WeightedGraph& input, const RewriteTrace& trace);

nlohmann::ordered_json trace_to_json(const RewriteTrace& trace);
/// Throws Errc::syntax on schema violations.
RewriteTrace trace_from_json(const nlohmann::json& doc);

/// Z = T(r(weighted edges)) plus the sources of type-A weighted edges.
VertexSet type_a_region(const WeightedGraph& g);

/// Replaces every edge e with s(e) in Z by w(e) reversed unweighted copies
/// e__1..e__w. Throws Errc::precondition unless the algebra is locally finite.
std::pair<WeightedGraph, RewriteStep> unweight_type_a(const WeightedGraph& g);

/// Least weighted vertex v with T(v) free of other weighted vertices.
/// Throws Errc::precondition if there is no weighted vertex or none qualifies.
VertexId pick_minimal_weighted_vertex(const WeightedGraph& g);

/// E' together with the vertex images of T(v).
struct LocalReplacement {
  VertexSet region;  // T(v)
  WeightedGraph graph;
  VertexImageMap images;
  GeneratedIds generated;
};

/// The unweighted graph replacing T(v) for a weighted vertex v whose tree holds
/// no other weighted vertex. Targets x_1..x_m are ordered by id, and parallel
/// edges to one target by edge id. Throws Errc::precondition naming the
/// violated structural clause.
LocalReplacement build_local_replacement(const WeightedGraph& g, const VertexId& v);

/// The replacement graph: H removed, E' adopted with weight 1, and every edge
/// entering H split into one copy per image of its range (weight kept).
/// Throws Errc::not_hereditary or Errc::precondition.
WeightedGraph replace_subgraph(const WeightedGraph& g, const VertexSet& h, const WeightedGraph& replacement,
                               const VertexImageMap& images);

/// The step replace_subgraph applies; `generated` is merged into the record.
RewriteStep replacement_step(const WeightedGraph& g, const VertexSet& h, const WeightedGraph& replacement,
                             const VertexImageMap& images, const GeneratedIds& generated = {});

/// One reversal step, then one elimination per weighted edge until the graph is
/// unweighted. An unweighted input comes back unchanged with an empty trace.
/// Throws Errc::precondition unless the algebra is locally finite, and
/// Errc::internal when a step audit fails.
std::pair<WeightedGraph, RewriteTrace> unweight_pipeline(const WeightedGraph& g);

}  // namespace wlpa
