#include "wlpa/rewriter.hpp"

#include <algorithm>
#include <set>

#include "wlpa/classifier.hpp"
#include "wlpa/error.hpp"

namespace wlpa {

namespace {

// Hands out ids not yet in use, disambiguating with _2, _3, ...
class IdPool {
 public:
  template <class Range>
  void reserve(const Range& ids) {
    for (const auto& id : ids) taken_.insert(id);
  }
  void reserve(const std::string& id) { taken_.insert(id); }

  std::string claim(const std::string& base) {
    if (taken_.insert(base).second) return base;
    for (int i = 2;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (taken_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> taken_;
};

std::string suffix(const std::string& base, std::size_t i) { return base + "__" + std::to_string(i); }
std::string suffix(const std::string& base, std::size_t i, std::size_t j) {
  return suffix(base, i) + "_" + std::to_string(j);
}

std::size_t weighted_edge_count(const WeightedGraph& g) {
  return static_cast<std::size_t>(
      std::count_if(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.weight > 1; }));
}

void require_locally_finite(const WeightedGraph& g, const char* what) {
  if (!classify(g).locally_finite) {
    throw Error(Errc::precondition, std::string(what) + " needs a locally finite algebra");
  }
}

}  // namespace

std::string_view to_string(RewriteRule rule) {
  return rule == RewriteRule::type_a_reversal ? "typeA-reversal" : "typeB-elimination";
}

// ---------------------------------------------------------------------------
// Steps and traces

WeightedGraph apply_step(const WeightedGraph& g, const RewriteStep& step) {
  std::set<VertexId> gone_vertices;
  for (const auto& v : step.removed_vertices) {
    g.vertex_index(v);
    gone_vertices.insert(v);
  }
  std::set<EdgeId> gone_edges;
  for (const auto& e : step.removed_edges) {
    g.edge_index(e);
    gone_edges.insert(e);
  }

  std::vector<VertexId> vertices;
  for (const auto& v : g.vertices()) {
    if (!gone_vertices.contains(v)) vertices.push_back(v);
  }
  vertices.insert(vertices.end(), step.added_vertices.begin(), step.added_vertices.end());

  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!gone_edges.contains(e.id)) edges.push_back(e);
  }
  edges.insert(edges.end(), step.added_edges.begin(), step.added_edges.end());

  std::map<VertexId, EdgeId> special;
  for (const auto& [v, e] : g.declared_special()) {
    if (!gone_vertices.contains(v) && !gone_edges.contains(e)) special.emplace(v, e);
  }
  return WeightedGraph(std::move(vertices), std::move(edges), std::move(special));
}

WeightedGraph replay_trace(const WeightedGraph& input, const RewriteTrace& trace) {
  WeightedGraph g = input;
  for (const auto& step : trace.steps) g = apply_step(g, step);
  return g;
}

nlohmann::ordered_json trace_to_json(const RewriteTrace& trace) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& step : trace.steps) {
    nlohmann::ordered_json s;
    s["rule"] = to_string(step.rule);
    s["region"] = step.region;
    s["removed"] = {{"vertices", step.removed_vertices}, {"edges", step.removed_edges}};
    auto added_edges = nlohmann::ordered_json::array();
    for (const auto& e : step.added_edges) {
      added_edges.push_back({{"id", e.id}, {"src", e.source}, {"dst", e.range}, {"weight", e.weight}});
    }
    s["added"] = {{"vertices", step.added_vertices}, {"edges", added_edges}};
    s["generated"] = {{"vertices", step.generated.vertices}, {"edges", step.generated.edges}};
    s["vertex_images"] = nlohmann::ordered_json::object();
    for (const auto& [v, images] : step.vertex_images) s["vertex_images"][v] = images;
    out.push_back(std::move(s));
  }
  return out;
}

RewriteTrace trace_from_json(const nlohmann::json& doc) {
  auto bad = [](const std::string& what) { return Error(Errc::syntax, "trace: " + what); };
  auto field = [&](const nlohmann::json& node, const char* key) -> const nlohmann::json& {
    if (!node.is_object() || !node.contains(key)) throw bad(std::string("missing \"") + key + "\"");
    return node[key];
  };
  auto strings = [&](const nlohmann::json& node) {
    if (!node.is_array()) throw bad("expected an array of ids");
    std::vector<std::string> out;
    for (const auto& s : node) {
      if (!s.is_string()) throw bad("ids must be strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  auto dictionary = [&](const nlohmann::json& node) {
    if (!node.is_object()) throw bad("expected an object");
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : node.items()) {
      if (!v.is_string()) throw bad("dictionary values must be strings");
      out.emplace(k, v.get<std::string>());
    }
    return out;
  };

  if (!doc.is_array()) throw bad("top level must be an array of steps");
  RewriteTrace trace;
  for (const auto& node : doc) {
    RewriteStep step;
    const auto& rule = field(node, "rule");
    if (rule == "typeA-reversal") {
      step.rule = RewriteRule::type_a_reversal;
    } else if (rule == "typeB-elimination") {
      step.rule = RewriteRule::type_b_elimination;
    } else {
      throw bad("unknown rule " + rule.dump());
    }
    if (node.contains("region")) {
      for (auto& v : strings(node["region"])) step.region.insert(std::move(v));
    }
    const auto& removed = field(node, "removed");
    step.removed_vertices = strings(field(removed, "vertices"));
    step.removed_edges = strings(field(removed, "edges"));
    const auto& added = field(node, "added");
    step.added_vertices = strings(field(added, "vertices"));
    const auto& edges = field(added, "edges");
    if (!edges.is_array()) throw bad("\"added.edges\" must be an array");
    for (const auto& e : edges) {
      Edge edge;
      for (const char* key : {"id", "src", "dst"}) {
        if (!field(e, key).is_string()) throw bad(std::string("edge \"") + key + "\" must be a string");
      }
      edge.id = e["id"].get<std::string>();
      edge.source = e["src"].get<std::string>();
      edge.range = e["dst"].get<std::string>();
      if (e.contains("weight")) {
        if (!e["weight"].is_number_integer()) throw bad("edge weight must be an integer");
        edge.weight = e["weight"].get<int>();
      }
      step.added_edges.push_back(std::move(edge));
    }
    if (node.contains("generated")) {
      const auto& gen = node["generated"];
      if (gen.contains("vertices")) step.generated.vertices = dictionary(gen["vertices"]);
      if (gen.contains("edges")) step.generated.edges = dictionary(gen["edges"]);
    }
    const auto& images = field(node, "vertex_images");
    if (!images.is_object()) throw bad("\"vertex_images\" must be an object");
    for (const auto& [v, list] : images.items()) step.vertex_images.emplace(v, strings(list));
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Type A

VertexSet type_a_region(const WeightedGraph& g) {
  std::vector<std::size_t> seeds;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.weight(e) > 1) seeds.push_back(g.range(e));
  }
  auto mask = reachable(g, seeds);
  VertexSet z;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (mask[v]) z.insert(g.vertex(v));
  }
  for (const auto& e : edge_classes(g).weighted_a) z.insert(g.edge(g.edge_index(e)).source);
  return z;
}

std::pair<WeightedGraph, RewriteStep> unweight_type_a(const WeightedGraph& g) {
  require_locally_finite(g, "type-A reversal");
  RewriteStep step;
  step.rule = RewriteRule::type_a_reversal;
  step.region = type_a_region(g);

  IdPool ids;
  for (const auto& e : g.edges()) ids.reserve(e.id);
  for (const auto& e : g.edges()) {
    if (!step.region.contains(e.source)) continue;
    step.removed_edges.push_back(e.id);
    for (int j = 1; j <= e.weight; ++j) {
      std::string id = ids.claim(suffix(e.id, j));
      step.added_edges.push_back({id, e.range, e.source, 1});
      step.generated.edges.emplace(id, e.id);
    }
  }
  return {apply_step(g, step), std::move(step)};
}

// ---------------------------------------------------------------------------
// Type B

VertexId pick_minimal_weighted_vertex(const WeightedGraph& g) {
  VertexSet weighted = weighted_vertices(g);
  if (weighted.empty()) throw Error(Errc::precondition, "the graph has no weighted vertex");
  for (const auto& v : weighted) {
    VertexSet below = tree(g, {v});
    bool alone = std::none_of(below.begin(), below.end(),
                              [&](const VertexId& y) { return y != v && weighted.contains(y); });
    if (alone) return v;
  }
  throw Error(Errc::precondition, "every weighted vertex reaches another weighted vertex");
}

LocalReplacement build_local_replacement(const WeightedGraph& g, const VertexId& v_id) {
  const std::size_t v = g.vertex_index(v_id);
  auto fail = [&](const std::string& clause) {
    return Error(Errc::precondition, "local replacement at '" + v_id + "': " + clause);
  };

  std::optional<std::size_t> heavy;
  std::map<VertexId, std::vector<EdgeId>> targets;  // x_i -> f^(i1..in_i), both sorted
  for (std::size_t e : g.out_edges(v)) {
    if (g.weight(e) > 1) {
      if (heavy) throw fail("it emits two weighted edges");
      heavy = e;
    } else {
      targets[g.vertex(g.range(e))].push_back(g.edge(e).id);
    }
  }
  if (!heavy) throw fail("it emits no weighted edge");
  if (targets.empty()) throw fail("its weighted edge is the only edge it emits");
  for (auto& [x, fs] : targets) std::sort(fs.begin(), fs.end());

  const Edge& e = g.edge(*heavy);
  const std::size_t k = static_cast<std::size_t>(e.weight);
  const VertexId& u_id = e.range;
  if (u_id == v_id) throw fail("its weighted edge is a loop");
  if (!g.is_sink(g.range(*heavy))) throw fail("the range of its weighted edge is not a sink");

  VertexSet xs;
  for (const auto& [x, fs] : targets) xs.insert(x);
  VertexSet below = tree(g, xs);
  if (below.contains(v_id)) throw fail("it lies below one of its unweighted targets");
  if (below.contains(u_id)) throw fail("the range of its weighted edge lies below an unweighted target");
  for (const auto& y : below) {
    if (g.vertex_weight(g.vertex_index(y)) > 1) throw fail("weighted vertex '" + y + "' lies below it");
  }

  LocalReplacement out{below, WeightedGraph({v_id}, {}), {}, {}};
  out.region.insert(v_id);
  out.region.insert(u_id);

  IdPool vertex_ids;
  for (const auto& y : g.vertices()) {
    if (y != v_id && y != u_id) vertex_ids.reserve(y);
  }
  IdPool edge_ids;
  for (const auto& f : g.edges()) edge_ids.reserve(f.id);

  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  auto new_vertex = [&](const std::string& base, const VertexId& origin) {
    VertexId id = vertex_ids.claim(base);
    out.generated.vertices.emplace(id, origin);
    vertices.push_back(id);
    return id;
  };
  auto new_edge = [&](const std::string& base, const EdgeId& origin, const VertexId& s, const VertexId& r) {
    EdgeId id = edge_ids.claim(base);
    out.generated.edges.emplace(id, origin);
    edges.push_back({id, s, r, 1});
  };

  const std::size_t m = targets.size();
  std::vector<VertexId> u_chain;  // u_1..u_k
  for (std::size_t i = 1; i <= k; ++i) u_chain.push_back(new_vertex(suffix(u_id, i), u_id));
  std::vector<std::vector<VertexId>> u_rows(m);  // u_i1..u_i,(k-1)n_i
  std::size_t i = 0;
  for (const auto& [x, fs] : targets) {
    for (std::size_t j = 1; j <= (k - 1) * fs.size(); ++j) {
      u_rows[i].push_back(new_vertex(suffix(u_id, i + 1, j), u_id));
    }
    ++i;
  }
  vertex_ids.reserve(v_id);
  vertices.push_back(v_id);
  std::vector<std::vector<VertexId>> v_rows(m);  // v_i2..v_in_i
  i = 0;
  for (const auto& [x, fs] : targets) {
    for (std::size_t j = 2; j <= fs.size(); ++j) v_rows[i].push_back(new_vertex(suffix(v_id, i + 1, j), v_id));
    ++i;
  }
  for (const auto& y : g.vertices()) {
    if (below.contains(y)) vertices.push_back(y);
  }

  for (std::size_t a = 1; a <= k; ++a) {
    new_edge(suffix("alpha", a), e.id, a == 1 ? v_id : u_chain[a - 2], u_chain[a - 1]);
  }
  i = 0;
  std::map<VertexId, VertexId> reroute;  // x_i -> u_i,(k-1)n_i
  for (const auto& [x, fs] : targets) {
    for (std::size_t j = 1; j <= fs.size(); ++j) {
      const VertexId& s = j == 1 ? v_id : v_rows[i][j - 2];
      const VertexId& r = j == fs.size() ? x : v_rows[i][j - 1];
      new_edge(suffix("beta", i + 1, j), fs[j - 1], s, r);
    }
    for (std::size_t j = 1; j <= u_rows[i].size(); ++j) {
      new_edge(suffix("gamma", i + 1, j), e.id, j == 1 ? x : u_rows[i][j - 2], u_rows[i][j - 1]);
    }
    reroute.emplace(x, u_rows[i].back());
    ++i;
  }
  auto moved = [&](const VertexId& y) {
    auto it = reroute.find(y);
    return it == reroute.end() ? y : it->second;
  };
  for (const auto& f : g.edges()) {
    if (below.contains(f.source)) edges.push_back({f.id, moved(f.source), moved(f.range), 1});
  }

  out.images[u_id] = u_chain;
  for (const auto& row : u_rows) out.images[u_id].insert(out.images[u_id].end(), row.begin(), row.end());
  out.images[v_id] = {v_id};
  for (const auto& row : v_rows) out.images[v_id].insert(out.images[v_id].end(), row.begin(), row.end());
  for (const auto& y : below) out.images[y] = {y};

  out.graph = WeightedGraph(std::move(vertices), std::move(edges));
  return out;
}

RewriteStep replacement_step(const WeightedGraph& g, const VertexSet& h, const WeightedGraph& replacement,
                             const VertexImageMap& images, const GeneratedIds& generated) {
  for (const auto& y : h) g.vertex_index(y);
  if (!is_hereditary(g, h)) throw Error(Errc::not_hereditary, "replaced region is not hereditary");
  auto fail = [](const std::string& what) { return Error(Errc::precondition, "replacement: " + what); };

  for (const auto& y : h) {
    auto it = images.find(y);
    if (it == images.end()) throw fail("no image for '" + y + "'");
    const auto& list = it->second;
    if (list.empty()) throw fail("empty image for '" + y + "'");
    std::set<VertexId> distinct(list.begin(), list.end());
    if (distinct.size() != list.size()) throw fail("repeated vertex in the image of '" + y + "'");
    for (const auto& z : list) {
      if (!replacement.find_vertex(z)) throw fail("image vertex '" + z + "' is not in the new graph");
    }
  }
  if (images.size() != h.size()) throw fail("images are given outside the replaced region");
  for (const auto& z : replacement.vertices()) {
    if (!h.contains(z) && g.find_vertex(z)) throw fail("new vertex '" + z + "' clashes with a kept vertex");
  }

  RewriteStep step;
  step.rule = RewriteRule::type_b_elimination;
  step.region = h;
  step.generated = generated;
  step.vertex_images = images;
  for (const auto& y : g.vertices()) {
    if (h.contains(y)) step.removed_vertices.push_back(y);
  }
  step.added_vertices = replacement.vertices();

  IdPool edge_ids;
  for (const auto& f : g.edges()) edge_ids.reserve(f.id);
  for (const auto& f : replacement.edges()) edge_ids.reserve(f.id);
  for (const auto& f : g.edges()) {
    if (h.contains(f.source)) {
      step.removed_edges.push_back(f.id);
    } else if (h.contains(f.range)) {
      step.removed_edges.push_back(f.id);
      const auto& targets = images.at(f.range);
      if (targets.size() == 1) {
        step.added_edges.push_back({f.id, f.source, targets.front(), f.weight});
        continue;
      }
      for (std::size_t j = 1; j <= targets.size(); ++j) {
        EdgeId id = edge_ids.claim(suffix(f.id, j));
        step.generated.edges.emplace(id, f.id);
        step.added_edges.push_back({id, f.source, targets[j - 1], f.weight});
      }
    }
  }
  for (const auto& f : replacement.edges()) step.added_edges.push_back({f.id, f.source, f.range, 1});
  return step;
}

WeightedGraph replace_subgraph(const WeightedGraph& g, const VertexSet& h, const WeightedGraph& replacement,
                               const VertexImageMap& images) {
  return apply_step(g, replacement_step(g, h, replacement, images));
}

// ---------------------------------------------------------------------------
// Pipeline

std::pair<WeightedGraph, RewriteTrace> unweight_pipeline(const WeightedGraph& g) {
  require_locally_finite(g, "the unweighting pipeline");
  RewriteTrace trace;
  if (g.is_unweighted()) return {g, trace};

  auto type_b = edge_classes(g).weighted_b;
  auto [current, reversal] = unweight_type_a(g);
  trace.steps.push_back(std::move(reversal));
  auto after = edge_classes(current).weighted;
  std::sort(type_b.begin(), type_b.end());
  std::sort(after.begin(), after.end());
  if (after != type_b) throw Error(Errc::internal, "type-A reversal changed the type-B weighted edges");
  for (const auto& id : after) {
    if (!current.is_sink(current.range(current.edge_index(id)))) {
      throw Error(Errc::internal, "type-A reversal left weighted edge '" + id + "' without a sink range");
    }
  }

  while (!current.is_unweighted()) {
    const std::size_t before = weighted_edge_count(current);
    auto local = build_local_replacement(current, pick_minimal_weighted_vertex(current));
    auto step = replacement_step(current, local.region, local.graph, local.images, local.generated);
    current = apply_step(current, step);
    trace.steps.push_back(std::move(step));
    if (weighted_edge_count(current) + 1 != before) {
      throw Error(Errc::internal, "elimination step did not remove exactly one weighted edge");
    }
  }
  return {std::move(current), std::move(trace)};
}

}  // namespace wlpa
