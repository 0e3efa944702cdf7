#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/corpus.hpp"
#include "wlpa/classifier.hpp"
#include "wlpa/error.hpp"
#include "wlpa/io.hpp"
#include "wlpa/rewriter.hpp"

using namespace wlpa;

namespace {

const Edge& edge(const WeightedGraph& g, const std::string& id) { return g.edge(g.edge_index(id)); }

std::vector<std::string> ids(const std::vector<Edge>& edges) {
  std::vector<std::string> out;
  for (const auto& e : edges) out.push_back(e.id);
  return out;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

WeightedGraph g4_after_type_a() { return unweight_type_a(corpus::running_example()).first; }

std::size_t no_exit_cycles(const WeightedGraph& g) {
  std::size_t n = 0;
  for (const auto& c : cycles(g)) n += cycle_exits(g, c).empty();
  return n;
}

}  // namespace

TEST(TypeA, RunningExample) {
  auto [g, step] = unweight_type_a(corpus::running_example());
  EXPECT_EQ(step.region, (VertexSet{"u", "a", "b", "c", "y"}));
  EXPECT_EQ(g.vertex_count(), 8u);
  EXPECT_EQ(g.edge_count(), 10u);
  EXPECT_EQ(edge(g, "k__1"), (Edge{"k__1", "a", "u", 1}));
  EXPECT_EQ(edge(g, "j__1"), (Edge{"j__1", "c", "b", 1}));
  EXPECT_EQ(edge(g, "i__1"), (Edge{"i__1", "b", "y", 1}));
  EXPECT_EQ(edge(g, "i__2"), (Edge{"i__2", "b", "y", 1}));
  for (const char* kept : {"e", "f", "g", "l", "h", "m"}) {
    EXPECT_EQ(edge(g, kept), edge(corpus::running_example(), kept));
  }
  auto weighted = edge_classes(g).weighted;
  ASSERT_EQ(weighted, std::vector<EdgeId>{"e"});
  EXPECT_TRUE(g.is_sink(g.vertex_index("u")));
}

TEST(TypeA, WeightedArrow) {
  auto [g, step] = unweight_type_a(corpus::weighted_arrow());
  EXPECT_EQ(step.region, (VertexSet{"u", "v"}));
  EXPECT_TRUE(g.is_unweighted());
  EXPECT_EQ(edge(g, "e__1"), (Edge{"e__1", "u", "v", 1}));
  EXPECT_EQ(edge(g, "e__2"), (Edge{"e__2", "u", "v", 1}));
  EXPECT_TRUE(g.is_sink(g.vertex_index("v")));
}

TEST(TypeA, UnweightedIsIdentity) {
  auto g0 = corpus::two_cycle();
  auto [g, step] = unweight_type_a(g0);
  EXPECT_EQ(g, g0);
  EXPECT_TRUE(step.region.empty());
  EXPECT_TRUE(step.added_edges.empty());
}

TEST(TypeA, RefusesNonLocallyFinite) {
  EXPECT_EQ(code_of([] { unweight_type_a(corpus::three_loops()); }), Errc::precondition);
}

TEST(TypeA, GeneratedIdsAvoidCollisions) {
  auto g0 = corpus::parse("vertex v u w\nedge e : v -> u weight 2\nedge e__1 : w -> u");
  ASSERT_TRUE(classify(g0).locally_finite);
  auto [g, step] = unweight_type_a(g0);
  EXPECT_EQ(edge(g, "e__1"), edge(g0, "e__1"));
  EXPECT_EQ(edge(g, "e__1_2"), (Edge{"e__1_2", "u", "v", 1}));
  EXPECT_EQ(edge(g, "e__2"), (Edge{"e__2", "u", "v", 1}));
}

TEST(PickMinimal, Examples) {
  EXPECT_EQ(pick_minimal_weighted_vertex(g4_after_type_a()), "v");
  auto two = corpus::parse(
      "vertex q p s t x y\nedge a : q -> s weight 2\nedge b : q -> x\nedge c : p -> t weight 2\nedge d : p -> y");
  EXPECT_EQ(pick_minimal_weighted_vertex(two), "p");
  EXPECT_EQ(code_of([] { pick_minimal_weighted_vertex(corpus::unit_loop()); }), Errc::precondition);
}

TEST(LocalReplacement, RunningExample) {
  auto g = g4_after_type_a();
  auto local = build_local_replacement(g, "v");
  EXPECT_EQ(local.region, (VertexSet{"v", "u", "x", "y", "z"}));
  EXPECT_EQ(local.graph.vertices(),
            (std::vector<VertexId>{"u__1", "u__2", "u__1_1", "u__1_2", "v", "v__1_2", "x", "y", "z"}));
  const auto& e2 = local.graph;
  EXPECT_EQ(edge(e2, "alpha__1"), (Edge{"alpha__1", "v", "u__1", 1}));
  EXPECT_EQ(edge(e2, "alpha__2"), (Edge{"alpha__2", "u__1", "u__2", 1}));
  EXPECT_EQ(edge(e2, "beta__1_1"), (Edge{"beta__1_1", "v", "v__1_2", 1}));
  EXPECT_EQ(edge(e2, "beta__1_2"), (Edge{"beta__1_2", "v__1_2", "x", 1}));
  EXPECT_EQ(edge(e2, "gamma__1_1"), (Edge{"gamma__1_1", "x", "u__1_1", 1}));
  EXPECT_EQ(edge(e2, "gamma__1_2"), (Edge{"gamma__1_2", "u__1_1", "u__1_2", 1}));
  EXPECT_EQ(edge(e2, "l"), (Edge{"l", "u__1_2", "z", 1}));
  EXPECT_EQ(edge(e2, "h"), (Edge{"h", "u__1_2", "y", 1}));
  EXPECT_EQ(edge(e2, "m"), (Edge{"m", "z", "z", 1}));
  EXPECT_EQ(e2.edge_count(), 9u);
  EXPECT_EQ(local.images.at("u"), (std::vector<VertexId>{"u__1", "u__2", "u__1_1", "u__1_2"}));
  EXPECT_EQ(local.images.at("v"), (std::vector<VertexId>{"v", "v__1_2"}));
  EXPECT_EQ(local.images.at("z"), std::vector<VertexId>{"z"});
  EXPECT_EQ(local.generated.vertices.at("u__1_2"), "u");
  EXPECT_EQ(local.generated.edges.at("beta__1_2"), "g");
}

TEST(LocalReplacement, SmallestInstance) {
  auto g = corpus::parse("vertex v u x\nedge e : v -> u weight 2\nedge f : v -> x");
  auto local = build_local_replacement(g, "v");
  EXPECT_EQ(local.graph.vertices(), (std::vector<VertexId>{"u__1", "u__2", "u__1_1", "v", "x"}));
  EXPECT_EQ(ids(local.graph.edges()), (std::vector<EdgeId>{"alpha__1", "alpha__2", "beta__1_1", "gamma__1_1"}));
  EXPECT_EQ(edge(local.graph, "beta__1_1").range, "x");
  EXPECT_EQ(edge(local.graph, "gamma__1_1").source, "x");
}

TEST(LocalReplacement, TwoTargets) {
  auto g = corpus::parse("vertex v u x1 x2\nedge e : v -> u weight 3\nedge f : v -> x2\nedge g : v -> x1");
  auto local = build_local_replacement(g, "v");
  // x1 sorts first, so it owns chain 1; k = 3 gives two gamma edges per chain.
  EXPECT_EQ(ids(local.graph.edges()),
            (std::vector<EdgeId>{"alpha__1", "alpha__2", "alpha__3", "beta__1_1", "gamma__1_1", "gamma__1_2",
                                 "beta__2_1", "gamma__2_1", "gamma__2_2"}));
  EXPECT_EQ(edge(local.graph, "beta__1_1").range, "x1");
  EXPECT_EQ(edge(local.graph, "beta__2_1").range, "x2");
  EXPECT_EQ(local.images.at("u").size(), 3u + 2u + 2u);
}

TEST(LocalReplacement, StructuralFailures) {
  EXPECT_EQ(code_of([] { build_local_replacement(corpus::weighted_arrow(), "v"); }), Errc::precondition);
  EXPECT_EQ(code_of([] { build_local_replacement(corpus::running_example(), "x"); }), Errc::precondition);
  // Range of the weighted edge is not a sink before the type-A step.
  EXPECT_EQ(code_of([] { build_local_replacement(corpus::running_example(), "v"); }), Errc::precondition);
  try {
    build_local_replacement(corpus::running_example(), "v");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not a sink"), std::string::npos);
  }
}

TEST(ReplaceSubgraph, RunningExample) {
  auto g = g4_after_type_a();
  auto local = build_local_replacement(g, "v");
  auto out = replace_subgraph(g, local.region, local.graph, local.images);
  EXPECT_EQ(out.vertex_count(), 12u);
  EXPECT_EQ(out.edge_count(), 16u);
  EXPECT_TRUE(out.is_unweighted());
  std::vector<VertexId> k_targets;
  for (int j = 1; j <= 4; ++j) {
    const auto& e = edge(out, "k__1__" + std::to_string(j));
    EXPECT_EQ(e.source, "a");
    k_targets.push_back(e.range);
  }
  EXPECT_EQ(k_targets, (std::vector<VertexId>{"u__1", "u__2", "u__1_1", "u__1_2"}));
  EXPECT_EQ(edge(out, "i__1"), (Edge{"i__1", "b", "y", 1}));
  EXPECT_EQ(edge(out, "i__2"), (Edge{"i__2", "b", "y", 1}));
  EXPECT_EQ(edge(out, "j__1"), (Edge{"j__1", "c", "b", 1}));
  EXPECT_FALSE(out.find_edge("k__1"));
}

TEST(ReplaceSubgraph, DisjointAndIdentity) {
  auto g = corpus::parse("vertex a b c\nedge p : a -> a\nedge q : b -> c");
  // No boundary edges: the region is swapped out wholesale.
  auto e2 = corpus::parse("vertex c1 c2\nedge r : c1 -> c2");
  auto out = replace_subgraph(g, {"a"}, e2, {{"a", {"c1", "c2"}}});
  EXPECT_EQ(out.vertices(), (std::vector<VertexId>{"b", "c", "c1", "c2"}));
  EXPECT_EQ(ids(out.edges()), (std::vector<EdgeId>{"q", "r"}));

  // Singleton images of the region itself give back the same graph.
  auto same = replace_subgraph(g, {"c"}, corpus::parse("vertex c"), {{"c", {"c"}}});
  EXPECT_EQ(same, g);
}

TEST(ReplaceSubgraph, Errors) {
  auto g = g4_after_type_a();
  auto local = build_local_replacement(g, "v");
  EXPECT_EQ(code_of([&] { replace_subgraph(g, {"v", "u"}, local.graph, local.images); }), Errc::not_hereditary);
  auto partial = local.images;
  partial.erase("z");
  EXPECT_EQ(code_of([&] { replace_subgraph(g, local.region, local.graph, partial); }), Errc::precondition);
  auto repeated = local.images;
  repeated["u"].push_back("u__1");
  EXPECT_EQ(code_of([&] { replace_subgraph(g, local.region, local.graph, repeated); }), Errc::precondition);
  auto missing = local.images;
  missing["u"].push_back("nowhere");
  EXPECT_EQ(code_of([&] { replace_subgraph(g, local.region, local.graph, missing); }), Errc::precondition);
}

TEST(Pipeline, RunningExample) {
  auto [out, trace] = unweight_pipeline(corpus::running_example());
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].rule, RewriteRule::type_a_reversal);
  EXPECT_EQ(trace.steps[1].rule, RewriteRule::type_b_elimination);
  EXPECT_EQ(out.vertex_count(), 12u);
  EXPECT_EQ(out.edge_count(), 16u);
  EXPECT_TRUE(out.is_unweighted());
}

TEST(Pipeline, WeightedArrowAndUnweighted) {
  auto [out, trace] = unweight_pipeline(corpus::weighted_arrow());
  EXPECT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(out.vertex_count(), 2u);
  EXPECT_EQ(ids(out.edges()), (std::vector<EdgeId>{"e__1", "e__2"}));

  auto [same, empty] = unweight_pipeline(corpus::two_cycle());
  EXPECT_EQ(same, corpus::two_cycle());
  EXPECT_TRUE(empty.steps.empty());

  EXPECT_EQ(code_of([] { unweight_pipeline(corpus::three_loops()); }), Errc::precondition);
}

TEST(Trace, JsonRoundTripAndReplay) {
  auto g = corpus::running_example();
  auto [out, trace] = unweight_pipeline(g);
  auto text = trace_to_json(trace).dump();
  auto back = trace_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back, trace);
  EXPECT_EQ(replay_trace(g, back), out);
  EXPECT_EQ(serialize_graph(replay_trace(g, back), Format::wg), serialize_graph(out, Format::wg));

  auto j = trace_to_json(trace);
  EXPECT_EQ(j[0]["rule"], "typeA-reversal");
  EXPECT_EQ(j[1]["vertex_images"]["u"].size(), 4u);
}

TEST(Trace, MalformedAndMismatched) {
  EXPECT_EQ(code_of([] { trace_from_json(nlohmann::json::parse(R"({"rule":"x"})")); }), Errc::syntax);
  EXPECT_EQ(code_of([] { trace_from_json(nlohmann::json::parse(R"([{"rule":"typeA-reversal"}])")); }),
            Errc::syntax);
  auto trace = unweight_pipeline(corpus::running_example()).second;
  // Replaying on a graph without the removed edges fails loudly.
  EXPECT_EQ(code_of([&] { replay_trace(corpus::two_cycle(), trace); }), Errc::unknown_edge);
}

TEST(Pipeline, PropertiesOnRandomGraphs) {
  std::mt19937 rng(113);
  int rewritten = 0;
  for (int i = 0; i < 1500; ++i) {
    auto g = corpus::random_locally_finite(rng, {5, 6, 3});
    if (g.is_unweighted() || !classify(g).locally_finite) continue;
    ++rewritten;
    auto [out, trace] = unweight_pipeline(g);
    const std::string where = serialize_graph(g, Format::wg);
    EXPECT_TRUE(out.is_unweighted()) << where;

    const std::size_t weighted = edge_classes(g).weighted_b.size();
    EXPECT_EQ(trace.steps.size(), 1 + weighted) << where;
    WeightedGraph current = g;
    const std::size_t loops = no_exit_cycles(g);
    for (const auto& step : trace.steps) {
      current = apply_step(current, step);
      EXPECT_TRUE(classify(current).locally_finite) << where;
      EXPECT_EQ(no_exit_cycles(current), loops) << where;
      for (const auto& [v, images] : step.vertex_images) {
        std::set<VertexId> distinct(images.begin(), images.end());
        EXPECT_EQ(distinct.size(), images.size());
        EXPECT_FALSE(images.empty());
      }
    }
    EXPECT_EQ(current, out) << where;
    EXPECT_EQ(replay_trace(g, trace_from_json(nlohmann::json::parse(trace_to_json(trace).dump()))), out);
  }
  EXPECT_GT(rewritten, 120);
}

TEST(Pipeline, Deterministic) {
  std::mt19937 rng(127);
  for (int i = 0; i < 100; ++i) {
    auto g = corpus::random_locally_finite(rng);
    if (!classify(g).locally_finite) continue;
    auto a = unweight_pipeline(g);
    auto b = unweight_pipeline(g);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
  }
}
