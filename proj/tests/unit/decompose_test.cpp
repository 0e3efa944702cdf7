#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "support/corpus.hpp"
#include "wlpa/classifier.hpp"
#include "wlpa/decompose.hpp"
#include "wlpa/error.hpp"
#include "wlpa/io.hpp"
#include "wlpa/nod.hpp"
#include "wlpa/rewriter.hpp"

using namespace wlpa;

namespace {

BigInt nod_total(const WeightedGraph& g) {
  TransitionDigraph t(g, select_special(g));
  BigInt sum = 0;
  for (const auto& c : count_by_length(t, t.node_count() + 1)) sum += c;
  return sum;
}

std::vector<std::pair<BigInt, Ring>> shape(const Decomposition& d) {
  std::vector<std::pair<BigInt, Ring>> out;
  for (const auto& b : d.blocks) out.emplace_back(b.size, b.ring);
  std::sort(out.begin(), out.end());
  return out;
}

// Unweighted graph whose cycles have no exits: a DAG, some of whose sinks
// are closed up into cycles of length 1 to 3, with extra edges into the cycles.
WeightedGraph no_exit_graph(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, 5);
  std::vector<VertexId> vs;
  for (int i = 0; i < n; ++i) vs.push_back("d" + std::to_string(i));
  std::vector<Edge> edges;
  auto add = [&](const VertexId& s, const VertexId& r) {
    edges.push_back({"e" + std::to_string(edges.size()), s, r, 1});
  };
  for (int i = pick(0, 5); i > 0 && n > 1; --i) {
    int s = pick(0, n - 2);
    add(vs[s], vs[pick(s + 1, n - 1)]);
  }
  std::vector<bool> emits(n, false);
  for (const auto& e : edges) emits[std::stoi(e.source.substr(1))] = true;
  std::vector<VertexId> free_sources, on_cycles;
  for (int v = 0; v < n; ++v) {
    if (emits[v] || pick(0, 1) == 0) {
      free_sources.push_back(vs[v]);
      continue;
    }
    const int len = pick(1, 3);
    VertexId prev = vs[v];
    on_cycles.push_back(prev);
    for (int j = 1; j < len; ++j) {
      VertexId c = vs[v] + "c" + std::to_string(j);
      vs.push_back(c);
      on_cycles.push_back(c);
      add(prev, c);
      prev = c;
    }
    add(prev, vs[v]);
  }
  if (!on_cycles.empty() && !free_sources.empty()) {
    for (int i = pick(0, 3); i > 0; --i) {
      add(free_sources[pick(0, static_cast<int>(free_sources.size()) - 1)],
          on_cycles[pick(0, static_cast<int>(on_cycles.size()) - 1)]);
    }
  }
  return WeightedGraph(vs, edges);
}

// Reverse search over paths ending at v that avoid v before the end.
BigInt paths_by_search(const WeightedGraph& g, std::size_t v) {
  BigInt count = 0;
  std::function<void(std::size_t, int)> back = [&](std::size_t x, int depth) {
    ++count;
    ASSERT_LT(depth, 64);
    for (std::size_t e : g.in_edges(x)) {
      if (g.source(e) != v) back(g.source(e), depth + 1);
    }
  };
  back(v, 0);
  return count;
}

WeightedGraph shuffled(const WeightedGraph& g, std::mt19937& rng) {
  auto vs = g.vertices();
  auto es = g.edges();
  std::shuffle(vs.begin(), vs.end(), rng);
  std::shuffle(es.begin(), es.end(), rng);
  return WeightedGraph(vs, es, g.declared_special());
}

}  // namespace

TEST(Decompose, RunningExample) {
  auto out = unweight_pipeline(corpus::running_example()).first;
  auto d = decompose(out);
  ASSERT_EQ(d.blocks.size(), 3u);
  EXPECT_EQ(d.blocks[0], (Block{5, Ring::field, "u__2"}));
  EXPECT_EQ(d.blocks[1], (Block{12, Ring::field, "y"}));
  EXPECT_EQ(d.blocks[2], (Block{8, Ring::laurent, "z"}));
  EXPECT_EQ(pretty(d), "M_5(K) (+) M_12(K) (+) M_8(K[x,x^-1])");
  EXPECT_FALSE(total_dimension(d));
  auto j = decomposition_to_json(d);
  EXPECT_EQ(j["blocks"][0]["size"], 5);
  EXPECT_EQ(j["blocks"][2]["ring"], "Laurent");
  EXPECT_EQ(j["total_dimension"], "infinite");
}

TEST(Decompose, SmallExamples) {
  auto d3 = decompose(unweight_pipeline(corpus::weighted_arrow()).first);
  ASSERT_EQ(d3.blocks.size(), 1u);
  EXPECT_EQ(d3.blocks[0], (Block{3, Ring::field, "v"}));
  EXPECT_EQ(total_dimension(d3), BigInt(9));

  auto d1 = decompose(corpus::single_vertex());
  ASSERT_EQ(d1.blocks.size(), 1u);
  EXPECT_EQ(d1.blocks[0].size, 1);
  EXPECT_EQ(total_dimension(d1), BigInt(1));
  EXPECT_EQ(pretty(d1), "M_1(K)");

  auto d2 = decompose(corpus::unit_loop());
  ASSERT_EQ(d2.blocks.size(), 1u);
  EXPECT_EQ(d2.blocks[0].ring, Ring::laurent);
  EXPECT_EQ(d2.blocks[0].size, 1);
}

TEST(Decompose, Preconditions) {
  auto code = [](const WeightedGraph& g) {
    try {
      decompose(g);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::internal;
  };
  EXPECT_EQ(code(corpus::weighted_arrow()), Errc::precondition);
  EXPECT_EQ(code(corpus::rose(2)), Errc::precondition);
}

TEST(Decompose, LargeSizesPrintAsStrings) {
  Decomposition d{{{BigInt("123456789012345678901234567890"), Ring::field, "v"}}};
  EXPECT_EQ(decomposition_to_json(d)["blocks"][0]["size"], "123456789012345678901234567890");
}

TEST(Decompose, PathCountsAgreeWithSearchAndAreBaseInvariant) {
  std::mt19937 rng(131);
  int cyclic = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = no_exit_graph(rng);
    ASSERT_TRUE(no_cycle_has_exit(g)) << serialize_graph(g, Format::wg);
    auto d = decompose(g);
    for (const auto& b : d.blocks) {
      EXPECT_EQ(b.size, paths_by_search(g, g.vertex_index(b.at)));
    }
    for (const auto& c : cycles(g)) {
      ++cyclic;
      BigInt at_base = paths_ending_at(g, c.start);
      for (const auto& id : c.edges) {
        EXPECT_EQ(paths_ending_at(g, g.edge(g.edge_index(id)).range), at_base) << serialize_graph(g, Format::wg);
      }
    }
  }
  EXPECT_GT(cyclic, 100);
}

TEST(Decompose, AcyclicConservation) {
  std::mt19937 rng(137);
  for (int i = 0; i < 300; ++i) {
    auto g = no_exit_graph(rng);
    if (!is_acyclic(g)) continue;
    EXPECT_EQ(total_dimension(decompose(g)), nod_total(g)) << serialize_graph(g, Format::wg);
  }
}

TEST(Decompose, FiniteDimensionalConservation) {
  std::mt19937 rng(139);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    auto g = corpus::random_locally_finite(rng, {5, 6, 3});
    auto c = classify(g);
    if (!c.finite_dimensional) continue;
    ++checked;
    auto out = unweight_pipeline(g).first;
    auto total = total_dimension(decompose(out));
    ASSERT_TRUE(total);
    EXPECT_EQ(*total, nod_total(g)) << serialize_graph(g, Format::wg);
    EXPECT_EQ(*total, nod_total(out));
  }
  EXPECT_GT(checked, 100);
}

TEST(Decompose, InvariantUnderDeclarationOrder) {
  std::mt19937 rng(149);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    auto g = corpus::random_locally_finite(rng, {5, 6, 3});
    if (g.is_unweighted() || !classify(g).locally_finite) continue;
    ++checked;
    auto expected = shape(decompose(unweight_pipeline(g).first));
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(shape(decompose(unweight_pipeline(shuffled(g, rng)).first)), expected)
          << serialize_graph(g, Format::wg);
    }
  }
  EXPECT_GT(checked, 40);
}
