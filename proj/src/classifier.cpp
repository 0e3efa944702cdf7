#include "wlpa/classifier.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "scc.hpp"
#include "wlpa/error.hpp"

namespace wlpa {

namespace {

// Shortest path from vertex `from` to vertex `to` (trivial when equal).
std::optional<Path> shortest_path(const WeightedGraph& g, std::size_t from, std::size_t to) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(g.vertex_count(), kNone);
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (std::size_t e : g.out_edges(v)) {
      std::size_t r = g.range(e);
      if (!seen[r]) {
        seen[r] = true;
        via[r] = e;
        queue.push_back(r);
      }
    }
  }
  if (!seen[to]) return std::nullopt;
  Path p{g.vertex(from), {}};
  for (std::size_t v = to; v != from; v = g.source(via[v])) p.edges.push_back(g.edge(via[v]).id);
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

// Shortest cycle based at v, if v lies on one.
std::optional<Path> cycle_through(const WeightedGraph& g, std::size_t v) {
  std::optional<Path> best;
  for (std::size_t e : g.out_edges(v)) {
    auto back = shortest_path(g, g.range(e), v);
    if (!back) continue;
    Path c{g.vertex(v), {g.edge(e).id}};
    c.edges.insert(c.edges.end(), back->edges.begin(), back->edges.end());
    if (!best || c.length() < best->length()) best = std::move(c);
  }
  return best;
}

std::vector<bool> on_some_cycle(const WeightedGraph& g) {
  auto comps = detail::strongly_connected(g.vertex_count(), [&](std::size_t v) {
    std::vector<std::size_t> s;
    for (std::size_t e : g.out_edges(v)) s.push_back(g.range(e));
    return s;
  });
  std::vector<bool> out(g.vertex_count(), false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (comps.nodes[comps.of[v]].size() > 1) out[v] = true;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.source(e) == g.range(e)) out[g.source(e)] = true;
  }
  return out;
}

std::vector<std::size_t> weighted_edges(const WeightedGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.weight(e) > 1) out.push_back(e);
  }
  return out;
}

// Vertices reachable from `v`, in BFS order.
std::vector<std::size_t> bfs_order(const WeightedGraph& g, std::size_t v) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> order{v};
  seen[v] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t e : g.out_edges(order[i])) {
      if (!seen[g.range(e)]) {
        seen[g.range(e)] = true;
        order.push_back(g.range(e));
      }
    }
  }
  return order;
}

std::optional<ConditionWitness> check_i(const WeightedGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::size_t> heavy;
    for (std::size_t e : g.out_edges(v)) {
      if (g.weight(e) > 1) heavy.push_back(e);
    }
    if (heavy.size() >= 2) {
      return TwoWeightedEdges{g.vertex(v), g.edge(heavy[0]).id, g.edge(heavy[1]).id};
    }
  }
  return std::nullopt;
}

std::optional<ConditionWitness> check_ii(const WeightedGraph& g) {
  for (std::size_t e : weighted_edges(g)) {
    for (std::size_t v : bfs_order(g, g.range(e))) {
      auto out = g.out_edges(v);
      if (out.size() >= 2) {
        return BranchBelowWeighted{g.edge(e).id, *shortest_path(g, g.range(e), v), g.vertex(v),
                                   g.edge(out[0]).id, g.edge(out[1]).id};
      }
    }
  }
  return std::nullopt;
}

std::optional<ConditionWitness> check_iii(const WeightedGraph& g) {
  auto heavy = weighted_edges(g);
  for (std::size_t a = 0; a < heavy.size(); ++a) {
    for (std::size_t b = a + 1; b < heavy.size(); ++b) {
      const auto& e = g.edge(heavy[a]);
      const auto& f = g.edge(heavy[b]);
      if (in_line(g, e.id, f.id)) continue;
      std::size_t re = g.range(heavy[a]);
      std::size_t rf = g.range(heavy[b]);
      auto te = reachable(g, std::span(&re, 1));
      auto tf = reachable(g, std::span(&rf, 1));
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (te[v] && tf[v]) {
          return TreesMeet{e.id, f.id, g.vertex(v), *shortest_path(g, re, v), *shortest_path(g, rf, v)};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ConditionWitness> check_iv(const WeightedGraph& g) {
  auto cyclic = on_some_cycle(g);
  for (std::size_t e : weighted_edges(g)) {
    for (std::size_t v : bfs_order(g, g.range(e))) {
      if (cyclic[v]) {
        return CycleBelowWeighted{g.edge(e).id, *shortest_path(g, g.range(e), v), *cycle_through(g, v)};
      }
    }
  }
  return std::nullopt;
}

// Edges that can end a path from u whose first edge is weighted (or
// unweighted), together with the first edge that realises each.
struct LastEdges {
  std::vector<std::optional<std::size_t>> via;  // indexed by edge
};

LastEdges last_edges(const WeightedGraph& g, std::size_t u, bool weighted_first) {
  LastEdges out;
  out.via.assign(g.edge_count(), std::nullopt);
  for (std::size_t w : g.out_edges(u)) {
    if ((g.weight(w) > 1) != weighted_first) continue;
    if (!out.via[w]) out.via[w] = w;
    std::size_t r = g.range(w);
    auto below = reachable(g, std::span(&r, 1));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (below[g.source(e)] && !out.via[e]) out.via[e] = w;
    }
  }
  return out;
}

Path path_ending_with(const WeightedGraph& g, std::size_t first, std::size_t last) {
  Path p{g.edge(first).source, {g.edge(first).id}};
  if (first == last) return p;
  auto mid = shortest_path(g, g.range(first), g.source(last));
  p.edges.insert(p.edges.end(), mid->edges.begin(), mid->edges.end());
  p.edges.push_back(g.edge(last).id);
  return p;
}

// R(u, u') witness pair (p from u, q from u'), if the relation holds.
std::optional<std::pair<Path, Path>> crossing(const WeightedGraph& g, const LastEdges& a,
                                              const LastEdges& b) {
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!a.via[e]) continue;
    for (std::size_t f = 0; f < g.edge_count(); ++f) {
      if (!b.via[f] || e == f || g.range(e) != g.range(f)) continue;
      return std::make_pair(path_ending_with(g, *a.via[e], e), path_ending_with(g, *b.via[f], f));
    }
  }
  return std::nullopt;
}

std::optional<ConditionWitness> check_v(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<LastEdges> heavy(n), light(n);
  for (std::size_t u = 0; u < n; ++u) {
    heavy[u] = last_edges(g, u, true);
    light[u] = last_edges(g, u, false);
  }
  std::vector<std::vector<std::optional<std::pair<Path, Path>>>> rel(n);
  for (std::size_t u = 0; u < n; ++u) {
    rel[u].resize(n);
    for (std::size_t u2 = 0; u2 < n; ++u2) rel[u][u2] = crossing(g, heavy[u], light[u2]);
  }
  // Shortest R-cycle through the first vertex that has one.
  for (std::size_t start = 0; start < n; ++start) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(n, kNone);
    std::deque<std::size_t> queue{start};
    std::vector<bool> seen(n, false);
    seen[start] = true;
    std::optional<std::size_t> closing;
    while (!queue.empty() && !closing) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t u2 = 0; u2 < n; ++u2) {
        if (!rel[u][u2]) continue;
        if (u2 == start) {
          closing = u;
          break;
        }
        if (!seen[u2]) {
          seen[u2] = true;
          parent[u2] = u;
          queue.push_back(u2);
        }
      }
    }
    if (!closing) continue;
    std::vector<std::size_t> chain;  // start = u_1, ..., u_n
    for (std::size_t u = *closing; u != kNone; u = parent[u]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    CrossingPaths w;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& pq = *rel[chain[i]][chain[(i + 1) % chain.size()]];
      w.p.push_back(pq.first);
      w.q.push_back(pq.second);
    }
    return w;
  }
  return std::nullopt;
}

// --- witness validation -----------------------------------------------------

bool valid_path_from(const WeightedGraph& g, const Path& p, const VertexId& from) {
  if (p.start != from) return false;
  try {
    validate_path(g, p);
  } catch (const Error&) {
    return false;
  }
  return true;
}

bool is_weighted_edge(const WeightedGraph& g, const EdgeId& e) {
  auto i = g.find_edge(e);
  return i && g.weight(*i) > 1;
}

bool emitted_by(const WeightedGraph& g, const EdgeId& e, const VertexId& v) {
  auto i = g.find_edge(e);
  return i && g.edge(*i).source == v;
}

}  // namespace

bool ConditionReport::weakly_well_behaved() const {
  return conditions[0].holds && conditions[1].holds && conditions[2].holds && conditions[3].holds;
}

bool ConditionReport::well_behaved() const { return weakly_well_behaved() && conditions[4].holds; }

ConditionReport check_conditions(const WeightedGraph& g) {
  ConditionReport report;
  auto part = weighted_part(g);
  if (!part) {
    report.weighted_part_empty = true;
    return report;
  }
  std::array<std::optional<ConditionWitness>, 5> found{check_i(*part), check_ii(*part), check_iii(*part),
                                                       check_iv(*part), check_v(*part)};
  for (std::size_t i = 0; i < 5; ++i) {
    report.conditions[i].holds = !found[i];
    report.conditions[i].witness = found[i];
  }
  return report;
}

bool verify_witness(const WeightedGraph& g, int condition, const ConditionWitness& witness) {
  if (condition < 1 || condition > 5 || witness.index() != static_cast<std::size_t>(condition - 1)) {
    return false;
  }
  switch (condition) {
    case 1: {
      const auto& w = std::get<TwoWeightedEdges>(witness);
      return w.first != w.second && is_weighted_edge(g, w.first) && is_weighted_edge(g, w.second) &&
             emitted_by(g, w.first, w.vertex) && emitted_by(g, w.second, w.vertex);
    }
    case 2: {
      const auto& w = std::get<BranchBelowWeighted>(witness);
      if (!is_weighted_edge(g, w.weighted)) return false;
      const VertexId& r = g.edge(g.edge_index(w.weighted)).range;
      return valid_path_from(g, w.approach, r) && path_range(g, w.approach) == w.vertex &&
             w.first != w.second && emitted_by(g, w.first, w.vertex) && emitted_by(g, w.second, w.vertex);
    }
    case 3: {
      const auto& w = std::get<TreesMeet>(witness);
      if (!is_weighted_edge(g, w.first) || !is_weighted_edge(g, w.second)) return false;
      if (in_line(g, w.first, w.second)) return false;
      const VertexId& r1 = g.edge(g.edge_index(w.first)).range;
      const VertexId& r2 = g.edge(g.edge_index(w.second)).range;
      return valid_path_from(g, w.from_first, r1) && path_range(g, w.from_first) == w.meeting &&
             valid_path_from(g, w.from_second, r2) && path_range(g, w.from_second) == w.meeting;
    }
    case 4: {
      const auto& w = std::get<CycleBelowWeighted>(witness);
      if (!is_weighted_edge(g, w.weighted)) return false;
      const VertexId& r = g.edge(g.edge_index(w.weighted)).range;
      return valid_path_from(g, w.approach, r) && path_range(g, w.approach) == w.cycle.start &&
             is_cycle(g, w.cycle);
    }
    case 5: {
      const auto& w = std::get<CrossingPaths>(witness);
      const std::size_t n = w.p.size();
      if (n == 0 || w.q.size() != n) return false;
      for (std::size_t i = 0; i < n; ++i) {
        const Path& p = w.p[i];
        const Path& q = w.q[i];
        if (p.trivial() || q.trivial()) return false;
        if (!valid_path_from(g, p, p.start) || !valid_path_from(g, q, q.start)) return false;
        if (path_range(g, p) != path_range(g, q)) return false;
        if (!is_weighted_edge(g, p.edges.front()) || is_weighted_edge(g, q.edges.front())) return false;
        if (p.edges.back() == q.edges.back()) return false;
        // s(p_1) = s(q_n) and s(p_i) = s(q_{i-1}).
        if (p.start != w.q[(i + n - 1) % n].start) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<CycleExit> find_cycle_with_exit(const WeightedGraph& g) {
  auto cyclic = on_some_cycle(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!cyclic[v] || g.out_edges(v).size() < 2) continue;
    Path c = *cycle_through(g, v);
    for (std::size_t e : g.out_edges(v)) {
      if (g.edge(e).id != c.edges.front()) return CycleExit{c, g.edge(e).id};
    }
  }
  return std::nullopt;
}

bool no_cycle_has_exit(const WeightedGraph& g) { return !find_cycle_with_exit(g); }

// ---------------------------------------------------------------------------

std::string_view to_string(NonNoetherianWitness::Kind kind) {
  switch (kind) {
    case NonNoetherianWitness::Kind::weighted_return: return "weighted_return";
    case NonNoetherianWitness::Kind::idempotent_loop: return "idempotent_loop";
  }
  return "?";
}

namespace {

// Shortest walk in T from `from` to some letter satisfying `done`, using only
// letters accepted by `allowed` after the first, with at least one arc.
template <class Allowed, class Done>
std::optional<Word> letter_walk(const TransitionDigraph& t, LetterId from, std::size_t max_len,
                                Allowed allowed, Done done) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const std::size_t n = t.node_count();
  std::vector<std::size_t> parent(n, kNone), depth(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<LetterId> queue;
  auto build = [&](LetterId end, LetterId before) {
    Word w;
    w.letters.push_back(end);
    for (LetterId x = before; x != kNone; x = parent[x]) w.letters.push_back(x);
    std::reverse(w.letters.begin(), w.letters.end());
    w.vertex = t.alphabet().source(w.letters.front());
    return w;
  };
  // `from` is the root; its parent chain ends at kNone.
  seen[from] = true;
  depth[from] = 1;
  queue.push_back(from);
  while (!queue.empty()) {
    LetterId x = queue.front();
    queue.pop_front();
    if (depth[x] >= max_len) continue;
    for (LetterId y : t.successors(x)) {
      if (done(y)) return build(y, x);
      if (!seen[y] && allowed(y)) {
        seen[y] = true;
        parent[y] = x;
        depth[y] = depth[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<NonNoetherianWitness> find_non_noetherian_witness(const TransitionDigraph& t) {
  const WeightedGraph& g = t.graph();
  const Alphabet& a = t.alphabet();
  const std::size_t bound = 2 * t.node_count();

  std::vector<std::size_t> heavy;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.weight(e) > 1) heavy.push_back(e);
  }
  std::sort(heavy.begin(), heavy.end(),
            [&](std::size_t x, std::size_t y) { return g.edge(x).id < g.edge(y).id; });
  for (std::size_t e : heavy) {
    LetterId start = a.id(e, 2, Polarity::real);
    LetterId target = a.id(e, 2, Polarity::ghost);
    auto w = letter_walk(t, start, bound, [](LetterId) { return true; },
                         [&](LetterId y) { return y == target; });
    if (w) return NonNoetherianWitness{NonNoetherianWitness::Kind::weighted_return, *w};
  }

  // Admissible letters: super-special real letters and ghosts of unweighted edges.
  std::vector<bool> admissible(t.node_count(), false);
  for (LetterId x = 0; x < t.node_count(); ++x) {
    const Letter& l = a[x];
    if (l.polarity == Polarity::ghost) {
      admissible[x] = g.weight(l.edge) == 1;
    } else {
      int other = 0;
      for (std::size_t f : g.out_edges(g.source(l.edge))) {
        if (f != l.edge) other = std::max(other, g.weight(f));
      }
      admissible[x] = l.copy > other;
    }
  }
  for (LetterId x = 0; x < t.node_count(); ++x) {
    if (!admissible[x] || t.is_forbidden(a.star(x), x)) continue;
    auto loop = letter_walk(t, x, bound, [&](LetterId y) { return admissible[y]; },
                            [&](LetterId y) { return y == x; });
    if (!loop) continue;
    loop->letters.pop_back();  // closed walk x ... y with an arc y -> x
    Word p = star(a, *loop);
    if (is_nod(t, p) && is_nod2(t, p) && is_nod(t, concat(p, star(a, p)))) {
      return NonNoetherianWitness{NonNoetherianWitness::Kind::idempotent_loop, p};
    }
  }
  return std::nullopt;
}

std::vector<HeadBlock> parse_weighted_head(const TransitionDigraph& t, const Word& o) {
  if (!check_conditions(t.graph()).weakly_well_behaved()) {
    throw Error(Errc::precondition, "the weighted part is not weakly well-behaved");
  }
  auto blocks = split_weighted_head(t, o);
  for (const auto& b : blocks) {
    if (!b.valid) {
      throw Error(Errc::internal, "a block of the head factorization is not " +
                                      std::string(b.ghost ? "unweighted" : "super-special"));
    }
  }
  return blocks;
}

// ---------------------------------------------------------------------------

namespace {

GkClass from_growth(Growth g) {
  switch (g) {
    case Growth::finite: return GkClass::zero;
    case Growth::linear: return GkClass::one;
    case Growth::superlinear: return GkClass::at_least_two;
  }
  return GkClass::at_least_two;
}

}  // namespace

Classification classify(const WeightedGraph& g, const std::map<VertexId, EdgeId>& special) {
  Classification c;
  c.conditions = check_conditions(g);
  c.acyclic = is_acyclic(g);
  c.cycle_exit = find_cycle_with_exit(g);
  bool wb = c.conditions.well_behaved();
  c.finite_dimensional = c.acyclic && wb;
  c.locally_finite = !c.cycle_exit && wb;
  c.noetherian = c.locally_finite;
  c.gk = c.finite_dimensional ? GkClass::zero : c.locally_finite ? GkClass::one : GkClass::at_least_two;

  TransitionDigraph t(g, select_special(g, special));
  c.growth = growth_class(t);
  try {
    c.quasicycle_gk = gk_class(t);
  } catch (const Error& e) {
    if (e.code() != Errc::limit_exceeded) throw;
  }
  if (from_growth(c.growth) != c.gk || (c.quasicycle_gk && *c.quasicycle_gk != c.gk)) {
    throw Error(Errc::internal, "classification mismatch: conditions give " +
                                    std::string(to_string(c.gk)) + ", growth is " +
                                    std::string(to_string(c.growth)) + ", quasicycles give " +
                                    (c.quasicycle_gk ? std::string(to_string(*c.quasicycle_gk)) : "?"));
  }
  if (!c.locally_finite) c.non_noetherian = find_non_noetherian_witness(t);
  return c;
}

}  // namespace wlpa
