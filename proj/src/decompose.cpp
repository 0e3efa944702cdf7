#include "wlpa/decompose.hpp"

#include <deque>

#include "wlpa/classifier.hpp"
#include "wlpa/error.hpp"
#include "wlpa/io.hpp"

namespace wlpa {

std::string_view to_string(Ring ring) { return ring == Ring::field ? "K" : "Laurent"; }

BigInt paths_ending_at(const WeightedGraph& g, const VertexId& v_id) {
  const std::size_t target = g.vertex_index(v_id);
  const std::size_t n = g.vertex_count();
  // Edges leaving the target are ignored; `above` is what still reaches it.
  std::vector<bool> above(n, false);
  above[target] = true;
  std::deque<std::size_t> queue{target};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t e : g.in_edges(x)) {
      std::size_t y = g.source(e);
      if (y != target && !above[y]) {
        above[y] = true;
        queue.push_back(y);
      }
    }
  }

  // Counts in reverse topological order; leftovers mean a cycle above the target.
  std::vector<std::size_t> pending(n, 0);
  std::size_t members = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!above[x]) continue;
    ++members;
    if (x == target) continue;
    for (std::size_t e : g.out_edges(x)) pending[x] += above[g.range(e)];
  }
  std::vector<BigInt> count(n);
  BigInt total = 0;
  std::size_t done = 0;
  queue.push_back(target);
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    ++done;
    BigInt c = x == target ? 1 : 0;
    if (x != target) {
      for (std::size_t e : g.out_edges(x)) {
        if (above[g.range(e)]) c += count[g.range(e)];
      }
    }
    count[x] = c;
    total += c;
    for (std::size_t e : g.in_edges(x)) {
      std::size_t y = g.source(e);
      if (y != target && above[y] && --pending[y] == 0) queue.push_back(y);
    }
  }
  if (done != members) {
    throw Error(Errc::precondition, "infinitely many paths end at '" + v_id + "'");
  }
  return total;
}

Decomposition decompose(const WeightedGraph& g) {
  if (!g.is_unweighted()) throw Error(Errc::precondition, "decomposition needs an unweighted graph");
  if (auto exit = find_cycle_with_exit(g)) {
    throw Error(Errc::precondition, "a cycle at '" + exit->cycle.start + "' has exit '" + exit->exit + "'");
  }
  Decomposition d;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) d.blocks.push_back({paths_ending_at(g, g.vertex(v)), Ring::field, g.vertex(v)});
  }
  for (const auto& c : cycles(g)) d.blocks.push_back({paths_ending_at(g, c.start), Ring::laurent, c.start});
  return d;
}

std::optional<BigInt> total_dimension(const Decomposition& d) {
  BigInt sum = 0;
  for (const auto& b : d.blocks) {
    if (b.ring == Ring::laurent) return std::nullopt;
    sum += b.size * b.size;
  }
  return sum;
}

std::string pretty(const Decomposition& d) {
  std::string out;
  for (const auto& b : d.blocks) {
    if (!out.empty()) out += " (+) ";
    out += "M_" + b.size.str() + (b.ring == Ring::field ? "(K)" : "(K[x,x^-1])");
  }
  return out;
}

nlohmann::ordered_json decomposition_to_json(const Decomposition& d) {
  auto blocks = nlohmann::ordered_json::array();
  for (const auto& b : d.blocks) {
    blocks.push_back({{"size", big_to_json(b.size)}, {"ring", to_string(b.ring)}, {"at", b.at}});
  }
  nlohmann::ordered_json out;
  out["blocks"] = std::move(blocks);
  auto total = total_dimension(d);
  out["total_dimension"] = total ? big_to_json(*total) : nlohmann::ordered_json("infinite");
  out["pretty"] = pretty(d);
  return out;
}

}  // namespace wlpa
