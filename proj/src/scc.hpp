#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace wlpa::detail {

struct Components {
  std::vector<std::size_t> of;                  // node -> component
  std::vector<std::vector<std::size_t>> nodes;  // in reverse topological order
};

/// Iterative Tarjan. `succ(v)` returns an iterable range of successors.
/// Components come out sinks first: an arc u -> v implies of[u] >= of[v].
template <class Succ>
Components strongly_connected(std::size_t n, Succ succ) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  Components out;
  out.of.assign(n, kUnset);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& s = succ(f.v);
      auto begin = std::begin(s);
      auto count = static_cast<std::size_t>(std::distance(begin, std::end(s)));
      if (f.next < count) {
        std::size_t w = *(begin + static_cast<std::ptrdiff_t>(f.next));
        ++f.next;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.of[w] = out.nodes.size();
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.nodes.push_back(std::move(comp));
      }
    }
  }
  return out;
}

}  // namespace wlpa::detail
