#include "wlpa/oracle.hpp"

#include <unordered_map>

#include "wlpa/error.hpp"

namespace wlpa {

namespace {

struct Symbol {
  std::size_t edge;
  int copy;
  bool ghost;
};

struct DoubleGraph {
  const WeightedGraph& g;
  const SpecialSelection& special;
  std::vector<Symbol> symbols;
  std::vector<std::vector<std::size_t>> next;  // symbols allowed after each symbol

  DoubleGraph(const WeightedGraph& graph, const SpecialSelection& sp) : g(graph), special(sp) {
    for (bool ghost : {false, true}) {
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        for (int i = 1; i <= g.weight(e); ++i) symbols.push_back({e, i, ghost});
      }
    }
    next.resize(symbols.size());
    for (std::size_t x = 0; x < symbols.size(); ++x) {
      for (std::size_t y = 0; y < symbols.size(); ++y) {
        if (allowed(symbols[x], symbols[y])) next[x].push_back(y);
      }
    }
  }

  std::size_t start(const Symbol& x) const { return x.ghost ? g.range(x.edge) : g.source(x.edge); }
  std::size_t end(const Symbol& x) const { return x.ghost ? g.source(x.edge) : g.range(x.edge); }

  bool forbidden(const Symbol& x, const Symbol& y) const {
    if (!x.ghost && y.ghost) {
      // special real copy followed by a ghost copy of the same edge
      return x.edge == y.edge && special.is_special(x.edge);
    }
    if (x.ghost && !y.ghost) {
      // e_1* f_1 with e and f leaving the same vertex
      return x.copy == 1 && y.copy == 1 && g.source(x.edge) == g.source(y.edge);
    }
    return false;
  }

  bool allowed(const Symbol& x, const Symbol& y) const { return end(x) == start(y) && !forbidden(x, y); }
};

// Degrees packed into one integer, digit i holding component i + 1 shifted
// by max_len. Dense storage while the key space is small.
class DegreeTally {
 public:
  DegreeTally(std::size_t dimension, std::size_t max_len)
      : dimension_(dimension), base_(2 * static_cast<std::int64_t>(max_len) + 1) {
    std::int64_t size = 1;
    for (std::size_t i = 0; i < dimension && size <= kDenseLimit; ++i) size *= base_;
    dense_ = size <= kDenseLimit;
    if (dense_) counts_.assign(static_cast<std::size_t>(size), 0);
    origin_ = 0;
    std::int64_t place = 1;
    for (std::size_t i = 0; i < dimension; ++i, place *= base_) origin_ += place * (base_ / 2);
  }

  std::int64_t origin() const { return origin_; }

  std::int64_t delta(int copy, bool ghost) const {
    std::int64_t place = 1;
    for (int i = 1; i < copy; ++i) place *= base_;
    return ghost ? -place : place;
  }

  void add(std::int64_t key) {
    if (dense_) {
      ++counts_[static_cast<std::size_t>(key)];
    } else {
      ++sparse_[key];
    }
  }

  DegreeCounts result() const {
    DegreeCounts out;
    auto emit = [&](std::int64_t key, std::uint64_t n) {
      DegreeVector d(dimension_);
      for (std::size_t i = 0; i < dimension_; ++i, key /= base_) {
        const auto c = key % base_ - base_ / 2;
        const auto step = DegreeVector::unit(dimension_, i + 1, c < 0 ? -1 : 1);
        for (auto j = c < 0 ? -c : c; j > 0; --j) d += step;
      }
      out[d] += n;
    };
    if (dense_) {
      for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k]) emit(static_cast<std::int64_t>(k), counts_[k]);
      }
    } else {
      for (const auto& [k, n] : sparse_) emit(k, n);
    }
    return out;
  }

 private:
  static constexpr std::int64_t kDenseLimit = 1 << 22;
  std::size_t dimension_;
  std::int64_t base_;
  std::int64_t origin_ = 0;
  bool dense_ = false;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::int64_t, std::uint64_t> sparse_;
};

}  // namespace

OracleCounts brute_force_counts(const WeightedGraph& g, const SpecialSelection& special, std::size_t max_len,
                                std::size_t budget) {
  DoubleGraph d(g, special);
  const std::size_t dim = static_cast<std::size_t>(g.max_weight());
  DegreeTally tally(dim, max_len);
  std::vector<std::int64_t> delta;
  for (const auto& s : d.symbols) delta.push_back(tally.delta(s.copy, s.ghost));

  std::vector<std::uint64_t> by_length(max_len + 1, 0);
  by_length[0] = g.vertex_count();
  std::uint64_t words = g.vertex_count();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) tally.add(tally.origin());

  struct Frame {
    std::size_t symbol;
    std::size_t next;
    std::int64_t key;
  };
  std::vector<Frame> stack;
  stack.reserve(max_len);
  auto record = [&](std::size_t symbol, std::int64_t key) {
    if (++words > budget) throw Error(Errc::limit_exceeded, "brute force budget exhausted");
    ++by_length[stack.size() + 1];
    tally.add(key);
    stack.push_back({symbol, 0, key});
  };
  if (max_len > 0) {
    for (std::size_t x = 0; x < d.symbols.size(); ++x) {
      record(x, tally.origin() + delta[x]);
      while (!stack.empty()) {
        Frame& top = stack.back();
        const auto& after = d.next[top.symbol];
        if (stack.size() == max_len || top.next == after.size()) {
          stack.pop_back();
          continue;
        }
        std::size_t y = after[top.next++];
        record(y, top.key + delta[y]);
      }
    }
  }

  OracleCounts out;
  for (auto n : by_length) out.by_length.emplace_back(n);
  out.by_degree = tally.result();
  out.words = words;
  return out;
}

std::vector<BigInt> transfer_matrix_totals(const WeightedGraph& g, const SpecialSelection& special,
                                           std::size_t max_len) {
  DoubleGraph d(g, special);
  const std::size_t n = d.symbols.size();
  std::vector<BigInt> totals(max_len + 1, 0);
  totals[0] = g.vertex_count();
  if (max_len == 0) return totals;
  std::vector<BigInt> ending(n, 1);  // words of the current length ending in each symbol
  totals[1] = n;
  for (std::size_t len = 2; len <= max_len; ++len) {
    std::vector<BigInt> next(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (ending[x] == 0) continue;
      for (std::size_t y : d.next[x]) next[y] += ending[x];
    }
    ending = std::move(next);
    for (const auto& c : ending) totals[len] += c;
  }
  return totals;
}

}  // namespace wlpa
