#include "wlpa/quasicycle.hpp"

#include <algorithm>
#include <deque>

#include "scc.hpp"
#include "wlpa/error.hpp"

namespace wlpa {

namespace {

bool closed(const TransitionDigraph& t, const Word& p) {
  return word_source(t.alphabet(), p) == word_range(t.alphabet(), p);
}

// Nod-squared test on letters[from, from + len) of `w`, assuming w itself is nod.
bool factor_is_nod2(const TransitionDigraph& t, const std::vector<LetterId>& w, std::size_t from,
                    std::size_t len) {
  LetterId first = w[from];
  LetterId last = w[from + len - 1];
  return t.alphabet().range(last) == t.alphabet().source(first) && t.has_arc(last, first);
}

// Vertex-free BFS over the letters, starting from the successors of `from`.
std::vector<bool> reach_after(const TransitionDigraph& t, LetterId from) {
  std::vector<bool> seen(t.node_count(), false);
  std::deque<LetterId> queue;
  for (LetterId y : t.successors(from)) {
    if (!seen[y]) {
      seen[y] = true;
      queue.push_back(y);
    }
  }
  while (!queue.empty()) {
    LetterId x = queue.front();
    queue.pop_front();
    for (LetterId y : t.successors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_nod2(const TransitionDigraph& t, const Word& p) {
  check_letters(t.alphabet(), p);
  if (p.trivial()) throw Error(Errc::invalid_argument, "a nod-squared path must be nontrivial");
  if (!is_d_path(t, p) || !closed(t, p)) {
    throw Error(Errc::invalid_argument, "a nod-squared path must be a closed path");
  }
  return is_nod(t, p) && t.has_arc(p.letters.back(), p.letters.front());
}

bool is_quasicycle(const TransitionDigraph& t, const Word& q) {
  check_letters(t.alphabet(), q);
  if (q.trivial() || !is_d_path(t, q) || !closed(t, q)) return false;
  if (!is_nod2(t, q)) return false;
  std::vector<LetterId> square = q.letters;
  square.insert(square.end(), q.letters.begin(), q.letters.end());
  const std::size_t n = q.length();
  for (std::size_t len = 1; len < n; ++len) {
    for (std::size_t from = 0; from + len <= square.size(); ++from) {
      if (factor_is_nod2(t, square, from, len)) return false;
    }
  }
  return true;
}

std::vector<Word> quasicycles(const TransitionDigraph& t, std::size_t limit) {
  const std::size_t n = t.node_count();
  const std::size_t cap = 2 * n;
  std::vector<Word> out;
  auto record = [&](const std::vector<LetterId>& cycle) {
    if (cycle.size() > cap) {
      throw Error(Errc::limit_exceeded, "quasicycle longer than the search cap");
    }
    for (std::size_t r = 0; r < cycle.size(); ++r) {
      Word w;
      for (std::size_t i = 0; i < cycle.size(); ++i) w.letters.push_back(cycle[(r + i) % cycle.size()]);
      w.vertex = t.alphabet().source(w.letters.front());
      out.push_back(std::move(w));
    }
    if (out.size() > limit) {
      throw Error(Errc::limit_exceeded, "more than " + std::to_string(limit) + " quasicycles");
    }
  };

  std::vector<LetterId> path;
  std::vector<bool> on_path(n, false);
  // Extends a chordless path c0..ck; every letter on it is greater than c0.
  auto extend = [&](auto&& self) -> void {
    LetterId c0 = path.front();
    LetterId ck = path.back();
    for (LetterId y : t.successors(ck)) {
      if (y == c0) continue;  // handled when ck was appended
      if (y < c0 || on_path[y] || t.has_arc(y, y)) continue;
      bool chord = false;
      for (std::size_t i = 0; i + 1 < path.size() && !chord; ++i) chord = t.has_arc(path[i], y);
      for (std::size_t i = 1; i < path.size() && !chord; ++i) chord = t.has_arc(y, path[i]);
      if (chord) continue;
      path.push_back(y);
      on_path[y] = true;
      if (t.has_arc(y, c0)) {
        record(path);
      } else {
        self(self);
      }
      on_path[y] = false;
      path.pop_back();
    }
  };

  for (LetterId c0 = 0; c0 < n; ++c0) {
    if (t.has_arc(c0, c0)) {
      record({c0});
      continue;
    }
    path.assign(1, c0);
    on_path[c0] = true;
    extend(extend);
    on_path[c0] = false;
  }

  std::sort(out.begin(), out.end());
  for (const auto& q : out) {
    if (!is_quasicycle(t, q)) {
      throw Error(Errc::internal, "search produced a word that is not a quasicycle");
    }
  }
  return out;
}

bool rotation_equiv(const Word& q, const Word& q2) {
  if (q.length() != q2.length()) return false;
  if (q.trivial()) return q == q2;
  std::vector<LetterId> doubled = q.letters;
  doubled.insert(doubled.end(), q.letters.begin(), q.letters.end());
  return std::search(doubled.begin(), doubled.end(), q2.letters.begin(), q2.letters.end()) !=
         doubled.end();
}

bool connects(const TransitionDigraph& t, const Word& q, const Word& q2) {
  check_letters(t.alphabet(), q);
  check_letters(t.alphabet(), q2);
  if (q.trivial() || q2.trivial()) throw Error(Errc::invalid_argument, "quasicycles are nontrivial");
  return reach_after(t, q.letters.back())[q2.letters.front()];
}

bool is_selfconnected(const TransitionDigraph& t, const Word& q, EmptyConnector convention) {
  check_letters(t.alphabet(), q);
  if (q.trivial()) throw Error(Errc::invalid_argument, "quasicycles are nontrivial");
  const std::size_t n = t.node_count();
  const std::size_t k = q.length();
  const LetterId first = q.letters.front();
  const LetterId last = q.letters.back();
  if (convention == EmptyConnector::allowed && t.has_arc(last, first)) return true;

  // State (x, j): o ends in letter x; j in 1..k-1 means o is still the proper
  // prefix q[0..j) of q, j == 0 means o has already left q.
  auto index = [&](LetterId x, std::size_t j) { return x * k + j; };
  std::vector<bool> seen(n * k, false);
  std::deque<std::pair<LetterId, std::size_t>> queue;
  auto push = [&](LetterId y, std::size_t j) {
    if (!seen[index(y, j)]) {
      seen[index(y, j)] = true;
      queue.emplace_back(y, j);
    }
  };
  auto step = [&](LetterId y, std::size_t j) {
    if (j != 0 && y == q.letters[j]) {
      if (j + 1 < k) push(y, j + 1);  // j + 1 == k would make q a prefix of o
    } else {
      push(y, 0);
    }
  };
  for (LetterId y : t.successors(last)) {
    if (y == first) {
      if (k > 1) push(y, 1);
    } else {
      push(y, 0);
    }
  }
  while (!queue.empty()) {
    auto [x, j] = queue.front();
    queue.pop_front();
    if (t.has_arc(x, first)) return true;
    for (LetterId y : t.successors(x)) step(y, j);
  }
  return false;
}

std::string_view to_string(GkClass c) {
  switch (c) {
    case GkClass::zero: return "0";
    case GkClass::one: return "1";
    case GkClass::at_least_two: return "2+";
  }
  return "?";
}

GkClass gk_class(const TransitionDigraph& t, EmptyConnector convention) {
  auto qs = quasicycles(t);
  if (qs.empty()) return GkClass::zero;
  for (const auto& q : qs) {
    if (is_selfconnected(t, q, convention)) return GkClass::at_least_two;
  }
  // Rotation classes share their letter set; every letter of a class is the
  // last letter of one rotation and the first letter of another.
  std::vector<std::vector<LetterId>> classes;
  std::vector<bool> taken(qs.size(), false);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (taken[i]) continue;
    for (std::size_t j = i; j < qs.size(); ++j) {
      if (!taken[j] && rotation_equiv(qs[i], qs[j])) taken[j] = true;
    }
    classes.push_back(qs[i].letters);
  }
  std::vector<std::vector<bool>> reach(classes.size());
  for (std::size_t a = 0; a < classes.size(); ++a) {
    reach[a].assign(t.node_count(), false);
    for (LetterId x : classes[a]) {
      auto r = reach_after(t, x);
      for (LetterId y = 0; y < t.node_count(); ++y) {
        if (r[y]) reach[a][y] = true;
      }
    }
  }
  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t b = 0; b < classes.size(); ++b) {
      if (a == b) continue;
      for (LetterId y : classes[b]) {
        if (reach[a][y]) return GkClass::at_least_two;
      }
    }
  }
  return GkClass::one;
}

BigInt PrimedSets::homogeneous_bound() const {
  // Without quasicycles every nod-path lies in P', so the k*l factor is 1.
  if (quasicycle_count == 0) return path_count * path_count;
  return path_count * path_count * quasicycle_count * max_quasicycle_length;
}

PrimedSets primed_sets(const TransitionDigraph& t) {
  auto qs = quasicycles(t);
  const std::size_t n = t.node_count();
  std::vector<bool> in_quasicycle(n, false);
  PrimedSets out;
  out.quasicycle_count = qs.size();
  for (const auto& q : qs) {
    out.max_quasicycle_length = std::max(out.max_quasicycle_length, q.length());
    for (LetterId x : q.letters) in_quasicycle[x] = true;
  }
  for (LetterId x = 0; x < n; ++x) {
    if (!in_quasicycle[x]) out.letters.push_back(x);
  }

  auto succ = [&](std::size_t x) {
    std::vector<std::size_t> s;
    if (in_quasicycle[x]) return s;
    for (LetterId y : t.successors(x)) {
      if (!in_quasicycle[y]) s.push_back(y);
    }
    return s;
  };
  auto comps = detail::strongly_connected(n, succ);
  for (LetterId x : out.letters) {
    auto s = succ(x);
    bool loop = std::find(s.begin(), s.end(), x) != s.end();
    if (loop || comps.nodes[comps.of[x]].size() > 1) {
      throw Error(Errc::internal, "letters outside the quasicycles form a cycle");
    }
  }
  // walks[x]: nonempty walks starting at x. Components come sinks first.
  std::vector<BigInt> walks(n, 0);
  for (const auto& comp : comps.nodes) {
    LetterId x = comp.front();
    if (in_quasicycle[x]) continue;
    walks[x] = 1;
    for (std::size_t y : succ(x)) walks[x] += walks[y];
  }
  out.path_count = t.graph().vertex_count();
  for (LetterId x : out.letters) out.path_count += walks[x];
  return out;
}

}  // namespace wlpa
