#include "wlpa/nod.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "scc.hpp"
#include "wlpa/error.hpp"

namespace wlpa {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(const WeightedGraph& g) {
  dimension_ = static_cast<std::size_t>(g.max_weight());
  edge_names_.reserve(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    edge_names_.push_back(g.edge(e).id);
    edge_lookup_.emplace(g.edge(e).id, e);
  }
  std::vector<std::size_t> by_id(g.edge_count());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return g.edge(a).id < g.edge(b).id; });

  for (Polarity pol : {Polarity::real, Polarity::ghost}) {
    for (std::size_t e : by_id) {
      for (int i = 1; i <= g.weight(e); ++i) {
        LetterId x = letters_.size();
        letters_.push_back({e, i, pol});
        lookup_.emplace(std::make_tuple(e, i, pol), x);
        bool real = pol == Polarity::real;
        source_.push_back(real ? g.source(e) : g.range(e));
        range_.push_back(real ? g.range(e) : g.source(e));
        degree_.push_back(DegreeVector::unit(dimension_, static_cast<std::size_t>(i), real ? 1 : -1));
      }
    }
  }
  star_.resize(letters_.size());
  for (LetterId x = 0; x < letters_.size(); ++x) {
    const Letter& l = letters_[x];
    star_[x] = lookup_.at({l.edge, l.copy,
                           l.polarity == Polarity::real ? Polarity::ghost : Polarity::real});
  }
}

std::optional<LetterId> Alphabet::find(std::size_t edge, int copy, Polarity polarity) const {
  auto it = lookup_.find({edge, copy, polarity});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

LetterId Alphabet::id(std::size_t edge, int copy, Polarity polarity) const {
  if (auto x = find(edge, copy, polarity)) return *x;
  throw Error(Errc::unknown_letter, "no letter for copy " + std::to_string(copy) + " of edge #" +
                                        std::to_string(edge));
}

std::string Alphabet::name(LetterId x) const {
  const Letter& l = letters_.at(x);
  std::string out = edge_names_[l.edge] + "_" + std::to_string(l.copy);
  if (l.polarity == Polarity::ghost) out += '*';
  return out;
}

LetterId Alphabet::parse(std::string_view token) const {
  auto fail = [&]() -> LetterId {
    throw Error(Errc::unknown_letter, "unknown letter '" + std::string(token) + "'");
  };
  std::string_view body = token;
  Polarity pol = Polarity::real;
  if (!body.empty() && body.back() == '*') {
    pol = Polarity::ghost;
    body.remove_suffix(1);
  }
  std::size_t cut = body.rfind('_');
  if (cut == std::string_view::npos || cut == 0 || cut + 1 == body.size()) return fail();
  std::string_view digits = body.substr(cut + 1);
  int copy = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), copy);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return fail();
  auto it = edge_lookup_.find(std::string(body.substr(0, cut)));
  if (it == edge_lookup_.end()) return fail();
  auto x = find(it->second, copy, pol);
  if (!x) return fail();
  return *x;
}

// ---------------------------------------------------------------------------
// Word

Word Word::of(std::vector<LetterId> letters) {
  Word w;
  w.letters = std::move(letters);
  return w;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
  if (a.letters.empty()) return a.vertex <=> b.vertex;
  return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                b.letters.begin(), b.letters.end());
}

// ---------------------------------------------------------------------------
// Special edges

SpecialSelection::SpecialSelection(const WeightedGraph& g,
                                   std::vector<std::optional<std::size_t>> choice)
    : choice_(std::move(choice)), special_edge_(g.edge_count(), false) {
  if (choice_.size() != g.vertex_count()) {
    throw Error(Errc::invalid_argument, "special selection has the wrong number of vertices");
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      if (choice_[v]) throw Error(Errc::bad_special, "sink '" + g.vertex(v) + "' has no special edge");
      continue;
    }
    if (!choice_[v]) {
      throw Error(Errc::bad_special, "regular vertex '" + g.vertex(v) + "' lacks a special edge");
    }
    std::size_t e = *choice_[v];
    if (e >= g.edge_count() || g.source(e) != v) {
      throw Error(Errc::bad_special, "special edge of '" + g.vertex(v) + "' is not emitted by it");
    }
    if (g.weight(e) != g.vertex_weight(v)) {
      throw Error(Errc::bad_special, "special edge '" + g.edge(e).id +
                                         "' does not have maximal weight at '" + g.vertex(v) + "'");
    }
    special_edge_[e] = true;
  }
}

std::map<VertexId, EdgeId> SpecialSelection::to_map(const WeightedGraph& g) const {
  std::map<VertexId, EdgeId> out;
  for (std::size_t v = 0; v < choice_.size(); ++v) {
    if (choice_[v]) out.emplace(g.vertex(v), g.edge(*choice_[v]).id);
  }
  return out;
}

namespace {

std::vector<std::size_t> max_weight_edges(const WeightedGraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t e : g.out_edges(v)) {
    if (g.weight(e) == g.vertex_weight(v)) out.push_back(e);
  }
  std::sort(out.begin(), out.end(),
            [&](std::size_t a, std::size_t b) { return g.edge(a).id < g.edge(b).id; });
  return out;
}

}  // namespace

SpecialSelection select_special(const WeightedGraph& g,
                                const std::map<VertexId, EdgeId>& overrides) {
  std::vector<std::optional<std::size_t>> choice(g.vertex_count());
  for (const auto& [vid, eid] : overrides) {
    std::size_t v = g.vertex_index(vid);
    std::size_t e = g.edge_index(eid);
    if (g.is_sink(v)) throw Error(Errc::bad_special, "sink '" + vid + "' has no special edge");
    if (g.source(e) != v) {
      throw Error(Errc::bad_special, "special edge '" + eid + "' is not emitted by '" + vid + "'");
    }
    choice[v] = e;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v) || choice[v]) continue;
    auto declared = g.declared_special().find(g.vertex(v));
    if (declared != g.declared_special().end()) {
      choice[v] = g.edge_index(declared->second);
    } else {
      choice[v] = max_weight_edges(g, v).front();
    }
  }
  return SpecialSelection(g, std::move(choice));
}

std::vector<SpecialSelection> all_special_selections(const WeightedGraph& g) {
  constexpr std::size_t kCap = 4096;
  std::vector<std::vector<std::optional<std::size_t>>> partial{
      std::vector<std::optional<std::size_t>>(g.vertex_count())};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    auto ties = max_weight_edges(g, v);
    std::vector<std::vector<std::optional<std::size_t>>> next;
    for (const auto& p : partial) {
      for (std::size_t e : ties) {
        next.push_back(p);
        next.back()[v] = e;
      }
    }
    if (next.size() > kCap) {
      throw Error(Errc::limit_exceeded, "more than " + std::to_string(kCap) + " special selections");
    }
    partial = std::move(next);
  }
  std::vector<SpecialSelection> out;
  out.reserve(partial.size());
  for (auto& p : partial) out.emplace_back(g, std::move(p));
  return out;
}

std::vector<std::pair<LetterId, LetterId>> forbidden_pairs(const WeightedGraph& g,
                                                           const SpecialSelection& sp,
                                                           const Alphabet& alphabet) {
  std::vector<std::pair<LetterId, LetterId>> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (auto ev = sp.edge_at(v)) {
      for (int i = 1; i <= g.vertex_weight(v); ++i) {
        for (int j = 1; j <= g.vertex_weight(v); ++j) {
          out.emplace_back(alphabet.id(*ev, i, Polarity::real), alphabet.id(*ev, j, Polarity::ghost));
        }
      }
    }
    for (std::size_t e : g.out_edges(v)) {
      for (std::size_t f : g.out_edges(v)) {
        out.emplace_back(alphabet.id(e, 1, Polarity::ghost), alphabet.id(f, 1, Polarity::real));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Transition digraph

TransitionDigraph::TransitionDigraph(const WeightedGraph& g, const SpecialSelection& sp)
    : g_(g), alphabet_(g), sp_(sp) {
  const std::size_t n = alphabet_.size();
  std::vector<std::vector<LetterId>> starting_at(g_.vertex_count());
  for (LetterId x = 0; x < n; ++x) starting_at[alphabet_.source(x)].push_back(x);

  succ_.resize(n);
  pred_.resize(n);
  arc_.assign(n * n, false);
  for (LetterId x = 0; x < n; ++x) {
    for (LetterId y : starting_at[alphabet_.range(x)]) {
      if (is_forbidden(x, y)) continue;
      succ_[x].push_back(y);
      pred_[y].push_back(x);
      arc_[x * n + y] = true;
      ++arc_count_;
    }
  }
}

bool TransitionDigraph::is_forbidden(LetterId x, LetterId y) const {
  const Letter& a = alphabet_[x];
  const Letter& b = alphabet_[y];
  if (a.polarity == Polarity::real && b.polarity == Polarity::ghost) {
    return a.edge == b.edge && sp_.is_special(a.edge);
  }
  if (a.polarity == Polarity::ghost && b.polarity == Polarity::real) {
    return a.copy == 1 && b.copy == 1 && g_.source(a.edge) == g_.source(b.edge);
  }
  return false;
}

TransitionDigraph build_transition_digraph(const WeightedGraph& g, const SpecialSelection& sp) {
  return TransitionDigraph(g, sp);
}

// ---------------------------------------------------------------------------
// Words

Word parse_word(const Alphabet& alphabet, const WeightedGraph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw Error(Errc::invalid_argument, "empty word");
  if (tokens.size() == 1) {
    if (auto v = g.find_vertex(tokens[0])) {
      try {
        return Word::of({alphabet.parse(tokens[0])});
      } catch (const Error&) {
        return Word::trivial_at(*v);
      }
    }
  }
  Word w;
  for (const auto& tok : tokens) w.letters.push_back(alphabet.parse(tok));
  w.vertex = alphabet.source(w.letters.front());
  return w;
}

std::string format_word(const Alphabet& alphabet, const WeightedGraph& g, const Word& w) {
  if (w.trivial()) return g.vertex(w.vertex);
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w.letters[i]);
  }
  return out;
}

void check_letters(const Alphabet& alphabet, const Word& w) {
  for (LetterId x : w.letters) {
    if (x >= alphabet.size()) {
      throw Error(Errc::unknown_letter, "letter id " + std::to_string(x) + " is not in the alphabet");
    }
  }
}

bool is_d_path(const TransitionDigraph& t, const Word& w) {
  check_letters(t.alphabet(), w);
  if (w.trivial()) {
    if (w.vertex >= t.graph().vertex_count()) {
      throw Error(Errc::unknown_vertex, "trivial word at an unknown vertex");
    }
    return true;
  }
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
    if (!t.composable(w.letters[i], w.letters[i + 1])) return false;
  }
  return true;
}

bool is_nod(const TransitionDigraph& t, const Word& w) {
  if (!is_d_path(t, w)) return false;
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
    if (!t.has_arc(w.letters[i], w.letters[i + 1])) return false;
  }
  return true;
}

std::size_t word_source(const Alphabet& alphabet, const Word& w) {
  return w.trivial() ? w.vertex : alphabet.source(w.letters.front());
}

std::size_t word_range(const Alphabet& alphabet, const Word& w) {
  return w.trivial() ? w.vertex : alphabet.range(w.letters.back());
}

DegreeVector degree(const Alphabet& alphabet, const Word& w) {
  check_letters(alphabet, w);
  DegreeVector d(alphabet.dimension());
  for (LetterId x : w.letters) d += alphabet.degree(x);
  return d;
}

Word star(const Alphabet& alphabet, const Word& w) {
  check_letters(alphabet, w);
  if (w.trivial()) return w;
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(alphabet.star(*it));
  }
  out.vertex = alphabet.source(out.letters.front());
  return out;
}

Word concat(const Word& a, const Word& b) {
  if (a.trivial()) return b;
  if (b.trivial()) return a;
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration and counting

std::vector<Word> enumerate_nod(const TransitionDigraph& t, std::size_t max_len,
                                const std::optional<DegreeVector>& degree_filter,
                                std::size_t limit) {
  const Alphabet& alphabet = t.alphabet();
  if (degree_filter && degree_filter->size() != alphabet.dimension()) {
    throw Error(Errc::invalid_argument, "degree filter has dimension " +
                                            std::to_string(degree_filter->size()) + ", expected " +
                                            std::to_string(alphabet.dimension()));
  }
  struct Partial {
    Word word;
    DegreeVector deg;
  };
  std::size_t generated = 0;
  auto charge = [&](std::size_t k) {
    generated += k;
    if (generated > limit) {
      throw Error(Errc::limit_exceeded, "more than " + std::to_string(limit) + " nod-paths to enumerate");
    }
  };

  std::vector<Word> out;
  auto keep = [&](const Word& w, const DegreeVector& d) {
    if (!degree_filter || *degree_filter == d) out.push_back(w);
  };

  charge(t.graph().vertex_count());
  for (std::size_t v = 0; v < t.graph().vertex_count(); ++v) {
    keep(Word::trivial_at(v), DegreeVector(alphabet.dimension()));
  }
  if (max_len == 0) return out;

  std::vector<Partial> level;
  charge(alphabet.size());
  for (LetterId x = 0; x < alphabet.size(); ++x) {
    Word w = Word::of({x});
    w.vertex = alphabet.source(x);
    level.push_back({w, alphabet.degree(x)});
  }
  for (std::size_t len = 1; !level.empty(); ++len) {
    for (const auto& p : level) keep(p.word, p.deg);
    if (len == max_len) break;
    std::vector<Partial> next;
    for (const auto& p : level) {
      auto succ = t.successors(p.word.letters.back());
      charge(succ.size());
      for (LetterId y : succ) {
        Partial q = p;
        q.word.letters.push_back(y);
        q.deg += alphabet.degree(y);
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  return out;
}

DegreeCounts count_by_degree(const TransitionDigraph& t, std::size_t max_len) {
  using Bucket = std::unordered_map<DegreeVector, BigInt, DegreeVectorHash>;
  const Alphabet& alphabet = t.alphabet();
  const std::size_t n = alphabet.size();

  Bucket total;
  total[DegreeVector(alphabet.dimension())] += t.graph().vertex_count();

  std::vector<Bucket> cur(n);
  if (max_len >= 1) {
    for (LetterId x = 0; x < n; ++x) cur[x][alphabet.degree(x)] = 1;
  }
  for (std::size_t len = 1; len <= max_len; ++len) {
    bool any = false;
    for (LetterId x = 0; x < n; ++x) {
      for (const auto& [d, c] : cur[x]) {
        total[d] += c;
        any = true;
      }
    }
    if (!any || len == max_len) break;
    std::vector<Bucket> next(n);
    for (LetterId x = 0; x < n; ++x) {
      if (cur[x].empty()) continue;
      for (LetterId y : t.successors(x)) {
        for (const auto& [d, c] : cur[x]) next[y][d + alphabet.degree(y)] += c;
      }
    }
    cur = std::move(next);
  }
  return DegreeCounts(total.begin(), total.end());
}

std::vector<BigInt> count_by_length(const TransitionDigraph& t, std::size_t max_len) {
  const std::size_t n = t.node_count();
  std::vector<BigInt> out(max_len + 1);
  out[0] = t.graph().vertex_count();
  if (max_len == 0) return out;
  std::vector<BigInt> cur(n, 1);
  for (std::size_t len = 1; len <= max_len; ++len) {
    out[len] = std::accumulate(cur.begin(), cur.end(), BigInt(0));
    if (len == max_len) break;
    std::vector<BigInt> next(n);
    for (LetterId x = 0; x < n; ++x) {
      if (cur[x] == 0) continue;
      for (LetterId y : t.successors(x)) next[y] += cur[x];
    }
    cur = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word predicates

int index_of(const Alphabet& alphabet, const Word& w) {
  check_letters(alphabet, w);
  if (w.trivial()) throw Error(Errc::invalid_argument, "the index of a trivial word is undefined");
  int out = 0;
  for (LetterId x : w.letters) out = std::max(out, alphabet[x].copy);
  return out;
}

namespace {

void require_real_path(const TransitionDigraph& t, const Word& p) {
  if (p.trivial()) throw Error(Errc::invalid_argument, "expected a nonempty path");
  if (!is_d_path(t, p)) throw Error(Errc::invalid_argument, "letters are not composable");
  for (LetterId x : p.letters) {
    if (t.alphabet()[x].polarity == Polarity::ghost) {
      throw Error(Errc::invalid_argument, "ghost letter '" + t.alphabet().name(x) +
                                              "' in a real path");
    }
  }
}

}  // namespace

bool is_super_special(const TransitionDigraph& t, const Word& p) {
  require_real_path(t, p);
  const WeightedGraph& g = t.graph();
  for (LetterId x : p.letters) {
    const Letter& l = t.alphabet()[x];
    int other = 0;
    for (std::size_t f : g.out_edges(g.source(l.edge))) {
      if (f != l.edge) other = std::max(other, g.weight(f));
    }
    if (l.copy <= other) return false;
  }
  return true;
}

bool is_unweighted_path(const TransitionDigraph& t, const Word& p) {
  require_real_path(t, p);
  return std::all_of(p.letters.begin(), p.letters.end(),
                     [&](LetterId x) { return t.graph().weight(t.alphabet()[x].edge) == 1; });
}

std::vector<HeadBlock> split_weighted_head(const TransitionDigraph& t, const Word& o) {
  if (o.trivial()) throw Error(Errc::precondition, "the word is trivial");
  check_letters(t.alphabet(), o);
  const Alphabet& alphabet = t.alphabet();
  const Letter& head = alphabet[o.letters.front()];
  if (head.polarity != Polarity::real || t.graph().weight(head.edge) < 2 || head.copy < 2) {
    throw Error(Errc::precondition, "the word must start with e_i for a weighted edge e and i >= 2");
  }
  if (!is_nod(t, o)) throw Error(Errc::precondition, "the word is not a nod-path");

  std::vector<HeadBlock> out;
  for (LetterId x : o.letters) {
    bool ghost = alphabet[x].polarity == Polarity::ghost;
    if (out.empty() || out.back().ghost != ghost) out.push_back({Word{}, ghost, false});
    out.back().word.letters.push_back(x);
  }
  for (auto& b : out) {
    b.word.vertex = alphabet.source(b.word.letters.front());
    b.valid = b.ghost ? is_unweighted_path(t, star(alphabet, b.word)) : is_super_special(t, b.word);
  }
  return out;
}

bool is_lenod(const TransitionDigraph& t, const Word& p) {
  if (p.trivial() || !is_nod(t, p)) {
    throw Error(Errc::invalid_argument, "expected a nontrivial nod-path");
  }
  LetterId first = p.letters.front();
  std::size_t s = t.alphabet().source(first);
  for (LetterId x = 0; x < t.node_count(); ++x) {
    if (t.alphabet().range(x) == s && !t.has_arc(x, first)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Growth

std::string_view to_string(Growth g) {
  switch (g) {
    case Growth::finite: return "finite";
    case Growth::linear: return "linear";
    case Growth::superlinear: return "superlinear";
  }
  return "?";
}

Growth growth_class(const TransitionDigraph& t) {
  const std::size_t n = t.node_count();
  auto comps = detail::strongly_connected(n, [&](std::size_t x) { return t.successors(x); });
  const std::size_t m = comps.nodes.size();

  std::vector<std::size_t> internal(m, 0);
  for (LetterId x = 0; x < n; ++x) {
    for (LetterId y : t.successors(x)) {
      if (comps.of[x] == comps.of[y]) ++internal[comps.of[x]];
    }
  }
  // Components are sinks first, so successors' depths are known in index order.
  std::vector<std::size_t> depth(m, 0);
  std::size_t deepest = 0;
  for (std::size_t c = 0; c < m; ++c) {
    bool cyclic = internal[c] > 0;
    if (cyclic && internal[c] != comps.nodes[c].size()) return Growth::superlinear;
    std::size_t below = 0;
    for (std::size_t x : comps.nodes[c]) {
      for (LetterId y : t.successors(x)) {
        if (comps.of[y] != c) below = std::max(below, depth[comps.of[y]]);
      }
    }
    depth[c] = below + (cyclic ? 1 : 0);
    deepest = std::max(deepest, depth[c]);
  }
  if (deepest == 0) return Growth::finite;
  return deepest == 1 ? Growth::linear : Growth::superlinear;
}

}  // namespace wlpa
