#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wlpa/degree.hpp"
#include "wlpa/graph.hpp"

namespace wlpa {

enum class Polarity { real, ghost };

/// A letter of the double graph: copy `copy` (1-based) of edge `edge`
/// (an index into the graph's edge list), real or ghost.
struct Letter {
  std::size_t edge = 0;
  int copy = 1;
  Polarity polarity = Polarity::real;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using LetterId = std::size_t;

/// All letters of a graph in canonical order: every real letter before every
/// ghost letter, then by edge id, then by copy index. LetterId is the position
/// in that order, so comparing ids compares letters.
class Alphabet {
 public:
  explicit Alphabet(const WeightedGraph& g);

  std::size_t size() const { return letters_.size(); }
  const Letter& operator[](LetterId x) const { return letters_[x]; }

  std::optional<LetterId> find(std::size_t edge, int copy, Polarity polarity) const;
  LetterId id(std::size_t edge, int copy, Polarity polarity) const;  // throws unknown_letter
  LetterId star(LetterId x) const { return star_[x]; }

  /// Vertex indices of s_d and r_d.
  std::size_t source(LetterId x) const { return source_[x]; }
  std::size_t range(LetterId x) const { return range_[x]; }

  /// Grading group dimension n (the maximal edge weight).
  std::size_t dimension() const { return dimension_; }
  const DegreeVector& degree(LetterId x) const { return degree_[x]; }

  /// "e_2" or "e_2*".
  std::string name(LetterId x) const;
  /// Inverse of name(); throws Errc::unknown_letter.
  LetterId parse(std::string_view token) const;

 private:
  std::vector<EdgeId> edge_names_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<Letter> letters_;
  std::vector<LetterId> star_;
  std::vector<std::size_t> source_;
  std::vector<std::size_t> range_;
  std::vector<DegreeVector> degree_;
  std::map<std::tuple<std::size_t, int, Polarity>, LetterId> lookup_;
  std::size_t dimension_ = 0;
};

/// A word over the double graph. With no letters it is the trivial path at
/// `vertex`; otherwise `vertex` is ignored and equal to s_d of the first letter.
struct Word {
  std::size_t vertex = 0;
  std::vector<LetterId> letters;

  static Word trivial_at(std::size_t v) { return Word{v, {}}; }
  static Word of(std::vector<LetterId> letters);

  bool trivial() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters && (!a.letters.empty() || a.vertex == b.vertex);
  }
  /// Length-lexicographic; trivial words by vertex index.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
};

// ---------------------------------------------------------------------------
// Special edges and forbidden factors

/// A choice of one maximal-weight edge per regular vertex.
class SpecialSelection {
 public:
  SpecialSelection() = default;
  /// `choice[v]` is an edge index for regular v and empty for sinks.
  /// Throws Errc::bad_special when a choice is not a maximal-weight edge of v.
  SpecialSelection(const WeightedGraph& g, std::vector<std::optional<std::size_t>> choice);

  std::optional<std::size_t> edge_at(std::size_t v) const { return choice_[v]; }
  bool is_special(std::size_t edge) const { return special_edge_[edge]; }
  std::map<VertexId, EdgeId> to_map(const WeightedGraph& g) const;

  friend bool operator==(const SpecialSelection&, const SpecialSelection&) = default;

 private:
  std::vector<std::optional<std::size_t>> choice_;
  std::vector<bool> special_edge_;
};

/// Overrides take precedence over the graph's declared specials; every other
/// regular vertex gets its lexicographically least maximal-weight edge.
SpecialSelection select_special(const WeightedGraph& g,
                                const std::map<VertexId, EdgeId>& overrides = {});

/// Every valid selection (product over regular vertices of the max-weight ties).
std::vector<SpecialSelection> all_special_selections(const WeightedGraph& g);

std::vector<std::pair<LetterId, LetterId>> forbidden_pairs(const WeightedGraph& g,
                                                           const SpecialSelection& sp,
                                                           const Alphabet& alphabet);

// ---------------------------------------------------------------------------
// Transition digraph

/// Nodes are letters; x -> y iff r_d(x) = s_d(y) and xy is not forbidden.
/// Holds its own copy of the graph.
class TransitionDigraph {
 public:
  TransitionDigraph(const WeightedGraph& g, const SpecialSelection& sp);

  const WeightedGraph& graph() const { return g_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const SpecialSelection& special() const { return sp_; }

  std::size_t node_count() const { return alphabet_.size(); }
  std::size_t arc_count() const { return arc_count_; }
  std::size_t dimension() const { return alphabet_.dimension(); }

  /// Sorted ascending.
  std::span<const LetterId> successors(LetterId x) const { return succ_[x]; }
  std::span<const LetterId> predecessors(LetterId x) const { return pred_[x]; }
  bool has_arc(LetterId x, LetterId y) const { return arc_[x * node_count() + y]; }

  bool composable(LetterId x, LetterId y) const {
    return alphabet_.range(x) == alphabet_.source(y);
  }
  bool is_forbidden(LetterId x, LetterId y) const;

 private:
  WeightedGraph g_;
  Alphabet alphabet_;
  SpecialSelection sp_;
  std::vector<std::vector<LetterId>> succ_;
  std::vector<std::vector<LetterId>> pred_;
  std::vector<bool> arc_;
  std::size_t arc_count_ = 0;
};

TransitionDigraph build_transition_digraph(const WeightedGraph& g, const SpecialSelection& sp);

// ---------------------------------------------------------------------------
// Words

/// Whitespace-separated letter names, or a single vertex id for a trivial word.
Word parse_word(const Alphabet& alphabet, const WeightedGraph& g, std::string_view text);
std::string format_word(const Alphabet& alphabet, const WeightedGraph& g, const Word& w);

/// Throws Errc::unknown_letter for ids outside the alphabet.
void check_letters(const Alphabet& alphabet, const Word& w);

bool is_d_path(const TransitionDigraph& t, const Word& w);
bool is_nod(const TransitionDigraph& t, const Word& w);

std::size_t word_source(const Alphabet& alphabet, const Word& w);
std::size_t word_range(const Alphabet& alphabet, const Word& w);

DegreeVector degree(const Alphabet& alphabet, const Word& w);
/// Reverse the word and star every letter.
Word star(const Alphabet& alphabet, const Word& w);
Word concat(const Word& a, const Word& b);

// ---------------------------------------------------------------------------
// Enumeration and counting

/// Upper bound on the number of words enumerate_nod may return before it
/// raises Errc::limit_exceeded.
inline constexpr std::size_t kDefaultEnumerationLimit = 2'000'000;

/// All nod-paths of length <= max_len, trivial paths included, length-lexicographic.
std::vector<Word> enumerate_nod(const TransitionDigraph& t, std::size_t max_len,
                                const std::optional<DegreeVector>& degree_filter = std::nullopt,
                                std::size_t limit = kDefaultEnumerationLimit);

using DegreeCounts = std::map<DegreeVector, BigInt>;

/// Number of nod-paths of each degree among lengths <= max_len.
DegreeCounts count_by_degree(const TransitionDigraph& t, std::size_t max_len);

/// Number of nod-paths of each exact length 0..max_len.
std::vector<BigInt> count_by_length(const TransitionDigraph& t, std::size_t max_len);

// ---------------------------------------------------------------------------
// Word predicates

/// Largest copy index in a nontrivial word.
int index_of(const Alphabet& alphabet, const Word& w);

/// `p` must be a nonempty path of real letters.
bool is_super_special(const TransitionDigraph& t, const Word& p);
bool is_unweighted_path(const TransitionDigraph& t, const Word& p);

struct HeadBlock {
  Word word;
  bool ghost = false;  // false: real block p_k; true: ghost block q_k*
  bool valid = false;  // super-special (real) or unweighted (ghost)
};

/// Splits a nod-path that starts with e_i (e weighted, i >= 2) into its
/// alternating maximal real and ghost blocks and tags each block.
/// Throws Errc::precondition on bad input. The classifier wraps this with the
/// well-behavedness precondition.
std::vector<HeadBlock> split_weighted_head(const TransitionDigraph& t, const Word& o);

bool is_lenod(const TransitionDigraph& t, const Word& p);

// ---------------------------------------------------------------------------
// Growth of the nod language

enum class Growth { finite, linear, superlinear };
std::string_view to_string(Growth g);

Growth growth_class(const TransitionDigraph& t);

}  // namespace wlpa
