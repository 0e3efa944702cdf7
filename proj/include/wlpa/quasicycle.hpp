#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "wlpa/degree.hpp"
#include "wlpa/nod.hpp"

namespace wlpa {

/// Closed nontrivial nod-path whose square is again a nod-path.
/// Throws Errc::invalid_argument for trivial or non-closed words.
bool is_nod2(const TransitionDigraph& t, const Word& p);

/// The literal definition: p is nod-squared and no factor of p^2 shorter than
/// p is nod-squared. Returns false (rather than throwing) for trivial or open words.
bool is_quasicycle(const TransitionDigraph& t, const Word& q);

/// Every quasicycle, each rotation listed separately, sorted length-lexicographically.
///
/// Quasicycles are exactly the chordless directed cycles of the transition
/// digraph read as words, so the search never revisits a letter and is
/// bounded by the alphabet size. Throws Errc::limit_exceeded past `limit`.
std::vector<Word> quasicycles(const TransitionDigraph& t, std::size_t limit = 1'000'000);

/// q' is a cyclic rotation of q.
bool rotation_equiv(const Word& q, const Word& q2);

/// q ==> q': some word o (possibly empty) makes q o q' a nod-path, i.e. first(q')
/// is reachable from last(q) by at least one arc.
bool connects(const TransitionDigraph& t, const Word& q, const Word& q2);

/// Whether the empty connecting word counts when deciding selfconnectedness.
enum class EmptyConnector { excluded, allowed };

/// Some nod-path o, not having q as a prefix, makes q o q a nod-path.
bool is_selfconnected(const TransitionDigraph& t, const Word& q,
                      EmptyConnector convention = EmptyConnector::excluded);

enum class GkClass { zero, one, at_least_two };
std::string_view to_string(GkClass c);  // "0", "1", "2+"

GkClass gk_class(const TransitionDigraph& t, EmptyConnector convention = EmptyConnector::excluded);

/// Letters outside every quasicycle, and the nod-paths built from them.
struct PrimedSets {
  std::vector<LetterId> letters;
  BigInt path_count;          // includes one trivial path per vertex
  std::size_t quasicycle_count = 0;
  std::size_t max_quasicycle_length = 0;

  /// |P'|^2 * k * l, or |P'|^2 when there is no quasicycle.
  BigInt homogeneous_bound() const;
};

/// Always finite: a cycle among primed letters would contain a chordless
/// cycle of the transition digraph, which is a quasicycle. Finding one anyway
/// throws Errc::internal.
PrimedSets primed_sets(const TransitionDigraph& t);

}  // namespace wlpa
