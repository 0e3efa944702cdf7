#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wlpa/graph.hpp"
#include "wlpa/nod.hpp"
#include "wlpa/quasicycle.hpp"

namespace wlpa {

// Witnesses for the five conditions on the weighted part. Paths are given in
// graph terms so that they can be re-checked without the classifier.

/// (i) a weighted vertex with two distinct weighted edges.
struct TwoWeightedEdges {
  VertexId vertex;
  EdgeId first;
  EdgeId second;
};

/// (ii) a vertex below the range of a weighted edge emitting two edges.
struct BranchBelowWeighted {
  EdgeId weighted;
  Path approach;  // from r(weighted) to `vertex`
  VertexId vertex;
  EdgeId first;
  EdgeId second;
};

/// (iii) two weighted edges, not in line, whose trees meet.
struct TreesMeet {
  EdgeId first;
  EdgeId second;
  VertexId meeting;
  Path from_first;   // r(first) -> meeting
  Path from_second;  // r(second) -> meeting
};

/// (iv) a cycle based at a vertex below the range of a weighted edge.
struct CycleBelowWeighted {
  EdgeId weighted;
  Path approach;  // r(weighted) -> s(cycle)
  Path cycle;
};

/// (v) paths p_1..p_n, q_1..q_n closing up crosswise.
struct CrossingPaths {
  std::vector<Path> p;
  std::vector<Path> q;
};

using ConditionWitness =
    std::variant<TwoWeightedEdges, BranchBelowWeighted, TreesMeet, CycleBelowWeighted, CrossingPaths>;

struct ConditionVerdict {
  bool holds = true;
  std::optional<ConditionWitness> witness;  // set exactly when !holds
};

struct ConditionReport {
  bool weighted_part_empty = false;
  std::array<ConditionVerdict, 5> conditions;

  bool weakly_well_behaved() const;
  bool well_behaved() const;
};

/// Conditions (i)-(v), evaluated on the weighted part. An empty weighted part
/// satisfies all five.
ConditionReport check_conditions(const WeightedGraph& g);

/// Re-checks a witness against the condition it claims to violate
/// (`condition` is 1-based). Does not trust how the witness was found.
bool verify_witness(const WeightedGraph& g, int condition, const ConditionWitness& witness);

struct CycleExit {
  Path cycle;
  EdgeId exit;
};

/// A cycle together with one of its exits, if any cycle has an exit.
std::optional<CycleExit> find_cycle_with_exit(const WeightedGraph& g);
bool no_cycle_has_exit(const WeightedGraph& g);

struct NonNoetherianWitness {
  enum class Kind {
    weighted_return,  // a nod-path from e_2 to e_2* for a weighted edge e
    idempotent_loop,  // a nod-squared p with p p* a nod-path and p* p collapsing
  };
  Kind kind;
  Word word;
};

std::string_view to_string(NonNoetherianWitness::Kind kind);

/// Bounded search (2 * #letters) for an obstruction to local finiteness.
std::optional<NonNoetherianWitness> find_non_noetherian_witness(const TransitionDigraph& t);

/// Checks the weak well-behavedness precondition, then splits `o` into blocks.
/// Throws Errc::precondition if the weighted part is not weakly well-behaved,
/// and Errc::internal if a block fails its tag anyway.
std::vector<HeadBlock> parse_weighted_head(const TransitionDigraph& t, const Word& o);

struct Classification {
  bool finite_dimensional = false;
  bool locally_finite = false;
  bool noetherian = false;
  GkClass gk = GkClass::at_least_two;

  bool acyclic = false;
  ConditionReport conditions;
  std::optional<CycleExit> cycle_exit;
  std::optional<NonNoetherianWitness> non_noetherian;

  // Independent cross-checks; `quasicycle_gk` is empty when the quasicycle
  // search hit its limit.
  Growth growth = Growth::finite;
  std::optional<GkClass> quasicycle_gk;

  bool decomposition_ready() const { return locally_finite; }
};

/// Throws Errc::internal if the graph conditions, the growth analysis and the
/// quasicycle classification disagree.
Classification classify(const WeightedGraph& g, const std::map<VertexId, EdgeId>& special = {});

}  // namespace wlpa
