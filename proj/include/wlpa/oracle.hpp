#pragma once

#include <cstddef>
#include <vector>

#include "wlpa/degree.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/nod.hpp"

namespace wlpa {

// Reference counters that work on the double graph directly, with their own
// letter model and forbidden-factor test. They share no code with the
// transition digraph and exist to cross-check it.

struct OracleCounts {
  std::vector<BigInt> by_length;  // index = length, 0..max_len
  DegreeCounts by_degree;         // all lengths <= max_len
  std::size_t words = 0;
};

/// Grows every walk of the double graph letter by letter and drops it as soon
/// as its last two letters form a forbidden factor. Throws
/// Errc::limit_exceeded once more than `budget` words survive.
OracleCounts brute_force_counts(const WeightedGraph& g, const SpecialSelection& special, std::size_t max_len,
                                std::size_t budget = 20'000'000);

/// Per-length totals from powers of the letter adjacency matrix, built from
/// the same forbidden-factor test. Polynomial, for graphs too big to enumerate.
std::vector<BigInt> transfer_matrix_totals(const WeightedGraph& g, const SpecialSelection& special,
                                           std::size_t max_len);

}  // namespace wlpa
