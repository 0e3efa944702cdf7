#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlpa/degree.hpp"
#include "wlpa/graph.hpp"

namespace wlpa {

enum class Ring { field, laurent };

std::string_view to_string(Ring ring);  // "K", "Laurent"

struct Block {
  BigInt size;
  Ring ring;
  VertexId at;  // the sink, or the base vertex of the cycle

  friend bool operator==(const Block&, const Block&) = default;
};

/// Matrix blocks: one over K per sink (in vertex order), then one over
/// K[x,x^-1] per cycle (in cycle order).
struct Decomposition {
  std::vector<Block> blocks;
};

/// Number of paths ending at `v` that do not pass through `v` before their
/// end, the trivial path included. Throws Errc::precondition if that number
/// is infinite.
BigInt paths_ending_at(const WeightedGraph& g, const VertexId& v);

/// Throws Errc::precondition for a weighted graph or a cycle with an exit.
Decomposition decompose(const WeightedGraph& g);

/// Sum of squared K-block sizes; std::nullopt (infinite) if a Laurent block exists.
std::optional<BigInt> total_dimension(const Decomposition& d);

/// "M_5(K) (+) M_12(K) (+) M_8(K[x,x^-1])"
std::string pretty(const Decomposition& d);

nlohmann::ordered_json decomposition_to_json(const Decomposition& d);

}  // namespace wlpa
