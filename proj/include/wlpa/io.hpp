#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "wlpa/degree.hpp"
#include "wlpa/graph.hpp"

namespace wlpa {

enum class Format { wg, json };

/// Parses the line-oriented `.wg` text or its JSON mirror and validates the result.
///
///     # comment
///     vertex v u
///     edge e : v -> u weight 2
///     special v : e
///
/// JSON: {"vertices":[...],"edges":[{"id","src","dst","weight"}],"special":{vertex:edge}}
WeightedGraph parse_graph(std::string_view text, Format format);

/// Canonical text. parse_graph(serialize_graph(g, f), f) == g.
std::string serialize_graph(const WeightedGraph& g, Format format);

nlohmann::ordered_json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& doc);

/// `.json` selects JSON, anything else `.wg`.
Format format_for_path(const std::filesystem::path& path);
std::optional<Format> parse_format(std::string_view name);

/// Reads a file ("-" for stdin) and parses it.
WeightedGraph read_graph_file(const std::filesystem::path& path,
                              std::optional<Format> format = std::nullopt);

bool is_identifier(std::string_view token);

/// A JSON number when the value fits in 64 bits, its decimal string otherwise.
nlohmann::ordered_json big_to_json(const BigInt& n);

}  // namespace wlpa
