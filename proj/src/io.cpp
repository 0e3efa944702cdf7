#include "wlpa/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include "wlpa/error.hpp"

namespace wlpa {

bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(token.front())) return false;
  for (char c : token) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return true;
}

namespace {

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw Error(Errc::syntax, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(std::string line) {
  // ':' and '->' may be written without surrounding spaces.
  std::string spaced;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == ':') {
      spaced += " : ";
    } else if (line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      spaced += " -> ";
      ++i;
    } else {
      spaced += line[i];
    }
  }
  std::istringstream in(spaced);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

std::string expect_identifier(const std::vector<std::string>& tokens, std::size_t at,
                              std::size_t line) {
  if (at >= tokens.size()) syntax_error(line, "unexpected end of declaration");
  if (!is_identifier(tokens[at])) syntax_error(line, "'" + tokens[at] + "' is not an identifier");
  return tokens[at];
}

void expect_token(const std::vector<std::string>& tokens, std::size_t at, std::string_view what,
                  std::size_t line) {
  if (at >= tokens.size() || tokens[at] != what) {
    syntax_error(line, "expected '" + std::string(what) + "'");
  }
}

int parse_weight(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    syntax_error(line, "weight '" + token + "' is not an integer");
  }
  if (used != token.size()) syntax_error(line, "weight '" + token + "' is not an integer");
  if (value < 1) {
    throw Error(Errc::bad_weight, "line " + std::to_string(line) + ": weight " + token + " < 1");
  }
  if (value > 1'000'000) syntax_error(line, "weight " + token + " is unreasonably large");
  return static_cast<int>(value);
}

WeightedGraph parse_wg(std::string_view text) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, EdgeId> special;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens.front();
    if (keyword == "vertex") {
      if (tokens.size() < 2) syntax_error(line, "vertex declaration without ids");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        vertices.push_back(expect_identifier(tokens, i, line));
      }
    } else if (keyword == "edge") {
      Edge e;
      e.id = expect_identifier(tokens, 1, line);
      expect_token(tokens, 2, ":", line);
      e.source = expect_identifier(tokens, 3, line);
      expect_token(tokens, 4, "->", line);
      e.range = expect_identifier(tokens, 5, line);
      if (tokens.size() > 6) {
        expect_token(tokens, 6, "weight", line);
        if (tokens.size() != 8) syntax_error(line, "expected a single weight value");
        e.weight = parse_weight(tokens[7], line);
      }
      edges.push_back(std::move(e));
    } else if (keyword == "special") {
      auto v = expect_identifier(tokens, 1, line);
      expect_token(tokens, 2, ":", line);
      auto e = expect_identifier(tokens, 3, line);
      if (tokens.size() != 4) syntax_error(line, "trailing tokens after special declaration");
      if (!special.emplace(v, e).second) {
        throw Error(Errc::duplicate_id, "line " + std::to_string(line) +
                                            ": second special declaration for '" + v + "'");
      }
    } else {
      syntax_error(line, "unknown declaration '" + keyword + "'");
    }
  }
  return WeightedGraph(std::move(vertices), std::move(edges), std::move(special));
}

std::string serialize_wg(const WeightedGraph& g) {
  std::string out = "vertex";
  for (const auto& v : g.vertices()) out += " " + v;
  out += "\n";
  for (const auto& e : g.edges()) {
    out += "edge " + e.id + " : " + e.source + " -> " + e.range;
    if (e.weight != 1) out += " weight " + std::to_string(e.weight);
    out += "\n";
  }
  for (const auto& [v, e] : g.declared_special()) out += "special " + v + " : " + e + "\n";
  return out;
}

}  // namespace

nlohmann::ordered_json graph_to_json(const WeightedGraph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertices();
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    doc["edges"].push_back({{"id", e.id}, {"src", e.source}, {"dst", e.range}, {"weight", e.weight}});
  }
  if (!g.declared_special().empty()) {
    doc["special"] = nlohmann::ordered_json::object();
    for (const auto& [v, e] : g.declared_special()) doc["special"][v] = e;
  }
  return doc;
}

WeightedGraph graph_from_json(const nlohmann::json& doc) {
  auto bad = [](const std::string& what) -> Error { return Error(Errc::syntax, "json: " + what); };
  auto ident = [&](const nlohmann::json& node, const char* what) {
    if (!node.is_string()) throw bad(std::string(what) + " must be a string");
    auto s = node.get<std::string>();
    if (!is_identifier(s)) throw bad("'" + s + "' is not an identifier");
    return s;
  };
  if (!doc.is_object()) throw bad("top level must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw bad("missing \"vertices\" array");

  std::vector<VertexId> vertices;
  for (const auto& v : doc["vertices"]) vertices.push_back(ident(v, "vertex id"));

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw bad("\"edges\" must be an array");
    for (const auto& node : doc["edges"]) {
      if (!node.is_object()) throw bad("edge entries must be objects");
      for (const char* key : {"id", "src", "dst"}) {
        if (!node.contains(key)) throw bad(std::string("edge entry without \"") + key + "\"");
      }
      Edge e{ident(node["id"], "edge id"), ident(node["src"], "edge src"),
             ident(node["dst"], "edge dst"), 1};
      if (node.contains("weight")) {
        if (!node["weight"].is_number_integer()) throw bad("edge weight must be an integer");
        auto w = node["weight"].get<long long>();
        if (w < 1) throw Error(Errc::bad_weight, "edge '" + e.id + "' has weight < 1");
        if (w > 1'000'000) throw bad("edge weight is unreasonably large");
        e.weight = static_cast<int>(w);
      }
      edges.push_back(std::move(e));
    }
  }

  std::map<VertexId, EdgeId> special;
  if (doc.contains("special")) {
    if (!doc["special"].is_object()) throw bad("\"special\" must be an object");
    for (const auto& [v, e] : doc["special"].items()) {
      if (!is_identifier(v)) throw bad("'" + v + "' is not an identifier");
      special.emplace(v, ident(e, "special edge"));
    }
  }
  return WeightedGraph(std::move(vertices), std::move(edges), std::move(special));
}

WeightedGraph parse_graph(std::string_view text, Format format) {
  if (format == Format::wg) return parse_wg(text);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::syntax, std::string("json: ") + e.what());
  }
  return graph_from_json(doc);
}

std::string serialize_graph(const WeightedGraph& g, Format format) {
  if (format == Format::wg) return serialize_wg(g);
  return graph_to_json(g).dump(2) + "\n";
}

Format format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? Format::json : Format::wg;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "wg") return Format::wg;
  if (name == "json") return Format::json;
  return std::nullopt;
}

WeightedGraph read_graph_file(const std::filesystem::path& path, std::optional<Format> format) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::syntax, "cannot open '" + path.string() + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_graph(text, format.value_or(format_for_path(path)));
}

nlohmann::ordered_json big_to_json(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(n);
  }
  return n.str();
}

}  // namespace wlpa
