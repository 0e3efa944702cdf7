#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "wlpa/classifier.hpp"
#include "wlpa/decompose.hpp"
#include "wlpa/error.hpp"
#include "wlpa/io.hpp"
#include "wlpa/nod.hpp"
#include "wlpa/oracle.hpp"
#include "wlpa/quasicycle.hpp"
#include "wlpa/rewriter.hpp"

namespace wlpa::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kOracleDefaultLength = 8;
constexpr const char* kRoman[] = {"i", "ii", "iii", "iv", "v"};

struct Options {
  std::string file;
  std::string format;
  long long max_len = -1;
  std::string degree;
  std::vector<std::string> special;
  std::string trace;
  std::string output;
};

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

Json path_json(const Path& p) { return {{"start", p.start}, {"edges", p.edges}}; }

Json witness_json(const ConditionWitness& w) {
  return std::visit(
      Overloaded{
          [](const TwoWeightedEdges& x) -> Json {
            return {{"vertex", x.vertex}, {"edges", {x.first, x.second}}};
          },
          [](const BranchBelowWeighted& x) -> Json {
            return {{"weighted", x.weighted},
                    {"approach", path_json(x.approach)},
                    {"vertex", x.vertex},
                    {"edges", {x.first, x.second}}};
          },
          [](const TreesMeet& x) -> Json {
            return {{"edges", {x.first, x.second}},
                    {"meeting", x.meeting},
                    {"from_first", path_json(x.from_first)},
                    {"from_second", path_json(x.from_second)}};
          },
          [](const CycleBelowWeighted& x) -> Json {
            return {{"weighted", x.weighted}, {"approach", path_json(x.approach)}, {"cycle", path_json(x.cycle)}};
          },
          [](const CrossingPaths& x) -> Json {
            Json p = Json::array(), q = Json::array();
            for (const auto& path : x.p) p.push_back(path_json(path));
            for (const auto& path : x.q) q.push_back(path_json(path));
            return {{"p", p}, {"q", q}};
          },
      },
      w);
}

Json counts_json(const DegreeCounts& counts, const std::optional<DegreeVector>& only) {
  Json out = Json::array();
  for (const auto& [d, n] : counts) {
    if (only && d != *only) continue;
    out.push_back({{"degree", d.to_string()}, {"count", big_to_json(n)}});
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
}

class Command {
 public:
  explicit Command(const Options& opt) : opt_(opt) {}

  std::string validate() const {
    auto g = graph();
    Json j;
    j["valid"] = true;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["max_weight"] = g.max_weight();
    j["weighted_vertices"] = weighted_vertices(g);
    return dump(j);
  }

  std::string classify_graph() const {
    auto g = graph();
    auto c = classify(g, overrides());
    TransitionDigraph t = digraph(g);
    Json j;
    j["finite_dimensional"] = c.finite_dimensional;
    j["locally_finite"] = c.locally_finite;
    j["noetherian"] = c.noetherian;
    j["gk"] = to_string(c.gk);
    j["acyclic"] = c.acyclic;
    j["no_cycle_has_exit"] = !c.cycle_exit;
    j["growth"] = to_string(c.growth);
    j["quasicycle_gk"] = c.quasicycle_gk ? Json(to_string(*c.quasicycle_gk)) : Json(nullptr);

    Json conditions;
    conditions["weighted_part_empty"] = c.conditions.weighted_part_empty;
    conditions["weakly_well_behaved"] = c.conditions.weakly_well_behaved();
    conditions["well_behaved"] = c.conditions.well_behaved();
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& verdict = c.conditions.conditions[i];
      conditions[kRoman[i]] = verdict.holds;
      if (verdict.witness) {
        Json w{{"type", "condition"}, {"condition", kRoman[i]}};
        w.update(witness_json(*verdict.witness));
        witnesses.push_back(std::move(w));
      }
    }
    if (c.cycle_exit) {
      witnesses.push_back({{"type", "cycle_exit"}, {"cycle", path_json(c.cycle_exit->cycle)}, {"exit", c.cycle_exit->exit}});
    }
    if (c.non_noetherian) {
      witnesses.push_back({{"type", "non_noetherian"},
                           {"kind", to_string(c.non_noetherian->kind)},
                           {"word", format_word(t.alphabet(), g, c.non_noetherian->word)}});
    }
    j["conditions"] = std::move(conditions);
    j["witnesses"] = std::move(witnesses);
    return dump(j);
  }

  std::string basis() const {
    auto g = graph();
    auto t = digraph(g);
    const std::size_t len = max_len(t);
    auto words = enumerate_nod(t, len, degree(t));
    Json j;
    j["max_len"] = len;
    j["count"] = words.size();
    Json paths = Json::array();
    for (const auto& w : words) paths.push_back(format_word(t.alphabet(), g, w));
    j["paths"] = std::move(paths);
    return dump(j);
  }

  std::string hilbert() const {
    auto g = graph();
    auto t = digraph(g);
    const std::size_t len = max_len(t);
    auto filter = degree(t);
    auto counts = count_by_degree(t, len);
    BigInt total = 0;
    for (const auto& [d, n] : counts) {
      if (!filter || d == *filter) total += n;
    }
    Json j;
    j["max_len"] = len;
    j["dimension"] = t.dimension();
    j["counts"] = counts_json(counts, filter);
    j["total"] = big_to_json(total);
    return dump(j);
  }

  std::string quasicycle_report() const {
    auto g = graph();
    auto t = digraph(g);
    Json list = Json::array();
    for (const auto& q : quasicycles(t)) {
      list.push_back({{"word", format_word(t.alphabet(), g, q)},
                      {"length", q.length()},
                      {"selfconnected", is_selfconnected(t, q)}});
    }
    auto primed = primed_sets(t);
    Json letters = Json::array();
    for (LetterId x : primed.letters) letters.push_back(t.alphabet().name(x));
    Json j;
    j["quasicycles"] = std::move(list);
    j["gk"] = to_string(gk_class(t));
    j["primed"] = {{"letters", letters},
                   {"path_count", big_to_json(primed.path_count)},
                   {"quasicycle_count", primed.quasicycle_count},
                   {"max_quasicycle_length", primed.max_quasicycle_length},
                   {"homogeneous_bound", big_to_json(primed.homogeneous_bound())}};
    return dump(j);
  }

  std::string transform() const {
    auto g = graph();
    auto [result, trace] = unweight_pipeline(g);
    Format format = output_format();
    std::string text = serialize_graph(result, format);
    if (!opt_.trace.empty()) write_file(opt_.trace, trace_to_json(trace).dump(2) + "\n");
    if (opt_.output.empty()) return text;
    write_file(opt_.output, text);
    Json j;
    j["output"] = opt_.output;
    j["steps"] = trace.steps.size();
    j["vertices"] = result.vertex_count();
    j["edges"] = result.edge_count();
    return dump(j);
  }

  std::string decomposition() const { return dump(decomposition_to_json(decompose(graph()))); }

  std::string oracle() const {
    auto g = graph();
    auto sp = select_special(g, overrides());
    const std::size_t len = opt_.max_len >= 0 ? static_cast<std::size_t>(opt_.max_len) : kOracleDefaultLength;
    std::optional<DegreeVector> filter;
    if (!opt_.degree.empty()) filter = degree(TransitionDigraph(g, sp));
    auto counts = brute_force_counts(g, sp, len);
    Json j;
    j["max_len"] = len;
    j["words"] = counts.words;
    Json lengths = Json::array();
    for (const auto& n : counts.by_length) lengths.push_back(big_to_json(n));
    j["by_length"] = std::move(lengths);
    j["counts"] = counts_json(counts.by_degree, filter);
    return dump(j);
  }

 private:
  static std::string dump(const Json& j) { return j.dump(2) + "\n"; }

  WeightedGraph graph() const {
    std::optional<Format> format;
    if (!opt_.format.empty()) format = parse_format(opt_.format);
    return read_graph_file(opt_.file, format);
  }

  Format output_format() const {
    if (!opt_.format.empty()) return *parse_format(opt_.format);
    if (!opt_.output.empty()) return format_for_path(opt_.output);
    return opt_.file == "-" ? Format::wg : format_for_path(opt_.file);
  }

  std::map<VertexId, EdgeId> overrides() const {
    std::map<VertexId, EdgeId> out;
    for (const auto& s : opt_.special) {
      auto colon = s.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
        throw Error(Errc::syntax, "--special expects vertex:edge, got '" + s + "'");
      }
      out[s.substr(0, colon)] = s.substr(colon + 1);
    }
    return out;
  }

  TransitionDigraph digraph(const WeightedGraph& g) const { return TransitionDigraph(g, select_special(g, overrides())); }

  std::size_t max_len(const TransitionDigraph& t) const {
    return opt_.max_len >= 0 ? static_cast<std::size_t>(opt_.max_len) : 2 * t.node_count();
  }

  std::optional<DegreeVector> degree(const TransitionDigraph& t) const {
    if (opt_.degree.empty()) return std::nullopt;
    auto d = DegreeVector::parse(opt_.degree);
    if (d.size() != t.dimension()) {
      throw Error(Errc::invalid_argument,
                  "--degree needs " + std::to_string(t.dimension()) + " components, got " + std::to_string(d.size()));
    }
    return d;
  }

  const Options& opt_;
};

int exit_code_for(const Error& e) {
  if (e.is_input_error() || e.code() == Errc::limit_exceeded) return 2;
  if (e.code() == Errc::precondition) return 1;
  return 3;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"Classifier, rewriter and decomposer for weighted Leavitt path algebras", "wlpa"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  auto command = [&](const char* name, const char* description, const char* format_help = "input format") {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("file", opt.file, "graph file (.wg or .json), - for stdin")->required();
    sub->add_option("--format", opt.format, format_help)->check(CLI::IsMember({"wg", "json"}));
    return sub;
  };
  auto with_special = [&](CLI::App* sub) {
    sub->add_option("--special", opt.special, "special edge override vertex:edge (repeatable)");
    return sub;
  };
  auto with_counting = [&](CLI::App* sub) {
    sub->add_option("--max-len", opt.max_len, "maximal word length")->check(CLI::NonNegativeNumber);
    sub->add_option("--degree", opt.degree, "restrict to degree d1,d2,...");
    return with_special(sub);
  };

  command("validate", "parse and validate a graph");
  with_special(command("classify", "decide finite dimension, local finiteness and GK class"));
  with_counting(command("basis", "list nod-paths"));
  with_counting(command("hilbert", "count nod-paths by degree"));
  with_special(command("quasicycles", "list quasicycles and the primed-set bound"));
  auto* transform = command("transform", "rewrite a locally finite weighted graph into an unweighted one",
                           "input and output format");
  transform->add_option("-o,--output", opt.output, "output graph file (default stdout)");
  transform->add_option("--trace", opt.trace, "write the rewrite trace as JSON");
  command("decompose", "matrix block decomposition of an unweighted graph");
  with_counting(command("oracle", "brute-force nod-path counts"));

  std::vector<std::string> storage{"wlpa"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  CommandResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    result.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Command cmd(opt);
  try {
    if (name == "validate") result.out = cmd.validate();
    else if (name == "classify") result.out = cmd.classify_graph();
    else if (name == "basis") result.out = cmd.basis();
    else if (name == "hilbert") result.out = cmd.hilbert();
    else if (name == "quasicycles") result.out = cmd.quasicycle_report();
    else if (name == "transform") result.out = cmd.transform();
    else if (name == "decompose") result.out = cmd.decomposition();
    else if (name == "oracle") result.out = cmd.oracle();
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e);
    result.err = "wlpa " + name + ": " + std::string(to_string(e.code())) + ": " + e.what() + "\n";
    if (name == "validate" && result.exit_code == 2) {
      Json j{{"valid", false}, {"error", to_string(e.code())}, {"message", e.what()}};
      result.out = j.dump(2) + "\n";
    }
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.err = "wlpa " + name + ": internal: " + e.what() + "\n";
  }
  return result;
}

}  // namespace wlpa::cli
