#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "wlpa/io.hpp"
#include "wlpa/rewriter.hpp"

using wlpa::cli::run;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(WLPA_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wlpa_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_out(const wlpa::cli::CommandResult& r) { return json::parse(r.out); }

}  // namespace

TEST(Cli, ClassifyRunningExample) {
  auto r = run({"classify", data("running_example.wg")});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = parse_out(r);
  EXPECT_EQ(j["locally_finite"], true);
  EXPECT_EQ(j["finite_dimensional"], false);
  EXPECT_EQ(j["noetherian"], true);
  EXPECT_EQ(j["gk"], "1");
  EXPECT_TRUE(j["witnesses"].empty());
}

TEST(Cli, NegativeVerdictIsData) {
  auto r = run({"classify", data("three_loops.wg")});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = parse_out(r);
  EXPECT_EQ(j["locally_finite"], false);
  EXPECT_EQ(j["gk"], "2+");
  EXPECT_EQ(j["conditions"]["i"], false);
  bool condition_i = false, non_noetherian = false;
  for (const auto& w : j["witnesses"]) {
    condition_i = condition_i || (w["type"] == "condition" && w["condition"] == "i");
    non_noetherian = non_noetherian || w["type"] == "non_noetherian";
  }
  EXPECT_TRUE(condition_i);
  EXPECT_TRUE(non_noetherian);
}

TEST(Cli, TransformThenDecompose) {
  auto out = scratch("g4_unweighted.wg");
  auto trace = scratch("g4_trace.json");
  auto t = run({"transform", data("running_example.wg"), "-o", out.string(), "--trace", trace.string()});
  ASSERT_EQ(t.exit_code, 0) << t.err;
  EXPECT_EQ(parse_out(t)["steps"], 2);

  auto d = run({"decompose", out.string()});
  ASSERT_EQ(d.exit_code, 0) << d.err;
  auto j = parse_out(d);
  ASSERT_EQ(j["blocks"].size(), 3u);
  EXPECT_EQ(j["blocks"][0]["size"], 5);
  EXPECT_EQ(j["blocks"][1]["size"], 12);
  EXPECT_EQ(j["blocks"][2]["size"], 8);
  EXPECT_EQ(j["blocks"][2]["ring"], "Laurent");
  EXPECT_EQ(j["pretty"], "M_5(K) (+) M_12(K) (+) M_8(K[x,x^-1])");

  // The written trace replays onto the input.
  auto input = wlpa::read_graph_file(data("running_example.wg"));
  auto steps = wlpa::trace_from_json(json::parse(slurp(trace)));
  EXPECT_EQ(wlpa::replay_trace(input, steps), wlpa::read_graph_file(out));
  ASSERT_TRUE(json::parse(slurp(trace)).is_array());
  EXPECT_EQ(json::parse(slurp(trace))[0]["rule"], "typeA-reversal");
}

TEST(Cli, TransformToStdoutAndJson) {
  auto r = run({"transform", data("weighted_arrow.wg")});
  ASSERT_EQ(r.exit_code, 0);
  auto g = wlpa::parse_graph(r.out, wlpa::Format::wg);
  EXPECT_EQ(g.edge_count(), 2u);
  // The output extension picks the format unless --format says otherwise.
  auto rj = run({"transform", data("weighted_arrow.wg"), "-o", scratch("g3.json").string()});
  ASSERT_EQ(rj.exit_code, 0) << rj.err;
  EXPECT_TRUE(json::parse(slurp(scratch("g3.json"))).is_object());
  EXPECT_EQ(wlpa::read_graph_file(scratch("g3.json")), g);
  auto rw = run({"transform", data("weighted_arrow.wg"), "--format", "wg", "-o", scratch("g3w.json").string()});
  ASSERT_EQ(rw.exit_code, 0) << rw.err;
  EXPECT_EQ(wlpa::read_graph_file(scratch("g3w.json"), wlpa::Format::wg), g);
}

TEST(Cli, HilbertWeightedArrow) {
  auto r = run({"hilbert", data("weighted_arrow.wg"), "--max-len", "8"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = parse_out(r);
  EXPECT_EQ(j["counts"].size(), 7u);
  int sum = 0;
  for (const auto& c : j["counts"]) sum += c["count"].get<int>();
  EXPECT_EQ(sum, 9);
  EXPECT_EQ(j["total"], 9);

  auto only = parse_out(run({"hilbert", data("weighted_arrow.wg"), "--degree", "0,0"}));
  EXPECT_EQ(only["total"], 3);
  EXPECT_EQ(only["counts"].size(), 1u);
}

TEST(Cli, BasisOracleAndQuasicycles) {
  auto b = parse_out(run({"basis", data("weighted_arrow.wg")}));
  EXPECT_EQ(b["count"], 9);
  EXPECT_EQ(b["paths"][0], "v");

  auto o = parse_out(run({"oracle", data("weighted_arrow.wg")}));
  EXPECT_EQ(o["words"], 9);
  EXPECT_EQ(o["max_len"], 8);

  auto q = parse_out(run({"quasicycles", data("running_example.wg")}));
  ASSERT_EQ(q["quasicycles"].size(), 2u);
  EXPECT_EQ(q["quasicycles"][0]["word"], "m_1");
  EXPECT_EQ(q["quasicycles"][1]["word"], "m_1*");
  EXPECT_EQ(q["gk"], "1");
}

TEST(Cli, SpecialOverrides) {
  auto g = write("tie.wg", "vertex v u\nedge a : v -> u weight 2\nedge b : v -> u weight 2\n");
  auto plain = parse_out(run({"hilbert", g, "--max-len", "4"}));
  auto swapped = run({"hilbert", g, "--max-len", "4", "--special", "v:b"});
  ASSERT_EQ(swapped.exit_code, 0) << swapped.err;
  EXPECT_EQ(parse_out(swapped)["counts"], plain["counts"]);
  EXPECT_EQ(run({"hilbert", g, "--special", "v:nope"}).exit_code, 2);
  EXPECT_EQ(run({"hilbert", g, "--special", "v"}).exit_code, 2);
  auto light = write("light.wg", "vertex v u\nedge a : v -> u weight 2\nedge b : v -> u\n");
  EXPECT_EQ(run({"classify", light, "--special", "v:b"}).exit_code, 2);
}

TEST(Cli, ExitCodes) {
  auto usage = run({"frobnicate"});
  EXPECT_EQ(usage.exit_code, 2);
  EXPECT_NE(usage.err.find("validate"), std::string::npos);
  EXPECT_EQ(run({"classify", data("running_example.wg"), "--bogus"}).exit_code, 2);
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"--help"}).exit_code, 0);

  auto broken = write("broken.wg", "vertex v\nedge e : v -> w\n");
  auto v = run({"validate", broken});
  EXPECT_EQ(v.exit_code, 2);
  EXPECT_EQ(parse_out(v)["valid"], false);
  EXPECT_EQ(parse_out(v)["error"], "unknown-vertex");
  EXPECT_EQ(run({"classify", scratch("missing.wg").string()}).exit_code, 2);
  EXPECT_EQ(run({"hilbert", data("weighted_arrow.wg"), "--degree", "1"}).exit_code, 2);
  EXPECT_EQ(run({"basis", data("three_loops.wg"), "--max-len", "40"}).exit_code, 2);

  EXPECT_EQ(run({"transform", data("three_loops.wg")}).exit_code, 1);
  EXPECT_EQ(run({"decompose", data("running_example.wg")}).exit_code, 1);
  EXPECT_EQ(run({"validate", data("running_example.wg")}).exit_code, 0);
}

TEST(Cli, JsonInput) {
  auto g = wlpa::read_graph_file(data("running_example.wg"));
  auto path = write("g4.json", wlpa::serialize_graph(g, wlpa::Format::json));
  auto a = run({"classify", path});
  auto b = run({"classify", data("running_example.wg")});
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Deterministic) {
  for (const char* cmd : {"classify", "hilbert", "quasicycles", "transform", "basis"}) {
    auto a = run({cmd, data("crossing_pair.wg")});
    auto b = run({cmd, data("crossing_pair.wg")});
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_EQ(a.exit_code, b.exit_code) << cmd;
  }
}
