#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isores/cli.hpp"

using namespace isores;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }

  // JSON without the wall-time field.
  std::string body() const {
    auto j = json();
    j.erase("wall_time_s");
    return j.dump();
  }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> csv_summary(const std::string& csv) {
  std::map<std::string, std::string> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "field,value");
  while (std::getline(in, line) && !line.empty()) {
    const auto comma = line.find(',');
    std::string value = line.substr(comma + 1);
    if (value.size() >= 2 && value.front() == '"') {
      std::string unq;
      for (std::size_t i = 1; i + 1 < value.size(); ++i) {
        unq += value[i];
        if (value[i] == '"') ++i;
      }
      value = unq;
    }
    out[line.substr(0, comma)] = value;
  }
  return out;
}

void flatten(const Json& j, const std::string& prefix, std::map<std::string, std::string>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out[prefix] = j.is_string() ? j.get<std::string>() : j.is_null() ? "" : j.dump();
  }
}

}  // namespace

TEST(Cli, ResistanceExample) {
  const auto r = run({"resistance", "--family", "path:5", "--pair", "0,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "resistance");
  EXPECT_NEAR(j["results"]["summary"]["resistance"].get<double>(), 4.0, 1e-9);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("wall_time_s"));
}

TEST(Cli, DisconnectedResistanceIsInf) {
  const auto r = run({"resistance", "--family", "union(path:2,path:2)", "--pair", "0,3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["results"]["summary"]["resistance"], "inf");
}

TEST(Cli, LboundExample) {
  const auto r = run({"lbound", "--family", "path:4", "--vertex", "0", "--mode", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = r.json()["results"]["summary"];
  EXPECT_EQ(s["total"].get<double>(), 5.0);
  EXPECT_EQ(s["v"], 0);
  EXPECT_EQ(s["mode"], "exact");
  ASSERT_EQ(s["terms"].size(), 2u);
  EXPECT_EQ(s["terms"][0]["band"], Json::array({2, 2}));
  EXPECT_EQ(s["terms"][0]["term"].get<double>(), 3.0);
  EXPECT_EQ(s["terms"][1]["set"], Json::array({0}));
  EXPECT_EQ(s["terms"][1]["term"].get<double>(), 2.0);

  const auto inf = run({"lbound", "--family", "union(complete:4,complete:4)", "--vertex", "0"});
  EXPECT_EQ(inf.json()["results"]["summary"]["total"], "inf");
}

TEST(Cli, PercolationIsDeterministic) {
  const std::vector<std::string> args = {"percolation", "--n", "64", "--p", "0.7", "--trials", "10", "--seed", "7"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.body(), b.body());
  EXPECT_EQ(a.json()["results"]["rows"].size(), 10u);
  const auto c = run({"percolation", "--n", "64", "--p", "0.7", "--trials", "10", "--seed", "8"});
  EXPECT_NE(a.body(), c.body());
}

TEST(Cli, CsvAndJsonCarryTheSameSummary) {
  const std::vector<std::vector<std::string>> cases = {
      {"resistance", "--family", "grid2d:4", "--pair", "0,15"},
      {"tau-star", "--family", "cycle:9"},
      {"simulate", "--family", "path:3", "--pair", "0,2", "--trials", "200", "--seed", "4"},
      {"layered-scaling", "--n-list", "2,4,8"},
      {"percolation", "--n", "16", "--trials", "3", "--seed", "1"},
      {"conj1", "--family", "cycle:12"},
  };
  for (auto args : cases) {
    const auto j = run(args);
    ASSERT_EQ(j.code, 0) << args[0] << j.err;
    args.push_back("--format");
    args.push_back("csv");
    const auto c = run(args);
    ASSERT_EQ(c.code, 0) << args[0];
    std::map<std::string, std::string> expected;
    flatten(j.json()["results"]["summary"], "", expected);
    EXPECT_EQ(csv_summary(c.out), expected) << args[0];
  }
}

TEST(Cli, EverySubcommandRuns) {
  const std::vector<std::vector<std::string>> cases = {
      {"generate", "--family", "cycle:5", "--format", "json"},
      {"resistance", "--family", "cycle:5", "--pair", "0,2"},
      {"voltages", "--family", "grid2d:3", "--pair", "0,8"},
      {"lbound", "--family", "grid2d:6", "--vertex", "0", "--mode", "heuristic"},
      {"lbound", "--family", "union(complete:4,complete:4)", "--vertex", "0", "--modified"},
      {"rn", "--family", "cycle:8", "--vertex", "0", "--band", "1"},
      {"rn", "--family", "cycle:8", "--vertex", "0"},
      {"cheeger", "--family", "path:9"},
      {"balls", "--family", "hypercube:3", "--vertex", "0"},
      {"commute", "--family", "path:3", "--pair", "0,2"},
      {"tau-star", "--family", "multi_edge_cycle:16"},
      {"simulate", "--family", "path:2", "--pair", "0,1", "--trials", "50", "--seed", "1"},
      {"verify-theorem", "--family", "path:4", "--mode", "exact"},
      {"verify-theorem", "--family", "grid2d:4", "--pair-budget", "4"},
      {"constant-sweep", "--seed", "1", "--max-size", "8"},
      {"falsify-band", "--m-list", "4,8"},
      {"layered-scaling", "--n-list", "2,4"},
      {"multiedge-scaling", "--n-list", "8,16"},
      {"percolation", "--n-list", "8,16", "--trials", "2", "--seed", "3"},
      {"perc-boundary", "--n", "16", "--trials", "1", "--seed", "3"},
      {"conj1", "--family", "hypercube:3"},
      {"conj2", "--family", "torus2d:4"},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << args[0] << ": " << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["command"], args[0]);
    EXPECT_TRUE(j["results"].contains("summary"));
    EXPECT_TRUE(j["results"].contains("rows"));
  }
}

TEST(Cli, SpecificValues) {
  EXPECT_NEAR(run({"commute", "--family", "path:3", "--pair", "0,2"}).json()["results"]["summary"]["commute"].get<double>(),
              6.0, 1e-9);
  EXPECT_EQ(run({"cheeger", "--family", "path:9"}).json()["results"]["summary"]["cheeger"].get<double>(), 0.25);
  const auto rn = run({"rn", "--family", "complete:8", "--vertex", "0", "--band", "1"}).json();
  EXPECT_EQ(rn["results"]["summary"]["boundary"], 4);
  const auto balls = run({"balls", "--family", "cycle:8", "--vertex", "3"}).json()["results"]["rows"];
  std::vector<std::size_t> sizes;
  for (const auto& b : balls) sizes.push_back(b["size"]);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3, 5, 7, 8}));
  const auto fb = run({"falsify-band", "--m-list", "4"}).json()["results"];
  EXPECT_EQ(fb["rows"][0]["modified_l_w"].get<double>(), 4.0);
  EXPECT_EQ(fb["rows"][0]["unmodified_l_w"], "inf");
  EXPECT_EQ(fb["rows"][0]["resistance"], "inf");
}

TEST(Cli, GenerateWritesTheGraphFormatAndInputReadsIt) {
  const auto dir = std::filesystem::temp_directory_path() / "isores_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "g.txt").string();
  ASSERT_EQ(run({"generate", "--family", "circulant:10,1,3", "--out", path}).code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(read_graph(ss.str()), generate("circulant:10,1,3"));
  const auto from_file = run({"resistance", "--input", path, "--pair", "0,5"});
  const auto from_family = run({"resistance", "--family", "circulant:10,1,3", "--pair", "0,5"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.json()["results"]["summary"], from_family.json()["results"]["summary"]);
  EXPECT_EQ(from_file.json()["config"]["graph"], "file:" + path);

  std::ofstream(dir / "bad.txt") << "3 1\n0 0 1\n";
  const auto bad = run({"resistance", "--input", (dir / "bad.txt").string(), "--pair", "0,1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["error"]["kind"], "parse");
  std::filesystem::remove_all(dir);
}

TEST(Cli, UsageErrorsExitTwo) {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"nonsense"},
      {"resistance", "--pair", "0,1"},
      {"resistance", "--family", "path:3", "--input", "x.txt", "--pair", "0,1"},
      {"resistance", "--family", "path:3"},
      {"resistance", "--family", "path:3", "--pair", "0"},
      {"resistance", "--family", "path:3", "--pair", "a,b"},
      {"lbound", "--family", "path:3"},
      {"lbound", "--family", "path:3", "--vertex", "0", "--mode", "fast"},
      {"percolation", "--n", "8"},
      {"simulate", "--family", "path:3", "--pair", "0,2"},
      {"falsify-band", "--family", "path:3"},
      {"resistance", "--family", "path:3", "--pair", "0,1", "--format", "xml"},
      {"resistance", "--family", "path:3", "--pair", "0,1", "--bogus"},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, RuntimeErrorsExitOneWithStructuredReport) {
  const auto gate = run({"lbound", "--family", "torus2d:5", "--vertex", "0", "--mode", "exact"});
  EXPECT_EQ(gate.code, 1);
  EXPECT_EQ(gate.json()["error"]["kind"], "gate");
  EXPECT_EQ(gate.json()["command"], "lbound");
  // gate override
  EXPECT_EQ(run({"rn", "--family", "cycle:20", "--vertex", "0", "--band", "1", "--mode", "exact", "--override-gate"}).code,
            0);

  const auto conv = run({"resistance", "--family", "path:40", "--pair", "0,39", "--tolerance", "1e-300"});
  EXPECT_EQ(conv.code, 1);
  EXPECT_EQ(conv.json()["error"]["kind"], "convergence");

  EXPECT_EQ(run({"resistance", "--family", "cycle:2", "--pair", "0,1"}).json()["error"]["kind"], "parameter");
  EXPECT_EQ(run({"resistance", "--family", "path:3", "--pair", "0,7"}).code, 1);
}

TEST(Cli, ToleranceIsEchoedAndUsed) {
  const auto r = run({"resistance", "--family", "grid2d:20", "--pair", "0,399", "--tolerance", "1e-6"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["config"]["tolerance"].get<double>(), 1e-6);
  EXPECT_LE(j["results"]["summary"]["residual"].get<double>(), 1e-6);
  EXPECT_EQ(j["results"]["summary"]["solver"], "cg");
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("percolation"), std::string::npos);
}
