#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tipsy/cli.hpp"
#include "tipsy/graph.hpp"
#include "tipsy/output.hpp"

using namespace tipsy;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::vector<const char*> argv{"tipsy"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) {
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return nlohmann::json::parse(r.out);
}

// Rows of a CSV record, skipping "#" metadata lines; the first row is the header.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("gen") {
  auto r = run({"gen", "--family", "complete", "--v", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "0 1\n0 2\n1 2\n");

  r = run({"gen", "--family", "friendship", "--k", "2"});
  const Graph g = parse_edge_list(r.out);
  CHECK(g.edge_count() == 6);
  int through_center = 0;
  for (const auto& [u, v] : g.edges()) through_center += (u == 0 || v == 0);
  CHECK(through_center == 4);

  r = run({"gen", "--family", "cycle", "--v", "5"});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);

  CHECK(run({"gen", "--family", "cycle", "--v", "2"}).code == kExitUsage);
  CHECK(run({"gen", "--family", "hexagon", "--v", "6"}).code == kExitUsage);
  CHECK(run({"gen"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"survive", "--bogus"}).code == kExitUsage);
}

TEST_CASE("survive on K3 with the closed form") {
  const auto j = json_of(run({"survive", "--family", "complete", "--v", "3", "--theta", "1", "--moves", "2",
                              "--method", "closed-form"}));
  REQUIRE(j["data"].size() == 3);
  CHECK(j["data"][0]["closed_form"] == 1.0);
  CHECK(j["data"][1]["closed_form"] == 0.5);
  CHECK(j["data"][2]["closed_form"] == 0.25);
  CHECK(j["meta"]["graph"] == "complete(v=3)");
  CHECK(j["meta"]["unit"] == "moves");
  CHECK(j["meta"]["method"] == "closed-form");
}

TEST_CASE("survive with every method") {
  const auto j = json_of(run({"survive", "--family", "bipartite", "--v", "3", "--w", "2", "--position", "2",
                              "--theta", "0.5", "--moves", "2", "--method", "all", "--trials", "2000", "--seed",
                              "3"}));
  const auto& row = j["data"][2];
  CHECK(row["chain"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(row["closed_form"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(row["max_deviation"].get<double>() <= 1e-12);
  for (const auto& col : {"chain", "closed_form", "monte_carlo"}) CHECK(j["data"][0][col] == 1.0);
  CHECK(j["meta"]["seed"] == 3);
}

TEST_CASE("survive on a graph file and in rounds") {
  const std::string path = "test_cli_graph.txt";
  {
    std::ofstream f(path);
    f << "# a path on four vertices\n0 1\n1 2\n2 3\n";
  }
  auto j = json_of(run({"survive", "--graph", path, "--cop", "0", "--robber", "3", "--theta", "0.2", "--rounds",
                        "5"}));
  CHECK(j["data"].size() == 6);
  CHECK(j["meta"]["unit"] == "rounds");
  CHECK(run({"survive", "--graph", path, "--cop", "0", "--robber", "3", "--rounds", "5", "--method",
             "closed-form"})
            .code == kExitValidation);
  CHECK(run({"survive", "--graph", path, "--cop", "1", "--robber", "1", "--rounds", "5"}).code == kExitValidation);
  CHECK(run({"survive", "--graph", path, "--rounds", "5"}).code == kExitUsage);
  std::remove(path.c_str());

  CHECK(run({"survive", "--graph", "no-such-file.txt", "--cop", "0", "--robber", "1", "--moves", "3"}).code ==
        kExitUsage);
  CHECK(run({"survive", "--family", "complete", "--v", "3", "--moves", "2", "--rounds", "2"}).code == kExitUsage);
  CHECK(run({"survive", "--family", "complete", "--v", "3", "--theta", "1.5", "--moves", "2"}).code ==
        kExitValidation);
  CHECK(run({"survive", "--family", "bipartite", "--v", "1", "--w", "3", "--position", "2", "--moves", "2"}).code ==
        kExitValidation);
  CHECK(run({"survive", "--family", "friendship", "--k", "2", "--position", "1", "--moves", "2", "--method",
             "closed-form"})
            .code == kExitValidation);
}

TEST_CASE("exact chain output") {
  const auto j = json_of(run({"survive", "--family", "cycle", "--v", "5", "--distance", "1", "--theta", "1/3",
                              "--moves", "3", "--exact"}));
  CHECK(j["data"][0]["chain_exact"] == "1");
  CHECK(j["data"][1]["chain_exact"] == "1/2");
  const auto e = json_of(run({"expect", "--family", "complete", "--v", "3", "--theta", "1", "--exact"}));
  CHECK(e["data"][0]["exact"] == "2");
}

TEST_CASE("expect") {
  auto j = json_of(run({"expect", "--family", "complete", "--v", "2"}));
  CHECK(j["data"][0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["meta"]["unit"] == "moves");

  j = json_of(run({"expect", "--family", "bipartite", "--v", "3", "--w", "2", "--position", "1", "--theta", "0.7",
                   "--method", "closed-form"}));
  CHECK(j["data"][0]["value"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));

  j = json_of(run({"expect", "--family", "cycle", "--v", "5", "--distance", "1", "--theta", "1", "--unit", "rounds",
                   "--method", "all", "--trials", "5000", "--seed", "9"}));
  REQUIRE(j["data"].size() == 3);
  CHECK(j["data"][0]["value"].get<double>() == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(j["data"][1]["value"].get<double>() == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(j["meta"]["max_deviation"].get<double>() <= 1e-9);

  CHECK(run({"expect", "--family", "cycle", "--v", "7", "--distance", "1", "--method", "closed-form"}).code ==
        kExitValidation);
  CHECK(run({"expect", "--family", "complete", "--v", "3", "--unit", "hours"}).code == kExitUsage);
}

TEST_CASE("simulate") {
  auto j = json_of(run({"simulate", "--family", "complete", "--v", "2", "--trials", "10", "--max-moves", "5"}));
  CHECK(j["data"][1]["captures"] == 10);
  for (std::size_t m = 2; m < j["data"].size(); ++m) CHECK(j["data"][m]["captures"] == 0);

  const std::vector<std::string> args{"simulate", "--family", "complete", "--v",     "3",    "--theta",
                                      "1",        "--trials", "100000",   "--seed", "2024", "--max-moves", "20"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.out == b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);

  j = json_of(a);
  const double p2 = j["data"][2]["survival"].get<double>();
  CHECK(std::abs(p2 - 0.25) <= 3 * std::sqrt(0.25 * 0.75 / 1e5));
  CHECK(j["meta"]["seed"] == 2024);
  CHECK(j["meta"]["trials"] == 100000);
}

TEST_CASE("CSV and JSON agree") {
  const std::vector<std::string> base{"survive", "--family", "cycle", "--v",    "7",   "--distance", "2",
                                      "--theta", "0.3",      "--moves", "12", "--method", "all",
                                      "--trials", "1000",    "--seed",  "5"};
  auto as_json = base;
  as_json.insert(as_json.end(), {"--format", "json"});
  auto as_csv = base;
  as_csv.insert(as_csv.end(), {"--format", "csv"});
  const auto j = json_of(run(as_json));
  const Run c = run(as_csv);
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() == j["data"].size() + 1);
  const auto& header = rows[0];
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& obj = j["data"][r - 1];
    REQUIRE(rows[r].size() == header.size());
    for (std::size_t c2 = 0; c2 < header.size(); ++c2) {
      const auto& v = obj[header[c2]];
      if (v.is_number_float()) {
        CHECK(rows[r][c2] == format_double(v.get<double>(), 12));
      } else if (v.is_number_integer()) {
        CHECK(std::stoll(rows[r][c2]) == v.get<long long>());
      }
    }
  }
  CHECK(c.out.find("# graph=cycle(v=7)") != std::string::npos);
  CHECK(c.out.find("# seed=5") != std::string::npos);
}

TEST_CASE("records reproduce from their metadata") {
  const auto first = json_of(run({"survive", "--family", "friendship", "--k", "3", "--position", "4", "--theta",
                                  "0.25", "--moves", "6", "--first-mover", "cop"}));
  const auto& meta = first["meta"];
  const auto& start = meta["start"];
  const auto again = json_of(run({"survive", "--family", "friendship", "--k", "3", "--cop",
                                  std::to_string(start["cop"].get<int>()), "--robber",
                                  std::to_string(start["robber"].get<int>()), "--theta",
                                  meta["theta_text"].get<std::string>(), "--moves",
                                  std::to_string(meta["horizon"].get<int>()), "--first-mover",
                                  start["first_mover"].get<std::string>()}));
  CHECK(first["data"] == again["data"]);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--suite", "complete"});
  CHECK(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["passed"] == true);
  for (const auto& cell : j["data"]) CHECK(cell["status"] == "pass");

  r = run({"verify", "--suite", "c5", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("survival_rounds[0..40] chain vs c5_rounds") != std::string::npos);

  r = run({"verify", "--suite", "friendship"});
  CHECK(r.code == kExitOk);
  j = nlohmann::json::parse(r.out);
  bool saw_gap = false;
  for (const auto& cell : j["data"]) {
    if (cell["check"].get<std::string>().find("class-3 even-step gap") == std::string::npos) continue;
    if (cell["theta"].get<double>() > 0.0) {
      CHECK(cell["max_error"].get<double>() > 0.0);
      saw_gap = true;
    }
  }
  CHECK(saw_gap);

  CHECK(run({"verify", "--suite", "octahedron"}).code == kExitUsage);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == kExitOk);
}
