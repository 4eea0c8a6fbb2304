#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "buildwalk/cli.hpp"

using buildwalk::cli::main_entry;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("polygon-mix report") {
  const auto r = run({"polygon-mix", "--m", "4", "--q", "2", "--r", "2", "--n", "30"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# buildwalk ", 0) == 0);
  CHECK(r.out.find("\"mode\":\"rational\"") != std::string::npos);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 32);
  CHECK(rows[0] == std::vector<std::string>{"n", "p_n_oo", "tv_exact", "tv_bound"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) <= std::stod(rows[i][3]));
  CHECK(rows[1][1] == "1");
  CHECK(rows[2][1] == "0");
}

TEST_CASE("feit-higman rejects pentagons") {
  const auto r = run({"feit-higman", "--m", "5", "--q", "2", "--r", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["admissible"] == false);
  CHECK(j["config"]["m"] == 5);
  CHECK(j.contains("version"));
}

TEST_CASE("c2-llt report") {
  const auto r = run({"c2-llt", "--q", "2", "--r", "2", "--n", "200"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["rho"].get<double>() == doctest::Approx(0.75425).epsilon(1e-5));
  CHECK(j["rows"].size() == 4);
  CHECK(j["rows"].back()["n"] == 200);
}

TEST_CASE("polygon-pn rational and float agree") {
  const auto a = csv_rows(run({"polygon-pn", "--m", "6", "--q", "2", "--n", "6"}).out);
  const auto b = csv_rows(run({"polygon-pn", "--m", "6", "--q", "2", "--n", "6", "--mode", "float"}).out);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(std::stod(a[i][2]) == doctest::Approx(std::stod(b[i][2])).epsilon(1e-12));
  const auto sqrt_fail = run({"polygon-pn", "--m", "6", "--q", "2", "--r", "5", "--n", "2"});
  CHECK(sqrt_fail.code == 1);
  CHECK(run({"polygon-pn", "--m", "6", "--q", "2", "--r", "5", "--n", "2", "--mode", "float"}).code == 0);
}

TEST_CASE("other subcommands") {
  CHECK(nlohmann::json::parse(run({"fuchsian-check", "--k", "3,3,4"}).out)["result"]["class"] ==
        "fuchsian-thick-building-exists");
  CHECK(nlohmann::json::parse(run({"a2-rho", "--q", "2"}).out)["result"]["rho"].get<double>() < 1.0);
  const auto pc = nlohmann::json::parse(run({"param-check", "--m", "3", "--q", "6"}).out);
  CHECK(pc["result"]["all_passed"] == false);
  const auto audit = nlohmann::json::parse(run({"model-audit", "--kind", "symplectic-quadrangle", "--q", "2"}).out);
  CHECK(audit["result"]["chambers"] == 45);
  CHECK(audit["result"]["geometry_passed"] == true);
  CHECK(audit["result"]["intersection_numbers_consistent"] == true);
  const auto qc = csv_rows(run({"quadrangle-closed-form", "--q", "2", "--n", "3"}).out);
  CHECK(qc.size() == 5);
  const auto ce = csv_rows(run({"c2-exact", "--q", "2", "--n", "2"}).out);
  CHECK(ce[0] == std::vector<std::string>{"n", "k", "l", "a_kl", "p"});
  const auto cs = nlohmann::json::parse(run({"c2-spectral", "--q", "2", "--n", "4", "--grid", "64x64", "--format", "json"}).out);
  CHECK(cs["result"]["max_abs_diff"].get<double>() < 1e-6);
  CHECK(cs["result"]["grid"]["n1"] == 64);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"polygon-mix", "--bogus", "1"}).code == 2);
  CHECK(run({"polygon-mix", "--m", "4", "--q", "2"}).code == 2);
  CHECK(run({"simulate", "--kind", "projective-plane", "--q", "2", "--n", "5"}).code == 2);
  CHECK(run({"feit-higman", "--m", "4", "--q", "2", "--format", "csv"}).code == 2);
  CHECK(run({"c2-spectral", "--q", "2", "--n", "1", "--grid", "20by20"}).code == 2);
  CHECK(run({"polygon-mix", "--m", "4", "--q", "2", "--n", "1", "--mode", "fast"}).code == 2);
}

TEST_CASE("domain errors exit with 1 and a JSON object") {
  const auto r = run({"c2-exact", "--q", "1", "--n", "3"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["kind"] == "invalid-input");
  const auto fh = run({"polygon-mix", "--m", "5", "--q", "2", "--n", "3"});
  CHECK(fh.code == 1);
  CHECK(nlohmann::json::parse(fh.out)["error"]["kind"] == "rejected-by-feit-higman");
  const auto grid = run({"c2-spectral", "--q", "2", "--n", "1", "--grid", "2x5"});
  CHECK(grid.code == 1);
}

TEST_CASE("config files and flag precedence") {
  {
    std::ofstream f("cli_config.json");
    f << R"({"m": 4, "q": "2", "r": 2, "n": 3, "format": "json"})";
  }
  const auto r = run({"polygon-mix", "--config", "cli_config.json", "--n", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["n"] == 5);
  CHECK(j["config"]["m"] == 4);
  CHECK(j["rows"].size() == 6);
  {
    std::ofstream f("cli_bad.json");
    f << R"({"steps_typo": 4})";
  }
  CHECK(run({"polygon-mix", "--config", "cli_bad.json"}).code == 2);
  CHECK(run({"polygon-mix", "--config", "missing.json"}).code == 2);
}

TEST_CASE("simulation output is reproducible across worker counts") {
  const std::vector<std::string> args{"simulate", "--kind", "projective-plane", "--q",   "2",
                                      "--n",      "5",      "--trials",         "50000", "--seed", "7"};
  setenv("BUILDWALK_THREADS", "1", 1);
  const auto a = run(args);
  setenv("BUILDWALK_THREADS", "4", 1);
  const auto b = run(args);
  unsetenv("BUILDWALK_THREADS");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = csv_rows(a.out);
  CHECK(rows[0] == std::vector<std::string>{"chamber_id", "point", "line", "probability", "weyl_word"});
  CHECK(rows.size() == 22);
}

TEST_CASE("output file") {
  const auto r = run({"a2-rho", "--q", "3", "--out", "cli_rho.json"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f("cli_rho.json");
  nlohmann::json j;
  f >> j;
  CHECK(j["config"]["out"] == "cli_rho.json");
}
