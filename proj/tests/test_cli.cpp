#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hmp/cli.hpp"
#include "hmp/serialization.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hmp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hmp_cli_test_" + name);
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("gen-family") {
  const auto path = temp_path("cyclic.json");
  auto r = run({"gen-family", "--kind", "cyclic", "--n", "8", "--out", path.string()});
  REQUIRE(r.code == 0);
  const auto fam = hmp::io::parse_family(hmp::io::read_file(path.string()));
  CHECK(fam.family.t() == 4);
  REQUIRE(fam.config.has_value());
  CHECK(fam.config->at("seed") == 0);

  r = run({"gen-family", "--kind", "pg", "--q", "2"});
  REQUIRE(r.code == 0);
  const auto pg = hmp::io::parse_family(r.out);
  CHECK(pg.family.n() == 14);
  CHECK(pg.family.t() == 3);

  r = run({"gen-family", "--kind", "girth", "--n", "4", "--t", "2", "--d", "2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("not found") != std::string::npos);

  r = run({"gen-family", "--kind", "girth", "--n", "14", "--t", "3", "--d", "2", "--seed", "5"});
  CHECK(r.code == 0);
  std::filesystem::remove(path);
}

TEST_CASE("run-quantum") {
  auto r = run({"run-quantum", "--n", "8", "--runs", "1000"});
  REQUIRE(r.code == 0);
  const auto doc = hmp::io::Json::parse(r.out);
  CHECK(doc.at("failures") == 0);
  CHECK(doc.at("records").size() == 1000);
  for (const auto& rec : doc.at("records")) CHECK(rec.at("correct") == true);

  r = run({"run-quantum", "--n", "16", "--runs", "50"});
  REQUIRE(r.code == 0);
  for (const auto& rec : hmp::io::Json::parse(r.out).at("records")) CHECK(rec.at("qubits") == 4);

  const auto path = temp_path("fam.json");
  REQUIRE(run({"gen-family", "--kind", "pg", "--q", "2", "--out", path.string()}).code == 0);
  r = run({"run-quantum", "--family", path.string(), "--exhaustive", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(csv_lines(r.out).size() == 1 + 3 * 16384);
  std::filesystem::remove(path);
}

TEST_CASE("bruteforce-classical and sweep") {
  auto r = run({"bruteforce-classical", "--n", "4", "--epsilon", "0"});
  REQUIRE(r.code == 0);
  const auto doc = hmp::io::Json::parse(r.out);
  CHECK(doc.at("result").at("classical_min_cost") == 2);
  CHECK(doc.contains("protocol"));

  r = run({"sweep", "--ns", "2,4,6"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,t,quantum_qubits,quantum_classical_bits,quantum_total_cost,classical_min_cost,worst_case_error,epsilon");
  CHECK(lines[1] == "2,1,1,0,1,1,0.0,0.0");
  CHECK(lines[2] == "4,2,2,1,3,2,0.0,0.0");
  CHECK(lines[3] == "6,3,3,2,5,3,0.0,0.0");

  r = run({"bruteforce-classical", "--n", "10"});
  CHECK(r.code == 3);
  CHECK(r.err.find("estimated search space") != std::string::npos);
}

TEST_CASE("extract") {
  auto r = run({"extract", "--n", "4", "--protocol", "constant", "--mode", "sampled", "--samples", "100000"});
  REQUIRE(r.code == 0);
  CHECK(hmp::io::Json::parse(r.out).at("accounting").at("I_AB_C").get<double>() < 0.02);

  r = run({"extract", "--n", "4", "--protocol", "edge-parity", "--c", "0110"});
  REQUIRE(r.code == 0);
  const auto doc = hmp::io::Json::parse(r.out);
  CHECK(doc.at("extraction").at("s") == 2);
  CHECK(doc.at("accounting").at("I_AB_C").get<double>() == doctest::Approx(2.0));

  // Protocol tables produced by the search can be fed back in.
  const auto table_path = temp_path("table.json");
  const auto bf = hmp::io::Json::parse(run({"bruteforce-classical", "--n", "4"}).out);
  {
    std::ofstream f(table_path);
    f << bf.at("protocol").dump();
  }
  r = run({"extract", "--n", "4", "--protocol", "table", "--table", table_path.string()});
  REQUIRE(r.code == 0);
  CHECK(hmp::io::Json::parse(r.out).at("accounting").at("min_success") == 1.0);
  std::filesystem::remove(table_path);
}

TEST_CASE("csv and json carry the same numbers") {
  const auto j = hmp::io::Json::parse(run({"sweep", "--format", "json"}).out);
  const auto lines = csv_lines(run({"sweep", "--format", "csv"}).out);
  REQUIRE(lines.size() == j.at("rows").size() + 1);
  for (std::size_t i = 0; i < j.at("rows").size(); ++i) {
    std::string expected;
    for (const auto& [key, value] : j.at("rows")[i].items()) expected += (expected.empty() ? "" : ",") + value.dump();
    CHECK(lines[i + 1] == expected);
  }

  const auto ej = hmp::io::Json::parse(run({"extract", "--n", "6", "--protocol", "random", "--bits", "2"}).out);
  const auto ec = csv_lines(run({"extract", "--n", "6", "--protocol", "random", "--bits", "2", "--format", "csv"}).out);
  REQUIRE(ec.size() == 2);
  CHECK(ec[1].find(ej.at("accounting").at("I_AB_C").dump()) != std::string::npos);
}

TEST_CASE("identical config and seed give identical bytes") {
  const std::vector<std::vector<std::string>> commands{
      {"gen-family", "--kind", "girth", "--n", "30", "--t", "3", "--d", "2", "--seed", "12"},
      {"run-quantum", "--n", "8", "--runs", "200", "--seed", "99"},
      {"bruteforce-classical", "--n", "6", "--epsilon", "0.25"},
      {"extract", "--n", "8", "--protocol", "random", "--mode", "sampled", "--samples", "5000", "--seed", "4"},
      {"sweep", "--ns", "2,4", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run({"run-quantum", "--n", "8", "--runs", "50", "--seed", "1"}).out !=
        run({"run-quantum", "--n", "8", "--runs", "50", "--seed", "2"}).out);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == 2);
  CHECK(run({"gen-family", "--kind", "cyclic", "--n", "5"}).code == 2);
  CHECK(run({"gen-family", "--kind", "pg", "--q", "4"}).code == 2);
  CHECK(run({"run-quantum", "--family", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"extract", "--n", "4", "--protocol", "table"}).code == 2);
  CHECK(run({"sweep", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
