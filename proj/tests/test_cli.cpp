#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "av321/cli.hpp"
#include "av321/report.hpp"

using namespace av321;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_command(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("av321_test_" + name);
}

} // namespace

TEST_CASE("biject") {
  const Run r = run({"biject", "--direction", "tree-to-perm", "--in", "UUDUDDUUDUUUDDUDUDDUDD"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "2 3 1 5 8 4 9 10 6 11 7\n");
  const Run back = run({"biject", "--direction", "perm-to-tree"}, "2 3 1 5 8 4 9 10 6 11 7\n1\n");
  CHECK(back.code == kExitOk);
  CHECK(back.out == "UUDUDDUUDUUUDDUDUDDUDD\nUD\n");
  CHECK(run({"biject", "--direction", "perm-to-tree", "--in", "3 2 1"}).code == kExitUsage);
  CHECK(run({"biject", "--direction", "sideways", "--in", "UD"}).code == kExitUsage);
}

TEST_CASE("exact-dist") {
  const Run r = run({"exact-dist", "--n", "3", "--pattern", "321"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "outcome,probability\n0,0.4\n1,0.4\n3,0.2\n");
  const Run joint = run({"exact-dist", "--n", "2", "--joint"});
  CHECK(joint.out == "front,back,probability\n0,0,0.5\n1,1,0.5\n");
  CHECK(run({"exact-dist", "--n", "11"}).code == kExitUsage);
}

TEST_CASE("sample-perm") {
  const Run r = run({"sample-perm", "--n", "1", "--count", "3", "--seed", "7"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "1\n1\n1\n");
  const Run a = run({"sample-perm", "--n", "30", "--count", "50", "--seed", "9", "--streams", "3"});
  const Run b = run({"sample-perm", "--n", "30", "--count", "50", "--seed", "9", "--streams", "3"});
  CHECK(a.out == b.out);
  CHECK(a.out != run({"sample-perm", "--n", "30", "--count", "50", "--seed", "10"}).out);
  CHECK(run({"sample-perm", "--n", "3", "--count", "2"}).code == kExitUsage);
}

TEST_CASE("enumerate") {
  CHECK(run({"enumerate", "--n", "3", "--pattern", "132"}).out == "1 2 3\n2 1 3\n2 3 1\n3 1 2\n3 2 1\n");
  CHECK(run({"enumerate", "--n", "3", "--object", "tree"}).out == "UUDD\nUDUD\n");
  CHECK(run({"enumerate", "--n", "0"}).code == kExitUsage);
}

TEST_CASE("sample-tree surfaces overflow distinctly") {
  const Run r = run({"sample-tree", "--kind", "gw", "--count", "3", "--node-cap", "2", "--seed", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("OVERFLOW") != std::string::npos);
  CHECK(r.err.find("node cap") != std::string::npos);
  const Run k = run({"sample-tree", "--kind", "kesten", "--height", "2", "--count", "2", "--seed", "1"});
  CHECK(k.code == kExitOk);
  const Run u = run({"sample-tree", "--n", "4", "--count", "2", "--seed", "1"});
  CHECK(u.code == kExitOk);
}

TEST_CASE("usage errors exit nonzero with a message") {
  const Run none = run({});
  CHECK(none.code == kExitUsage);
  CHECK_FALSE(none.err.empty());
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"sample-perm", "--n", "3", "--count", "0", "--seed", "1"}).code == kExitUsage);
  CHECK(run({"midrange", "--n", "20", "--a", "15", "--b", "10", "--count", "5", "--seed", "1"}).code ==
        kExitUsage);
}

TEST_CASE("output files carry metadata and are byte-stable") {
  const auto p1 = temp_file("a.csv");
  const auto p2 = temp_file("b.csv");
  const std::vector<std::string> base{"convergence", "--n", "50", "--n", "200", "--n", "1000",
                                      "--count", "500", "--seed", "3", "--streams", "2"};
  auto with_out = [&](const std::filesystem::path &p) {
    auto args = base;
    args.push_back("--out");
    args.push_back(p.string());
    return run(args);
  };
  REQUIRE(with_out(p1).code == kExitOk);
  REQUIRE(with_out(p2).code == kExitOk);
  const std::string text = slurp(p1);
  CHECK(text == slurp(p2));

  std::istringstream lines(text);
  std::string header, columns;
  std::getline(lines, header);
  std::getline(lines, columns);
  REQUIRE(header.rfind("# ", 0) == 0);
  const auto meta = nlohmann::json::parse(header.substr(2));
  CHECK(meta["command"] == "convergence");
  CHECK(meta["seed"] == 3);
  CHECK(meta["version"] == AV321_VERSION);
  CHECK(columns == "n,tv,ci");
  int rows = 0;
  for (std::string row; std::getline(lines, row);) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("convergence tolerance and overlay") {
  const auto overlay = temp_file("overlay.csv");
  const Run r = run({"convergence", "--n", "100", "--count", "2000", "--seed", "1", "--statistic", "front",
                     "--overlay", overlay.string()});
  CHECK(r.code == kExitOk);
  const std::string text = slurp(overlay);
  CHECK(text.find("outcome,theoretical,empirical\n0,") != std::string::npos);
  std::filesystem::remove(overlay);
  CHECK(run({"convergence", "--n", "100", "--count", "500", "--seed", "1", "--tolerance", "1e-6"}).code ==
        kExitVerifyFailed);
}

TEST_CASE("unwritable output path is reported with the path") {
  const Run r = run({"sample-limit", "--count", "2", "--seed", "1", "--out", "/nonexistent_dir/x.csv"});
  CHECK(r.code != kExitOk);
  CHECK(r.err.find("/nonexistent_dir/x.csv") != std::string::npos);
}

TEST_CASE("json format") {
  const Run r = run({"exact-dist", "--n", "3", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("metadata"));
  CHECK(j["metadata"]["command"] == "exact-dist");
}

TEST_CASE("report tables") {
  std::ostringstream os;
  write_csv(os, convergence_table({}));
  CHECK(os.str() == "n,tv,ci\n");
  EmpiricalDist e;
  e.add(0, 3);
  e.add(5, 1);
  const CsvTable t = pmf_overlay(geometric_pmf(2.0 / 3.0), e, 0.01);
  REQUIRE(t.rows.size() == 5);
  CHECK(t.rows[0][0] == "0");
  CHECK(t.rows[4][0] == "5");
  CHECK(t.rows[4][2] == "0.25");
  CHECK(format_double(0.4) == "0.4");
  CHECK(metadata_json(RunMetadata{"x", 1, {}, {}, {}, "v"}) == R"({"command":"x","seed":1,"version":"v"})");
}
