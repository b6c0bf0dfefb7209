#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "chaos/cli.hpp"
#include "chaos/error.hpp"

using namespace chaos;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "chaos_bounds");
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("chaos_cli_test_" + name);
  std::ofstream(path) << text;
  return path;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kAllPairs =
    R"({"k": 2, "n": 3, "entries": [{"indices": [1, 2], "value": 1},
        {"indices": [1, 3], "value": 1}, {"indices": [2, 3], "value": 1}]})";

}  // namespace

TEST_CASE("integer lists") {
  CHECK(cli::parse_int_list({"3"}) == std::vector<int>{3});
  CHECK(cli::parse_int_list({"1..4", "7"}) == std::vector<int>{1, 2, 3, 4, 7});
  CHECK_THROWS_AS(cli::parse_int_list({"4..1"}), InvalidInput);
  CHECK_THROWS_AS(cli::parse_int_list({"x"}), InvalidInput);
  CHECK_THROWS_AS(cli::parse_int_list({"2.5"}), InvalidInput);
}

TEST_CASE("seed resolution") {
  cli::RunConfig c;
  c.seed = 9;
  CHECK(cli::resolve_seed(c) == 9);
  c.seed.reset();
  ::setenv("CHAOS_BOUNDS_SEED", "1234", 1);
  CHECK(cli::resolve_seed(c) == 1234);
  ::setenv("CHAOS_BOUNDS_SEED", "abc", 1);
  CHECK_THROWS_AS(cli::resolve_seed(c), InvalidInput);
  ::unsetenv("CHAOS_BOUNDS_SEED");
  CHECK(cli::resolve_seed(c) == 1);
}

TEST_CASE("bounds on the all-pairs form") {
  const auto form = write_temp("pairs.json", kAllPairs);
  const auto r = call({"bounds", "--form", form.string(), "--u", "2", "--M", "2"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["command"] == "bounds");
  CHECK(doc["inputs"]["v2"] == 6.0);
  bool saw_tail = false;
  for (const auto& row : doc["rows"]) {
    CHECK(row.contains("bound_name"));
    if (row["bound_name"] == "theorem1_tail_bound") {
      saw_tail = true;
      CHECK(row["oracle_value"].get<double>() == doctest::Approx(0.25));
      CHECK(row["bound_value"].get<double>() >= 0.25);
      CHECK(row["dominates"] == true);
    }
    if (row["bound_name"] == "theorem2_moment_bound") {
      CHECK(row["bound_value"] == 3780.0);
      CHECK(row["oracle_value"] == 336.0);
    }
  }
  CHECK(saw_tail);
}

TEST_CASE("exact moments of a single coordinate") {
  const auto form = write_temp("x1.json", R"({"k": 1, "n": 1, "entries": [{"indices": [1], "value": 1}]})");
  const auto r = call({"exact", "--form", form.string(), "--M", "1..6"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  int seen = 0;
  for (const auto& row : doc["rows"]) {
    if (row.value("quantity", "") != "moment") continue;
    CHECK(row["exact_moment"] == 1.0);
    CHECK(row["dominates"] == true);
    ++seen;
  }
  CHECK(seen == 6);
}

TEST_CASE("compare crosses zero once") {
  const auto r = call({"compare", "--k", "2", "--M", "1..25"});
  REQUIRE(r.code == 0);
  int sign_changes = 0;
  double prev = 0.0;
  bool first = true;
  const auto doc = json::parse(r.out);
  for (const auto& row : doc["rows"]) {
    const double lr = row["log_ratio"].get<double>();
    if (!first && (prev > 0.0) != (lr > 0.0)) ++sign_changes;
    if (first) CHECK(lr > 0.0);
    prev = lr;
    first = false;
  }
  CHECK(sign_changes == 1);
  CHECK(prev < 0.0);
}

TEST_CASE("diagrams, simulate and sharpness produce rows") {
  const auto form = write_temp("pairs2.json", kAllPairs);
  auto r = call({"diagrams", "--form", form.string(), "--M", "1..2"});
  REQUIRE(r.code == 0);
  CHECK_FALSE(json::parse(r.out)["rows"].empty());

  r = call({"simulate", "--form", form.string(), "--u", "2", "--samples", "20000",
            "--dist", "uniform", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto rows = json::parse(r.out)["rows"];
  REQUIRE_FALSE(rows.empty());
  CHECK(rows[0].contains("std_error"));

  r = call({"sharpness", "--k", "2", "--n", "10", "40", "--samples", "5000", "--seed", "2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rows"].size() == 2);
}

TEST_CASE("csv projection and --out") {
  const auto form = write_temp("pairs3.json", kAllPairs);
  const auto out = fs::temp_directory_path() / "chaos_cli_test_out.csv";
  const auto r = call({"exact", "--form", form.string(), "--M", "1", "--format", "csv",
                       "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto text = read_all(out);
  CHECK(text.rfind("command,", 0) == 0);
  CHECK(text.find("\nexact,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == cli::kConfigError);
  CHECK(call({"bogus"}).code == cli::kConfigError);
  CHECK(call({"exact", "--form", "/nonexistent/form.json", "--M", "1"}).code == cli::kConfigError);
  CHECK(call({"compare", "--k", "2", "--M", "1..3", "--format", "xml"}).code ==
        cli::kConfigError);
  const auto bad = write_temp("bad.json", R"({"k": 2, "n": 3, "entries": [{"indices": [2, 1], "value": 1}]})");
  CHECK(call({"exact", "--form", bad.string(), "--M", "1"}).code == cli::kConfigError);

  const auto form = write_temp("pairs4.json", kAllPairs);
  const auto budget = call({"diagrams", "--form", form.string(), "--M", "6",
                            "--budget-diagrams", "1000"});
  CHECK(budget.code == cli::kBudgetError);
  CHECK(budget.err.find("budget") != std::string::npos);
  CHECK(call({"exact", "--form", form.string(), "--M", "4", "--budget-terms", "5"}).code ==
        cli::kBudgetError);
  CHECK(call({"--help"}).code == cli::kSuccess);
}

TEST_CASE("selfcheck passes and is reproducible through the executable") {
  const auto a = fs::temp_directory_path() / "chaos_cli_test_sc_a.json";
  const auto b = fs::temp_directory_path() / "chaos_cli_test_sc_b.json";
  const std::string exe = CHAOS_BOUNDS_EXE;
  const int ra = std::system((exe + " selfcheck --seed 5 --out " + a.string()).c_str());
  const int rb = std::system(("CHAOS_BOUNDS_SEED=5 " + exe + " selfcheck --out " + b.string()).c_str());
  CHECK(ra == 0);
  CHECK(rb == 0);
  const auto ta = read_all(a);
  CHECK_FALSE(ta.empty());
  CHECK(ta == read_all(b));
  CHECK(json::parse(ta)["inputs"]["passed"] == true);

  const int bad = std::system((exe + " compare --k 0 --M 1 > /dev/null 2>&1").c_str());
  CHECK(WIFEXITED(bad));
  CHECK(WEXITSTATUS(bad) == cli::kConfigError);
}
