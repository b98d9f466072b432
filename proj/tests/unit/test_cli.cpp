#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lfapprox/errors.hpp"
#include "lfapprox_cli/cli.hpp"

using namespace lfapprox;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("lfapprox_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines_of(text)) {
    if (!l.empty() && l[0] != '#') out.push_back(l);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
  return cells;
}

}  // namespace

TEST_CASE("coeffs writes the file format and reuses its cache") {
  fs::path dir = fresh_dir("coeffs");
  std::vector<std::string> args{"coeffs", "--nmax", "100", "--cache-dir", dir.string()};
  auto first = run_cli(args);
  REQUIRE(first.code == 0);
  auto data = data_lines(first.out);
  REQUIRE(data.size() == 100);
  CHECK(data[0] == "1 1");
  CHECK(data[1] == "2 -24");
  CHECK(data[2] == "3 252");
  CHECK(first.err.find("cache store") != std::string::npos);

  auto second = run_cli(args);
  CHECK(second.code == 0);
  CHECK(second.err.find("cache hit") != std::string::npos);
  CHECK(second.out == first.out);

  auto shorter = run_cli({"coeffs", "--nmax", "40", "--cache-dir", dir.string()});
  CHECK(shorter.err.find("cache hit") != std::string::npos);
  auto short_data = data_lines(shorter.out);
  REQUIRE(short_data.size() == 40);
  CHECK(std::equal(short_data.begin(), short_data.end(), data.begin()));

  // A cache for some other form is reported and replaced.
  {
    std::ofstream f(dir / "delta.txt");
    f << "# eigenform k=10 C=1 P=0 nmax=2\n1 1\n2 5\n";
  }
  auto mismatch = run_cli(args);
  CHECK(mismatch.code == 0);
  CHECK(mismatch.err.find("does not match") != std::string::npos);
  CHECK(mismatch.out == first.out);

  // Writing to a file gives the same data as stdout.
  fs::path out = dir / "out.txt";
  auto to_file = run_cli({"coeffs", "--nmax", "100", "--cache-dir", dir.string(), "--out", out.string()});
  REQUIRE(to_file.code == 0);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(data_lines(buf.str()) == data);
}

TEST_CASE("coefficient files as the form source") {
  fs::path dir = fresh_dir("coeff_file");
  REQUIRE(run_cli({"coeffs", "--nmax", "60", "--cache-dir", dir.string(), "--out", (dir / "d60.txt").string()}).code ==
          0);
  auto copy = run_cli({"coeffs", "--nmax", "60", "--coeff-file", (dir / "d60.txt").string()});
  CHECK(copy.code == 0);
  CHECK(data_lines(copy.out).size() == 60);
  CHECK(run_cli({"coeffs", "--nmax", "61", "--coeff-file", (dir / "d60.txt").string()}).code == 2);

  // Header disagrees with an explicit override.
  CHECK(run_cli({"coeffs", "--nmax", "5", "--coeff-file", (dir / "d60.txt").string(), "--weight", "10"}).code == 2);

  fs::path bad = dir / "bad.txt";
  {
    std::ofstream f(bad);
    f << "1 1\n2 oops\n";
  }
  auto r = run_cli({"coeffs", "--nmax", "2", "--coeff-file", bad.string(), "--weight", "12"});
  CHECK(r.code == 4);
  CHECK(run_cli({"coeffs", "--coeff-file", (dir / "missing.txt").string(), "--weight", "12"}).code == 4);
  CHECK(run_cli({"coeffs", "--coeff-file", bad.string()}).code == 2);  // no header, no weight
}

TEST_CASE("zfunc tables") {
  fs::path dir = fresh_dir("zfunc");
  std::vector<std::string> base{"zfunc", "--t-lo", "0", "--t-hi", "20", "--step", "1", "--cache-dir", dir.string()};
  auto csv = run_cli(base);
  REQUIRE(csv.code == 0);
  auto rows = data_lines(csv.out);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == "t,Z[full],err[full],Z[N=1],err[N=1],Z[N=2],err[N=2],Z[N=3],err[N=3]");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto cells = split(rows[i]);
    REQUIRE(cells.size() == 9);
    double full = std::stod(cells[1]);
    double z3 = std::stod(cells[7]);
    CAPTURE(cells[0]);
    CHECK(std::abs(full - z3) <= 1e-3);
  }

  auto with_json = base;
  with_json.insert(with_json.end(), {"--format", "json"});
  auto js = run_cli(with_json);
  REQUIRE(js.code == 0);
  auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["columns"].size() == 9);
  REQUIRE(doc["rows"].size() == 21);
  for (std::size_t i = 0; i < 21; ++i) {
    auto cells = split(rows[i + 1]);
    for (std::size_t j = 0; j < cells.size(); ++j) CHECK(doc["rows"][i][j].get<std::string>() == cells[j]);
  }
  CHECK(doc["meta"]["bits"] == 160);
  CHECK(doc["meta"]["version"].is_string());
  CHECK(doc["meta"]["config"]["step"] == "1");

  auto modes = base;
  modes.insert(modes.end(), {"--modes", "full,N=2"});
  CHECK(data_lines(run_cli(modes).out)[0] == "t,Z[full],err[full],Z[N=2],err[N=2]");

  auto empty = base;
  empty.insert(empty.end(), {"--modes", ""});
  CHECK(run_cli(empty).code == 2);
  auto junk = base;
  junk.insert(junk.end(), {"--modes", "full,zero"});
  CHECK(run_cli(junk).code == 2);

  auto low = run_cli({"zfunc", "--t-lo", "25", "--t-hi", "25", "--step", "1", "--bits", "64", "--cache-dir",
                      dir.string()});
  CHECK(low.code == 3);
  CHECK(low.err.find("Z(25") != std::string::npos);
  CHECK(low.err.find("--bits") != std::string::npos);
}

TEST_CASE("zeros reports") {
  fs::path dir = fresh_dir("zeros");
  std::vector<std::string> base{"zeros", "--t-lo", "9", "--t-hi", "14.5", "--step", "0.25", "--cache-dir", dir.string()};
  auto both = run_cli(base);
  REQUIRE(both.code == 0);
  auto rows = data_lines(both.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "t0[full],width[full],t0[N=3],t0[full]-t0[N=3]");
  auto first = split(rows[1]);
  CHECK(std::abs(std::stod(first[0]) - 9.2223793999211) < 1e-10);
  CHECK(std::abs(std::stod(first[3]) + 1.11e-11) < 0.02e-11);

  auto full_only = base;
  full_only.insert(full_only.end(), {"--modes", "full", "--classify"});
  auto single = run_cli(full_only);
  REQUIRE(single.code == 0);
  auto srows = data_lines(single.out);
  REQUIRE(srows.size() == 3);
  CHECK(srows[0] == "t0[full],width[full],order[full]");
  CHECK(split(srows[1])[2] == "1");
  CHECK(split(srows[2])[2] == "1");

  // A tolerance coarser than the grid still yields distinct zeros.
  auto coarse = base;
  coarse.insert(coarse.end(), {"--tol", "0.5"});
  auto crow = data_lines(run_cli(coarse).out);
  REQUIRE(crow.size() == 3);
  CHECK(std::abs(std::stod(split(crow[1])[0]) - std::stod(split(crow[2])[0])) > 4.0);

  auto bad = base;
  bad.insert(bad.end(), {"--step", "abc"});
  CHECK(run_cli(bad).code == 2);
}

TEST_CASE("oracle-check") {
  fs::path dir = fresh_dir("oracle");
  std::vector<std::string> base{"oracle-check", "--N",       "1",         "--samples", "4", "--bits", "128",
                                "--format",     "json",      "--cache-dir", dir.string()};
  auto ok = run_cli(base);
  REQUIRE(ok.code == 0);
  auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["meta"]["status"] == "PASS");
  CHECK(doc["meta"]["truncation_height"].is_string());
  CHECK(doc["meta"]["principal_parts"].get<int>() > 0);
  CHECK(doc["rows"].size() == 4);

  auto zeroed = base;
  zeroed.insert(zeroed.end(), {"--budget-scale", "0"});
  auto fail = run_cli(zeroed);
  CHECK(fail.code == 1);
  CHECK(nlohmann::json::parse(fail.out)["meta"]["status"] == "FAIL");
}

TEST_CASE("equidist") {
  auto a = run_cli({"equidist", "--p", "2", "--q", "3", "--M", "100000", "--format", "json", "--cache-dir", "x"});
  REQUIRE(a.code == 0);
  auto doc = nlohmann::json::parse(a.out);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(std::stod(doc["rows"][0][3].get<std::string>()) > 0.0);
  auto b = run_cli({"equidist", "--p", "2", "--q", "3", "--M", "100000", "--format", "json", "--cache-dir", "x"});
  CHECK(a.out == b.out);
  CHECK(run_cli({"equidist", "--p", "5", "--q", "5"}).code == 2);
  CHECK(run_cli({"equidist", "--p", "4", "--q", "5"}).code == 2);
}

TEST_CASE("configuration precedence and usage errors") {
  fs::path dir = fresh_dir("config");
  fs::path conf = dir / "run.conf";
  {
    std::ofstream f(conf);
    f << "bits=96\nformat=json\n";
  }
  auto from_file = run_cli({"equidist", "--M", "1000", "--config", conf.string()});
  REQUIRE(from_file.code == 0);
  auto doc = nlohmann::json::parse(from_file.out);
  CHECK(doc["meta"]["bits"] == 96);

  auto flag_wins = run_cli({"equidist", "--M", "1000", "--config", conf.string(), "--bits", "80"});
  CHECK(nlohmann::json::parse(flag_wins.out)["meta"]["bits"] == 80);

  fs::path env_cache = dir / "env_cache";
  ::setenv("LFAPPROX_CACHE_DIR", env_cache.c_str(), 1);
  auto env = run_cli({"coeffs", "--nmax", "3"});
  auto flagged = run_cli({"coeffs", "--nmax", "3", "--cache-dir", (dir / "flag_cache").string()});
  ::unsetenv("LFAPPROX_CACHE_DIR");
  CHECK(env.code == 0);
  CHECK(fs::exists(env_cache / "delta.txt"));
  CHECK(flagged.code == 0);
  CHECK(fs::exists(dir / "flag_cache" / "delta.txt"));

  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"coeffs", "--form", "eisenstein"}).code == 2);
  CHECK(run_cli({"coeffs", "--weight", "10", "--cache-dir", dir.string()}).code == 2);
  CHECK(run_cli({"equidist", "--format", "xml"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"equidist", "--M", "1000", "--out", (dir / "no" / "such" / "dir.csv").string()}).code == 4);
  CHECK(run_cli({"fetch", "--url", "not-a-url"}).code == 2);
}

TEST_CASE("downloaded coefficient lists") {
  auto t = cli::parse_fetched_coefficients("{\"label\": \"1.12.a.a\", \"qexp\": [0, 1, -24, \"252\", -1472]}");
  REQUIRE(t.n_max() == 4);
  CHECK(t[2].to_string() == "-24");
  CHECK(t[3].to_string() == "252");

  auto pairs = cli::parse_fetched_coefficients("1 1\n2 -24\n");
  CHECK(pairs.n_max() == 2);

  CHECK_THROWS_AS(cli::parse_fetched_coefficients("[1, 2.5]"), ParseError);
  CHECK_THROWS_AS(cli::parse_fetched_coefficients("[1, -24"), ParseError);
  CHECK_THROWS_AS(cli::parse_fetched_coefficients("[1, \"x\"]"), ParseError);
}

TEST_CASE("table writer") {
  cli::Table t{{{"a", 1}}, {"x", "y"}, {{"1", "2"}, {"3", "4"}}};
  std::ostringstream csv;
  cli::write_table(t, "csv", csv);
  CHECK(csv.str() == "# a=1\nx,y\n1,2\n3,4\n");
  std::ostringstream js;
  cli::write_table(t, "json", js);
  auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["rows"][1][0] == "3");
  CHECK(cli::decimal_digits(160) == 50);
}
