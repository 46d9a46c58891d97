#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dhilbert/kernels.hpp"

using namespace dhilbert;
using Catch::Approx;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DHILBERT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  std::FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DHILBERT_TEST_DATA) + "/" + name; }

// Data rows (skipping '#' lines and the header) split on commas.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("kernel: symmetric Poisson table") {
  const Run r = run("kernel --kind poisson --k 2 --radius 20");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 41);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][1] == rows[rows.size() - 1 - i][1]);
    CHECK(rows[i][1] == Approx(poisson_kernel(2, static_cast<long>(rows[i][0]))).margin(1e-13));
  }
}

TEST_CASE("kernel: Riesz-Titchmarsh closed form") {
  const Run r = run("kernel --kind riesz --radius 3");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 7);
  for (const auto& row : rows) CHECK(row[1] == Approx(1.0 / (spectral::pi * (row[0] + 0.5))).epsilon(1e-15));
}

TEST_CASE("kernel: JSON output") {
  const Run r = run("kernel --kind hilbert --radius 5 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("kind") == "hilbert");
  CHECK(j.at("tail_bound").get<double>() > 0.0);
  REQUIRE(j.at("values").size() == 11);
  CHECK(j.at("values")[5].get<double>() == Approx(1.0 / spectral::pi).margin(1e-13));
  const Run t = run("kernel --kind tj-s --s 2 --radius 1 --format json");
  REQUIRE(t.code == 0);
  CHECK(json::parse(t.out).at("tail_bound").is_null());
}

TEST_CASE("kernel: cache directory is populated and reused") {
  const auto dir = std::filesystem::temp_directory_path() / ("dhilbert_cli_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const Run a = run("kernel --kind conjugate --k 1 --radius 8 --cache-dir " + dir.string());
  REQUIRE(a.code == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  const Run b = run("kernel --kind conjugate --k 1 --radius 8 --cache-dir " + dir.string());
  CHECK(b.out == a.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("kernel: bad arguments exit 2") {
  CHECK(run("kernel --kind nosuch --radius 3").code == 2);
  CHECK(run("kernel --kind tj-s --s 2 --j 3 --radius 1").code == 2);
  CHECK(run("kernel --kind poisson-s --s 4 --radius 1").code == 2);
  CHECK(run("kernel --kind poisson --radius -1").code == 2);
}

TEST_CASE("extend: delta gives the Poisson kernel per height") {
  const Run r = run("extend " + data("delta.csv") + " --k-max 3 --margin 4");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4 * 9);
  for (const auto& row : rows)
    CHECK(row[2] == Approx(poisson_kernel(static_cast<int>(row[1]), static_cast<long>(row[0]))).margin(1e-13));
}

TEST_CASE("extend: conjugate rows at height 0 are the Hilbert kernel") {
  const Run r = run("extend " + data("delta.csv") + " --conjugate --k-max 1 --margin 4");
  REQUIRE(r.code == 0);
  for (const auto& row : csv_rows(r.out))
    if (row[1] == 0.0) CHECK(row[2] == Approx(hilbert_kernel(static_cast<long>(row[0]))).margin(1e-13));
}

TEST_CASE("extend: two-dimensional input and JSON") {
  const Run r = run("extend " + data("delta2.csv") + " --s 2 --conjugate --j 2 --k-max 1 --margin 1 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("staggered") == true);
  CHECK(j.at("rows").size() == 2 * 9);
  for (const auto& row : j.at("rows")) {
    if (row.at("k") == 0 && row.at("n") == 1 && row.at("m") == 0)
      CHECK(row.at("value").get<double>() == Approx(tj_kernel(2, 1, Index{0, 1, 0})).margin(1e-12));
  }
}

TEST_CASE("extend: input errors exit 2") {
  CHECK(run("extend " + data("empty.csv")).code == 2);
  CHECK(run("extend " + data("duplicate.csv")).code == 2);
  CHECK(run("extend " + data("malformed.csv")).code == 2);
  CHECK(run("extend " + data("does_not_exist.csv")).code == 2);
  CHECK(run("extend " + data("delta.csv") + " --s 2").code == 2);
}

TEST_CASE("transform: hplus on a delta and the hd - hplus consistency") {
  const std::string f = data("mixed.csv");
  const Run hp = run("transform " + data("delta.csv") + " --op hplus --margin 10");
  REQUIRE(hp.code == 0);
  CHECK(hp.out.rfind("# op=hplus", 0) == 0);
  for (const auto& row : csv_rows(hp.out))
    CHECK(row[1] == Approx(1.0 / (spectral::pi * (row[0] + 0.5))).epsilon(1e-15));

  const auto hd = csv_rows(run("transform " + f + " --op hd --margin 30").out);
  const auto hplus = csv_rows(run("transform " + f + " --op hplus --margin 30").out);
  const auto diff = csv_rows(run("transform " + f + " --op diff --margin 30").out);
  REQUIRE(hd.size() == diff.size());
  REQUIRE(hplus.size() == diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) CHECK(diff[i][1] == Approx(hd[i][1] - hplus[i][1]).margin(1e-11));
}

TEST_CASE("transform: tj with s = 1 equals hd") {
  const auto a = run("transform " + data("mixed.csv") + " --op hd --margin 8");
  const auto b = run("transform " + data("mixed.csv") + " --op tj --j 1 --margin 8");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto ra = csv_rows(a.out), rb = csv_rows(b.out);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(rb[i][1] == Approx(ra[i][1]).margin(1e-11));
}

TEST_CASE("transform: stdin input and JSON") {
  const Run r = run("transform - --op hd --margin 2 --format json < " + data("delta.csv"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("op") == "hd");
  CHECK(j.at("rows").size() == 5);
}

TEST_CASE("transform: unreachable tolerance exits 4") {
  CHECK(run("transform " + data("delta.csv") + " --op hd --margin 1000 --tol 1e-12 --max-radius 100").code == 4);
}

TEST_CASE("verify: single check, JSON and errors") {
  const Run r = run("verify --check antisymmetry");
  CHECK(r.code == 0);
  CHECK(r.out.find("antisymmetry") != std::string::npos);
  CHECK(r.out.find("1/1 passed") != std::string::npos);

  const Run j = run("verify --check rho_square --param grid=101 --format json");
  REQUIRE(j.code == 0);
  const json arr = json::parse(j.out);
  REQUIRE(arr.size() == 1);
  CHECK(arr[0].at("check_name") == "rho_square");
  CHECK(arr[0].at("passed") == true);
  CHECK(arr[0].at("params").at("grid") == 101);

  CHECK(run("verify --check weak11_ratio --param R=200 --param cap=0.1").code == 1);
  CHECK(run("verify --check nosuch").code == 2);
  CHECK(run("verify --check rho_square --param nope=1").code == 2);
  CHECK(run("verify --check rho_square --check rho_identity --param grid=5").code == 2);
  const Run list = run("verify --list");
  CHECK(list.code == 0);
  CHECK(list.out.find("two_path") != std::string::npos);
}

TEST_CASE("verify: fast profile passes") {
  const Run r = run("verify --profile fast");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
