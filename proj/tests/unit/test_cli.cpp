#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scalocal/analytic.hpp"
#include "scalocal/cli.hpp"
#include "scalocal/io.hpp"

namespace fs = std::filesystem;
using namespace scalocal;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "scalocal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("scalocal_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("generate writes the requested point files") {
  TempDir tmp;
  auto r = run({"generate", "uniform", "--n", "50000", "--d", "2", "--L", "1.0", "--seed", "7",
                "--out", tmp.file("u.txt")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("N=50000") != std::string::npos);
  CHECK(load_points(tmp.file("u.txt")).size() == 50000);

  r = run({"generate", "hierarchy", "--n0", "100", "--n1", "100", "--delta1", "0.001", "--out",
           tmp.file("h.txt")});
  REQUIRE(r.code == 0);
  CHECK(load_points(tmp.file("h.txt")).size() == 10000);

  r = run({"generate", "condensation", "--n-total", "1000", "--sites", "300,100", "--delta1", "0.03",
           "--out", tmp.file("c.txt")});
  REQUIRE(r.code == 0);
  CHECK(load_points(tmp.file("c_sites300.txt")).size() == 1000);
  CHECK(load_points(tmp.file("c_sites100.txt")).size() == 1000);

  r = run({"generate", "uniform", "--n", "3", "--seed", "2"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  CHECK(read_points(is).size() == 3);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({"generate", "uniform", "--n", "0"}).code == 1);
  CHECK(run({"generate", "hierarchy", "--delta1", "2"}).code == 1);
  CHECK(run({"generate", "uniform", "--n", "5", "--out", "/nonexistent/dir/x.txt"}).code == 2);
  CHECK(run({"analyze", "--in", "/nonexistent/points.txt"}).code == 2);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);

  std::ofstream(tmp.file("bad.txt")) << "# scalocal-points v1 d=2 n=2 L=1\n0.1 0.2\n0.5 nope\n";
  const auto bad = run({"analyze", "--in", tmp.file("bad.txt")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 3") != std::string::npos);

  const auto q1 = run({"reference", "--kind", "bud", "--q", "1"});
  CHECK(q1.code == 1);
  CHECK(q1.err.find("unsupported rank") != std::string::npos);
  CHECK(run({"reference", "--kind", "brud"}).code == 1);
}

TEST_CASE("analyze emits the documented CSV") {
  TempDir tmp;
  REQUIRE(run({"generate", "uniform", "--n", "2000", "--seed", "3", "--out", tmp.file("p.txt")}).code == 0);
  const auto plain = run({"analyze", "--in", tmp.file("p.txt"), "--q", "0,2,5", "--emin", "1e-3",
                          "--emax", "3", "--ppd", "4", "--J", "4"});
  REQUIRE(plain.code == 0);
  const auto rows = csv_rows(plain.out);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == std::vector<std::string>{"scale", "log10_scale_over_L", "q", "S", "S_stderr",
                                            "S_ref", "I", "d_q", "transport"});
  const std::size_t per_rank = ScaleGrid::log_spaced(1e-3, 3, 4).size();
  CHECK(rows.size() == 1 + 3 * per_rank);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    CHECK(rows[i][5].empty());
    CHECK(rows[i][6].empty());
    CHECK(rows[i][8].empty());
    CHECK_FALSE(rows[i][7].empty());
  }

  const auto with_ref = run({"analyze", "--in", tmp.file("p.txt"), "--q", "0", "--emin", "1e-3",
                             "--emax", "3", "--ppd", "4", "--J", "4", "--reference", "brud"});
  REQUIRE(with_ref.code == 0);
  const auto ref_rows = csv_rows(with_ref.out);
  for (std::size_t i = 1; i < ref_rows.size(); ++i) {
    const double e = std::stod(ref_rows[i][0]);
    const double s_ref = std::stod(ref_rows[i][5]);
    CHECK(s_ref == doctest::Approx(brud_entropy(e, ReferenceSpec{.dim = 2, .side = 1.0, .points = 2000, .q = 0.0})));
    CHECK(std::stod(ref_rows[i][6]) == doctest::Approx(s_ref - std::stod(ref_rows[i][3])));
    CHECK_FALSE(ref_rows[i][8].empty());
  }

  const auto again = run({"analyze", "--in", tmp.file("p.txt"), "--q", "0", "--emin", "1e-3",
                          "--emax", "3", "--ppd", "4", "--J", "4", "--reference", "brud"});
  CHECK(again.out == with_ref.out);

  const auto b10 = run({"analyze", "--in", tmp.file("p.txt"), "--q", "0", "--emin", "1e-3",
                        "--emax", "3", "--ppd", "4", "--J", "4", "--reference", "brud",
                        "--log-base", "base10"});
  const auto b10_rows = csv_rows(b10.out);
  CHECK(std::stod(b10_rows[1][3]) == doctest::Approx(std::stod(ref_rows[1][3]) / std::log(10.0)));
  CHECK(std::stod(b10_rows[1][7]) == doctest::Approx(std::stod(ref_rows[1][7])));
}

TEST_CASE("reference files and JSON output") {
  TempDir tmp;
  REQUIRE(run({"generate", "uniform", "--n", "1000", "--seed", "8", "--out", tmp.file("p.txt")}).code == 0);
  REQUIRE(run({"reference", "--kind", "brud", "--n", "1000", "--emin", "1e-2", "--emax", "1",
               "--ppd", "4", "--out", tmp.file("ref.csv")}).code == 0);
  const auto from_file = run({"analyze", "--in", tmp.file("p.txt"), "--emin", "1e-2", "--emax", "1",
                              "--ppd", "4", "--J", "4", "--reference", "file", "--reference-file",
                              tmp.file("ref.csv")});
  const auto builtin = run({"analyze", "--in", tmp.file("p.txt"), "--emin", "1e-2", "--emax", "1",
                            "--ppd", "4", "--J", "4", "--reference", "brud"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == builtin.out);

  const auto mismatch = run({"analyze", "--in", tmp.file("p.txt"), "--emin", "1e-3", "--emax", "1",
                             "--ppd", "4", "--reference", "file", "--reference-file", tmp.file("ref.csv")});
  CHECK(mismatch.code == 1);

  const auto js = run({"analyze", "--in", tmp.file("p.txt"), "--q", "0,2", "--emin", "1e-2", "--emax",
                       "1", "--ppd", "4", "--J", "4", "--reference", "bud", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc.at("config").at("reference") == "bud");
  CHECK(doc.at("config").at("qs").size() == 2);
  CHECK(doc.at("scale").size() == 9);
  CHECK(!doc.at("curves").empty());
}

TEST_CASE("reference command") {
  auto r = run({"reference", "--kind", "bud", "--d", "1", "--L", "1", "--q", "0", "--emin", "10",
                "--emax", "10.5"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][3]) == doctest::Approx(std::log(1.1)).epsilon(1e-15));

  r = run({"reference", "--kind", "brud", "--d", "2", "--n", "10000", "--emin", "1", "--emax", "1.1"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  const double s = std::stod(rows[1][3]);
  CHECK(s > 0.0);
  CHECK(s == doctest::Approx(brud_entropy(1.0, ReferenceSpec{.dim = 2, .side = 1.0, .points = 10000, .q = 0.0})));
}

TEST_CASE("recipes supply defaults that flags override") {
  TempDir tmp;
  std::ofstream(tmp.file("r.json")) << R"({"generate": {"kind": "uniform", "n": 40, "seed": 3},
    "analyze": {"qs": [2], "e_min": 0.01, "e_max": 1, "per_decade": 2, "J": 4}})";
  REQUIRE(run({"generate", "--recipe", tmp.file("r.json"), "--out", tmp.file("p.txt")}).code == 0);
  CHECK(load_points(tmp.file("p.txt")).size() == 40);
  const auto a = run({"analyze", "--in", tmp.file("p.txt"), "--recipe", tmp.file("r.json")});
  REQUIRE(a.code == 0);
  const auto rows = csv_rows(a.out);
  CHECK(rows.size() == 6);
  CHECK(rows[1][2] == "2");
  const auto b = run({"analyze", "--in", tmp.file("p.txt"), "--recipe", tmp.file("r.json"), "--q", "0,5"});
  CHECK(csv_rows(b.out).size() == 11);

  std::ofstream(tmp.file("broken.json")) << "{ not json";
  CHECK(run({"analyze", "--in", tmp.file("p.txt"), "--recipe", tmp.file("broken.json")}).code == 1);
}

TEST_CASE("config round-trips through JSON") {
  cli::AnalysisConfig c;
  c.qs = {0.0, 2.0};
  c.e_min = 1e-4;
  c.dither = 32;
  c.reference = cli::ReferenceKind::brud;
  c.log_base = cli::LogBase::base10;
  cli::AnalysisConfig d;
  cli::merge_json(cli::to_json(c), d);
  CHECK(cli::to_json(d) == cli::to_json(c));
  c.qs = {1.0};
  CHECK_THROWS(c.validate());
  c.qs = {0.0};
  c.dither = 0;
  CHECK_THROWS(c.validate());
}
