#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"

#include "commands.hpp"
#include "report_io.hpp"
#include "helpers.hpp"

using namespace citenorm;
using namespace citenorm::cli;
using testutil::ScopedTempDir;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << content;
}

std::string demo_spec(int fields, int n, double c0, double sigma) {
  std::string text = "field_id,n,c0,sigma,aging_theta\n";
  for (int i = 0; i < fields; ++i) {
    char row[96];
    std::snprintf(row, sizeof(row), "F%03d,%d,%g,%g,0.7\n", i, n, c0, sigma);
    text += row;
  }
  return text;
}

int simulate_demo(const ScopedTempDir& tmp, const std::string& out, std::uint64_t seed) {
  write_file(tmp.path() / "spec.csv", demo_spec(4, 400, 8.0, 1.1));
  return run_cli({"citenorm", "simulate", "--model", "universal",
                  "--spec", (tmp.path() / "spec.csv").string(), "--sigma", "1.1",
                  "--year", "1999", "--horizon", "5", "--seed", std::to_string(seed),
                  "--out", out});
}

}  // namespace

TEST_CASE("cli: simulate then analyze produces the full output set") {
  ScopedTempDir tmp;
  const auto corpus = (tmp.path() / "corpus").string();
  REQUIRE(simulate_demo(tmp, corpus, 7) == 0);
  for (const char* name : {"publications.csv", "citations.csv", "labels.csv", "manifest.json"})
    CHECK(std::filesystem::exists(tmp.path() / "corpus" / name));

  const auto out = (tmp.path() / "out").string();
  const int rc = run_cli({"citenorm", "analyze",
                          "--publications", corpus + "/publications.csv",
                          "--citations", corpus + "/citations.csv",
                          "--year", "1999", "--window", "10",
                          "--top", "0.1", "--top", "0.2",
                          "--min-field-size", "10", "--out", out});
  REQUIRE(rc == 0);
  for (const char* name : {"report.json", "fields.tsv", "histogram.csv", "summary.tsv",
                           "ecdf_all.csv", "manifest.json"})
    CHECK(std::filesystem::exists(tmp.path() / "out" / name));
  // 4 fields -> the 3-lowest/3-highest pick covers all of them
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "ecdf_F%03d.csv", i);
    CHECK(std::filesystem::exists(tmp.path() / "out" / name));
  }

  // summary.tsv: header plus one row per --top fraction
  const auto summary = slurp(tmp.path() / "out" / "summary.tsv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);

  // report.json round-trips byte for byte
  const auto text = slurp(tmp.path() / "out" / "report.json");
  const auto parsed = report_from_json(text);
  CHECK(report_to_json(parsed) == text);
  CHECK(report_from_json(report_to_json(parsed)) == parsed);
  CHECK(parsed.report.fields.size() == 4);
  CHECK(parsed.report.config.window.length_years == 10);
}

TEST_CASE("cli: simulate is deterministic for a fixed seed") {
  ScopedTempDir tmp;
  REQUIRE(simulate_demo(tmp, (tmp.path() / "a").string(), 7) == 0);
  REQUIRE(simulate_demo(tmp, (tmp.path() / "b").string(), 7) == 0);
  for (const char* name : {"publications.csv", "citations.csv", "labels.csv", "manifest.json"})
    CHECK(slurp(tmp.path() / "a" / name) == slurp(tmp.path() / "b" / name));
  REQUIRE(simulate_demo(tmp, (tmp.path() / "c").string(), 8) == 0);
  CHECK(slurp(tmp.path() / "a" / "citations.csv") != slurp(tmp.path() / "c" / "citations.csv"));
}

TEST_CASE("cli: simulate --target-q90 records the solved sigma") {
  ScopedTempDir tmp;
  write_file(tmp.path() / "spec.csv", demo_spec(2, 50, 8.0, 1.1));
  const int rc = run_cli({"citenorm", "simulate", "--model", "universal",
                          "--spec", (tmp.path() / "spec.csv").string(),
                          "--target-q90", "2.25", "--seed", "3",
                          "--out", (tmp.path() / "q").string()});
  REQUIRE(rc == 0);
  auto manifest = nlohmann::json::parse(slurp(tmp.path() / "q" / "manifest.json"));
  CHECK(std::fabs(manifest.at("resolved_sigma").get<double>() - 1.13832) <= 1e-4);
  CHECK(manifest.at("seed").get<std::uint64_t>() == 3);
}

TEST_CASE("cli: unattainable --target-q90 exits 1 citing the bound") {
  ScopedTempDir tmp;
  write_file(tmp.path() / "spec.csv", demo_spec(2, 50, 8.0, 1.1));
  const int rc = run_cli({"citenorm", "simulate", "--model", "universal",
                          "--spec", (tmp.path() / "spec.csv").string(),
                          "--target-q90", "2.36",
                          "--out", (tmp.path() / "q").string()});
  CHECK(rc == 1);
  CHECK(!std::filesystem::exists(tmp.path() / "q" / "publications.csv"));
}

TEST_CASE("cli: degenerate statistics exit 2 and leave no partial outputs") {
  ScopedTempDir tmp;
  write_file(tmp.path() / "pubs.csv",
             "pub_id,year,doc_type,fields\n"
             "p1,1999,article,ONLY\n"
             "p2,1999,article,ONLY\n");
  write_file(tmp.path() / "cits.csv", "pub_id,citing_year,count\np1,2000,3\n");
  const auto out = (tmp.path() / "out").string();
  const int rc = run_cli({"citenorm", "analyze",
                          "--publications", (tmp.path() / "pubs.csv").string(),
                          "--citations", (tmp.path() / "cits.csv").string(),
                          "--year", "1999", "--min-field-size", "0", "--out", out});
  CHECK(rc == 2);
  CHECK(!std::filesystem::exists(tmp.path() / "out" / "report.json"));
}

TEST_CASE("cli: parse and validation failures exit 1") {
  ScopedTempDir tmp;
  CHECK(run_cli({"citenorm", "analyze", "--publications", "/nonexistent.csv",
                 "--citations", "/nonexistent2.csv", "--year", "1999",
                 "--out", (tmp.path() / "x").string()}) == 1);
  write_file(tmp.path() / "pubs.csv", "pub_id,year,doc_type,fields\np1,1999,article,A\n");
  write_file(tmp.path() / "cits.csv", "pub_id,citing_year,count\n");
  CHECK(run_cli({"citenorm", "analyze",
                 "--publications", (tmp.path() / "pubs.csv").string(),
                 "--citations", (tmp.path() / "cits.csv").string(),
                 "--year", "1999", "--band", "0.2,0.1",
                 "--out", (tmp.path() / "x").string()}) == 1);
  CHECK(run_cli({"citenorm", "nonsense"}) == 1);
}

TEST_CASE("cli: compare-years joins a report with itself at rho 1") {
  ScopedTempDir tmp;
  const auto corpus = (tmp.path() / "corpus").string();
  REQUIRE(simulate_demo(tmp, corpus, 11) == 0);
  const auto out = (tmp.path() / "out").string();
  REQUIRE(run_cli({"citenorm", "analyze",
                   "--publications", corpus + "/publications.csv",
                   "--citations", corpus + "/citations.csv",
                   "--year", "1999", "--min-field-size", "10", "--out", out}) == 0);
  const auto cmp = (tmp.path() / "cmp").string();
  REQUIRE(run_cli({"citenorm", "compare-years", "--a", out + "/report.json",
                   "--b", out + "/report.json", "--out", cmp}) == 0);
  auto compare = nlohmann::json::parse(slurp(tmp.path() / "cmp" / "compare.json"));
  CHECK(std::fabs(compare.at("rho").get<double>() - 1.0) <= 1e-12);
  CHECK(compare.at("n_fields").get<int>() == 4);
  const auto scatter = slurp(tmp.path() / "cmp" / "scatter.csv");
  CHECK(std::count(scatter.begin(), scatter.end(), '\n') == 5);
}

TEST_CASE("cli: plot renders deterministic svg from the data files") {
  ScopedTempDir tmp;
  const auto corpus = (tmp.path() / "corpus").string();
  REQUIRE(simulate_demo(tmp, corpus, 13) == 0);
  const auto out = (tmp.path() / "out").string();
  REQUIRE(run_cli({"citenorm", "analyze",
                   "--publications", corpus + "/publications.csv",
                   "--citations", corpus + "/citations.csv",
                   "--year", "1999", "--min-field-size", "10",
                   "--bin-width", "0.02", "--out", out}) == 0);

  REQUIRE(run_cli({"citenorm", "plot", "--in", out,
                   "--out", (tmp.path() / "p1").string()}) == 0);
  REQUIRE(run_cli({"citenorm", "plot", "--in", out,
                   "--out", (tmp.path() / "p2").string()}) == 0);
  for (const char* name : {"histogram.svg", "ecdf.svg"}) {
    CHECK(std::filesystem::exists(tmp.path() / "p1" / name));
    CHECK(slurp(tmp.path() / "p1" / name) == slurp(tmp.path() / "p2" / name));
  }

  // one bar per histogram.csv bin (plus the background rect)
  const auto hist_csv = slurp(tmp.path() / "out" / "histogram.csv");
  const auto bins = std::count(hist_csv.begin(), hist_csv.end(), '\n') - 1;
  const auto svg = slurp(tmp.path() / "p1" / "histogram.svg");
  std::size_t rects = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
       pos = svg.find("<rect", pos + 1))
    ++rects;
  CHECK(static_cast<long>(rects) == bins + 1);

  // log-scaled ecdf: the staircase path y-coordinates never move down the
  // cumulative axis (pixel y never increases)
  REQUIRE(run_cli({"citenorm", "plot", "--in", out, "--log-x",
                   "--out", (tmp.path() / "p3").string()}) == 0);
  const auto ecdf_svg = slurp(tmp.path() / "p3" / "ecdf.svg");
  const auto path_pos = ecdf_svg.find("<path d=\"M");
  REQUIRE(path_pos != std::string::npos);
  const auto path_end = ecdf_svg.find('"', path_pos + 9);
  const auto d = ecdf_svg.substr(path_pos + 9, path_end - path_pos - 9);
  std::istringstream tokens(d);
  std::string tok;
  std::vector<double> ys;
  bool is_y = false;
  while (tokens >> tok) {
    if (tok[0] == 'M' || tok[0] == 'L') tok = tok.substr(1);
    if (is_y) ys.push_back(std::stod(tok));
    is_y = !is_y;
  }
  REQUIRE(ys.size() >= 2);
  for (std::size_t i = 1; i < ys.size(); ++i) CHECK(ys[i] <= ys[i - 1] + 1e-9);

  CHECK(run_cli({"citenorm", "plot", "--in", (tmp.path() / "nothing-here").string()}) == 1);
}

TEST_CASE("cli: exclude-uncited is threaded through to the report") {
  ScopedTempDir tmp;
  const auto corpus = (tmp.path() / "corpus").string();
  write_file(tmp.path() / "spec.csv", demo_spec(3, 300, 2.0, 1.1));
  REQUIRE(run_cli({"citenorm", "simulate", "--model", "poisson-lognormal",
                   "--spec", (tmp.path() / "spec.csv").string(), "--sigma", "1.1",
                   "--seed", "21", "--out", corpus}) == 0);
  const auto out = (tmp.path() / "out").string();
  REQUIRE(run_cli({"citenorm", "analyze",
                   "--publications", corpus + "/publications.csv",
                   "--citations", corpus + "/citations.csv",
                   "--year", "1999", "--min-field-size", "10",
                   "--exclude-uncited", "--out", out}) == 0);
  const auto parsed = report_from_json(slurp(tmp.path() / "out" / "report.json"));
  CHECK(parsed.report.config.exclude_uncited);
  for (const auto& field : parsed.report.fields) CHECK(field.prop_uncited == 0.0);
}
