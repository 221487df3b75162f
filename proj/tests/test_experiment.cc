#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cyclewalk/experiment.h"

using namespace cyclewalk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cyclewalk_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("expcli") {

TEST_CASE("registry and defaults") {
  CHECK(experiment_names().size() == 12);
  ExperimentSpec spec;
  spec.name = "fig3";
  const auto r = resolve(spec);
  CHECK(*r.params.n == 100);
  CHECK(*r.params.c == 1.0);
  CHECK(*r.params.reps == 10000);
  spec.name = "fig4";
  CHECK(resolve(spec).params.c_grid.size() == 13);
  spec.name = "nope";
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  ExperimentSpec spec;
  spec.name = "thm1";
  spec.params.c = 1.2;
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
  spec.name = "thm4";
  spec.params.c = 0.5;
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
  spec.name = "thm2";
  spec.params.c = std::nullopt;
  spec.params.c_grid = {0.0, 1.5};
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
  spec.name = "fig3";
  spec.params.c_grid = {};
  spec.params.reps = 0;
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
  spec.params.reps = 10;
  spec.params.a = 1.0;
  CHECK_THROWS_AS(resolve(spec), std::invalid_argument);
}

TEST_CASE("format_number") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.404718956217051) == "0.404718956217");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("small runs are deterministic across worker counts") {
  for (const std::string name : {"fig3", "thm3", "fig2", "eq4-trees"}) {
    ExperimentSpec spec;
    spec.name = name;
    spec.params.reps = 40;
    if (name == "thm3") spec.params.n = 500;
    if (name == "fig2") spec.params.n = 30;
    if (name == "eq4-trees") spec.params.n = 100;
    spec.seed = 17;
    spec.threads = 1;
    const auto a = run_experiment(spec);
    spec.threads = 4;
    const auto b = run_experiment(spec);
    REQUIRE(a.tables.size() == b.tables.size());
    for (std::size_t t = 0; t < a.tables.size(); ++t) CHECK(a.tables[t].rows == b.tables[t].rows);
    CHECK(a.summary == b.summary);
  }
}

TEST_CASE("manifest round trip reproduces outputs byte for byte") {
  const auto dir = scratch("manifest");
  ExperimentSpec spec;
  spec.name = "fig3";
  spec.params.reps = 200;
  spec.seed = 99;
  spec.out_dir = dir.string();
  spec.format = OutputFormat::kCsvSvg;
  const auto first = run_experiment(spec);
  const auto files = write_result(first, 0.5);
  CHECK(files.size() == 4);
  CHECK(fs::exists(dir / "fig3.svg"));
  const std::string csv = slurp(dir / "fig3.csv");
  CHECK(csv.rfind("z,count,empirical,poisson_same_mean\n", 0) == 0);
  CHECK(slurp(dir / "fig3.svg").find("<polyline") != std::string::npos);

  std::ifstream manifest(dir / "fig3.manifest");
  auto parsed = parse_manifest(manifest);
  CHECK(parsed.name == "fig3");
  CHECK(parsed.seed == 99);
  CHECK(*parsed.params.reps == 200);
  CHECK(parsed.format == OutputFormat::kCsvSvg);
  parsed.out_dir = (dir / "again").string();
  const auto second = run_experiment(parsed);
  write_result(second, 1.0);
  CHECK(slurp(dir / "again" / "fig3.csv") == csv);
  CHECK(slurp(dir / "again" / "fig3_summary.csv") == slurp(dir / "fig3_summary.csv"));

  std::istringstream bad("n=5\n");
  CHECK_THROWS(parse_manifest(bad));
  fs::remove_all(dir);
}

TEST_CASE("csv writer") {
  Table t{"x", {"a", "b"}, {}};
  t.add_row({"1", "2"});
  CHECK_THROWS(t.add_row({"1"}));
  std::ostringstream out;
  write_table_csv(out, t);
  CHECK(out.str() == "a,b\n1,2\n");
}

TEST_CASE("unwritable output directory") {
  ExperimentSpec spec;
  spec.name = "eq4-trees";
  spec.params.reps = 5;
  spec.params.n = 20;
  spec.out_dir = "/proc/cyclewalk_cannot_write_here";
  const auto r = run_experiment(spec);
  CHECK_THROWS(write_result(r, 0.0));
}

}  // TEST_SUITE
