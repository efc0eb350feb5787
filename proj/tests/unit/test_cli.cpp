#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/profile.hpp"
#include "commands.hpp"

using namespace coarse;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = COARSE_CONFIG_DIR;

struct Outcome {
  int status = 0;
  std::string out, err;
};

Outcome run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"coarse_cli"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  std::ostringstream out, err;
  Outcome o;
  o.status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / "coarse_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConfigDoc doc_of(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

cli::Experiment experiment_of(const std::string& text) { return cli::experiment_from_config(doc_of(text), "/tmp"); }

}  // namespace

TEST_CASE("config errors carry positions and names") {
  try {
    experiment_of("[experiment]\nname = x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("kind") != std::string::npos);
  }
  try {
    experiment_of("[experiment]\nkind = iso\nspace = s\n\n[iso]\n  colour = red\n\n[space s]\nkind = zpower\ndim = 2\nradius = 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("colour") != std::string::npos);
  }
  CHECK_THROWS_AS(experiment_of("[experiment]\nkind = growth\nspace = s\n[wibble]\n"), ParseError);
  CHECK_THROWS_AS(experiment_of("[experiment]\nkind = growth\nspace = missing\n"), ParseError);
  CHECK_THROWS_AS(doc_of("[experiment\nkind = iso\n"), ParseError);
  CHECK_THROWS_AS(doc_of("[experiment]\nkind = iso\nkind = sep\n"), ParseError);
  CHECK_THROWS_AS(experiment_of("[experiment]\nkind = pipeline\nspace = s\n[pipeline]\ntargets = 1:0\n"
                                "[space s]\nkind = zpower\ndim = 2\n"),
                  ParseError);
}

TEST_CASE("experiment configs round-trip") {
  for (const char* name : {"grid-iso.cfg", "lamplighter-growth.cfg", "grid-sep.cfg", "embed-h2.cfg",
                           "pipeline-zpower3.cfg", "pipeline-heisenberg.cfg"}) {
    std::ifstream in(kConfigs / name);
    REQUIRE(in);
    auto e = cli::experiment_from_config(parse_config(in), kConfigs);
    std::ostringstream once;
    cli::write_experiment_config(once, e);
    auto again = cli::experiment_from_config(doc_of(once.str()), kConfigs);
    std::ostringstream twice;
    cli::write_experiment_config(twice, again);
    CHECK(once.str() == twice.str());
  }
}

TEST_CASE("grid-iso config reproduces the golden table") {
  auto dir = scratch("grid-iso");
  auto r = run_cli({"run", (kConfigs / "grid-iso.cfg").string(), "--out", dir.string()});
  REQUIRE(r.status == 0);
  std::ifstream csv(dir / "profile.csv");
  auto curve = read_profile_csv(csv);
  const std::vector<Ratio> golden = {{1, 4}, {1, 3}, {3, 8}, {1, 2},  {1, 2},   {3, 5},
                                     {3, 5}, {2, 3}, {3, 4}, {3, 4}, {11, 14}, {6, 7}};
  REQUIRE(curve.points.size() == golden.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    CHECK(curve.points[i].value == golden[i]);
    CHECK(curve.points[i].certificate == Certificate::Exact);
  }

  // Re-running the manifest reproduces every CSV byte for byte.
  auto rerun = scratch("grid-iso-rerun");
  REQUIRE(run_cli({"run", (dir / "manifest.txt").string(), "--out", rerun.string()}).status == 0);
  CHECK(slurp(dir / "profile.csv") == slurp(rerun / "profile.csv"));
  CHECK(slurp(dir / "witnesses.txt") == slurp(rerun / "witnesses.txt"));
  CHECK(slurp(dir / "manifest.txt") == slurp(rerun / "manifest.txt"));

  auto a = run_cli({"report", dir.string()});
  auto b = run_cli({"report", dir.string()});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());

  // The directory is not empty any more.
  auto again = run_cli({"run", (kConfigs / "grid-iso.cfg").string(), "--out", dir.string()});
  CHECK(again.status == 2);
}

TEST_CASE("lamplighter growth starts 1, 4") {
  auto dir = scratch("ll");
  REQUIRE(run_cli({"run", (kConfigs / "lamplighter-growth.cfg").string(), "--out", dir.string()}).status == 0);
  const auto csv = slurp(dir / "growth.csv");
  CHECK(csv.find("radius,count\n0,1\n1,4\n") != std::string::npos);
  auto rep = run_cli({"report", dir.string()});
  CHECK(rep.out.find("exponential") != std::string::npos);
}

TEST_CASE("pipeline run and report") {
  auto dir = scratch("pipe");
  auto r = run_cli({"pipeline", "--kind", "zpower", "--dim", "3", "--target", "3:1", "--growth-radius", "10",
                "--profile-radius", "4", "--no-product", "--out", dir.string()});
  REQUIRE(r.status == 0);
  const auto report = slurp(dir / "report.txt");
  CHECK(report.find("verdict = admissible") != std::string::npos);
  auto a = run_cli({"report", dir.string()});
  CHECK(a.out.find(report) != std::string::npos);
  CHECK(a.out == run_cli({"report", dir.string()}).out);
}

TEST_CASE("empty curves report inconclusive") {
  auto dir = scratch("empty");
  fs::create_directories(dir);
  std::ofstream(dir / "manifest.txt") << "[experiment]\nkind = sep\nspace = s\n\n[sep]\nstrategy = family_balls\n\n[space s]\nkind = zpower\ndim = 2\n"
                                         "radius = 2\n\n[manifest]\nversion = 0.1.0\nartifacts = profile.csv\n";
  std::ofstream(dir / "profile.csv") << "# kind=separation\nsize,value_num,value_den,certificate\n";
  auto r = run_cli({"report", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict = inconclusive") != std::string::npos);
}

TEST_CASE("exit statuses") {
  CHECK(run_cli({"report", scratch("nothing").string()}).status == 2);
  CHECK(run_cli({"iso"}).status == 2);
  CHECK(run_cli({"iso", "--kind", "zpower", "--dim", "0", "--radius", "2", "--out", scratch("bad").string()}).status == 2);
  auto budget = run_cli({"generate", "--kind", "zpower", "--dim", "3", "--radius", "30", "--budget-vertices", "100",
                     "--out", scratch("budget").string()});
  CHECK(budget.status == 3);
  CHECK(budget.err.find("budget") != std::string::npos);
  CHECK(run_cli({"--version"}).status == 0);
}
