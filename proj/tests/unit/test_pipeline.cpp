#include <doctest.h>

#include <sstream>

#include "coarse/errors.hpp"
#include "coarse/pipeline.hpp"

using namespace coarse;

namespace {

PipelineConfig small(SpaceSpec group, int growth_radius) {
  PipelineConfig c;
  c.group = group;
  c.targets = {{3, 1}};
  c.growth_radius = growth_radius;
  c.profile_radius = 4;
  c.product_checks = false;
  return c;
}

ProfileCurve round_trip(const ProfileCurve& c) {
  std::stringstream ss;
  write_profile_csv(ss, c);
  return read_profile_csv(ss);
}

}  // namespace

TEST_CASE("Z^3 is admissible for (3, 1)") {
  auto r = theorem_pipeline(small(SpaceSpec::zpower(3), 16));
  CHECK(r.growth.polynomial);
  CHECK(r.growth.degree == doctest::Approx(3.0).epsilon(0.05));
  REQUIRE(r.targets.size() == 1);
  CHECK(r.targets[0].bound == 3);
  CHECK(r.targets[0].verdict == Verdict::Admissible);
}

TEST_CASE("Heisenberg growth excludes (3, 1)") {
  auto r = theorem_pipeline(small(SpaceSpec::heisenberg(), 16));
  CHECK(r.growth.polynomial);
  CHECK(r.growth.degree > 3.5);
  CHECK(r.targets[0].verdict == Verdict::Excluded);
}

TEST_CASE("lamplighter growth excludes every target") {
  auto c = small(SpaceSpec::lamplighter(), 14);
  c.targets = {{2, 0}, {3, 1}, {4, 4}};
  auto r = theorem_pipeline(c);
  CHECK_FALSE(r.growth.polynomial);
  for (const auto& t : r.targets) CHECK(t.verdict == Verdict::Excluded);
}

TEST_CASE("saved curves give the same verdicts") {
  auto c = small(SpaceSpec::zpower(3), 12);
  c.product_checks = true;
  c.targets = {{3, 1}};
  c.product_side = 4;
  auto data = pipeline_data(c);
  REQUIRE(data.product_sep.size() == 1);

  PipelineData back;
  std::stringstream g;
  write_growth_csv(g, data.growth);
  back.growth = read_growth_csv(g);
  CHECK(back.growth.radii == data.growth.radii);
  CHECK(back.growth.counts == data.growth.counts);
  back.j = round_trip(data.j);
  back.sep = round_trip(data.sep);
  back.product_sep.push_back(round_trip(data.product_sep[0]));
  CHECK(back.j.points.size() == data.j.points.size());

  std::ostringstream a, b;
  write_pipeline_report(a, c, evaluate_pipeline(c, data));
  write_pipeline_report(b, c, evaluate_pipeline(c, back));
  CHECK(a.str() == b.str());
  CHECK(a.str().find("growth degree d′ vs n+d−1 = ") != std::string::npos);
  CHECK(a.str().find("product_sep_verdict") != std::string::npos);

  std::ostringstream fa, fb;
  write_pipeline_fits_csv(fa, evaluate_pipeline(c, data));
  write_pipeline_fits_csv(fb, evaluate_pipeline(c, back));
  CHECK(fa.str() == fb.str());
}

TEST_CASE("empty curves are inconclusive") {
  auto c = small(SpaceSpec::zpower(2), 4);
  PipelineData empty;
  auto r = evaluate_pipeline(c, empty);
  CHECK(r.csc.verdict == Verdict::Inconclusive);
  CHECK(r.lcg.verdict == Verdict::Inconclusive);
  CHECK(r.targets[0].verdict == Verdict::Inconclusive);
  std::ostringstream out;
  write_pipeline_report(out, c, r);
  CHECK(out.str().find("verdict = inconclusive") != std::string::npos);
}

TEST_CASE("stage budgets are named") {
  // Growth truncates at the budget; the profile host cannot.
  auto c = small(SpaceSpec::zpower(3), 40);
  c.profile_radius = 30;
  c.vertex_budget = 1000;
  auto truncated = growth_function(c.group, c.growth_radius, c.vertex_budget);
  CHECK(truncated.truncated);
  try {
    pipeline_data(c);
    FAIL("expected a budget error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("stage profile host") != std::string::npos);
  }
  CHECK_THROWS_AS(pipeline_data(small(SpaceSpec::dyadic_hyperbolic(2, 3, 2), 3)), InputError);
}

TEST_CASE("product horosphere separation grows with the box") {
  auto curve = product_horosphere_sep(2, 1, 6);
  REQUIRE_FALSE(curve.points.empty());
  CHECK(curve.points.back().size == 36);
  CHECK(curve.points.back().value >= Ratio(1));
  CHECK(curve.check_invariants().empty());
  CHECK_THROWS_AS(product_horosphere_sep(1, 0, 4), InputError);
}

TEST_CASE("growth CSV") {
  std::istringstream bad("# truncated=0\nradius,count\n1,x\n");
  CHECK_THROWS_AS(read_growth_csv(bad), ParseError);
}
