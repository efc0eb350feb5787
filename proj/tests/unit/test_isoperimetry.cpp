#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/isoperimetry.hpp"
#include "coarse/spectral.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

std::vector<Ratio> values(const ProfileCurve& c) {
  std::vector<Ratio> out;
  for (const auto& p : c.points) out.push_back(p.value);
  return out;
}

}  // namespace

TEST_CASE("C6 values and witnesses") {
  auto c6 = cycle_graph(6);
  auto curve = exact_isoperimetric_profile(c6, 3);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].value == Ratio(1, 2));
  CHECK(curve.points[2].value == Ratio(3, 2));
  CHECK(curve.points[2].witness == std::vector<Vertex>{0, 1, 2});
  CHECK(curve.check_invariants().empty());
  for (const auto& p : curve.points) CHECK(p.certificate == Certificate::Exact);
}

TEST_CASE("matches the all-subsets oracle on random graphs") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(trial % 7);
    auto g = oracle::random_connected_graph(rng, n, n / 2 + static_cast<std::size_t>(trial % 3));
    const std::size_t k = n - 1;
    const auto brute = oracle::brute_profile(g, k);
    CHECK(oracle::brute_profile(g, k, true) == brute);
    CHECK(values(exact_isoperimetric_profile(g, k)) == brute);
    ExactProfileOptions threaded;
    threaded.threads = 3;
    CHECK(exact_isoperimetric_profile(g, k, threaded) == exact_isoperimetric_profile(g, k));
  }
}

TEST_CASE("7x7 host against all subsets of size <= 4") {
  auto host = grid_graph(7, 7);
  auto curve = exact_isoperimetric_profile(host, 4);
  VertexSet box({oracle::grid_vertex(host, 2, 2), oracle::grid_vertex(host, 3, 2), oracle::grid_vertex(host, 2, 3),
                 oracle::grid_vertex(host, 3, 3)},
                host.vertex_count());
  CHECK(*edge_boundary(host, box).ratio == Ratio(1, 2));
  CHECK(curve.points[3].value >= Ratio(1, 2));

  std::vector<Ratio> best(5, Ratio(0));
  std::vector<Vertex> pick;
  auto rec = [&](auto&& self, Vertex from) -> void {
    if (!pick.empty()) {
      auto r = *edge_boundary(host, VertexSet(pick, host.vertex_count())).ratio;
      best[pick.size()] = std::max(best[pick.size()], r);
    }
    if (pick.size() == 4) return;
    for (Vertex v = from; v < host.vertex_count(); ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  for (std::size_t k = 2; k <= 4; ++k) best[k] = std::max(best[k], best[k - 1]);
  CHECK(values(curve) == std::vector<Ratio>(best.begin() + 1, best.end()));
}

TEST_CASE("Z^2 golden table from polyomino perimeters") {
  std::vector<std::size_t> counts;
  const auto perimeter = oracle::polyomino_min_perimeter(12, &counts);
  const std::vector<std::size_t> fixed = {0, 1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446, 135268, 505861};
  CHECK(counts == fixed);

  std::vector<Ratio> golden;
  Ratio run(0);
  for (std::size_t m = 1; m <= 12; ++m) {
    run = std::max(run, Ratio(static_cast<std::int64_t>(m), static_cast<std::int64_t>(perimeter[m])));
    golden.push_back(run);
  }
  const std::vector<Ratio> frozen = {{1, 4}, {1, 3}, {3, 8}, {1, 2},  {1, 2},   {3, 5},
                                     {3, 5}, {2, 3}, {3, 4}, {3, 4}, {11, 14}, {6, 7}};
  CHECK(golden == frozen);

  auto host = cayley_ball(SpaceSpec::zpower(2), 12);
  ExactProfileOptions o;
  o.root = 0;
  auto curve = exact_isoperimetric_profile(host, 12, o);
  CHECK(values(curve) == frozen);
  for (const auto& p : curve.points) CHECK(p.certificate == Certificate::Exact);
}

TEST_CASE("rooted enumeration degrades near the truncation") {
  auto host = cayley_ball(SpaceSpec::zpower(2), 3);
  ExactProfileOptions o;
  o.root = 0;
  auto curve = exact_isoperimetric_profile(host, 8, o);
  CHECK(curve.points.back().certificate == Certificate::Lower);
}

TEST_CASE("budgets and preconditions") {
  auto g = grid_graph(5, 5);
  ExactProfileOptions o;
  o.size_budget = 6;
  CHECK_THROWS_AS(exact_isoperimetric_profile(g, 7, o), ResourceError);
  CHECK_THROWS_AS(exact_isoperimetric_profile(g, 25), InputError);
  CHECK_THROWS_AS(exact_isoperimetric_profile(empty_graph(3), 1), InputError);
  o.size_budget = 14;
  o.max_sets = 1000;
  CHECK_THROWS_AS(exact_isoperimetric_profile(g, 10, o), ResourceError);
}

TEST_CASE("complement cap") {
  auto g = cycle_graph(8);
  ExactProfileOptions o;
  o.complement_cap = true;
  auto capped = exact_isoperimetric_profile(g, 7, o);
  CHECK(capped.points.size() == 4);
  CHECK(capped.points.back().value == Ratio(2));
}

TEST_CASE("box family on a Z^2 ball") {
  auto host = cayley_ball(SpaceSpec::zpower(2), 12);
  FamilyOptions o;
  o.root = 0;
  auto curve = family_isoperimetric_lowerbound(host, SetFamily::Boxes, o);
  REQUIRE(curve.points.size() >= 6);
  for (const auto& p : curve.points) {
    const auto k = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(p.size))));
    CHECK(static_cast<std::size_t>(k * k) == p.size);
    CHECK(p.value == Ratio(k, 4));
    CHECK(p.certificate == Certificate::Lower);
  }
}

TEST_CASE("ball family on a tree stays bounded") {
  auto tree = cayley_ball(SpaceSpec::free_group(2), 7);
  auto curve = family_isoperimetric_lowerbound(tree, SetFamily::Balls, {});
  REQUIRE_FALSE(curve.points.empty());
  for (const auto& p : curve.points) CHECK(p.value <= Ratio(1));
}

TEST_CASE("family lower bounds never exceed exact values") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto g = oracle::random_connected_graph(rng, 11, 6);
    auto exact = exact_isoperimetric_profile(g, 10);
    for (auto family : {SetFamily::Balls, SetFamily::Sublevel}) {
      FamilyOptions o;
      o.max_size = 10;
      auto lower = family_isoperimetric_lowerbound(g, family, o);
      for (const auto& p : lower.points) CHECK(p.value <= exact.points[p.size - 1].value);
    }
  }
  auto grid = grid_graph(4, 4);
  auto exact = exact_isoperimetric_profile(grid, 12);
  FamilyOptions o;
  o.root = 5;
  o.max_size = 12;
  for (const auto& p : family_isoperimetric_lowerbound(grid, SetFamily::Boxes, o).points)
    CHECK(p.value <= exact.points[p.size - 1].value);
}

TEST_CASE("Fiedler values") {
  CHECK(fiedler_vector(complete_graph(4)).lambda2 == doctest::Approx(4.0));
  CHECK(fiedler_vector(cycle_graph(8)).lambda2 == doctest::Approx(2 - 2 * std::cos(2 * std::numbers::pi / 8)));
  // The iterative path agrees with the dense one.
  SpectralOptions iterative;
  iterative.dense_limit = 10;
  auto g = grid_graph(12, 9);
  CHECK(fiedler_vector(g, iterative).lambda2 == doctest::Approx(fiedler_vector(g).lambda2).epsilon(1e-6));
  CHECK(fiedler_vector(cycle_graph(64), iterative).lambda2 ==
        doctest::Approx(2 - 2 * std::cos(2 * std::numbers::pi / 64)).epsilon(1e-6));
}

TEST_CASE("Cheeger rails on the 4x4 grid") {
  auto g = grid_graph(4, 4);
  auto rails = cheeger_spectral_bound(g);
  const auto adj = oracle::neighbor_masks(g);
  double h = 1e9;
  for (std::uint32_t s = 1; s < (1u << 16); ++s) {
    if (std::popcount(s) > 8) continue;
    h = std::min(h, static_cast<double>(oracle::mask_boundary(adj, s)) / std::popcount(s));
  }
  CHECK(h >= rails.h_lower);
  CHECK(h <= rails.h_upper);
}
