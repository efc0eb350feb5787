#include <doctest.h>

#include <sstream>

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/graph.hpp"
#include "oracles.hpp"

using namespace coarse;

TEST_CASE("from_edges normalizes and rejects bad input") {
  auto g = Graph::from_edges(3, {{1, 0}, {0, 1}, {2, 1}}, 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(validate(g).empty());

  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}, 2), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}, 2), InputError);
  CHECK_THROWS_AS(star_graph(3).degree(0) > 0 ? Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}, 2) : Graph{},
                  InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}}, 1, {{1}, {1}}), InputError);
}

TEST_CASE("balls on paths and cycles") {
  auto p = path_graph(7);
  CHECK(bfs_ball(p, 3, 0).members() == std::vector<Vertex>{3});
  CHECK(bfs_ball(p, 3, 2).size() == 5);
  auto c = cycle_graph(10);
  for (Vertex v : {0u, 4u, 9u}) CHECK(bfs_ball(c, v, 3).size() == 7);
}

TEST_CASE("edge boundary") {
  auto grid = grid_graph(9, 9);
  auto centre = oracle::grid_vertex(grid, 4, 4);
  auto one = edge_boundary(grid, VertexSet({centre}, grid.vertex_count()));
  CHECK(one.boundary_size == 4);
  CHECK(*one.ratio == Ratio(1, 4));

  VertexSet box({oracle::grid_vertex(grid, 4, 4), oracle::grid_vertex(grid, 5, 4), oracle::grid_vertex(grid, 4, 5),
                 oracle::grid_vertex(grid, 5, 5)},
                grid.vertex_count());
  auto b = edge_boundary(grid, box);
  CHECK(b.boundary_size == 8);
  CHECK(*b.ratio == Ratio(1, 2));

  auto c6 = cycle_graph(6);
  auto all = edge_boundary(c6, VertexSet::all(6));
  CHECK(all.boundary_size == 0);
  CHECK_FALSE(all.ratio.has_value());
}

TEST_CASE("vertex sets validate membership") {
  CHECK_THROWS_AS(VertexSet({1, 1}, 4), InputError);
  CHECK_THROWS_AS(VertexSet({4}, 4), InputError);
  VertexSet s({3, 0}, 4);
  CHECK(s.members() == std::vector<Vertex>{0, 3});
  CHECK(s.complement().members() == std::vector<Vertex>{1, 2});
}

TEST_CASE("induced subgraphs of C6") {
  auto c6 = cycle_graph(6);
  auto arc = induced_subgraph(c6, VertexSet({0, 1, 2}, 6));
  CHECK(arc.graph.vertex_count() == 3);
  CHECK(arc.graph.edge_count() == 2);
  CHECK(arc.to_host == std::vector<Vertex>{0, 1, 2});

  auto alt = induced_subgraph(c6, VertexSet({0, 2, 4}, 6));
  CHECK(alt.graph.edge_count() == 0);

  auto whole = induced_subgraph(c6, VertexSet::all(6));
  CHECK(whole.graph.edges() == c6.edges());
  CHECK(whole.to_host == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("components") {
  auto c6 = cycle_graph(6);
  CHECK(connected_components(c6).sizes == std::vector<std::size_t>{6});
  std::vector<bool> removed(6, false);
  removed[0] = removed[3] = true;
  auto comps = connected_components(c6, removed);
  CHECK(comps.sizes == std::vector<std::size_t>{2, 2});
  CHECK(comps.component_of[0] == -1);
  CHECK(connected_components(empty_graph(4)).sizes == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK_FALSE(is_connected(empty_graph(4)));
}

TEST_CASE("cartesian products") {
  auto g = cartesian_product(path_graph(3), path_graph(3));
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 12);

  auto c = cycle_graph(7);
  auto same = cartesian_product(c, path_graph(1));
  CHECK(same.vertex_count() == 7);
  CHECK(same.edges() == c.edges());

  auto prism = cartesian_product(cycle_graph(4), path_graph(2));
  CHECK(prism.vertex_count() == 8);
  for (Vertex v = 0; v < 8; ++v) CHECK(prism.degree(v) == 3);
  CHECK(validate(prism).empty());
  CHECK(prism.label(5).size() == 2);
}

TEST_CASE("graph text round trip") {
  for (const auto& g : {grid_graph(4, 3), cycle_graph(5), empty_graph(2), horoball(path_graph(5), 2),
                        cayley_ball(SpaceSpec::heisenberg(), 2)}) {
    std::stringstream ss;
    write_graph(ss, g);
    auto back = read_graph(ss);
    CHECK(back == g);
  }
}

TEST_CASE("graph parse errors carry positions") {
  std::istringstream bad("graph 3 2\n0 1\n1 x\n");
  try {
    read_graph(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream loop("graph 2 2\n1 1\n");
  CHECK_THROWS_AS(read_graph(loop), ParseError);
}

TEST_CASE("validator runs on generated graphs") {
  CHECK(validate(grid_graph(5, 5)).empty());
  CHECK(validate(dyadic_hyperbolic_ball(3, 3, 2)).empty());
  CHECK(validate(cayley_ball(SpaceSpec::lamplighter(), 5)).empty());
  CHECK(validate(build_space(SpaceSpec::product({SpaceSpec::zpower(1, 2), SpaceSpec::free_group(2, 2)}))).empty());
}
