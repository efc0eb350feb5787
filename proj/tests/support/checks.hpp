#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "coarse/generators.hpp"
#include "coarse/separation.hpp"

namespace checks {

using namespace coarse;

// Cut of the subgraph of g induced by `members`.
inline std::size_t induced_cut(const Graph& g, const std::vector<Vertex>& members) {
  if (members.size() <= 1) return 0;
  auto sub = induced_subgraph(g, VertexSet(members, g.vertex_count()));
  return cut_exact(sub.graph).removed_count;
}

// The explicit 1-Lipschitz injection of P_k into a side x side grid: along
// the bottom row, turning up the right edge when the row runs out.
inline std::vector<Vertex> path_into_grid(const Graph& grid, std::size_t k, std::size_t side) {
  LabelIndex index(grid);
  std::vector<Vertex> image;
  for (std::size_t i = 0; i < k; ++i) {
    const auto x = static_cast<std::int64_t>(std::min(i, side - 1));
    const auto y = static_cast<std::int64_t>(i < side ? 0 : i - side + 1);
    image.push_back(*index.find({x, y}));
  }
  return image;
}

// For every vertex subset S of P_k (all subsets up to `all_subsets_upto`
// vertices of path, intervals beyond), cut(grid[f(S)]) >= cut(P_k[S]).
// Returns one message per violation.
inline std::vector<std::string> bst_path_into_grid(std::size_t max_k, std::size_t side,
                                                   std::size_t all_subsets_upto = 12) {
  const Graph grid = grid_graph(side, side);
  std::vector<std::string> violations;
  for (std::size_t k = 1; k <= max_k; ++k) {
    const Graph path = path_graph(k);
    const auto image = path_into_grid(grid, k, side);
    auto compare = [&](const std::vector<Vertex>& s) {
      std::vector<Vertex> fs;
      for (auto v : s) fs.push_back(image[v]);
      const std::size_t dom = induced_cut(path, s), cod = induced_cut(grid, fs);
      if (cod < dom) violations.push_back(fmt::format("k={} subset of size {}: cut {} < {}", k, s.size(), cod, dom));
    };
    if (k <= all_subsets_upto) {
      for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<Vertex> s;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1u) s.push_back(static_cast<Vertex>(i));
        compare(s);
      }
    } else {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
          std::vector<Vertex> s;
          for (std::size_t i = a; i <= b; ++i) s.push_back(static_cast<Vertex>(i));
          compare(s);
        }
    }
  }
  return violations;
}

}  // namespace checks
