#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

enum class BoxAnchor { Centered, Corner };

// Axis-aligned boxes in label coordinates. The first `dims` label entries
// vary (0 = all of them); the rest are pinned to the root's label. Side k
// spans [c - (k-1)/2, c + k/2] when centered, [c, c + k - 1] from a corner.
struct BoxOptions {
  Vertex root = 0;
  std::size_t dims = 0;
  BoxAnchor anchor = BoxAnchor::Centered;
  // Stop once a box vertex has lower degree than the root (the box reached
  // the edge of a truncated host).
  bool require_saturated = true;
};

// BFS balls of radius 0, 1, ... around `root` while |ball| <= max_size and
// the ball keeps growing.
std::vector<VertexSet> ball_family(const Graph& g, Vertex root, std::size_t max_size);

// Boxes of side 1, 2, ... while they fit in the host and |box| <= max_size.
// Throws InputError when the graph has no labels.
std::vector<VertexSet> box_family(const Graph& g, const BoxOptions& options, std::size_t max_size);

// Vertex order of a sweep over the Fiedler vector (ties by index).
std::vector<Vertex> fiedler_order(const Graph& g);

}  // namespace coarse
