#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

inline constexpr std::size_t kDefaultVertexBudget = 5'000'000;

enum class SpaceKind {
  ZPower,
  Heisenberg,
  Lamplighter,
  FreeGroup,
  PolycyclicLambda,
  DyadicHyperbolic,
  Product,
  Horoball,
};

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

// Row-major 2x2 integer matrix.
struct Matrix2 {
  std::int64_t a = 2, b = 1, c = 1, d = 1;
  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

// Declarative description of a group or space model. Group kinds are built
// as word-metric balls of `radius`; the dyadic model uses `levels`/`width`;
// products and horoballs are assembled from `factors`.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::ZPower;
  int dim = 1;  // d for ZPower, rank for FreeGroup, n for PolycyclicLambda and DyadicHyperbolic
  Matrix2 q{};
  std::vector<SpaceSpec> factors;  // Product: the factors; Horoball: the single inner space
  int depth = 0;
  int radius = 0;
  int levels = 1;
  int width = 1;
  bool wrap = false;

  static SpaceSpec zpower(int d, int radius = 0);
  static SpaceSpec heisenberg(int radius = 0);
  static SpaceSpec lamplighter(int radius = 0);
  static SpaceSpec free_group(int rank, int radius = 0);
  static SpaceSpec polycyclic_lambda(int n, Matrix2 q = {}, int radius = 0);
  static SpaceSpec dyadic_hyperbolic(int n, int levels, int width, bool wrap = false);
  static SpaceSpec product(std::vector<SpaceSpec> factors);
  static SpaceSpec horoball(SpaceSpec inner, int depth);

  bool is_group() const;
  // Throws InputError describing the first violated parameter constraint.
  void validate() const;
  // Number of symmetric generators (the Cayley graph degree) for group kinds.
  std::size_t generator_count() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

struct GrowthCurve {
  std::vector<int> radii;
  std::vector<std::uint64_t> counts;  // counts[i] = ball cardinality at radii[i]
  bool truncated = false;             // the vertex budget stopped enumeration early
};

// Word-metric ball of a group kind. Vertex 0 is the identity; vertices are
// ordered sphere by sphere, lexicographically by normal form within a sphere.
Graph cayley_ball(const SpaceSpec& spec, int radius, std::size_t vertex_budget = kDefaultVertexBudget);

GrowthCurve growth_function(const SpaceSpec& spec, int max_radius,
                            std::size_t vertex_budget = kDefaultVertexBudget);

// Index arithmetic for the dyadic box model of hyperbolic n-space.
//
// Vertex (k, m) is the box k * 2^m + [0, 2^m)^(n-1) at height 2^m. Level m
// has extent width * 2^(levels-1-m) per coordinate. Labels are (k..., m).
struct DyadicLayout {
  int n = 2;
  int levels = 1;
  int width = 1;
  bool wrap = false;

  std::int64_t extent(int level) const;
  std::size_t level_size(int level) const;
  std::size_t level_offset(int level) const;
  std::size_t vertex_count() const;
  std::size_t degree_bound() const;
  Vertex index(std::span<const std::int64_t> k, int level) const;
};

Graph dyadic_hyperbolic_ball(int n, int levels, int width, bool wrap = false,
                             std::size_t vertex_budget = kDefaultVertexBudget);

// Combinatorial horoball over a connected inner graph. Vertex (v, m) has index
// m * |inner| + v; level m joins inner vertices at distance 1..2^m. The
// result carries no degree bound.
Graph horoball(const Graph& inner, int depth, std::size_t vertex_budget = kDefaultVertexBudget);

// Builds whatever the SpaceSpec describes: Cayley balls of `radius`, the dyadic
// model, products of built factors, or horoballs over a built inner space.
Graph build_space(const SpaceSpec& spec, std::size_t vertex_budget = kDefaultVertexBudget);

// Small named graphs. Grid vertices are labelled by (x, y), paths and cycles by (i).
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph grid_graph(std::size_t width, std::size_t height);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph empty_graph(std::size_t n);

}  // namespace coarse
