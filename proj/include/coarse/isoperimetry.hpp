#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "coarse/families.hpp"
#include "coarse/graph.hpp"
#include "coarse/profile.hpp"
#include "coarse/spectral.hpp"

namespace coarse {

struct ExactProfileOptions {
  std::size_t size_budget = 14;
  // Enumerate only sets containing this vertex. On a truncated vertex-
  // transitive host every finite set has a translate through the root, so
  // the result is exact for the infinite space as long as no set reaches
  // the truncation (checked; the curve degrades to `lower` otherwise).
  std::optional<Vertex> root;
  // Restrict to |A| <= |G|/2 instead of |A| < |G|.
  bool complement_cap = false;
  unsigned threads = 1;
  std::uint64_t max_sets = 4'000'000'000ULL;
};

// j(n) = max |A|/|dA| over nonempty A with |A| <= n, for n = 1..max_size.
// Only connected A are enumerated: a disconnected A has ratio at most that of
// its best component. Ties go to the smallest witness, then the
// lexicographically smallest vertex list.
ProfileCurve exact_isoperimetric_profile(const Graph& g, std::size_t max_size,
                                         const ExactProfileOptions& options = {});

enum class SetFamily { Balls, Boxes, Sublevel };
std::string to_string(SetFamily f);
SetFamily set_family_from_string(const std::string& s);

struct FamilyOptions {
  Vertex root = 0;
  BoxOptions boxes{};  // root is taken from `root`
  std::size_t max_size = static_cast<std::size_t>(-1);
};

// Running maximum of |A|/|dA| over a nested family; every point is a lower
// bound for j at that size.
ProfileCurve family_isoperimetric_lowerbound(const Graph& g, SetFamily family, const FamilyOptions& options = {});

struct CheegerBounds {
  double lambda2 = 0.0;
  double h_lower = 0.0;  // lambda2 / 2
  double h_upper = 0.0;  // sqrt(2 * degree_bound * lambda2)
  double residual = 0.0;
};

// Rails for h = min_{|A| <= |G|/2} |dA|/|A| from the Laplacian spectral gap.
CheegerBounds cheeger_spectral_bound(const Graph& g, const SpectralOptions& options = {});

}  // namespace coarse
