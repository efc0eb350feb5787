#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/analysis.hpp"
#include "coarse/families.hpp"
#include "coarse/graph.hpp"
#include "coarse/profile.hpp"
#include "coarse/spectral.hpp"

namespace coarse {

// A vertex set whose removal leaves components of size s with 2s <= |G|.
// By convention a single-vertex graph is already cut (empty separator).
struct CutResult {
  VertexSet separator;
  std::size_t removed_count = 0;
  std::vector<std::size_t> component_sizes;  // non-increasing
  Certificate certificate = Certificate::Exact;
};

// Recomputes components after deleting the separator; empty when consistent.
std::vector<std::string> validate_cut(const Graph& g, const CutResult& cut);

struct ExactCutOptions {
  std::size_t max_vertices = 24;
};

// Minimum separator by iterative deepening on its cardinality. Only vertices
// of the (unique) oversized component are candidates; among minimum
// separators the lexicographically smallest is returned.
CutResult cut_exact(const Graph& g, const ExactCutOptions& options = {});

// Fiedler sweep. For every prefix S of the sweep order, two separators are
// considered: the vertices of S with a neighbor outside, and the vertices
// outside with a neighbor in S. Candidates whose two sides are both at most
// |G|/2 after removal are admissible; the smallest wins. Redundant
// separator vertices are then dropped greedily in decreasing index order.
CutResult cut_spectral(const Graph& g, const SpectralOptions& options = {});

enum class SepStrategy { ExactTiny, FamilyBalls, FamilySpectral, FamilyBoxes };
std::string to_string(SepStrategy s);
SepStrategy sep_strategy_from_string(const std::string& s);

struct SeparationOptions {
  Vertex root = 0;
  bool rooted = false;             // exact_tiny: only subgraphs through `root`
  std::size_t exact_size_budget = 20;
  std::uint64_t max_subgraphs = 2'000'000;
  std::size_t exact_cut_limit = 24;  // family subgraphs up to this size get cut_exact
  BoxOptions boxes{};                // family_boxes; root is taken from `root`
  SpectralOptions spectral{};
};

// exact_tiny: max of cut_exact over connected induced subgraphs with at most
// n vertices (certificate exact). Family strategies evaluate the cut on
// canonical subgraphs up to max(sizes): exact cuts give certified lower
// bounds, spectral cuts of larger subgraphs give estimates. Values are
// running maxima over sizes.
ProfileCurve separation_profile(const Graph& g, std::vector<std::size_t> sizes, SepStrategy strategy,
                                const SeparationOptions& options = {});

struct LcgReport {
  std::vector<std::pair<double, double>> ratios;  // (v, K(v))
  double max_ratio = 0.0;
  double log_ratio_slope = 0.0;
  double tolerance = 0.1;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

// K(v) = (v / sep(v)) / (j(v) (log v)^2) at the sizes of `sep` within the size
// range of `j`, reading j as a step function. Consistent when the fitted
// slope of log K against log v is at most `tolerance`: a finite-scale trend
// check, not a proof.
LcgReport lcg_inequality_report(const Series& j, const Series& sep, double tolerance = 0.1);
LcgReport lcg_inequality_report(const ProfileCurve& j, const ProfileCurve& sep, double tolerance = 0.1);

void write_cut_record(std::ostream& out, const CutResult& cut);
void write_lcg_report(std::ostream& out, const LcgReport& report);

}  // namespace coarse
