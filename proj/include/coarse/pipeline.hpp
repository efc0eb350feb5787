#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coarse/analysis.hpp"
#include "coarse/generators.hpp"
#include "coarse/profile.hpp"
#include "coarse/separation.hpp"

namespace coarse {

struct PipelineTarget {
  int n = 3;
  int d = 1;
  friend bool operator==(const PipelineTarget&, const PipelineTarget&) = default;
};

struct PipelineConfig {
  SpaceSpec group = SpaceSpec::zpower(3);
  std::vector<PipelineTarget> targets{{3, 1}};
  int growth_radius = 24;
  // Growth fit window on radii; unset uses the upper half of the radii.
  std::optional<double> growth_window_lo;
  int profile_radius = 6;  // host ball for the j and sep family curves
  int product_side = 8;    // largest horosphere box side in the product check
  bool product_checks = true;
  double degree_tolerance = 0.15;
  double lcg_tolerance = 0.1;
  double csc_slack = 0.15;
  double exponent_tolerance = 0.15;
  std::size_t vertex_budget = kDefaultVertexBudget;
};

// Curves the verdicts are computed from. Saved and reloaded curves give the
// same verdicts.
struct PipelineData {
  GrowthCurve growth;
  ProfileCurve j;
  ProfileCurve sep;
  std::vector<ProfileCurve> product_sep;  // one per target when product checks run
};

struct TargetVerdict {
  PipelineTarget target;
  int bound = 0;  // n + d - 1
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::optional<ProductSepReport> product;
};

struct PipelineResult {
  FitWindow growth_window;
  GrowthClass growth;
  CscReport csc;
  LcgReport lcg;
  std::vector<TargetVerdict> targets;
};

// Builds every curve. A stage that exceeds a budget raises ResourceError
// prefixed with the stage name.
PipelineData pipeline_data(const PipelineConfig& config);

// Pure function of the config and the curves.
PipelineResult evaluate_pipeline(const PipelineConfig& config, const PipelineData& data);

PipelineResult theorem_pipeline(const PipelineConfig& config);

// Horosphere boxes of Z^d x (dyadic H^n model): level-0 boxes of side
// 1..side, separation by family strategy.
ProfileCurve product_horosphere_sep(int n, int d, int side, std::size_t vertex_budget = kDefaultVertexBudget);

void write_pipeline_report(std::ostream& out, const PipelineConfig& config, const PipelineResult& result);
// `stage,quantity,value` rows for every fitted number.
void write_pipeline_fits_csv(std::ostream& out, const PipelineResult& result);

// `radius,count` rows with a `# truncated=` preamble line.
void write_growth_csv(std::ostream& out, const GrowthCurve& growth);
GrowthCurve read_growth_csv(std::istream& in);

}  // namespace coarse
