#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/generators.hpp"
#include "coarse/profile.hpp"

namespace coarse {

// Sampled monotone function: sizes (or radii) x against values y.
struct Series {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const noexcept { return x.size(); }
  void push(double xv, double yv) {
    x.push_back(xv);
    y.push_back(yv);
  }
};

Series to_series(const ProfileCurve& curve);
Series to_series(const GrowthCurve& curve);

// Explicit [lo, hi] range on x. With neither bound set, the smallest 25% of
// the points (by x) are dropped.
struct FitWindow {
  std::optional<double> lo;
  std::optional<double> hi;
};

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rmse = 0.0;  // of log-residuals
  double v_min = 0.0;
  double v_max = 0.0;
  std::size_t point_count = 0;
  std::vector<std::string> notes;
};

// Least squares of log y on log x. Fewer than 3 usable points raises InputError;
// nonpositive values are skipped with a note.
ExponentFit fit_power(const Series& s, const FitWindow& window = {});

struct LogFit {
  double coefficient = 0.0;
  double intercept = 0.0;
  double rmse = 0.0;      // value-space residuals
  double log_rmse = 0.0;  // log-residuals, comparable with ExponentFit::rmse; inf if a fitted value is <= 0
  double v_min = 0.0;
  double v_max = 0.0;
  std::size_t point_count = 0;
  std::vector<std::string> notes;
};

// Least squares of y on log x.
LogFit fit_log(const Series& s, const FitWindow& window = {});

// Best power law c * x^a with a >= min_exponent, scored by log-residual rmse.
ExponentFit fit_power_floor(const Series& s, double min_exponent, const FitWindow& window = {});

enum class Model { Log, Power, PowerTimesLogPow };
std::string to_string(Model m);

struct ModelCandidate {
  Model model = Model::Power;
  std::vector<double> parameters;  // log: (a, b); power: (a, log c); mixed: (a, beta, log c)
  double rmse = 0.0;               // log-residual rmse, shared scale for all models
};

struct ModelComparison {
  std::vector<ModelCandidate> candidates;  // in the order log, power, mixed
  std::size_t winner = 0;
};

// The mixed model c * x^a * (log x)^beta takes beta from {0, 1/4, 1/3, 1/2, 1}.
// The winner has strictly minimal rmse; ties go to the simpler model.
ModelComparison compare_models(const Series& s, const FitWindow& window = {});

// Mixed model with beta fixed; parameters are (a, beta, log c).
ModelCandidate fit_mixed_fixed_beta(const Series& s, double beta, const FitWindow& window = {});

enum class Verdict { Consistent, Inconsistent, Inconclusive, Match, Mismatch, Admissible, Excluded };
std::string to_string(Verdict v);

// Polynomial growth shows up as log beta being linear in log r; exponential
// growth as log beta being linear in r.
struct GrowthClass {
  bool polynomial = false;
  bool conclusive = false;
  double degree = 0.0;            // fitted D when polynomial
  double linear_rmse = 0.0;       // log beta against r
  double logarithmic_rmse = 0.0;  // log beta against log r
  ExponentFit power;
};

GrowthClass classify_growth(const GrowthCurve& growth, const FitWindow& window = {});

struct CscReport {
  Verdict verdict = Verdict::Inconclusive;
  ExponentFit growth_fit;
  ExponentFit profile_fit;
  double bound = 0.0;  // 1/D + slack
  double slack = 0.15;
  std::string reason;
};

// The isoperimetric profile of a group with growth at least r^D is at most
// v^(1/D); consistent when the fitted profile exponent is <= 1/D + slack.
CscReport csc_check(const GrowthCurve& growth, const Series& profile, double slack = 0.15,
                    double growth_rmse_max = 0.1);

struct ProductSepReport {
  int n = 2;
  int d = 0;
  Verdict verdict = Verdict::Inconclusive;
  double target_exponent = 0.0;
  double fitted_exponent = 0.0;
  double deviation = 0.0;
  double tolerance = 0.15;
  std::optional<ModelComparison> comparison;  // n = 2 only
  std::string reason;
};

// Compares a separation curve of a hyperbolic-times-nilpotent model against
// v^(1 - 1/(d+n-1)) for n >= 3, the logarithmic profile for (n, d) = (2, 0),
// and v^(1-1/d) (log v)^(1/(d+1)) for n = 2, d >= 1.
ProductSepReport product_sep_exponent_check(int n, int d, const Series& sep, double tolerance = 0.15);

}  // namespace coarse
