#include "coarse/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/rational.hpp>
#include <fmt/format.h>

#include "coarse/errors.hpp"

namespace coarse {

Series to_series(const ProfileCurve& curve) {
  Series s;
  for (const auto& p : curve.points) s.push(static_cast<double>(p.size), boost::rational_cast<double>(p.value));
  return s;
}

Series to_series(const GrowthCurve& curve) {
  Series s;
  for (std::size_t i = 0; i < curve.radii.size() && i < curve.counts.size(); ++i)
    s.push(static_cast<double>(curve.radii[i]), static_cast<double>(curve.counts[i]));
  return s;
}

namespace {

struct Points {
  std::vector<double> x, y;
  std::vector<std::string> notes;
};

// Drops points the model cannot use, then applies the window.
Points select(const Series& s, const FitWindow& w, double x_floor, bool positive_y) {
  std::vector<std::size_t> idx;
  Points p;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s.x[i] > x_floor) || (positive_y && !(s.y[i] > 0)) || !std::isfinite(s.y[i])) {
      ++skipped;
      continue;
    }
    idx.push_back(i);
  }
  if (skipped) p.notes.push_back(fmt::format("skipped {} unusable point(s)", skipped));
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
  if (!w.lo && !w.hi) {
    const std::size_t drop = idx.size() / 4;
    idx.erase(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(drop));
    if (drop) p.notes.push_back(fmt::format("default window dropped the smallest {} point(s)", drop));
  } else {
    std::erase_if(idx, [&](std::size_t i) { return (w.lo && s.x[i] < *w.lo) || (w.hi && s.x[i] > *w.hi); });
  }
  for (auto i : idx) {
    p.x.push_back(s.x[i]);
    p.y.push_back(s.y[i]);
  }
  if (p.x.size() < 3)
    throw InputError(fmt::format("fit needs at least 3 points in the window, got {}", p.x.size()));
  return p;
}

struct Line {
  double slope = 0, intercept = 0, rmse = 0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line l;
  l.slope = sxx > 0 ? sxy / sxx : 0.0;
  l.intercept = my - l.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.slope * x[i] + l.intercept);
    ss += r * r;
  }
  l.rmse = std::sqrt(ss / n);
  return l;
}

std::vector<double> logs(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double a) { return std::log(a); });
  return out;
}

ExponentFit to_fit(const Points& p, const Line& l) {
  ExponentFit f;
  f.slope = l.slope;
  f.intercept = l.intercept;
  f.rmse = l.rmse;
  f.v_min = p.x.front();
  f.v_max = p.x.back();
  f.point_count = p.x.size();
  f.notes = p.notes;
  return f;
}

double log_rmse(const std::vector<double>& y, const std::vector<double>& fitted) {
  double ss = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(fitted[i] > 0)) return std::numeric_limits<double>::infinity();
    const double r = std::log(y[i]) - std::log(fitted[i]);
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(y.size()));
}

ModelCandidate mixed_on(const Points& p, double beta) {
  const auto lx = logs(p.x);
  auto ly = logs(p.y);
  for (std::size_t i = 0; i < ly.size(); ++i) ly[i] -= beta * std::log(lx[i]);
  const Line l = least_squares(lx, ly);
  return {Model::PowerTimesLogPow, {l.slope, beta, l.intercept}, l.rmse};
}

constexpr std::array<double, 5> kBetas = {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0};
constexpr double kTie = 1e-12;

}  // namespace

ExponentFit fit_power(const Series& s, const FitWindow& window) {
  const Points p = select(s, window, 0.0, true);
  return to_fit(p, least_squares(logs(p.x), logs(p.y)));
}

LogFit fit_log(const Series& s, const FitWindow& window) {
  const Points p = select(s, window, 0.0, false);
  const Line l = least_squares(logs(p.x), p.y);
  LogFit f;
  f.coefficient = l.slope;
  f.intercept = l.intercept;
  f.rmse = l.rmse;
  f.log_rmse = std::numeric_limits<double>::infinity();
  if (std::all_of(p.y.begin(), p.y.end(), [](double y) { return y > 0; })) {
    std::vector<double> fitted(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) fitted[i] = l.slope * std::log(p.x[i]) + l.intercept;
    f.log_rmse = log_rmse(p.y, fitted);
  }
  f.v_min = p.x.front();
  f.v_max = p.x.back();
  f.point_count = p.x.size();
  f.notes = p.notes;
  return f;
}

ExponentFit fit_power_floor(const Series& s, double min_exponent, const FitWindow& window) {
  const Points p = select(s, window, 0.0, true);
  const auto lx = logs(p.x), ly = logs(p.y);
  Line l = least_squares(lx, ly);
  if (l.slope < min_exponent) {
    // Constrained optimum sits on the boundary: only the intercept is free.
    l.slope = min_exponent;
    double sum = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sum += ly[i] - min_exponent * lx[i];
    l.intercept = sum / static_cast<double>(lx.size());
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - (l.slope * lx[i] + l.intercept);
      ss += r * r;
    }
    l.rmse = std::sqrt(ss / static_cast<double>(lx.size()));
  }
  auto f = to_fit(p, l);
  f.notes.push_back(fmt::format("exponent floor {:.6g}", min_exponent));
  return f;
}

std::string to_string(Model m) {
  switch (m) {
    case Model::Log: return "log";
    case Model::Power: return "power";
    case Model::PowerTimesLogPow: return "power_times_logpow";
  }
  return "unknown";
}

ModelCandidate fit_mixed_fixed_beta(const Series& s, double beta, const FitWindow& window) {
  return mixed_on(select(s, window, 1.0, true), beta);
}

ModelComparison compare_models(const Series& s, const FitWindow& window) {
  const Points p = select(s, window, 1.0, true);
  const auto lx = logs(p.x);
  ModelComparison c;

  const Line lg = least_squares(lx, p.y);
  std::vector<double> fitted(p.y.size());
  for (std::size_t i = 0; i < lx.size(); ++i) fitted[i] = lg.slope * lx[i] + lg.intercept;
  c.candidates.push_back({Model::Log, {lg.slope, lg.intercept}, log_rmse(p.y, fitted)});

  const Line pw = least_squares(lx, logs(p.y));
  c.candidates.push_back({Model::Power, {pw.slope, pw.intercept}, pw.rmse});

  ModelCandidate best = mixed_on(p, kBetas[0]);
  for (std::size_t i = 1; i < kBetas.size(); ++i) {
    auto m = mixed_on(p, kBetas[i]);
    if (m.rmse < best.rmse - kTie) best = m;
  }
  c.candidates.push_back(best);

  for (std::size_t i = 1; i < c.candidates.size(); ++i)
    if (c.candidates[i].rmse < c.candidates[c.winner].rmse - kTie) c.winner = i;
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Admissible: return "admissible";
    case Verdict::Excluded: return "excluded";
  }
  return "unknown";
}

GrowthClass classify_growth(const GrowthCurve& growth, const FitWindow& window) {
  GrowthClass g;
  const Series s = to_series(growth);
  Points p;
  try {
    p = select(s, window, 0.0, true);
  } catch (const InputError&) {
    return g;
  }
  const auto ly = logs(p.y);
  g.linear_rmse = least_squares(p.x, ly).rmse;
  g.logarithmic_rmse = least_squares(logs(p.x), ly).rmse;
  g.power = to_fit(p, least_squares(logs(p.x), ly));
  g.polynomial = g.logarithmic_rmse < g.linear_rmse;
  g.degree = g.power.slope;
  // Both shapes fit a short, nearly straight stretch; require a clear winner.
  const double lo = std::min(g.linear_rmse, g.logarithmic_rmse);
  const double hi = std::max(g.linear_rmse, g.logarithmic_rmse);
  g.conclusive = hi > 1.5 * lo || hi - lo > 1e-3;
  return g;
}

CscReport csc_check(const GrowthCurve& growth, const Series& profile, double slack, double growth_rmse_max) {
  CscReport r;
  r.slack = slack;
  try {
    r.growth_fit = fit_power(to_series(growth));
  } catch (const InputError& e) {
    r.reason = fmt::format("growth fit failed: {}", e.what());
    return r;
  }
  if (r.growth_fit.rmse > growth_rmse_max) {
    r.reason = fmt::format("growth fit rmse {:.4g} exceeds {:.4g}; growth is not a clean power law",
                           r.growth_fit.rmse, growth_rmse_max);
    return r;
  }
  if (r.growth_fit.slope <= 0) {
    r.reason = "growth degree is not positive";
    return r;
  }
  try {
    r.profile_fit = fit_power(profile);
  } catch (const InputError& e) {
    r.reason = fmt::format("profile fit failed: {}", e.what());
    return r;
  }
  r.bound = 1.0 / r.growth_fit.slope + slack;
  r.verdict = r.profile_fit.slope <= r.bound ? Verdict::Consistent : Verdict::Inconsistent;
  r.reason = fmt::format("profile exponent {:.4f} vs 1/D + slack = {:.4f}", r.profile_fit.slope, r.bound);
  return r;
}

ProductSepReport product_sep_exponent_check(int n, int d, const Series& sep, double tolerance) {
  if (n < 2 || d < 0) throw InputError(fmt::format("need n >= 2 and d >= 0, got n={} d={}", n, d));
  ProductSepReport r;
  r.n = n;
  r.d = d;
  r.tolerance = tolerance;
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (std::size_t i = 0; i < sep.size(); ++i)
    if (sep.y[i] > 0 && sep.x[i] > 1) {
      lo = std::min(lo, sep.x[i]);
      hi = std::max(hi, sep.x[i]);
    }
  if (!(hi >= 16 * lo)) {
    r.reason = "size range max/min below 16";
    return r;
  }
  try {
    if (n >= 3) {
      r.target_exponent = 1.0 - 1.0 / (d + n - 1);
      r.fitted_exponent = fit_power(sep).slope;
      r.deviation = std::abs(r.fitted_exponent - r.target_exponent);
      r.reason = fmt::format("power fit against v^(1-1/{})", d + n - 1);
    } else {
      r.comparison = compare_models(sep);
      if (d == 0) {
        // c v^a log v with a <= 0 covers the logarithmic profile and anything slower.
        r.target_exponent = 0.0;
        r.fitted_exponent = fit_mixed_fixed_beta(sep, 1.0).parameters[0];
        r.deviation = std::max(0.0, r.fitted_exponent);
        r.reason = "logarithmic target: exponent of v^a log v must not be positive";
      } else {
        r.target_exponent = 1.0 - 1.0 / d;
        const double beta = 1.0 / (d + 1);
        r.fitted_exponent = fit_mixed_fixed_beta(sep, beta).parameters[0];
        r.deviation = std::abs(r.fitted_exponent - r.target_exponent);
        r.reason = fmt::format("mixed fit with log power {:.4f}", beta);
      }
    }
  } catch (const InputError& e) {
    r.reason = fmt::format("fit failed: {}", e.what());
    return r;
  }
  r.verdict = r.deviation <= tolerance ? Verdict::Match : Verdict::Mismatch;
  return r;
}

}  // namespace coarse
