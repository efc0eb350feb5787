#include "coarse/pipeline.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "coarse/errors.hpp"
#include "coarse/families.hpp"
#include "coarse/isoperimetry.hpp"

namespace coarse {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const ResourceError& e) {
    throw ResourceError(fmt::format("stage {}: {}", name, e.what()));
  }
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ProfileCurve product_horosphere_sep(int n, int d, int side, std::size_t vertex_budget) {
  if (n < 2 || d < 0 || side < 1) throw InputError("need n >= 2, d >= 0, side >= 1");
  const int width = side + 2;
  Graph hyper = dyadic_hyperbolic_ball(n, 2, width, false, vertex_budget);
  Graph host = hyper;
  Label root_label;
  if (d > 0) {
    Graph flat = cayley_ball(SpaceSpec::zpower(d), d * side, vertex_budget);
    if (flat.vertex_count() * hyper.vertex_count() > vertex_budget)
      throw ResourceError(fmt::format("product host exceeds the vertex budget of {}", vertex_budget));
    host = cartesian_product(flat, hyper);
    root_label.assign(static_cast<std::size_t>(d), 0);
  }
  for (int i = 0; i < n - 1; ++i) root_label.push_back(width);  // middle of the 2*width bottom row
  root_label.push_back(0);
  auto root = LabelIndex(host).find(root_label);
  if (!root) throw InputError("product host lacks the horosphere root");

  SeparationOptions opts;
  opts.root = *root;
  opts.boxes.dims = static_cast<std::size_t>(d + n - 1);
  auto curve = separation_profile(host, {ipow(static_cast<std::size_t>(side), d + n - 1)}, SepStrategy::FamilyBoxes, opts);
  curve.source = fmt::format("zpower{} x dyadic{} horosphere boxes", d, n);
  return curve;
}

PipelineData pipeline_data(const PipelineConfig& config) {
  config.group.validate();
  if (!config.group.is_group()) throw InputError("pipeline needs a group spec");
  PipelineData data;
  data.growth = stage("growth", [&] { return growth_function(config.group, config.growth_radius, config.vertex_budget); });
  const Graph host =
      stage("profile host", [&] { return cayley_ball(config.group, config.profile_radius, config.vertex_budget); });
  data.j = stage("isoperimetry", [&] {
    FamilyOptions fo;
    return family_isoperimetric_lowerbound(host, SetFamily::Balls, fo);
  });
  data.sep = stage("separation", [&] {
    std::vector<std::size_t> sizes;
    for (const auto& p : data.j.points) sizes.push_back(p.size);
    if (sizes.empty()) sizes.push_back(1);
    return separation_profile(host, sizes, SepStrategy::FamilyBalls);
  });
  const std::string source = to_string(config.group.kind);
  data.j.source = source;
  data.sep.source = source;
  if (config.product_checks)
    for (const auto& t : config.targets)
      data.product_sep.push_back(stage("product separation", [&] {
        return product_horosphere_sep(t.n, t.d, config.product_side, config.vertex_budget);
      }));
  return data;
}

PipelineResult evaluate_pipeline(const PipelineConfig& config, const PipelineData& data) {
  PipelineResult r;
  double lo = 0;
  if (config.growth_window_lo) lo = *config.growth_window_lo;
  else if (!data.growth.radii.empty()) lo = std::floor(data.growth.radii.back() / 2.0);
  r.growth_window.lo = lo;
  r.growth = classify_growth(data.growth, r.growth_window);
  r.csc = csc_check(data.growth, to_series(data.j), config.csc_slack);
  if (!data.j.points.empty() && !data.sep.points.empty())
    r.lcg = lcg_inequality_report(data.j, data.sep, config.lcg_tolerance);
  else
    r.lcg.notes.push_back("empty curve");

  for (std::size_t i = 0; i < config.targets.size(); ++i) {
    const auto t = config.targets[i];
    TargetVerdict v;
    v.target = t;
    v.bound = t.n + t.d - 1;
    if (!r.growth.conclusive) {
      v.verdict = Verdict::Inconclusive;
      v.reason = "growth shape could not be classified";
    } else if (!r.growth.polynomial) {
      v.verdict = Verdict::Excluded;
      v.reason = "growth is not polynomial: no degree bound can hold";
    } else if (r.growth.degree <= v.bound + config.degree_tolerance) {
      v.verdict = Verdict::Admissible;
      v.reason = fmt::format("fitted degree {:.4f} <= {} + {:.2f}", r.growth.degree, v.bound, config.degree_tolerance);
    } else {
      v.verdict = Verdict::Excluded;
      v.reason = fmt::format("fitted degree {:.4f} > {} + {:.2f}", r.growth.degree, v.bound, config.degree_tolerance);
    }
    if (i < data.product_sep.size())
      v.product = product_sep_exponent_check(t.n, t.d, to_series(data.product_sep[i]), config.exponent_tolerance);
    r.targets.push_back(std::move(v));
  }
  return r;
}

PipelineResult theorem_pipeline(const PipelineConfig& config) {
  return evaluate_pipeline(config, pipeline_data(config));
}

void write_pipeline_report(std::ostream& out, const PipelineConfig& config, const PipelineResult& r) {
  out << "coarse pipeline report\n";
  out << "finite-scale evidence, not proof\n\n";
  out << "[group]\n";
  out << "kind = " << to_string(config.group.kind) << '\n';
  out << "growth_radius = " << config.growth_radius << '\n';
  out << "profile_radius = " << config.profile_radius << "\n\n";

  out << "[growth]\n";
  if (r.growth.power.point_count == 0) {
    out << "verdict = inconclusive\n\n";
  } else {
    out << "shape = " << (r.growth.polynomial ? "polynomial" : "exponential") << '\n';
    out << "conclusive = " << (r.growth.conclusive ? "yes" : "no") << '\n';
    out << fmt::format("degree = {:.6f}\n", r.growth.degree);
    out << fmt::format("linear_rmse = {:.6g}\n", r.growth.linear_rmse);
    out << fmt::format("logarithmic_rmse = {:.6g}\n", r.growth.logarithmic_rmse);
    out << fmt::format("window = [{:g}, {:g}] ({} points)\n\n", r.growth.power.v_min, r.growth.power.v_max,
                       r.growth.power.point_count);
  }

  out << "[csc]\n";
  out << "verdict = " << to_string(r.csc.verdict) << '\n';
  if (r.csc.verdict != Verdict::Inconclusive) {
    out << fmt::format("growth_degree = {:.6f}\n", r.csc.growth_fit.slope);
    out << fmt::format("profile_exponent = {:.6f}\n", r.csc.profile_fit.slope);
    out << fmt::format("bound = {:.6f} (slack {:.2f})\n", r.csc.bound, r.csc.slack);
  }
  out << "reason = " << r.csc.reason << "\n\n";

  write_lcg_report(out, r.lcg);
  out << '\n';

  for (const auto& t : r.targets) {
    out << fmt::format("[target n={} d={}]\n", t.target.n, t.target.d);
    if (r.growth.power.point_count > 0)
      out << fmt::format("growth degree d′ vs n+d−1 = {:.4f} vs {}\n", r.growth.degree, t.bound);
    else
      out << fmt::format("growth degree d′ vs n+d−1 = n/a vs {}\n", t.bound);
    out << "verdict = " << to_string(t.verdict) << '\n';
    out << "reason = " << t.reason << '\n';
    if (t.product) {
      const auto& p = *t.product;
      out << "product_sep_verdict = " << to_string(p.verdict) << '\n';
      out << fmt::format("product_sep_target = {:.6f}\n", p.target_exponent);
      out << fmt::format("product_sep_fitted = {:.6f}\n", p.fitted_exponent);
      out << fmt::format("product_sep_deviation = {:.6f} (tolerance {:.2f})\n", p.deviation, p.tolerance);
      if (p.comparison) out << "product_sep_best_model = " << to_string(p.comparison->candidates[p.comparison->winner].model) << '\n';
      out << "product_sep_reason = " << p.reason << '\n';
    }
    out << '\n';
  }
}

void write_pipeline_fits_csv(std::ostream& out, const PipelineResult& r) {
  out << "stage,quantity,value\n";
  auto row = [&](const std::string& s, const std::string& q, double v) { out << fmt::format("{},{},{:.9g}\n", s, q, v); };
  row("growth", "degree", r.growth.degree);
  row("growth", "linear_rmse", r.growth.linear_rmse);
  row("growth", "logarithmic_rmse", r.growth.logarithmic_rmse);
  row("csc", "growth_degree", r.csc.growth_fit.slope);
  row("csc", "profile_exponent", r.csc.profile_fit.slope);
  row("csc", "bound", r.csc.bound);
  row("lcg", "log_ratio_slope", r.lcg.log_ratio_slope);
  row("lcg", "max_ratio", r.lcg.max_ratio);
  for (const auto& t : r.targets) {
    const std::string s = fmt::format("target_n{}_d{}", t.target.n, t.target.d);
    row(s, "bound", t.bound);
    if (t.product) {
      row(s, "product_sep_target", t.product->target_exponent);
      row(s, "product_sep_fitted", t.product->fitted_exponent);
      row(s, "product_sep_deviation", t.product->deviation);
    }
  }
}

void write_growth_csv(std::ostream& out, const GrowthCurve& g) {
  out << "# truncated=" << (g.truncated ? "true" : "false") << '\n';
  out << "radius,count\n";
  for (std::size_t i = 0; i < g.radii.size(); ++i) out << g.radii[i] << ',' << g.counts[i] << '\n';
}

GrowthCurve read_growth_csv(std::istream& in) {
  GrowthCurve g;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line == "# truncated=true") g.truncated = true;
      continue;
    }
    if (!header) {
      if (line != "radius,count") throw ParseError("expected header 'radius,count'", line_no, 1);
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(line);
      std::size_t used = 0;
      const int r = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(line);
      const std::string rest = line.substr(comma + 1);
      const unsigned long long c = std::stoull(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(line);
      g.radii.push_back(r);
      g.counts.push_back(c);
    } catch (const std::logic_error&) {
      throw ParseError("expected 'radius,count' integers", line_no, 1);
    }
  }
  if (!header) throw ParseError("missing header 'radius,count'", line_no + 1, 1);
  return g;
}

}  // namespace coarse
