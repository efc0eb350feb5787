#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/isoperimetry.hpp"
#include "coarse/profile.hpp"
#include "coarse/regmap.hpp"
#include "coarse/separation.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;

namespace coarse::cli {

namespace {

const std::vector<std::string> kKinds = {"generate", "growth", "iso", "sep", "regmap", "embed", "pipeline"};

bool needs_space(const std::string& kind) { return kind != "regmap" && kind != "embed"; }

std::vector<PipelineTarget> parse_targets(const ConfigEntry& e) {
  std::vector<PipelineTarget> out;
  std::string v = e.value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) {
    const auto colon = tok.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(tok);
      out.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw ParseError(fmt::format("target '{}' is not of the form n:d", tok), e.line, e.column);
    }
    if (out.back().n < 2 || out.back().d < 0)
      throw ParseError(fmt::format("target '{}' needs n >= 2 and d >= 0", tok), e.line, e.column);
  }
  if (out.empty()) throw ParseError("targets list is empty", e.line, e.column);
  return out;
}

std::string targets_text(const std::vector<PipelineTarget>& t) {
  std::vector<std::string> parts;
  for (auto x : t) parts.push_back(fmt::format("{}:{}", x.n, x.d));
  return fmt::format("{}", fmt::join(parts, ", "));
}

template <typename T>
T positive(const ConfigSection& s, const char* key, T fallback) {
  const auto v = s.get_int(key, static_cast<std::int64_t>(fallback));
  if (v <= 0) {
    const auto& e = s.require(key);
    throw ParseError(fmt::format("key '{}' must be positive", key), e.line, e.column);
  }
  return static_cast<T>(v);
}

std::string path_value(const ConfigSection& s, const char* key, const fs::path& base) {
  fs::path p = s.get(key);
  if (p.is_relative()) p = base / p;
  return fs::absolute(p).lexically_normal().string();
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open graph file '{}'", path));
  return read_graph(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Experiment experiment_from_config(const ConfigDoc& doc, const fs::path& base) {
  for (const auto& s : doc.sections) {
    static const std::vector<std::string> known = {"experiment", "budget", "space", "growth", "iso", "sep",
                                                   "regmap",     "embed",  "pipeline", "manifest"};
    if (std::find(known.begin(), known.end(), s.name) == known.end())
      throw ParseError(fmt::format("unknown section {}", s.title()), s.line, 1);
    if (s.name == "space" && s.arg.empty()) throw ParseError("[space] needs a name: [space NAME]", s.line, 1);
  }
  Experiment e;
  const auto& ex = doc.require("experiment");
  ex.only({"kind", "name", "seed", "space", "out", "root", "root_label", "threads"});
  const auto& kind = ex.require("kind");
  if (std::find(kKinds.begin(), kKinds.end(), kind.value) == kKinds.end())
    throw ParseError(fmt::format("unknown experiment kind '{}'", kind.value), kind.line, kind.column);
  e.kind = kind.value;
  e.name = ex.get("name", e.kind);
  e.seed = static_cast<std::uint64_t>(ex.get_int("seed", 1));
  e.threads = positive<unsigned>(ex, "threads", 1);
  if (ex.has("out")) {
    fs::path p = ex.get("out");
    e.out = p.is_relative() ? base / p : p;
  }
  if (ex.has("root")) e.root = static_cast<Vertex>(ex.get_int("root"));
  if (ex.has("root_label")) {
    auto v = ex.get_ints("root_label");
    e.root_label = Label(v.begin(), v.end());
  }
  if (needs_space(e.kind)) {
    e.space_name = ex.get("space");
    const auto& ref = ex.require("space");
    if (!doc.find("space", e.space_name))
      throw ParseError(fmt::format("space '{}' names no [space {}] section", e.space_name, e.space_name), ref.line,
                       ref.column);
    e.space = space_from_config(doc, e.space_name);
  }

  if (auto b = doc.find("budget")) {
    b->only({"vertices", "subset", "sep", "subgraphs", "pairs"});
    e.vertex_budget = positive<std::size_t>(*b, "vertices", e.vertex_budget);
    e.subset_budget = positive<std::size_t>(*b, "subset", e.subset_budget);
    e.sep_budget = positive<std::size_t>(*b, "sep", e.sep_budget);
    e.subgraph_budget = positive<std::uint64_t>(*b, "subgraphs", e.subgraph_budget);
    e.pair_budget = positive<std::uint64_t>(*b, "pairs", e.pair_budget);
  }

  if (e.kind == "growth") {
    const auto& s = doc.require("growth");
    s.only({"max_radius"});
    e.max_radius = static_cast<int>(s.get_int("max_radius"));
  } else if (e.kind == "iso") {
    const auto& s = doc.require("iso");
    s.only({"method", "max_size", "rooted", "complement_cap", "box_dims"});
    e.iso_method = s.get("method", "exact");
    if (e.iso_method != "exact") {
      try {
        set_family_from_string(e.iso_method);
      } catch (const InputError& err) {
        throw ParseError(err.what(), s.require("method").line, s.require("method").column);
      }
    }
    e.max_size = positive<std::size_t>(s, "max_size", e.max_size);
    e.rooted = s.get_bool("rooted", false);
    e.complement_cap = s.get_bool("complement_cap", false);
    e.box_dims = static_cast<std::size_t>(s.get_int("box_dims", 0));
  } else if (e.kind == "sep") {
    const auto& s = doc.require("sep");
    s.only({"strategy", "max_size", "sizes", "rooted", "box_dims"});
    e.sep_strategy = s.get("strategy", e.sep_strategy);
    try {
      sep_strategy_from_string(e.sep_strategy);
    } catch (const InputError& err) {
      throw ParseError(err.what(), s.require("strategy").line, s.require("strategy").column);
    }
    e.max_size = positive<std::size_t>(s, "max_size", e.max_size);
    if (s.has("sizes"))
      for (auto v : s.get_ints("sizes")) {
        if (v <= 0) throw ParseError("sizes must be positive", s.require("sizes").line, s.require("sizes").column);
        e.sizes.push_back(static_cast<std::size_t>(v));
      }
    e.rooted = s.get_bool("rooted", false);
    e.box_dims = static_cast<std::size_t>(s.get_int("box_dims", 0));
  } else if (e.kind == "regmap") {
    const auto& s = doc.require("regmap");
    s.only({"domain", "codomain", "map"});
    e.domain_graph = path_value(s, "domain", base);
    e.codomain_graph = path_value(s, "codomain", base);
    e.map_file = path_value(s, "map", base);
  } else if (e.kind == "embed") {
    const auto& s = doc.require("embed");
    s.only({"n", "d", "radius", "width", "levels"});
    e.embed_n = static_cast<int>(s.get_int("n", 2));
    e.embed_d = static_cast<int>(s.get_int("d", 0));
    e.embed_radius = static_cast<int>(s.get_int("radius"));
    e.embed_width = positive<int>(s, "width", 1);
    if (s.has("levels")) e.embed_levels = static_cast<int>(s.get_int("levels"));
  } else if (e.kind == "pipeline") {
    const auto& s = doc.require("pipeline");
    s.only({"targets", "growth_radius", "growth_window_lo", "profile_radius", "product_side", "product_checks",
            "degree_tolerance", "lcg_tolerance", "csc_slack", "exponent_tolerance"});
    auto& p = e.pipeline;
    p.group = *e.space;
    p.targets = parse_targets(s.require("targets"));
    p.growth_radius = positive<int>(s, "growth_radius", p.growth_radius);
    if (s.has("growth_window_lo")) p.growth_window_lo = s.get_double("growth_window_lo", 0);
    p.profile_radius = positive<int>(s, "profile_radius", p.profile_radius);
    p.product_side = positive<int>(s, "product_side", p.product_side);
    p.product_checks = s.get_bool("product_checks", p.product_checks);
    p.degree_tolerance = s.get_double("degree_tolerance", p.degree_tolerance);
    p.lcg_tolerance = s.get_double("lcg_tolerance", p.lcg_tolerance);
    p.csc_slack = s.get_double("csc_slack", p.csc_slack);
    p.exponent_tolerance = s.get_double("exponent_tolerance", p.exponent_tolerance);
    p.vertex_budget = e.vertex_budget;
  }
  return e;
}

void write_experiment_config(std::ostream& out, const Experiment& e) {
  out << "[experiment]\n";
  out << "kind = " << e.kind << '\n';
  out << "name = " << e.name << '\n';
  out << "seed = " << e.seed << '\n';
  if (needs_space(e.kind)) out << "space = " << e.space_name << '\n';
  if (e.root) out << "root = " << *e.root << '\n';
  if (e.root_label) out << "root_label = " << fmt::format("{}", fmt::join(*e.root_label, " ")) << '\n';
  out << "threads = " << e.threads << "\n\n";

  out << "[budget]\n";
  out << "vertices = " << e.vertex_budget << '\n';
  out << "subset = " << e.subset_budget << '\n';
  out << "sep = " << e.sep_budget << '\n';
  out << "subgraphs = " << e.subgraph_budget << '\n';
  out << "pairs = " << e.pair_budget << "\n\n";

  auto yes = [](bool b) { return b ? "true" : "false"; };
  if (e.kind == "growth") {
    out << "[growth]\nmax_radius = " << e.max_radius << "\n\n";
  } else if (e.kind == "iso") {
    out << "[iso]\nmethod = " << e.iso_method << "\nmax_size = " << e.max_size << "\nrooted = " << yes(e.rooted)
        << "\ncomplement_cap = " << yes(e.complement_cap) << "\nbox_dims = " << e.box_dims << "\n\n";
  } else if (e.kind == "sep") {
    out << "[sep]\nstrategy = " << e.sep_strategy << "\nmax_size = " << e.max_size << '\n';
    if (!e.sizes.empty()) out << "sizes = " << fmt::format("{}", fmt::join(e.sizes, ", ")) << '\n';
    out << "rooted = " << yes(e.rooted) << "\nbox_dims = " << e.box_dims << "\n\n";
  } else if (e.kind == "regmap") {
    out << "[regmap]\ndomain = " << e.domain_graph << "\ncodomain = " << e.codomain_graph << "\nmap = " << e.map_file
        << "\n\n";
  } else if (e.kind == "embed") {
    out << "[embed]\nn = " << e.embed_n << "\nd = " << e.embed_d << "\nradius = " << e.embed_radius
        << "\nwidth = " << e.embed_width << '\n';
    if (e.embed_levels) out << "levels = " << *e.embed_levels << '\n';
    out << '\n';
  } else if (e.kind == "pipeline") {
    const auto& p = e.pipeline;
    out << "[pipeline]\n";
    out << "targets = " << targets_text(p.targets) << '\n';
    out << "growth_radius = " << p.growth_radius << '\n';
    if (p.growth_window_lo) out << fmt::format("growth_window_lo = {:g}\n", *p.growth_window_lo);
    out << "profile_radius = " << p.profile_radius << '\n';
    out << "product_side = " << p.product_side << '\n';
    out << "product_checks = " << yes(p.product_checks) << '\n';
    out << fmt::format("degree_tolerance = {:g}\nlcg_tolerance = {:g}\ncsc_slack = {:g}\nexponent_tolerance = {:g}\n\n",
                       p.degree_tolerance, p.lcg_tolerance, p.csc_slack, p.exponent_tolerance);
  }
  if (needs_space(e.kind) && e.space) write_space_config(out, *e.space, e.space_name);
}

namespace {

Vertex resolve_root(const Experiment& e, const Graph& g) {
  if (e.root_label) {
    auto v = LabelIndex(g).find(*e.root_label);
    if (!v) throw InputError(fmt::format("no vertex carries root label ({})", fmt::join(*e.root_label, " ")));
    return *v;
  }
  const Vertex r = e.root.value_or(0);
  if (r >= g.vertex_count()) throw InputError(fmt::format("root {} out of range", r));
  return r;
}

std::string source_of(const Experiment& e) {
  return e.space ? fmt::format("{}:{}", e.space_name, to_string(e.space->kind)) : e.name;
}

std::string profile_csv(ProfileCurve curve, const Experiment& e) {
  curve.source = source_of(e);
  curve.notes.insert(curve.notes.begin(), fmt::format("seed={}", e.seed));
  std::ostringstream out;
  write_profile_csv(out, curve);
  return out.str();
}

std::string witnesses_text(const ProfileCurve& curve) {
  std::ostringstream out;
  write_witnesses(out, curve);
  return out.str();
}

std::string profile_svg(const ProfileCurve& curve, const std::string& title) {
  const Series s = to_series(curve);
  std::ostringstream out;
  write_loglog_svg(out, title, "size v", curve.kind == ProfileKind::Isoperimetric ? "j(v)" : "sep(v)",
                   {{to_string(curve.kind), s.x, s.y}});
  return out.str();
}

std::string growth_csv(const GrowthCurve& g, std::uint64_t seed) {
  std::ostringstream out;
  out << "# seed=" << seed << '\n';
  write_growth_csv(out, g);
  return out.str();
}

std::string growth_svg(const GrowthCurve& g) {
  const Series s = to_series(g);
  std::ostringstream out;
  write_loglog_svg(out, "growth", "radius r", "ball size", {{"growth", s.x, s.y}});
  return out.str();
}

std::string describe_growth(const GrowthCurve& g, const FitWindow& w) {
  std::ostringstream out;
  const auto c = classify_growth(g, w);
  out << "[growth]\n";
  out << "radii = " << g.radii.size() << '\n';
  out << "truncated = " << (g.truncated ? "true" : "false") << '\n';
  if (c.power.point_count == 0) {
    out << "verdict = inconclusive\n";
    return out.str();
  }
  out << "shape = " << (c.polynomial ? "polynomial" : "exponential") << '\n';
  out << "conclusive = " << (c.conclusive ? "yes" : "no") << '\n';
  if (c.polynomial) out << fmt::format("degree = {:.6f}\n", c.degree);
  out << fmt::format("linear_rmse = {:.6g}\nlogarithmic_rmse = {:.6g}\n", c.linear_rmse, c.logarithmic_rmse);
  return out.str();
}

std::string describe_profile(const std::string& name, const ProfileCurve& curve) {
  std::ostringstream out;
  out << "[" << name << "]\n";
  out << "kind = " << to_string(curve.kind) << '\n';
  out << "source = " << curve.source << '\n';
  out << "points = " << curve.points.size() << '\n';
  if (curve.points.empty()) {
    out << "verdict = inconclusive\n";
    return out.str();
  }
  const auto& last = curve.points.back();
  out << fmt::format("last = {} -> {}/{} ({})\n", last.size, last.value.numerator(), last.value.denominator(),
                     to_string(last.certificate));
  try {
    const auto f = fit_power(to_series(curve));
    out << fmt::format("power_fit = slope {:.6f}, rmse {:.6g}, window [{:g}, {:g}], {} points\n", f.slope, f.rmse,
                       f.v_min, f.v_max, f.point_count);
  } catch (const InputError& err) {
    out << "power_fit = inconclusive (" << err.what() << ")\n";
  }
  return out.str();
}

}  // namespace

std::vector<Artifact> execute(const Experiment& e) {
  std::vector<Artifact> out;
  SpectralOptions spectral;
  spectral.seed = e.seed;

  if (e.kind == "generate") {
    const Graph g = build_space(*e.space, e.vertex_budget);
    std::ostringstream gs;
    write_graph(gs, g);
    out.push_back({"graph.txt", gs.str()});
    const auto problems = validate(g);
    std::ostringstream ss;
    ss << "vertices = " << g.vertex_count() << '\n';
    ss << "edges = " << g.edge_count() << '\n';
    ss << "max_degree = " << g.max_degree() << '\n';
    ss << "degree_bound = " << (g.degree_bound() ? std::to_string(*g.degree_bound()) : "none") << '\n';
    ss << "connected = " << (is_connected(g) ? "true" : "false") << '\n';
    ss << "valid = " << (problems.empty() ? "true" : "false") << '\n';
    for (const auto& p : problems) ss << "problem = " << p << '\n';
    out.push_back({"summary.txt", ss.str()});
  } else if (e.kind == "growth") {
    const auto g = growth_function(*e.space, e.max_radius, e.vertex_budget);
    out.push_back({"growth.csv", growth_csv(g, e.seed)});
    out.push_back({"growth.svg", growth_svg(g)});
    out.push_back({"summary.txt", describe_growth(g, {})});
  } else if (e.kind == "iso") {
    const Graph g = build_space(*e.space, e.vertex_budget);
    const Vertex root = resolve_root(e, g);
    ProfileCurve curve;
    if (e.iso_method == "exact") {
      ExactProfileOptions o;
      o.size_budget = e.subset_budget;
      if (e.rooted) o.root = root;
      o.complement_cap = e.complement_cap;
      o.threads = e.threads;
      curve = exact_isoperimetric_profile(g, e.max_size, o);
    } else {
      FamilyOptions o;
      o.root = root;
      o.boxes.dims = e.box_dims;
      o.max_size = e.max_size;
      curve = family_isoperimetric_lowerbound(g, set_family_from_string(e.iso_method), o);
    }
    out.push_back({"profile.csv", profile_csv(curve, e)});
    out.push_back({"profile.svg", profile_svg(curve, "isoperimetric profile")});
    out.push_back({"witnesses.txt", witnesses_text(curve)});
  } else if (e.kind == "sep") {
    const Graph g = build_space(*e.space, e.vertex_budget);
    SeparationOptions o;
    o.root = resolve_root(e, g);
    o.rooted = e.rooted;
    o.exact_size_budget = e.sep_budget;
    o.max_subgraphs = e.subgraph_budget;
    o.boxes.dims = e.box_dims;
    o.spectral = spectral;
    std::vector<std::size_t> sizes = e.sizes;
    if (sizes.empty())
      for (std::size_t s = 1; s <= e.max_size; ++s) sizes.push_back(s);
    const auto curve = separation_profile(g, sizes, sep_strategy_from_string(e.sep_strategy), o);
    out.push_back({"profile.csv", profile_csv(curve, e)});
    out.push_back({"profile.svg", profile_svg(curve, "separation profile")});
    out.push_back({"witnesses.txt", witnesses_text(curve)});
  } else if (e.kind == "regmap" || e.kind == "embed") {
    FiniteGraphMap map;
    if (e.kind == "regmap") {
      auto dom = std::make_shared<const Graph>(load_graph(e.domain_graph));
      auto cod = std::make_shared<const Graph>(load_graph(e.codomain_graph));
      std::ifstream in(e.map_file);
      if (!in) throw InputError(fmt::format("cannot open map file '{}'", e.map_file));
      map = read_map(in, dom, cod);
    } else {
      HorosphericalOptions ho;
      ho.levels = e.embed_levels;
      ho.width = e.embed_width;
      map = horospherical_embedding(e.embed_n, e.embed_d, e.embed_radius, ho);
      std::ostringstream ms;
      write_map(ms, map);
      out.push_back({"map.txt", ms.str()});
    }
    RegmapOptions ro;
    ro.pair_budget = e.pair_budget;
    ro.threads = e.threads;
    const auto report = verify_regular(map, ro);
    std::ostringstream rs;
    rs << "# seed=" << e.seed << '\n';
    rs << "# domain=" << map.domain_id << '\n';
    rs << "# codomain=" << map.codomain_id << '\n';
    write_regmap_report(rs, report);
    out.push_back({"report.csv", rs.str()});
    PlotSeries ps{"rho_minus", {}, {}};
    for (auto [t, rho] : report.compression) {
      ps.x.push_back(static_cast<double>(t));
      ps.y.push_back(static_cast<double>(rho));
    }
    std::ostringstream svg;
    write_loglog_svg(svg, "compression", "domain distance t", "rho_minus(t)", {ps});
    out.push_back({"compression.svg", svg.str()});
  } else if (e.kind == "pipeline") {
    const auto data = pipeline_data(e.pipeline);
    const auto result = evaluate_pipeline(e.pipeline, data);
    out.push_back({"growth.csv", growth_csv(data.growth, e.seed)});
    out.push_back({"growth.svg", growth_svg(data.growth)});
    out.push_back({"j.csv", profile_csv(data.j, e)});
    out.push_back({"sep.csv", profile_csv(data.sep, e)});
    for (std::size_t i = 0; i < data.product_sep.size(); ++i) {
      const auto t = e.pipeline.targets[i];
      ProfileCurve c = data.product_sep[i];
      c.notes.insert(c.notes.begin(), fmt::format("seed={}", e.seed));
      std::ostringstream cs;
      write_profile_csv(cs, c);
      out.push_back({fmt::format("product_sep_n{}_d{}.csv", t.n, t.d), cs.str()});
    }
    std::ostringstream rep, fits;
    write_pipeline_report(rep, e.pipeline, result);
    fits << "# seed=" << e.seed << '\n';
    write_pipeline_fits_csv(fits, result);
    out.push_back({"report.txt", rep.str()});
    out.push_back({"fits.csv", fits.str()});
  } else {
    throw InputError(fmt::format("unknown experiment kind '{}'", e.kind));
  }
  std::sort(out.begin(), out.end(), [](const Artifact& a, const Artifact& b) { return a.name < b.name; });
  return out;
}

std::string manifest_text(const Experiment& e, const std::vector<Artifact>& artifacts) {
  std::ostringstream out;
  out << "# Re-runnable: coarse_cli run manifest.txt --out <new dir>\n";
  write_experiment_config(out, e);
  out << "[manifest]\n";
  out << "version = " << kVersion << '\n';
  std::vector<std::string> names;
  for (const auto& a : artifacts) names.push_back(a.name);
  out << "artifacts = " << fmt::format("{}", fmt::join(names, ", ")) << '\n';
  return out.str();
}

void write_run(const fs::path& dir, const Experiment& e, const std::vector<Artifact>& artifacts) {
  if (fs::exists(dir) && (!fs::is_directory(dir) || !fs::is_empty(dir)))
    throw InputError(fmt::format("refusing to write into non-empty run directory '{}'", dir.string()));
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    f << content;
    if (!f) throw Error(fmt::format("failed to write '{}'", (dir / name).string()));
  };
  for (const auto& a : artifacts) put(a.name, a.content);
  put("manifest.txt", manifest_text(e, artifacts));
}

std::string render_report(const fs::path& run_dir) {
  const fs::path manifest = run_dir / "manifest.txt";
  if (!fs::exists(manifest)) throw ParseError(fmt::format("no manifest.txt in '{}'", run_dir.string()), 1, 1);
  std::istringstream min(slurp(manifest));
  const ConfigDoc doc = parse_config(min);
  const Experiment e = experiment_from_config(doc, run_dir);
  std::vector<std::string> artifacts;
  if (auto m = doc.find("manifest"); m && m->has("artifacts")) {
    std::string list = m->get("artifacts");
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream in(list);
    std::string a;
    while (in >> a) artifacts.push_back(a);
  }
  auto present = [&](const std::string& name) {
    return std::find(artifacts.begin(), artifacts.end(), name) != artifacts.end() && fs::exists(run_dir / name);
  };
  auto load_profile = [&](const std::string& name) {
    std::istringstream in(slurp(run_dir / name));
    return read_profile_csv(in);
  };
  auto load_growth = [&]() {
    std::istringstream in(slurp(run_dir / "growth.csv"));
    return read_growth_csv(in);
  };

  std::ostringstream out;
  out << "run summary\n";
  out << "kind = " << e.kind << '\n';
  out << "name = " << e.name << '\n';
  out << "seed = " << e.seed << "\n\n";
  if (e.kind == "pipeline") {
    PipelineData data;
    if (present("growth.csv")) data.growth = load_growth();
    data.j.kind = ProfileKind::Isoperimetric;
    data.sep.kind = ProfileKind::Separation;
    if (present("j.csv")) data.j = load_profile("j.csv");
    if (present("sep.csv")) data.sep = load_profile("sep.csv");
    PipelineConfig cfg = e.pipeline;
    cfg.product_checks = false;
    for (const auto& t : cfg.targets) {
      const std::string name = fmt::format("product_sep_n{}_d{}.csv", t.n, t.d);
      if (present(name)) data.product_sep.push_back(load_profile(name));
      else break;
    }
    write_pipeline_report(out, cfg, evaluate_pipeline(cfg, data));
    return out.str();
  }
  for (const auto& a : artifacts) {
    if (!fs::exists(run_dir / a)) {
      out << "[" << a << "]\nverdict = inconclusive (artifact missing)\n\n";
      continue;
    }
    if (a == "growth.csv") {
      out << describe_growth(load_growth(), {}) << '\n';
    } else if (a == "profile.csv") {
      out << describe_profile(a, load_profile(a)) << '\n';
    } else if (a == "report.csv" || a == "summary.txt") {
      out << "[" << a << "]\n";
      std::istringstream in(slurp(run_dir / a));
      std::string line;
      while (std::getline(in, line))
        if (a == "summary.txt" || line.rfind("# ", 0) == 0) out << (a == "summary.txt" ? line : line.substr(2)) << '\n';
      if (a == "report.csv") {
        std::istringstream again(slurp(run_dir / a));
        std::size_t rows = 0;
        while (std::getline(again, line))
          if (!line.empty() && line[0] != '#' && line != "t,rho_minus") ++rows;
        out << "compression_samples = " << rows << '\n';
        if (rows == 0) out << "verdict = inconclusive\n";
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

struct SpaceFlags {
  std::string kind;
  int dim = 1;
  int n = 2;
  std::vector<std::int64_t> q;
  int radius = 0;
  int levels = 1;
  int width = 1;
  bool wrap = false;
  int depth = 0;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "space kind: zpower, heisenberg, lamplighter, free, polycyclic, dyadic")->required();
    app->add_option("--dim", dim, "d for zpower, rank for free");
    app->add_option("--n", n, "n for polycyclic and dyadic");
    app->add_option("--q", q, "matrix Q as a b c d")->expected(4);
    app->add_option("--radius", radius, "ball radius for group kinds");
    app->add_option("--levels", levels, "dyadic levels");
    app->add_option("--width", width, "dyadic width");
    app->add_flag("--wrap", wrap, "dyadic horizontal wrap-around");
  }

  SpaceSpec spec() const {
    SpaceSpec s;
    switch (space_kind_from_string(kind)) {
      case SpaceKind::ZPower: s = SpaceSpec::zpower(dim, radius); break;
      case SpaceKind::Heisenberg: s = SpaceSpec::heisenberg(radius); break;
      case SpaceKind::Lamplighter: s = SpaceSpec::lamplighter(radius); break;
      case SpaceKind::FreeGroup: s = SpaceSpec::free_group(dim, radius); break;
      case SpaceKind::PolycyclicLambda: {
        Matrix2 m;
        if (!q.empty()) m = {q[0], q[1], q[2], q[3]};
        s = SpaceSpec::polycyclic_lambda(n, m, radius);
        break;
      }
      case SpaceKind::DyadicHyperbolic: s = SpaceSpec::dyadic_hyperbolic(n, levels, width, wrap); break;
      case SpaceKind::Product:
      case SpaceKind::Horoball: throw InputError("products and horoballs are described in config files; use 'run'");
    }
    s.validate();
    return s;
  }
};

struct Shared {
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;

  void add(CLI::App* app) {
    app->add_option("--budget-vertices", budget, "vertex budget for generated graphs");
    app->add_option("--seed", seed, "seed recorded in every artifact and used by spectral solvers");
    app->add_option("--out", out, "run directory (default: $COARSE_OUT_ROOT/<name> or runs/<name>)");
  }

  void apply(Experiment& e) const {
    if (budget) {
      e.vertex_budget = *budget;
      e.pipeline.vertex_budget = *budget;
    }
    if (seed) e.seed = *seed;
    if (out) e.out = fs::path(*out);
  }
};

fs::path run_dir_for(const Experiment& e) {
  if (e.out) return *e.out;
  if (const char* root = std::getenv("COARSE_OUT_ROOT"); root && *root) return fs::path(root) / e.name;
  return fs::path("runs") / e.name;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coarse-geometry laboratory: graph models, profiles, regular maps and inequality checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Experiment e;
  Shared shared;
  SpaceFlags space;
  std::string config_path, report_dir;
  std::vector<std::string> targets;
  std::vector<std::size_t> sizes;
  bool no_product = false;
  std::optional<Vertex> root;
  std::vector<std::int64_t> root_label;

  auto with_space = [&](CLI::App* sub) {
    space.add(sub);
    shared.add(sub);
    sub->add_option("--root", root, "root vertex index");
    sub->add_option("--root-label", root_label, "root vertex label");
    sub->add_option("--threads", e.threads, "worker threads");
  };

  auto* gen = app.add_subcommand("generate", "build a space and write it in the graph file format");
  with_space(gen);
  auto* growth = app.add_subcommand("growth", "growth function of a group");
  with_space(growth);
  growth->add_option("--max-radius", e.max_radius)->required();
  auto* iso = app.add_subcommand("iso", "isoperimetric profile");
  with_space(iso);
  iso->add_option("--method", e.iso_method, "exact, balls, boxes or sublevel");
  iso->add_option("--max-size", e.max_size);
  iso->add_flag("--rooted", e.rooted, "enumerate only sets through the root");
  iso->add_flag("--complement-cap", e.complement_cap);
  iso->add_option("--subset-budget", e.subset_budget);
  iso->add_option("--box-dims", e.box_dims);
  auto* sep = app.add_subcommand("sep", "separation profile");
  with_space(sep);
  sep->add_option("--strategy", e.sep_strategy, "exact_tiny, family_balls, family_spectral or family_boxes");
  sep->add_option("--max-size", e.max_size);
  sep->add_option("--sizes", sizes);
  sep->add_flag("--rooted", e.rooted);
  sep->add_option("--box-dims", e.box_dims);
  auto* reg = app.add_subcommand("regmap", "verify a map between two graph files");
  shared.add(reg);
  reg->add_option("--domain", e.domain_graph)->required();
  reg->add_option("--codomain", e.codomain_graph)->required();
  reg->add_option("--map", e.map_file)->required();
  reg->add_option("--threads", e.threads);
  auto* emb = app.add_subcommand("embed", "horospherical embedding of Z^(n+d-1) and its report");
  shared.add(emb);
  emb->add_option("--n", e.embed_n);
  emb->add_option("--d", e.embed_d);
  emb->add_option("--radius", e.embed_radius)->required();
  emb->add_option("--width", e.embed_width);
  emb->add_option("--levels", e.embed_levels);
  emb->add_option("--threads", e.threads);
  auto* pipe = app.add_subcommand("pipeline", "growth, profile and product checks against targets (n, d)");
  with_space(pipe);
  pipe->add_option("--target", targets, "n:d, repeatable")->required();
  pipe->add_option("--growth-radius", e.pipeline.growth_radius);
  pipe->add_option("--profile-radius", e.pipeline.profile_radius);
  pipe->add_option("--product-side", e.pipeline.product_side);
  pipe->add_flag("--no-product", no_product);
  auto* rep = app.add_subcommand("report", "summarize a run directory");
  rep->add_option("run_dir", report_dir)->required();
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path)->required();
  shared.add(run);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::Success& s) {
      return app.exit(s, out, err);
    } catch (const CLI::ParseError& pe) {
      app.exit(pe, out, err);
      return 2;
    }

    if (rep->parsed()) {
      out << render_report(report_dir);
      return 0;
    }
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw ParseError(fmt::format("cannot open config '{}'", config_path), 1, 1);
      const ConfigDoc doc = parse_config(in);
      e = experiment_from_config(doc, fs::absolute(config_path).parent_path());
    } else {
      CLI::App* sub = app.get_subcommands().front();
      e.kind = sub->get_name();
      e.name = e.kind;
      if (e.kind == "regmap") {
        for (auto* p : {&e.domain_graph, &e.codomain_graph, &e.map_file})
          *p = fs::absolute(*p).lexically_normal().string();
      } else if (e.kind != "embed") {
        e.space = space.spec();
        e.root = root;
        if (!root_label.empty()) e.root_label = Label(root_label.begin(), root_label.end());
        e.sizes = sizes;
        if (e.kind == "pipeline") {
          e.pipeline.group = *e.space;
          e.pipeline.targets.clear();
          ConfigEntry te{"targets", fmt::format("{}", fmt::join(targets, " ")), 1, 1, 1};
          e.pipeline.targets = parse_targets(te);
          e.pipeline.product_checks = !no_product;
          e.pipeline.vertex_budget = e.vertex_budget;
        }
        if (e.kind == "iso" && e.iso_method != "exact") set_family_from_string(e.iso_method);
        if (e.kind == "sep") sep_strategy_from_string(e.sep_strategy);
      }
    }
    shared.apply(e);
    if (e.kind == "pipeline") e.pipeline.vertex_budget = e.vertex_budget;
    const auto artifacts = execute(e);
    const fs::path dir = run_dir_for(e);
    write_run(dir, e, artifacts);
    out << fmt::format("wrote {} artifacts and manifest.txt to {}\n", artifacts.size(), dir.string());
    return 0;
  } catch (const ParseError& pe) {
    err << "parse error: " << pe.what() << '\n';
    return 2;
  } catch (const InputError& ie) {
    err << "input error: " << ie.what() << '\n';
    return 2;
  } catch (const ResourceError& re) {
    err << "budget exceeded: " << re.what() << '\n';
    return 3;
  } catch (const NumericError& ne) {
    err << fmt::format("numeric error: {} (residual {:.3g})\n", ne.what(), ne.residual());
    return 4;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace coarse::cli
