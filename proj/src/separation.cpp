#include "coarse/separation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "coarse/connected_sets.hpp"
#include "coarse/errors.hpp"

namespace coarse {

namespace {

// True when deleting `removed` leaves only components of size s with 2s <= total.
bool balanced_after_removal(const Graph& g, const std::vector<char>& removed, std::size_t total) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || removed[s]) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      if (2 * ++size > total) return false;
      for (auto w : g.neighbors(u))
        if (!seen[w] && !removed[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return true;
}

bool balanced_masks(const std::vector<std::uint64_t>& adj, std::uint64_t alive, int total) {
  std::uint64_t rest = alive;
  while (rest) {
    std::uint64_t comp = rest & (~rest + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      next &= rest & ~comp;
      comp |= next;
      frontier = next;
      if (2 * std::popcount(comp) > total) return false;
    }
    rest &= ~comp;
  }
  return true;
}

// Lexicographically first k-subset (over increasing candidate order) whose
// removal balances the graph, for the smallest feasible k.
template <typename Check>
std::vector<std::size_t> smallest_separator(std::size_t candidates, Check&& balanced) {
  for (std::size_t k = 0; k <= candidates; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (balanced(idx)) return idx;
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == candidates - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};  // unreachable: removing every candidate always balances
}

// Minimum separator of a graph with at most 64 vertices given as bitmasks;
// returns local indices.
std::vector<int> min_separator_small(const std::vector<std::uint64_t>& adj, int n) {
  if (n <= 1) return {};
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  // Candidates: the component of size > n/2, if any.
  std::uint64_t rest = all, big = 0;
  while (rest) {
    std::uint64_t comp = rest & (~rest + 1), frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      next &= rest & ~comp;
      comp |= next;
      frontier = next;
    }
    if (2 * std::popcount(comp) > n) big = comp;
    rest &= ~comp;
  }
  if (!big) return {};
  std::vector<int> cand;
  for (std::uint64_t f = big; f; f &= f - 1) cand.push_back(std::countr_zero(f));
  auto pick = smallest_separator(cand.size(), [&](const std::vector<std::size_t>& idx) {
    std::uint64_t removed = 0;
    for (auto i : idx) removed |= std::uint64_t{1} << cand[i];
    return balanced_masks(adj, all & ~removed, n);
  });
  std::vector<int> out;
  for (auto i : pick) out.push_back(cand[i]);
  return out;
}

CutResult make_cut(const Graph& g, std::vector<Vertex> separator, Certificate cert) {
  CutResult r;
  r.separator = VertexSet(std::move(separator), g.vertex_count());
  r.removed_count = r.separator.size();
  r.component_sizes = connected_components(g, r.separator.mask()).sizes;
  r.certificate = cert;
  return r;
}

}  // namespace

std::vector<std::string> validate_cut(const Graph& g, const CutResult& cut) {
  std::vector<std::string> problems;
  const std::size_t n = g.vertex_count();
  if (cut.separator.host_size() != n) problems.push_back("separator belongs to a different host");
  if (cut.removed_count != cut.separator.size()) problems.push_back("removed_count differs from separator size");
  auto sizes = connected_components(g, cut.separator.mask()).sizes;
  if (sizes != cut.component_sizes) problems.push_back("component sizes do not match a recomputation");
  if (n > 1)
    for (auto s : sizes)
      if (2 * s > n) problems.push_back(fmt::format("component of size {} exceeds half of {}", s, n));
  return problems;
}

CutResult cut_exact(const Graph& g, const ExactCutOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n > options.max_vertices)
    throw ResourceError(fmt::format("exact cut of {} vertices exceeds the budget of {}", n, options.max_vertices));
  if (n <= 1) return make_cut(g, {}, Certificate::Exact);
  if (n <= 64) {
    std::vector<std::uint64_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v)
      for (auto w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;
    auto local = min_separator_small(adj, static_cast<int>(n));
    return make_cut(g, std::vector<Vertex>(local.begin(), local.end()), Certificate::Exact);
  }
  auto comps = connected_components(g);
  std::vector<Vertex> cand;
  for (Vertex v = 0; v < n; ++v)
    if (2 * comps.sizes.front() > n &&
        std::count(comps.component_of.begin(), comps.component_of.end(), comps.component_of[v]) ==
            static_cast<std::ptrdiff_t>(comps.sizes.front()))
      cand.push_back(v);
  std::vector<char> removed(n, 0);
  auto pick = smallest_separator(cand.size(), [&](const std::vector<std::size_t>& idx) {
    for (auto i : idx) removed[cand[i]] = 1;
    bool ok = balanced_after_removal(g, removed, n);
    for (auto i : idx) removed[cand[i]] = 0;
    return ok;
  });
  std::vector<Vertex> sep;
  for (auto i : pick) sep.push_back(cand[i]);
  return make_cut(g, std::move(sep), Certificate::Exact);
}

CutResult cut_spectral(const Graph& g, const SpectralOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n < 3) throw InputError("spectral cut needs at least 3 vertices");
  if (!is_connected(g)) throw InputError("spectral cut needs a connected graph");
  const std::vector<double> f = fiedler_vector(g, options).vector;
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });

  // Sweep with incremental inner/outer boundary counts.
  std::vector<char> in_prefix(n, 0);
  std::vector<std::size_t> prefix_nbrs(n, 0);
  std::size_t inner = 0, outer = 0;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max(), best_p = 0;
  bool best_outer = true;
  for (std::size_t p = 1; p < n; ++p) {
    Vertex u = order[p - 1];
    if (prefix_nbrs[u] > 0) --outer;
    in_prefix[u] = 1;
    if (prefix_nbrs[u] < g.degree(u)) ++inner;
    for (auto w : g.neighbors(u)) {
      ++prefix_nbrs[w];
      if (!in_prefix[w] && prefix_nbrs[w] == 1) ++outer;
      if (in_prefix[w] && prefix_nbrs[w] == g.degree(w)) --inner;
    }
    const std::size_t rest = n - p;
    if (2 * p <= n && 2 * (rest - outer) <= n && outer < best_cost) {
      best_cost = outer;
      best_p = p;
      best_outer = true;
    }
    if (2 * rest <= n && 2 * (p - inner) <= n && inner < best_cost) {
      best_cost = inner;
      best_p = p;
      best_outer = false;
    }
  }

  std::vector<char> prefix(n, 0);
  for (std::size_t i = 0; i < best_p; ++i) prefix[order[i]] = 1;
  std::vector<Vertex> sep;
  for (Vertex v = 0; v < n; ++v) {
    bool crosses = false;
    for (auto w : g.neighbors(v))
      if (prefix[w] != prefix[v]) crosses = true;
    if (crosses && (prefix[v] != 0) == !best_outer) sep.push_back(v);
  }
  std::vector<char> removed(n, 0);
  for (auto v : sep) removed[v] = 1;
  if (!balanced_after_removal(g, removed, n))
    throw NumericError("spectral sweep produced an unbalanced separator", 0.0);
  for (auto it = sep.rbegin(); it != sep.rend(); ++it) {
    removed[*it] = 0;
    if (!balanced_after_removal(g, removed, n)) removed[*it] = 1;
  }
  std::vector<Vertex> kept;
  for (auto v : sep)
    if (removed[v]) kept.push_back(v);
  return make_cut(g, std::move(kept), Certificate::Upper);
}

std::string to_string(SepStrategy s) {
  switch (s) {
    case SepStrategy::ExactTiny: return "exact_tiny";
    case SepStrategy::FamilyBalls: return "family_balls";
    case SepStrategy::FamilySpectral: return "family_spectral";
    case SepStrategy::FamilyBoxes: return "family_boxes";
  }
  return "unknown";
}

SepStrategy sep_strategy_from_string(const std::string& s) {
  for (auto v : {SepStrategy::ExactTiny, SepStrategy::FamilyBalls, SepStrategy::FamilySpectral,
                 SepStrategy::FamilyBoxes})
    if (to_string(v) == s) return v;
  throw InputError(fmt::format("unknown separation strategy '{}'", s));
}

namespace {

ProfileCurve exact_tiny_profile(const Graph& g, const std::vector<std::size_t>& sizes,
                                const SeparationOptions& options) {
  const std::size_t max_n = sizes.back();
  if (max_n > options.exact_size_budget)
    throw ResourceError(fmt::format("exact separation up to size {} exceeds the budget of {}; use a family strategy",
                                    max_n, options.exact_size_budget));
  const std::size_t n = g.vertex_count();
  struct Best {
    std::size_t cut = 0;
    std::vector<Vertex> witness;
  };
  std::vector<Best> best(max_n + 1);
  std::vector<int> local(n, -1);
  std::uint64_t visited = 0;
  bool touched = false;
  const std::size_t root_degree = options.rooted ? g.degree(options.root) : 0;
  std::vector<std::uint64_t> adj;

  ConnectedSetEnumerator en(g);
  auto visit = [&](std::span<const Vertex> members, std::size_t) {
    if (++visited > options.max_subgraphs)
      throw ResourceError(fmt::format("exact separation visited more than {} subgraphs; use a family strategy",
                                      options.max_subgraphs));
    if (options.rooted && g.degree(members.back()) < root_degree) touched = true;
    std::vector<Vertex> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    const int k = static_cast<int>(sorted.size());
    for (int i = 0; i < k; ++i) local[sorted[static_cast<std::size_t>(i)]] = i;
    adj.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
      for (auto w : g.neighbors(sorted[static_cast<std::size_t>(i)]))
        if (local[w] >= 0) adj[static_cast<std::size_t>(i)] |= std::uint64_t{1} << local[w];
    for (auto v : sorted) local[v] = -1;
    const std::size_t cut = min_separator_small(adj, k).size();
    auto& b = best[sorted.size()];
    if (b.witness.empty() || cut > b.cut || (cut == b.cut && sorted < b.witness)) {
      b.cut = cut;
      b.witness = std::move(sorted);
    }
    return true;
  };
  if (options.rooted) en.run_rooted(options.root, max_n, visit);
  else
    for (Vertex v = 0; v < n; ++v) en.run_from_minimum(v, max_n, visit);

  ProfileCurve curve;
  curve.kind = ProfileKind::Separation;
  curve.notes.push_back("strategy=exact_tiny");
  if (options.rooted) {
    curve.notes.push_back(fmt::format("rooted at vertex {}", options.root));
    curve.notes.push_back(touched ? "some candidate subgraphs reached the host truncation"
                                  : "no candidate subgraph reached the host truncation");
  }
  const Certificate cert = touched ? Certificate::Lower : Certificate::Exact;
  std::size_t arg = 0;
  std::size_t next = 0;
  for (std::size_t s = 1; s <= max_n; ++s) {
    if (!best[s].witness.empty() && (arg == 0 || best[s].cut > best[arg].cut)) arg = s;
    while (next < sizes.size() && sizes[next] == s) {
      if (arg != 0) curve.points.push_back({s, Ratio(static_cast<std::int64_t>(best[arg].cut)), cert, best[arg].witness});
      ++next;
    }
  }
  return curve;
}

}  // namespace

ProfileCurve separation_profile(const Graph& g, std::vector<std::size_t> sizes, SepStrategy strategy,
                                const SeparationOptions& options) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.empty()) throw InputError("separation profile needs at least one size");
  if (sizes.front() == 0) throw InputError("sizes must be positive");
  if (sizes.back() > g.vertex_count())
    throw InputError(fmt::format("size {} exceeds the host size {}", sizes.back(), g.vertex_count()));
  if (options.root >= g.vertex_count()) throw InputError(fmt::format("root {} out of range", options.root));
  if (strategy == SepStrategy::ExactTiny) return exact_tiny_profile(g, sizes, options);

  const std::size_t max_n = sizes.back();
  std::vector<VertexSet> sets;
  switch (strategy) {
    case SepStrategy::FamilyBalls: sets = ball_family(g, options.root, max_n); break;
    case SepStrategy::FamilyBoxes: {
      BoxOptions bo = options.boxes;
      bo.root = options.root;
      sets = box_family(g, bo, max_n);
      break;
    }
    case SepStrategy::FamilySpectral: {
      if (!is_connected(g)) throw InputError("spectral blocks need a connected host");
      auto order = fiedler_order(g);
      for (auto s : sizes) {
        VertexSet prefix(std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s)),
                         g.vertex_count());
        auto sub = induced_subgraph(g, prefix);
        auto comps = connected_components(sub.graph);
        // Largest component; ties to the one holding the smallest vertex.
        std::int32_t target = -1;
        std::vector<std::size_t> count(comps.sizes.size(), 0);
        for (auto c : comps.component_of) ++count[static_cast<std::size_t>(c)];
        for (std::size_t c = 0; c < count.size(); ++c)
          if (target < 0 || count[c] > count[static_cast<std::size_t>(target)]) target = static_cast<std::int32_t>(c);
        std::vector<Vertex> block;
        for (std::size_t i = 0; i < sub.to_host.size(); ++i)
          if (comps.component_of[i] == target) block.push_back(sub.to_host[i]);
        if (!sets.empty() && block.size() <= sets.back().size()) continue;
        sets.emplace_back(std::move(block), g.vertex_count());
      }
      break;
    }
    case SepStrategy::ExactTiny: break;
  }

  ProfileCurve curve;
  curve.kind = ProfileKind::Separation;
  curve.notes.push_back("strategy=" + to_string(strategy));
  for (const auto& set : sets) {
    auto sub = induced_subgraph(g, set);
    CutResult cut = (sub.graph.vertex_count() <= options.exact_cut_limit || sub.graph.vertex_count() < 3)
                        ? cut_exact(sub.graph, {options.exact_cut_limit})
                        : cut_spectral(sub.graph, options.spectral);
    ProfilePoint p{set.size(), Ratio(static_cast<std::int64_t>(cut.removed_count)),
                   cut.certificate == Certificate::Exact ? Certificate::Lower : Certificate::Estimate, set.members()};
    if (!curve.points.empty() && curve.points.back().value >= p.value) {
      p.value = curve.points.back().value;
      p.certificate = curve.points.back().certificate;
      p.witness = curve.points.back().witness;
    }
    curve.points.push_back(std::move(p));
  }
  return curve;
}

LcgReport lcg_inequality_report(const Series& j, const Series& sep, double tolerance) {
  LcgReport r;
  r.tolerance = tolerance;
  if (j.size() == 0 || sep.size() == 0) {
    r.notes.push_back("empty curve");
    return r;
  }
  const double j_lo = *std::min_element(j.x.begin(), j.x.end());
  const double j_hi = *std::max_element(j.x.begin(), j.x.end());
  Series k;
  for (std::size_t i = 0; i < sep.size(); ++i) {
    const double v = sep.x[i];
    if (v < j_lo || v > j_hi || v < 2.0) continue;
    if (sep.y[i] <= 0) {
      r.notes.push_back(fmt::format("skipped v={} with sep(v)=0", v));
      continue;
    }
    // j as a step function: value at the largest sampled size <= v.
    double jv = 0.0, jx = -1.0;
    for (std::size_t t = 0; t < j.size(); ++t)
      if (j.x[t] <= v && j.x[t] > jx) {
        jx = j.x[t];
        jv = j.y[t];
      }
    if (jv <= 0) continue;
    const double lv = std::log(v);
    const double ratio = (v / sep.y[i]) / (jv * lv * lv);
    r.ratios.emplace_back(v, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
    k.push(v, ratio);
  }
  try {
    auto fit = fit_power(k);
    r.log_ratio_slope = fit.slope;
    r.verdict = fit.slope <= tolerance ? Verdict::Consistent : Verdict::Inconsistent;
  } catch (const InputError& e) {
    r.notes.push_back(fmt::format("inconclusive: {}", e.what()));
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

LcgReport lcg_inequality_report(const ProfileCurve& j, const ProfileCurve& sep, double tolerance) {
  if (j.kind != ProfileKind::Isoperimetric || sep.kind != ProfileKind::Separation)
    throw InputError("expected an isoperimetric and a separation curve");
  return lcg_inequality_report(to_series(j), to_series(sep), tolerance);
}

void write_cut_record(std::ostream& out, const CutResult& cut) {
  nlohmann::ordered_json j;
  j["removed_count"] = cut.removed_count;
  j["separator"] = cut.separator.members();
  j["component_sizes"] = cut.component_sizes;
  j["certificate"] = to_string(cut.certificate);
  out << j.dump(2) << '\n';
}

void write_lcg_report(std::ostream& out, const LcgReport& r) {
  out << "[lcg_inequality]\n";
  out << "verdict = " << to_string(r.verdict) << '\n';
  out << fmt::format("log_ratio_slope = {:.9g}\n", r.log_ratio_slope);
  out << fmt::format("tolerance = {:.9g}\n", r.tolerance);
  out << fmt::format("max_ratio = {:.9g}\n", r.max_ratio);
  out << "points = " << r.ratios.size() << '\n';
  for (const auto& n : r.notes) out << "note = " << n << '\n';
}

}  // namespace coarse
