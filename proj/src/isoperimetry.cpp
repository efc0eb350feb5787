#include "coarse/isoperimetry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "coarse/connected_sets.hpp"
#include "coarse/errors.hpp"

namespace coarse {

namespace {

struct SizeBest {
  std::size_t boundary = std::numeric_limits<std::size_t>::max();
  std::vector<Vertex> witness;

  void offer(std::span<const Vertex> members, std::size_t b) {
    if (b > boundary) return;
    std::vector<Vertex> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    if (b < boundary || sorted < witness) {
      boundary = b;
      witness = std::move(sorted);
    }
  }

  void merge(const SizeBest& other) {
    if (other.witness.empty()) return;
    offer(other.witness, other.boundary);
  }
};

struct Stratum {
  std::vector<SizeBest> best;
  std::uint64_t visited = 0;
  bool touched = false;
  bool exhausted = false;
};

}  // namespace

ProfileCurve exact_isoperimetric_profile(const Graph& g, std::size_t max_size, const ExactProfileOptions& options) {
  const std::size_t n = g.vertex_count();
  if (max_size == 0) throw InputError("max_size must be positive");
  if (max_size >= n)
    throw InputError(fmt::format("max_size {} must be below the host size {} (the full set has no boundary)",
                                 max_size, n));
  if (max_size > options.size_budget)
    throw ResourceError(fmt::format("max_size {} exceeds the exact enumeration budget of {}", max_size,
                                    options.size_budget));
  if (!is_connected(g)) throw InputError("exact isoperimetric profile needs a connected graph");
  if (options.root && *options.root >= n) throw InputError(fmt::format("root {} out of range", *options.root));

  const std::size_t cap = options.complement_cap ? std::min(max_size, n / 2) : max_size;
  const std::size_t root_degree = options.root ? g.degree(*options.root) : 0;
  std::atomic<std::uint64_t> visited_total{0};

  auto run_stratum = [&](unsigned part, unsigned parts) {
    Stratum st;
    st.best.resize(cap + 1);
    ConnectedSetEnumerator en(g);
    auto visit = [&](std::span<const Vertex> members, std::size_t boundary) {
      if (options.root && g.degree(members.back()) < root_degree) st.touched = true;
      st.best[members.size()].offer(members, boundary);
      if ((++st.visited & 0xffff) == 0) {
        if (visited_total.fetch_add(0x10000) + 0x10000 > options.max_sets) {
          st.exhausted = true;
          return false;
        }
      }
      return true;
    };
    if (options.root) {
      en.run_rooted(*options.root, cap, visit);
    } else {
      for (Vertex v = part; v < n && !st.exhausted; v += parts) en.run_from_minimum(v, cap, visit);
    }
    return st;
  };

  const unsigned threads = options.root ? 1u : std::max(1u, options.threads);
  std::vector<Stratum> strata(threads);
  if (threads == 1) {
    strata[0] = run_stratum(0, 1);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t)
      workers.emplace_back([&, t] { strata[t] = run_stratum(t, threads); });
    for (auto& w : workers) w.join();
  }
  std::vector<SizeBest> best(cap + 1);
  bool touched = false;
  for (const auto& st : strata) {
    if (st.exhausted)
      throw ResourceError(fmt::format("exact isoperimetric enumeration exceeded the budget of {} sets",
                                      options.max_sets));
    touched = touched || st.touched;
    for (std::size_t s = 1; s <= cap; ++s) best[s].merge(st.best[s]);
  }

  ProfileCurve curve;
  curve.kind = ProfileKind::Isoperimetric;
  const Certificate cert = touched ? Certificate::Lower : Certificate::Exact;
  if (options.root) {
    curve.notes.push_back(fmt::format("rooted at vertex {}", *options.root));
    curve.notes.push_back(touched ? "some candidate sets reached the host truncation"
                                  : "no candidate set reached the host truncation");
  }
  if (options.complement_cap) curve.notes.push_back("complement cap |A| <= |G|/2");
  std::size_t best_size = 0;
  for (std::size_t s = 1; s <= cap; ++s) {
    const auto& b = best[s];
    if (!b.witness.empty()) {
      Ratio r(static_cast<std::int64_t>(s), static_cast<std::int64_t>(b.boundary));
      if (best_size == 0 ||
          r > Ratio(static_cast<std::int64_t>(best_size), static_cast<std::int64_t>(best[best_size].boundary)))
        best_size = s;
    }
    if (best_size == 0) continue;
    ProfilePoint p;
    p.size = s;
    p.value = Ratio(static_cast<std::int64_t>(best_size), static_cast<std::int64_t>(best[best_size].boundary));
    p.certificate = cert;
    p.witness = best[best_size].witness;
    curve.points.push_back(std::move(p));
  }
  return curve;
}

std::string to_string(SetFamily f) {
  switch (f) {
    case SetFamily::Balls: return "balls";
    case SetFamily::Boxes: return "boxes";
    case SetFamily::Sublevel: return "sublevel";
  }
  return "unknown";
}

SetFamily set_family_from_string(const std::string& s) {
  for (auto f : {SetFamily::Balls, SetFamily::Boxes, SetFamily::Sublevel})
    if (to_string(f) == s) return f;
  throw InputError(fmt::format("unknown set family '{}'", s));
}

namespace {

void push_running_max(ProfileCurve& curve, std::size_t size, Ratio value, std::vector<Vertex> witness) {
  ProfilePoint p{size, value, Certificate::Lower, std::move(witness)};
  if (!curve.points.empty() && curve.points.back().value >= value) {
    p.value = curve.points.back().value;
    p.witness = curve.points.back().witness;
  }
  curve.points.push_back(std::move(p));
}

}  // namespace

ProfileCurve family_isoperimetric_lowerbound(const Graph& g, SetFamily family, const FamilyOptions& options) {
  if (!is_connected(g)) throw InputError("family lower bound needs a connected graph");
  ProfileCurve curve;
  curve.kind = ProfileKind::Isoperimetric;
  curve.notes.push_back("family=" + to_string(family));
  if (family == SetFamily::Sublevel) {
    auto order = fiedler_order(g);
    const std::size_t n = g.vertex_count();
    std::vector<char> in(n, 0);
    std::vector<std::size_t> inside_nbrs(n, 0);
    std::size_t boundary = 0;
    std::size_t best_size = 0, best_boundary = 1;
    std::size_t next_emit = 1;
    const std::size_t limit = std::min(options.max_size, n - 1);
    for (std::size_t p = 1; p <= limit; ++p) {
      Vertex u = order[p - 1];
      boundary = boundary + g.degree(u) - 2 * inside_nbrs[u];
      in[u] = 1;
      for (auto w : g.neighbors(u)) ++inside_nbrs[w];
      if (boundary > 0 && (best_size == 0 || p * best_boundary > best_size * boundary)) {
        best_size = p;
        best_boundary = boundary;
      }
      // Sizes are sampled geometrically; the value is the running max over all prefixes.
      if (p == next_emit || p == limit) {
        if (best_size > 0) {
          std::vector<Vertex> w(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_size));
          std::sort(w.begin(), w.end());
          curve.points.push_back({p,
                                  Ratio(static_cast<std::int64_t>(best_size), static_cast<std::int64_t>(best_boundary)),
                                  Certificate::Lower, std::move(w)});
        }
        next_emit = std::max(p + 1, static_cast<std::size_t>(std::ceil(static_cast<double>(p) * 1.25)));
      }
    }
    return curve;
  }

  std::vector<VertexSet> sets;
  if (family == SetFamily::Balls) {
    sets = ball_family(g, options.root, options.max_size);
  } else {
    BoxOptions bo = options.boxes;
    bo.root = options.root;
    sets = box_family(g, bo, options.max_size);
  }
  for (const auto& a : sets) {
    auto score = edge_boundary(g, a);
    if (!score.ratio) break;
    push_running_max(curve, a.size(), *score.ratio, a.members());
  }
  return curve;
}

CheegerBounds cheeger_spectral_bound(const Graph& g, const SpectralOptions& options) {
  auto f = fiedler_vector(g, options);
  const double degree = static_cast<double>(g.degree_bound() ? *g.degree_bound() : g.max_degree());
  CheegerBounds b;
  b.lambda2 = f.lambda2;
  b.h_lower = f.lambda2 / 2.0;
  b.h_upper = std::sqrt(2.0 * degree * std::max(0.0, f.lambda2));
  b.residual = f.residual;
  return b;
}

}  // namespace coarse
