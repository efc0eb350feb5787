#include "coarse/regmap.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"

namespace coarse {

void FiniteGraphMap::check() const {
  if (!domain || !codomain) throw InputError("map is missing its domain or codomain graph");
  if (images.size() != domain->vertex_count())
    throw InputError(fmt::format("map has {} images for {} domain vertices; every vertex must be mapped",
                                 images.size(), domain->vertex_count()));
  for (std::size_t v = 0; v < images.size(); ++v)
    if (images[v] >= codomain->vertex_count())
      throw InputError(fmt::format("image {} of vertex {} is outside the codomain", images[v], v));
}

namespace {

// Runs body(worker, index) over [0, count) on `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(0u, i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(w, i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Breadth-first search that stops once every target is reached. Returns the
// largest target distance.
class TargetSearch {
 public:
  explicit TargetSearch(const Graph& g) : g_(g), stamp_(g.vertex_count(), 0), dist_(g.vertex_count(), 0) {}

  std::size_t farthest(Vertex source, std::span<const Vertex> targets) {
    epoch_ += 2;
    const std::uint32_t want = epoch_ - 1, seen = epoch_;
    std::size_t pending = 0;
    for (auto t : targets)
      if (stamp_[t] != want) {
        stamp_[t] = want;
        ++pending;
      }
    std::size_t worst = 0;
    queue_.clear();
    auto visit = [&](Vertex v, std::size_t d) {
      if (stamp_[v] == want) {
        --pending;
        worst = std::max(worst, d);
      }
      stamp_[v] = seen;
      dist_[v] = d;
      queue_.push_back(v);
    };
    visit(source, 0);
    for (std::size_t head = 0; head < queue_.size() && pending > 0; ++head) {
      Vertex u = queue_[head];
      for (auto w : g_.neighbors(u))
        if (stamp_[w] != seen) visit(w, dist_[u] + 1);
    }
    if (pending > 0) throw InputError("codomain is disconnected; distances are undefined");
    return worst;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::size_t> dist_;
  std::vector<Vertex> queue_;
  std::uint32_t epoch_ = 0;
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

RegularMapReport verify_regular(const FiniteGraphMap& map, const RegmapOptions& options) {
  map.check();
  const Graph& X = *map.domain;
  const Graph& Y = *map.codomain;
  if (X.vertex_count() == 0) throw InputError("empty domain");
  if (!is_connected(X) || !is_connected(Y)) throw InputError("domain and codomain must be connected");
  const unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  RegularMapReport r;

  std::vector<std::size_t> preimages(Y.vertex_count(), 0);
  for (auto w : map.images) r.multiplicity = std::max(r.multiplicity, ++preimages[w]);

  {
    std::vector<std::size_t> worst(X.vertex_count(), 0);
    std::vector<std::unique_ptr<TargetSearch>> search(threads);
    std::vector<std::vector<Vertex>> targets(threads);
    parallel_for(X.vertex_count(), threads, [&](unsigned w, std::size_t u) {
      if (!search[w]) search[w] = std::make_unique<TargetSearch>(Y);
      auto& t = targets[w];
      t.clear();
      for (auto v : X.neighbors(static_cast<Vertex>(u))) t.push_back(map.images[v]);
      if (!t.empty()) worst[u] = search[w]->farthest(map.images[u], t);
    });
    r.lipschitz = *std::max_element(worst.begin(), worst.end());
  }
  r.regular_constant = std::max(r.lipschitz, r.multiplicity);

  // Sources for the compression function.
  const std::uint64_t nx = X.vertex_count(), ny = Y.vertex_count();
  std::vector<Vertex> sources;
  if (nx * (nx + ny) <= options.pair_budget || options.sample_sources >= nx) {
    for (Vertex v = 0; v < nx; ++v) sources.push_back(v);
  } else {
    r.compression_exact = false;
    for (std::size_t i = 0; i < options.sample_sources; ++i)
      sources.push_back(static_cast<Vertex>(i * nx / options.sample_sources));
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  }
  r.sources = sources.size();

  // best[w][t]: min codomain distance among pairs at domain distance exactly t.
  std::vector<std::vector<std::size_t>> best(threads);
  parallel_for(sources.size(), threads, [&](unsigned w, std::size_t i) {
    const Vertex x = sources[i];
    auto dx = bfs_distances(X, x);
    auto dy = bfs_distances(Y, map.images[x]);
    auto& b = best[w];
    for (Vertex y = 0; y < nx; ++y) {
      const auto t = static_cast<std::size_t>(dx[y]);
      const auto image_d = dy[map.images[y]];
      if (image_d < 0) throw InputError("codomain is disconnected; distances are undefined");
      if (t >= b.size()) b.resize(t + 1, kNone);
      b[t] = std::min(b[t], static_cast<std::size_t>(image_d));
    }
  });
  std::vector<std::size_t> merged;
  for (const auto& b : best) {
    if (b.size() > merged.size()) merged.resize(b.size(), kNone);
    for (std::size_t t = 0; t < b.size(); ++t) merged[t] = std::min(merged[t], b[t]);
  }
  r.domain_diameter = merged.empty() ? 0 : merged.size() - 1;
  for (std::size_t t = merged.size(); t-- > 1;)
    if (t + 1 < merged.size()) merged[t] = std::min(merged[t], merged[t + 1]);
  for (std::size_t t = 1; t <= r.domain_diameter; t *= 2) r.compression.emplace_back(t, merged[t]);
  if (r.domain_diameter > 0 && !std::has_single_bit(r.domain_diameter))
    r.compression.emplace_back(r.domain_diameter, merged[r.domain_diameter]);
  return r;
}

FiniteGraphMap horospherical_embedding(int n, int d, int radius, const HorosphericalOptions& options) {
  if (n < 2 || d < 0 || radius < 0)
    throw InputError(fmt::format("need n >= 2, d >= 0, radius >= 0; got n={} d={} radius={}", n, d, radius));
  if (options.width < 1) throw InputError("width must be positive");
  const int k = n + d - 1;
  const std::int64_t span = 2 * static_cast<std::int64_t>(radius) + 1;
  int levels = 1;
  if (options.levels) {
    levels = *options.levels;
  } else {
    while (options.width * (std::int64_t{1} << (levels - 1)) < span) ++levels;
  }
  DyadicLayout layout{n, levels, options.width, false};
  if (levels < 1 || layout.extent(0) < span) {
    const std::int64_t per = std::int64_t{1} << std::max(0, levels - 1);
    throw InputError(fmt::format("codomain row has extent {} but the image needs {}; use width >= {}",
                                 levels < 1 ? 0 : layout.extent(0), span, (span + per - 1) / per));
  }

  auto domain = std::make_shared<const Graph>(cayley_ball(SpaceSpec::zpower(k), radius));
  Graph hyper = dyadic_hyperbolic_ball(n, levels, options.width, false);
  std::shared_ptr<const Graph> codomain;
  std::optional<Graph> flat;
  if (d > 0) {
    flat = cayley_ball(SpaceSpec::zpower(d), radius);
    codomain = std::make_shared<const Graph>(cartesian_product(hyper, *flat));
  } else {
    codomain = std::make_shared<const Graph>(std::move(hyper));
  }

  FiniteGraphMap map;
  map.domain = domain;
  map.codomain = codomain;
  map.domain_id = fmt::format("zpower{}_r{}", k, radius);
  map.codomain_id = fmt::format("dyadic{}_L{}_w{}", n, levels, options.width) +
                    (d > 0 ? fmt::format("_x_zpower{}_r{}", d, radius) : "");
  std::optional<LabelIndex> flat_index;
  if (flat) flat_index.emplace(*flat);
  map.images.resize(domain->vertex_count());
  std::vector<std::int64_t> box(static_cast<std::size_t>(n - 1));
  for (Vertex v = 0; v < domain->vertex_count(); ++v) {
    auto label = domain->label(v);
    for (int i = 0; i < n - 1; ++i) box[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(i)] + radius;
    const Vertex h = layout.index(box, 0);
    if (!flat) {
      map.images[v] = h;
      continue;
    }
    Label rest(label.begin() + (n - 1), label.end());
    auto f = flat_index->find(rest);
    if (!f) throw InputError("flat factor does not contain the image coordinates");
    map.images[v] = static_cast<Vertex>(static_cast<std::size_t>(h) * flat->vertex_count() + *f);
  }
  return map;
}

FiniteGraphMap compose(const FiniteGraphMap& f, const FiniteGraphMap& g) {
  f.check();
  g.check();
  if (f.codomain != g.domain && !(*f.codomain == *g.domain))
    throw InputError(fmt::format("cannot compose: codomain '{}' differs from domain '{}'", f.codomain_id, g.domain_id));
  FiniteGraphMap h;
  h.domain = f.domain;
  h.codomain = g.codomain;
  h.domain_id = f.domain_id;
  h.codomain_id = g.codomain_id;
  h.images.resize(f.images.size());
  for (std::size_t v = 0; v < f.images.size(); ++v) h.images[v] = g.images[f.images[v]];
  return h;
}

void write_map(std::ostream& out, const FiniteGraphMap& map) {
  auto id = [](const std::string& s) { return s.empty() ? std::string("unnamed") : s; };
  out << "map " << id(map.domain_id) << ' ' << id(map.codomain_id) << '\n';
  for (std::size_t v = 0; v < map.images.size(); ++v) out << v << " -> " << map.images[v] << '\n';
}

FiniteGraphMap read_map(std::istream& in, std::shared_ptr<const Graph> domain, std::shared_ptr<const Graph> codomain) {
  if (!domain || !codomain) throw InputError("read_map needs both graphs");
  FiniteGraphMap map;
  map.domain = std::move(domain);
  map.codomain = std::move(codomain);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<char> seen(map.domain->vertex_count(), 0);
  map.images.assign(map.domain->vertex_count(), 0);
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string word;
      ls >> word >> map.domain_id >> map.codomain_id;
      if (word != "map" || map.codomain_id.empty())
        throw ParseError("expected 'map <domain_id> <codomain_id>'", line_no, first + 1);
      header = true;
      continue;
    }
    long long v = -1, w = -1;
    std::string arrow, extra;
    if (!(ls >> v >> arrow >> w) || arrow != "->" || (ls >> extra))
      throw ParseError("expected 'v -> w'", line_no, first + 1);
    if (v < 0 || static_cast<std::size_t>(v) >= seen.size())
      throw ParseError(fmt::format("domain vertex {} out of range", v), line_no, first + 1);
    if (w < 0 || static_cast<std::size_t>(w) >= map.codomain->vertex_count())
      throw ParseError(fmt::format("codomain vertex {} out of range", w), line_no, first + 1);
    if (seen[static_cast<std::size_t>(v)]) throw ParseError(fmt::format("vertex {} mapped twice", v), line_no, first + 1);
    seen[static_cast<std::size_t>(v)] = 1;
    map.images[static_cast<std::size_t>(v)] = static_cast<Vertex>(w);
  }
  if (!header) throw ParseError("missing map header", line_no + 1, 1);
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw InputError(fmt::format("vertex {} is unmapped", v));
  return map;
}

void write_regmap_report(std::ostream& out, const RegularMapReport& r) {
  out << "# lipschitz=" << r.lipschitz << '\n';
  out << "# multiplicity=" << r.multiplicity << '\n';
  out << "# regular_constant=" << r.regular_constant << '\n';
  out << "# compression_exact=" << (r.compression_exact ? "true" : "false") << '\n';
  out << "# sources=" << r.sources << '\n';
  out << "# domain_diameter=" << r.domain_diameter << '\n';
  out << "t,rho_minus\n";
  for (auto [t, rho] : r.compression) out << t << ',' << rho << '\n';
}

}  // namespace coarse
