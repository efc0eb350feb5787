#include "coarse/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "coarse/errors.hpp"

namespace coarse {

Graph Graph::from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                        std::optional<std::size_t> degree_bound, std::vector<Label> labels) {
  if (vertex_count > std::numeric_limits<Vertex>::max())
    throw ResourceError(fmt::format("vertex count {} exceeds the index range", vertex_count));
  if (degree_bound && *degree_bound == 0 && !edges.empty())
    throw InputError("degree bound must be positive");
  for (auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count)
      throw InputError(fmt::format("edge ({}, {}) out of range for {} vertices", e.u, e.v, vertex_count));
    if (e.u == e.v) throw InputError(fmt::format("self-loop at vertex {}", e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.degree_bound_ = degree_bound;
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (degree_bound && deg[v] > *degree_bound)
      throw InputError(fmt::format("vertex {} has degree {} above bound {}", v, deg[v], *degree_bound));
    g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  }
  g.neighbors_.resize(g.offsets_[vertex_count]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) g.neighbors_[fill[e.u]++] = e.v;
  for (const auto& e : edges) g.neighbors_[fill[e.v]++] = e.u;
  for (std::size_t v = 0; v < vertex_count; ++v)
    std::sort(g.neighbors_.begin() + g.offsets_[v], g.neighbors_.begin() + g.offsets_[v + 1]);

  if (!labels.empty()) {
    if (labels.size() != vertex_count)
      throw InputError(fmt::format("{} labels for {} vertices", labels.size(), vertex_count));
    std::unordered_set<Label, LabelHash> seen;
    seen.reserve(vertex_count);
    g.label_offsets_.reserve(vertex_count + 1);
    g.label_offsets_.push_back(0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (!seen.insert(labels[v]).second)
        throw InputError(fmt::format("label of vertex {} repeats an earlier label", v));
      g.label_data_.insert(g.label_data_.end(), labels[v].begin(), labels[v].end());
      g.label_offsets_.push_back(g.label_data_.size());
    }
  }
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

std::vector<std::string> validate(const Graph& g) {
  std::vector<std::string> problems;
  const auto n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    if (g.degree_bound() && nb.size() > *g.degree_bound())
      problems.push_back(fmt::format("vertex {} degree {} exceeds bound", v, nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= n) {
        problems.push_back(fmt::format("vertex {} has out-of-range neighbor {}", v, nb[i]));
        continue;
      }
      if (nb[i] == v) problems.push_back(fmt::format("self-loop at {}", v));
      if (i > 0 && nb[i - 1] >= nb[i]) problems.push_back(fmt::format("neighbors of {} not strictly sorted", v));
      if (!g.adjacent(nb[i], v)) problems.push_back(fmt::format("edge {}->{} not symmetric", v, nb[i]));
    }
  }
  if (g.has_labels()) {
    std::unordered_set<Label, LabelHash> seen;
    for (Vertex v = 0; v < n; ++v)
      if (!seen.insert(g.label_copy(v)).second) problems.push_back(fmt::format("label of {} repeats", v));
  }
  return problems;
}

std::size_t LabelHash::operator()(std::span<const std::int64_t> l) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ l.size();
  for (auto x : l) {
    std::uint64_t z = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h ^= z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

LabelIndex::LabelIndex(const Graph& g) {
  if (!g.has_labels()) throw InputError("graph carries no labels");
  index_.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) index_.emplace(g.label_copy(v), v);
}

std::optional<Vertex> LabelIndex::find(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexSet::VertexSet(std::vector<Vertex> members, std::size_t host_size)
    : members_(std::move(members)), host_size_(host_size) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InputError("vertex set has duplicate members");
  if (!members_.empty() && members_.back() >= host_size_)
    throw InputError(fmt::format("vertex {} outside host of size {}", members_.back(), host_size_));
}

VertexSet VertexSet::all(std::size_t host_size) {
  std::vector<Vertex> m(host_size);
  for (std::size_t i = 0; i < host_size; ++i) m[i] = static_cast<Vertex>(i);
  return VertexSet(std::move(m), host_size);
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<bool> VertexSet::mask() const {
  std::vector<bool> m(host_size_, false);
  for (auto v : members_) m[v] = true;
  return m;
}

VertexSet VertexSet::complement() const {
  auto m = mask();
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < host_size_; ++v)
    if (!m[v]) out.push_back(static_cast<Vertex>(v));
  return VertexSet(std::move(out), host_size_);
}

std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source, std::optional<std::int32_t> max_radius) {
  if (source >= g.vertex_count())
    throw InputError(fmt::format("source {} out of range for {} vertices", source, g.vertex_count()));
  std::vector<std::int32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    if (max_radius && dist[u] >= *max_radius) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

VertexSet bfs_ball(const Graph& g, Vertex center, std::size_t radius) {
  if (center >= g.vertex_count())
    throw InputError(fmt::format("center {} out of range for {} vertices", center, g.vertex_count()));
  auto r = static_cast<std::int32_t>(std::min<std::size_t>(radius, std::numeric_limits<std::int32_t>::max()));
  auto dist = bfs_distances(g, center, r);
  std::vector<Vertex> members;
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreached) members.push_back(static_cast<Vertex>(v));
  return VertexSet(std::move(members), g.vertex_count());
}

BoundaryScore edge_boundary(const Graph& g, const VertexSet& a) {
  if (a.empty()) throw InputError("edge boundary of an empty set");
  if (a.host_size() != g.vertex_count()) throw InputError("vertex set belongs to a different host");
  auto in = a.mask();
  std::size_t crossing = 0;
  for (auto v : a.members())
    for (auto w : g.neighbors(v))
      if (!in[w]) ++crossing;
  BoundaryScore s{a.size(), crossing, std::nullopt};
  if (crossing > 0) s.ratio = Ratio(static_cast<std::int64_t>(a.size()), static_cast<std::int64_t>(crossing));
  return s;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.host_size() != g.vertex_count()) throw InputError("vertex set belongs to a different host");
  constexpr auto kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> to_new(g.vertex_count(), kAbsent);
  InducedSubgraph out;
  out.to_host = s.members();
  for (std::size_t i = 0; i < out.to_host.size(); ++i) to_new[out.to_host[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_host.size(); ++i)
    for (auto w : g.neighbors(out.to_host[i]))
      if (to_new[w] != kAbsent && to_new[w] > i) edges.push_back({static_cast<Vertex>(i), to_new[w]});
  std::vector<Label> labels;
  if (g.has_labels()) {
    labels.reserve(out.to_host.size());
    for (auto v : out.to_host) labels.push_back(g.label_copy(v));
  }
  out.graph = Graph::from_edges(out.to_host.size(), std::move(edges), g.degree_bound(), std::move(labels));
  return out;
}

Components connected_components(const Graph& g, const std::vector<bool>& removed) {
  const auto n = g.vertex_count();
  Components c;
  c.component_of.assign(n, -1);
  std::vector<Vertex> stack;
  std::vector<std::size_t> raw_sizes;
  for (Vertex s = 0; s < n; ++s) {
    if (c.component_of[s] != -1 || (!removed.empty() && removed[s])) continue;
    auto id = static_cast<std::int32_t>(raw_sizes.size());
    std::size_t size = 0;
    c.component_of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++size;
      for (auto w : g.neighbors(u)) {
        if (c.component_of[w] != -1 || (!removed.empty() && removed[w])) continue;
        c.component_of[w] = id;
        stack.push_back(w);
      }
    }
    raw_sizes.push_back(size);
  }
  c.sizes = raw_sizes;
  std::sort(c.sizes.begin(), c.sizes.end(), std::greater<>());
  return c;
}

Components connected_components(const Graph& g) { return connected_components(g, {}); }

bool is_connected(const Graph& g) {
  return g.vertex_count() > 0 && connected_components(g).sizes.size() == 1;
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t ng = g.vertex_count(), nh = h.vertex_count();
  if (ng == 0 || nh == 0) throw InputError("cartesian product of an empty graph");
  if (ng > std::numeric_limits<Vertex>::max() / nh)
    throw ResourceError(fmt::format("product of {} and {} vertices overflows the index range", ng, nh));
  const std::size_t n = ng * nh;
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * nh + h.edge_count() * ng);
  auto id = [nh](std::size_t a, std::size_t b) { return static_cast<Vertex>(a * nh + b); };
  for (const auto& e : g.edges())
    for (std::size_t b = 0; b < nh; ++b) edges.push_back({id(e.u, b), id(e.v, b)});
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < ng; ++a) edges.push_back({id(a, e.u), id(a, e.v)});
  std::optional<std::size_t> bound;
  if (g.degree_bound() && h.degree_bound()) bound = *g.degree_bound() + *h.degree_bound();
  std::vector<Label> labels;
  if (g.has_labels() || h.has_labels()) {
    labels.reserve(n);
    for (std::size_t a = 0; a < ng; ++a)
      for (std::size_t b = 0; b < nh; ++b) {
        Label l;
        if (g.has_labels()) l = g.label_copy(static_cast<Vertex>(a));
        else l.push_back(static_cast<std::int64_t>(a));
        if (h.has_labels()) {
          auto lh = h.label(static_cast<Vertex>(b));
          l.insert(l.end(), lh.begin(), lh.end());
        } else {
          l.push_back(static_cast<std::int64_t>(b));
        }
        labels.push_back(std::move(l));
      }
  }
  return Graph::from_edges(n, std::move(edges), bound, std::move(labels));
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.vertex_count() << ' ';
  if (g.degree_bound()) out << *g.degree_bound();
  else out << "none";
  out << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (g.has_labels()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      out << "label " << v;
      for (auto c : g.label(v)) out << ' ' << c;
      out << '\n';
    }
  }
}

namespace {

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;
  std::string line;

  bool next() {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }
};

template <typename T>
T parse_number(const std::string& tok, std::size_t line, std::size_t col) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if constexpr (std::is_unsigned_v<T>) {
      if (v < 0) throw std::out_of_range(tok);
    }
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw ParseError(fmt::format("expected an integer, got '{}'", tok), line, col);
  }
}

// Splits on whitespace, recording 1-based start columns.
std::vector<std::pair<std::string, std::size_t>> tokenize(const std::string& line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.emplace_back(line.substr(start, i - start), start + 1);
  }
  return out;
}

}  // namespace

Graph read_graph(std::istream& in) {
  LineReader r{in, 0, {}};
  if (!r.next()) throw ParseError("missing graph header", 1, 1);
  auto head = tokenize(r.line);
  if (head.size() != 3 || head[0].first != "graph")
    throw ParseError("expected 'graph <vertex_count> <degree_bound>'", r.line_no, head.empty() ? 1 : head[0].second);
  auto n = parse_number<std::size_t>(head[1].first, r.line_no, head[1].second);
  std::optional<std::size_t> bound;
  if (head[2].first != "none") bound = parse_number<std::size_t>(head[2].first, r.line_no, head[2].second);

  std::vector<Edge> edges;
  std::vector<Label> labels;
  std::vector<bool> labelled;
  while (r.next()) {
    auto toks = tokenize(r.line);
    if (toks[0].first == "label") {
      if (toks.size() < 2) throw ParseError("label line needs a vertex", r.line_no, toks[0].second);
      auto v = parse_number<std::size_t>(toks[1].first, r.line_no, toks[1].second);
      if (v >= n) throw ParseError(fmt::format("label for vertex {} out of range", v), r.line_no, toks[1].second);
      if (labels.empty()) {
        labels.resize(n);
        labelled.assign(n, false);
      }
      if (labelled[v]) throw ParseError(fmt::format("vertex {} labelled twice", v), r.line_no, toks[1].second);
      labelled[v] = true;
      for (std::size_t i = 2; i < toks.size(); ++i)
        labels[v].push_back(parse_number<std::int64_t>(toks[i].first, r.line_no, toks[i].second));
      continue;
    }
    if (toks.size() != 2) throw ParseError("expected an edge 'u v'", r.line_no, toks[0].second);
    if (!labels.empty()) throw ParseError("edge after label lines", r.line_no, toks[0].second);
    auto u = parse_number<Vertex>(toks[0].first, r.line_no, toks[0].second);
    auto v = parse_number<Vertex>(toks[1].first, r.line_no, toks[1].second);
    if (u >= v) throw ParseError("edge endpoints must satisfy u < v", r.line_no, toks[0].second);
    if (v >= n) throw ParseError(fmt::format("edge endpoint {} out of range", v), r.line_no, toks[1].second);
    edges.push_back({u, v});
  }
  if (!labels.empty() && std::find(labelled.begin(), labelled.end(), false) != labelled.end())
    throw ParseError("some vertices are missing labels", r.line_no, 1);
  try {
    return Graph::from_edges(n, std::move(edges), bound, std::move(labels));
  } catch (const InputError& e) {
    throw ParseError(e.what(), r.line_no, 1);
  }
}

}  // namespace coarse
