#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace coarse {

using Vertex = std::uint32_t;
using Label = std::vector<std::int64_t>;
using Ratio = boost::rational<std::int64_t>;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in compressed adjacency form.
//
// Neighbor lists are sorted. Vertices may carry integer-vector labels (group
// normal forms or model coordinates); labels are pairwise distinct and may
// differ in length between graphs but are checked for distinctness only.
// A graph without a degree bound is produced only by constructions that
// explicitly waive it (combinatorial horoballs).
class Graph {
 public:
  Graph() = default;

  // Edges may be given in either orientation and may repeat; they are
  // normalized and merged. Self-loops, out-of-range endpoints, a degree
  // exceeding `degree_bound`, or repeated labels raise InputError.
  static Graph from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                          std::optional<std::size_t> degree_bound,
                          std::vector<Label> labels = {});

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::optional<std::size_t> degree_bound() const noexcept { return degree_bound_; }
  std::size_t max_degree() const noexcept;

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  bool adjacent(Vertex u, Vertex v) const;

  bool has_labels() const noexcept { return !label_offsets_.empty(); }
  std::span<const std::int64_t> label(Vertex v) const {
    return {label_data_.data() + label_offsets_[v], label_data_.data() + label_offsets_[v + 1]};
  }
  Label label_copy(Vertex v) const {
    auto l = label(v);
    return {l.begin(), l.end()};
  }

  // All edges with u < v, in increasing order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::optional<std::size_t> degree_bound_;
  std::vector<std::size_t> label_offsets_;
  std::vector<std::int64_t> label_data_;
};

// Lists every violated representation invariant; empty when the graph is valid.
std::vector<std::string> validate(const Graph& g);

struct LabelHash {
  std::size_t operator()(std::span<const std::int64_t> l) const noexcept;
  std::size_t operator()(const Label& l) const noexcept {
    return (*this)(std::span<const std::int64_t>(l));
  }
};

// Reverse lookup from label to vertex.
class LabelIndex {
 public:
  explicit LabelIndex(const Graph& g);
  std::optional<Vertex> find(const Label& label) const;

 private:
  std::unordered_map<Label, Vertex, LabelHash> index_;
};

// Sorted, duplicate-free subset of the vertices of a host graph.
class VertexSet {
 public:
  VertexSet() = default;
  // Sorts and validates; duplicates or out-of-range members raise InputError.
  VertexSet(std::vector<Vertex> members, std::size_t host_size);
  static VertexSet all(std::size_t host_size);

  const std::vector<Vertex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t host_size() const noexcept { return host_size_; }
  bool contains(Vertex v) const;
  std::vector<bool> mask() const;
  VertexSet complement() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
  std::size_t host_size_ = 0;
};

struct BoundaryScore {
  std::size_t set_size = 0;
  std::size_t boundary_size = 0;
  std::optional<Ratio> ratio;  // |A|/|dA|, absent when the boundary is empty
};

// Unreachable vertices get kUnreached.
inline constexpr std::int32_t kUnreached = -1;

// BFS distances from `source`, optionally stopping after `max_radius` layers.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source,
                                        std::optional<std::int32_t> max_radius = std::nullopt);

VertexSet bfs_ball(const Graph& g, Vertex center, std::size_t radius);

BoundaryScore edge_boundary(const Graph& g, const VertexSet& a);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;  // new index -> host index
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

struct Components {
  std::vector<std::int32_t> component_of;  // -1 for vertices that were removed
  std::vector<std::size_t> sizes;          // non-increasing
};

Components connected_components(const Graph& g);
// Components of g after deleting the vertices flagged in `removed`.
Components connected_components(const Graph& g, const std::vector<bool>& removed);

bool is_connected(const Graph& g);

// Vertex (g, h) gets index g * |H| + h; labels concatenate.
Graph cartesian_product(const Graph& g, const Graph& h);

// Text format: `graph <n> <degree_bound|none>`, one `u v` line per edge with
// u < v, then optional `label v c1 c2 ...` lines.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

}  // namespace coarse
