#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

// Enumerates connected vertex sets by incremental vertex addition (the ESU
// scheme). Each set is produced exactly once: either from its minimum vertex
// (`run_from_minimum`) or, with a fixed root, as a set containing the root.
// The visitor sees the members in insertion order and the edge-boundary
// size, and returns false to abort the whole enumeration.
class ConnectedSetEnumerator {
 public:
  explicit ConnectedSetEnumerator(const Graph& g)
      : g_(g), in_set_(g.vertex_count(), 0), set_neighbors_(g.vertex_count(), 0) {}

  template <typename Visitor>
  bool run_from_minimum(Vertex v, std::size_t max_size, Visitor&& visit) {
    min_vertex_ = v;
    rooted_ = false;
    return start(v, max_size, visit);
  }

  template <typename Visitor>
  bool run_rooted(Vertex root, std::size_t max_size, Visitor&& visit) {
    rooted_ = true;
    return start(root, max_size, visit);
  }

 private:
  bool allowed(Vertex u) const { return rooted_ || u > min_vertex_; }

  template <typename Visitor>
  bool start(Vertex v, std::size_t max_size, Visitor& visit) {
    if (max_size == 0) return true;
    members_.clear();
    boundary_ = 0;
    add(v);
    std::vector<Vertex> ext;
    for (auto u : g_.neighbors(v))
      if (allowed(u)) ext.push_back(u);
    bool ok = extend(ext, max_size, visit);
    remove(v);
    return ok;
  }

  void add(Vertex w) {
    boundary_ = boundary_ + g_.degree(w) - 2 * set_neighbors_[w];
    in_set_[w] = 1;
    members_.push_back(w);
    for (auto x : g_.neighbors(w)) ++set_neighbors_[x];
  }

  void remove(Vertex w) {
    for (auto x : g_.neighbors(w)) --set_neighbors_[x];
    members_.pop_back();
    in_set_[w] = 0;
    boundary_ = boundary_ + 2 * set_neighbors_[w] - g_.degree(w);
  }

  template <typename Visitor>
  bool extend(std::vector<Vertex> ext, std::size_t max_size, Visitor& visit) {
    if (!visit(std::span<const Vertex>(members_), boundary_)) return false;
    if (members_.size() == max_size) return true;
    while (!ext.empty()) {
      Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (auto u : g_.neighbors(w))
        if (allowed(u) && !in_set_[u] && set_neighbors_[u] == 0) next.push_back(u);
      add(w);
      bool ok = extend(std::move(next), max_size, visit);
      remove(w);
      if (!ok) return false;
    }
    return true;
  }

  const Graph& g_;
  std::vector<char> in_set_;
  std::vector<std::size_t> set_neighbors_;
  std::vector<Vertex> members_;
  std::size_t boundary_ = 0;
  Vertex min_vertex_ = 0;
  bool rooted_ = false;
};

}  // namespace coarse
