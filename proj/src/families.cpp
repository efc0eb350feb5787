#include "coarse/families.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "coarse/errors.hpp"
#include "coarse/spectral.hpp"

namespace coarse {

std::vector<VertexSet> ball_family(const Graph& g, Vertex root, std::size_t max_size) {
  if (root >= g.vertex_count()) throw InputError(fmt::format("root {} out of range", root));
  auto dist = bfs_distances(g, root);
  std::int32_t max_d = *std::max_element(dist.begin(), dist.end());
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(max_d) + 1);
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreached) layers[static_cast<std::size_t>(dist[v])].push_back(static_cast<Vertex>(v));
  std::vector<VertexSet> out;
  std::vector<Vertex> members;
  for (const auto& layer : layers) {
    if (members.size() + layer.size() > max_size) break;
    members.insert(members.end(), layer.begin(), layer.end());
    out.emplace_back(members, g.vertex_count());
  }
  return out;
}

std::vector<VertexSet> box_family(const Graph& g, const BoxOptions& options, std::size_t max_size) {
  if (!g.has_labels()) throw InputError("box family needs coordinate labels");
  if (options.root >= g.vertex_count()) throw InputError(fmt::format("root {} out of range", options.root));
  const Label center = g.label_copy(options.root);
  const std::size_t dims = options.dims == 0 ? center.size() : options.dims;
  if (dims == 0 || dims > center.size()) throw InputError("box dimension exceeds the label length");
  const LabelIndex index(g);
  const std::size_t root_degree = g.degree(options.root);

  std::vector<VertexSet> out;
  for (std::int64_t side = 1;; ++side) {
    std::size_t volume = 1;
    bool too_big = false;
    for (std::size_t i = 0; i < dims; ++i) {
      if (volume > max_size / static_cast<std::size_t>(side)) too_big = true;
      volume *= static_cast<std::size_t>(side);
    }
    if (too_big || volume > max_size) break;
    const std::int64_t lo_off = options.anchor == BoxAnchor::Centered ? -(side - 1) / 2 : 0;
    Label probe = center;
    std::vector<std::int64_t> offset(dims, 0);
    std::vector<Vertex> members;
    members.reserve(volume);
    bool fits = true;
    for (std::size_t count = 0; count < volume && fits; ++count) {
      for (std::size_t i = 0; i < dims; ++i) probe[i] = center[i] + lo_off + offset[i];
      auto v = index.find(probe);
      if (!v || (options.require_saturated && g.degree(*v) < root_degree)) fits = false;
      else members.push_back(*v);
      for (std::size_t i = dims; i-- > 0;) {
        if (++offset[i] < side) break;
        offset[i] = 0;
      }
    }
    if (!fits) break;
    out.emplace_back(std::move(members), g.vertex_count());
  }
  return out;
}

std::vector<Vertex> fiedler_order(const Graph& g) {
  auto f = fiedler_vector(g).vector;
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
  return order;
}

}  // namespace coarse
