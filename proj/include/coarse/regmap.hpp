#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

// A map between the vertex sets of two graphs.
struct FiniteGraphMap {
  std::shared_ptr<const Graph> domain;
  std::shared_ptr<const Graph> codomain;
  std::string domain_id;
  std::string codomain_id;
  std::vector<Vertex> images;  // images[v] for every domain vertex v

  // Throws InputError when a domain vertex is unmapped or an image is out of range.
  void check() const;
};

struct RegmapOptions {
  // Compression is computed over all pairs when |X| * (|X| + |Y|) stays within
  // this many BFS visits; otherwise from `sample_sources` evenly spaced sources.
  std::uint64_t pair_budget = 400'000'000ULL;
  std::size_t sample_sources = 64;
  unsigned threads = 1;
};

struct RegularMapReport {
  std::size_t lipschitz = 0;
  std::size_t multiplicity = 0;
  std::size_t regular_constant = 0;  // max(lipschitz, multiplicity)
  // (t, rho_minus(t)) for t = 1, 2, 4, ... and the domain diameter.
  std::vector<std::pair<std::size_t, std::size_t>> compression;
  bool compression_exact = true;  // false: sampled sources, values are upper bounds
  std::size_t sources = 0;
  std::size_t domain_diameter = 0;  // largest domain distance seen
};

RegularMapReport verify_regular(const FiniteGraphMap& map, const RegmapOptions& options = {});

// Sends the Z^(n+d-1) ball of `radius` into (dyadic H^n model) x (Z^d ball):
// the first n-1 coordinates land on level 0 of the dyadic model (shifted by
// radius), the last d map identically. With `levels` unset the model gets
// the fewest levels whose bottom row fits the ball; a given (width, levels)
// that is too narrow raises InputError naming the required width.
struct HorosphericalOptions {
  std::optional<int> levels;
  int width = 1;
};

FiniteGraphMap horospherical_embedding(int n, int d, int radius, const HorosphericalOptions& options = {});

// g after f. The codomain of f must be the domain of g.
FiniteGraphMap compose(const FiniteGraphMap& f, const FiniteGraphMap& g);

// `map <domain_id> <codomain_id>` then one `v -> w` line per domain vertex.
void write_map(std::ostream& out, const FiniteGraphMap& map);
FiniteGraphMap read_map(std::istream& in, std::shared_ptr<const Graph> domain,
                        std::shared_ptr<const Graph> codomain);

// `# key=value` summary lines, then `t,rho_minus` rows.
void write_regmap_report(std::ostream& out, const RegularMapReport& report);

}  // namespace coarse
