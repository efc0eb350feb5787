#include "coarse/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "coarse/errors.hpp"

namespace coarse {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::ZPower: return "zpower";
    case SpaceKind::Heisenberg: return "heisenberg";
    case SpaceKind::Lamplighter: return "lamplighter";
    case SpaceKind::FreeGroup: return "free";
    case SpaceKind::PolycyclicLambda: return "polycyclic";
    case SpaceKind::DyadicHyperbolic: return "dyadic";
    case SpaceKind::Product: return "product";
    case SpaceKind::Horoball: return "horoball";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(const std::string& name) {
  for (auto k : {SpaceKind::ZPower, SpaceKind::Heisenberg, SpaceKind::Lamplighter, SpaceKind::FreeGroup,
                 SpaceKind::PolycyclicLambda, SpaceKind::DyadicHyperbolic, SpaceKind::Product,
                 SpaceKind::Horoball})
    if (to_string(k) == name) return k;
  throw InputError(fmt::format("unknown space kind '{}'", name));
}

SpaceSpec SpaceSpec::zpower(int d, int radius) {
  SpaceSpec s;
  s.kind = SpaceKind::ZPower;
  s.dim = d;
  s.radius = radius;
  return s;
}

SpaceSpec SpaceSpec::heisenberg(int radius) {
  SpaceSpec s;
  s.kind = SpaceKind::Heisenberg;
  s.radius = radius;
  return s;
}

SpaceSpec SpaceSpec::lamplighter(int radius) {
  SpaceSpec s;
  s.kind = SpaceKind::Lamplighter;
  s.radius = radius;
  return s;
}

SpaceSpec SpaceSpec::free_group(int rank, int radius) {
  SpaceSpec s;
  s.kind = SpaceKind::FreeGroup;
  s.dim = rank;
  s.radius = radius;
  return s;
}

SpaceSpec SpaceSpec::polycyclic_lambda(int n, Matrix2 q, int radius) {
  SpaceSpec s;
  s.kind = SpaceKind::PolycyclicLambda;
  s.dim = n;
  s.q = q;
  s.radius = radius;
  return s;
}

SpaceSpec SpaceSpec::dyadic_hyperbolic(int n, int levels, int width, bool wrap) {
  SpaceSpec s;
  s.kind = SpaceKind::DyadicHyperbolic;
  s.dim = n;
  s.levels = levels;
  s.width = width;
  s.wrap = wrap;
  return s;
}

SpaceSpec SpaceSpec::product(std::vector<SpaceSpec> factors) {
  SpaceSpec s;
  s.kind = SpaceKind::Product;
  s.factors = std::move(factors);
  return s;
}

SpaceSpec SpaceSpec::horoball(SpaceSpec inner, int depth) {
  SpaceSpec s;
  s.kind = SpaceKind::Horoball;
  s.factors.push_back(std::move(inner));
  s.depth = depth;
  return s;
}

bool SpaceSpec::is_group() const {
  switch (kind) {
    case SpaceKind::DyadicHyperbolic:
    case SpaceKind::Horoball: return false;
    case SpaceKind::Product:
      return !factors.empty() &&
             std::all_of(factors.begin(), factors.end(), [](const SpaceSpec& f) { return f.is_group(); });
    default: return true;
  }
}

void SpaceSpec::validate() const {
  if (radius < 0) throw InputError("radius must be non-negative");
  switch (kind) {
    case SpaceKind::ZPower:
      if (dim < 1) throw InputError("zpower needs d >= 1");
      break;
    case SpaceKind::FreeGroup:
      if (dim < 1) throw InputError("free group needs rank >= 1");
      break;
    case SpaceKind::PolycyclicLambda:
      if (dim < 2) throw InputError("polycyclic lattice needs n >= 2");
      if (q.det() != 1) throw InputError(fmt::format("matrix Q has determinant {}, expected 1", q.det()));
      if (q.trace() < 3)
        throw InputError(fmt::format("matrix Q has trace {}; need trace >= 3 for positive eigenvalues off the unit circle",
                                     q.trace()));
      break;
    case SpaceKind::DyadicHyperbolic:
      if (dim < 2) throw InputError("dyadic model needs n >= 2");
      if (levels < 1) throw InputError("dyadic model needs levels >= 1");
      if (width < 1) throw InputError("dyadic model needs width >= 1");
      break;
    case SpaceKind::Product:
      if (factors.empty()) throw InputError("product needs at least one factor");
      for (const auto& f : factors) f.validate();
      break;
    case SpaceKind::Horoball:
      if (factors.size() != 1) throw InputError("horoball needs exactly one inner space");
      if (depth < 0) throw InputError("horoball depth must be non-negative");
      factors.front().validate();
      break;
    case SpaceKind::Heisenberg:
    case SpaceKind::Lamplighter: break;
  }
}

namespace {

// Right multiplication by generators on normal forms.
class GroupModel {
 public:
  virtual ~GroupModel() = default;
  virtual Label identity() const = 0;
  virtual std::size_t generator_count() const = 0;
  virtual Label apply(const Label& g, std::size_t gen) const = 0;
  // Called once before enumerating a ball of the given radius.
  virtual void prepare(int /*radius*/) {}
};

class ZPowerModel final : public GroupModel {
 public:
  explicit ZPowerModel(int d) : d_(d) {}
  Label identity() const override { return Label(static_cast<std::size_t>(d_), 0); }
  std::size_t generator_count() const override { return 2 * static_cast<std::size_t>(d_); }
  Label apply(const Label& g, std::size_t gen) const override {
    Label h = g;
    h[gen / 2] += (gen % 2 == 0) ? 1 : -1;
    return h;
  }

 private:
  int d_;
};

// (a, b, c) is the unipotent matrix [[1, a, c], [0, 1, b], [0, 0, 1]].
class HeisenbergModel final : public GroupModel {
 public:
  Label identity() const override { return {0, 0, 0}; }
  std::size_t generator_count() const override { return 4; }
  Label apply(const Label& g, std::size_t gen) const override {
    Label h = g;
    switch (gen) {
      case 0: h[0] += 1; break;                  // x
      case 1: h[0] -= 1; break;                  // x^-1
      case 2: h[1] += 1; h[2] += g[0]; break;    // y
      default: h[1] -= 1; h[2] -= g[0]; break;   // y^-1
    }
    return h;
  }
};

// (cursor, lit lamp positions in increasing order); generators t, t^-1 and
// the toggle at the cursor.
class LamplighterModel final : public GroupModel {
 public:
  Label identity() const override { return {0}; }
  std::size_t generator_count() const override { return 3; }
  Label apply(const Label& g, std::size_t gen) const override {
    Label h = g;
    if (gen == 0) {
      h[0] += 1;
    } else if (gen == 1) {
      h[0] -= 1;
    } else {
      const std::int64_t cursor = h[0];
      auto it = std::lower_bound(h.begin() + 1, h.end(), cursor);
      if (it != h.end() && *it == cursor) h.erase(it);
      else h.insert(it, cursor);
    }
    return h;
  }
};

// Reduced words over letters +-1..+-rank.
class FreeGroupModel final : public GroupModel {
 public:
  explicit FreeGroupModel(int rank) : rank_(rank) {}
  Label identity() const override { return {}; }
  std::size_t generator_count() const override { return 2 * static_cast<std::size_t>(rank_); }
  Label apply(const Label& g, std::size_t gen) const override {
    std::int64_t letter = static_cast<std::int64_t>(gen / 2 + 1) * ((gen % 2 == 0) ? 1 : -1);
    Label h = g;
    if (!h.empty() && h.back() == -letter) h.pop_back();
    else h.push_back(letter);
    return h;
  }

 private:
  int rank_;
};

std::int64_t checked_mul_add(std::int64_t x, std::int64_t y, std::int64_t acc) {
  std::int64_t p = 0, s = 0;
  if (__builtin_mul_overflow(x, y, &p) || __builtin_add_overflow(acc, p, &s))
    throw ResourceError("polycyclic normal form overflowed 64-bit integers");
  return s;
}

Matrix2 multiply(const Matrix2& x, const Matrix2& y) {
  auto dot = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    return checked_mul_add(r, s, checked_mul_add(p, q, 0));
  };
  return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c), dot(x.c, y.b, x.d, y.d)};
}

// (v, k) stands for v * t^k in (Z^2)^(n-1) x| Z, where t v t^-1 = Q v on each
// Z^2 factor. Right multiplication by a basis vector e adds Q^k e.
class PolycyclicModel final : public GroupModel {
 public:
  PolycyclicModel(int n, Matrix2 q) : factors_(n - 1), q_(q) { prepare(1); }

  Label identity() const override { return Label(2 * static_cast<std::size_t>(factors_) + 1, 0); }
  std::size_t generator_count() const override { return 2 + 4 * static_cast<std::size_t>(factors_); }

  void prepare(int radius) override {
    powers_.assign(2 * static_cast<std::size_t>(radius) + 1, Matrix2{});
    max_power_ = radius;
    Matrix2 inv{q_.d, -q_.b, -q_.c, q_.a};
    powers_[static_cast<std::size_t>(radius)] = {1, 0, 0, 1};
    for (int k = 1; k <= radius; ++k) {
      powers_[static_cast<std::size_t>(radius + k)] = multiply(powers_[static_cast<std::size_t>(radius + k - 1)], q_);
      powers_[static_cast<std::size_t>(radius - k)] = multiply(powers_[static_cast<std::size_t>(radius - k + 1)], inv);
    }
  }

  Label apply(const Label& g, std::size_t gen) const override {
    Label h = g;
    auto& k = h.back();
    if (gen == 0) {
      ++k;
      return h;
    }
    if (gen == 1) {
      --k;
      return h;
    }
    std::size_t rest = gen - 2;
    std::size_t factor = rest / 4;
    std::size_t basis = (rest / 2) % 2;
    std::int64_t sign = (rest % 2 == 0) ? 1 : -1;
    if (k < -max_power_ || k > max_power_) throw InputError("polycyclic element outside prepared radius");
    const Matrix2& p = powers_[static_cast<std::size_t>(k + max_power_)];
    std::int64_t col0 = basis == 0 ? p.a : p.b;
    std::int64_t col1 = basis == 0 ? p.c : p.d;
    h[2 * factor] = checked_mul_add(sign, col0, h[2 * factor]);
    h[2 * factor + 1] = checked_mul_add(sign, col1, h[2 * factor + 1]);
    return h;
  }

 private:
  int factors_;
  Matrix2 q_;
  std::vector<Matrix2> powers_;
  int max_power_ = 0;
};

// Direct product; labels are (len_1, label_1..., len_2, label_2...).
class ProductModel final : public GroupModel {
 public:
  explicit ProductModel(std::vector<std::unique_ptr<GroupModel>> parts) : parts_(std::move(parts)) {}

  Label identity() const override {
    Label out;
    for (const auto& p : parts_) append(out, p->identity());
    return out;
  }
  std::size_t generator_count() const override {
    std::size_t total = 0;
    for (const auto& p : parts_) total += p->generator_count();
    return total;
  }
  void prepare(int radius) override {
    for (auto& p : parts_) p->prepare(radius);
  }
  Label apply(const Label& g, std::size_t gen) const override {
    Label out;
    std::size_t pos = 0;
    for (const auto& p : parts_) {
      auto len = static_cast<std::size_t>(g[pos]);
      Label part(g.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                 g.begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
      pos += len + 1;
      if (gen < p->generator_count()) {
        part = p->apply(part, gen);
        gen = std::numeric_limits<std::size_t>::max();
      } else if (gen != std::numeric_limits<std::size_t>::max()) {
        gen -= p->generator_count();
      }
      append(out, part);
    }
    return out;
  }

 private:
  static void append(Label& out, const Label& part) {
    out.push_back(static_cast<std::int64_t>(part.size()));
    out.insert(out.end(), part.begin(), part.end());
  }
  std::vector<std::unique_ptr<GroupModel>> parts_;
};

std::unique_ptr<GroupModel> make_model(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceKind::ZPower: return std::make_unique<ZPowerModel>(spec.dim);
    case SpaceKind::Heisenberg: return std::make_unique<HeisenbergModel>();
    case SpaceKind::Lamplighter: return std::make_unique<LamplighterModel>();
    case SpaceKind::FreeGroup: return std::make_unique<FreeGroupModel>(spec.dim);
    case SpaceKind::PolycyclicLambda: return std::make_unique<PolycyclicModel>(spec.dim, spec.q);
    case SpaceKind::Product: {
      std::vector<std::unique_ptr<GroupModel>> parts;
      for (const auto& f : spec.factors) parts.push_back(make_model(f));
      return std::make_unique<ProductModel>(std::move(parts));
    }
    default: throw InputError(fmt::format("space kind '{}' is not a group", to_string(spec.kind)));
  }
}

std::unique_ptr<GroupModel> checked_model(const SpaceSpec& spec, int radius) {
  spec.validate();
  if (!spec.is_group()) throw InputError(fmt::format("space kind '{}' is not a group", to_string(spec.kind)));
  if (radius < 0) throw InputError("radius must be non-negative");
  auto model = make_model(spec);
  model->prepare(radius);
  return model;
}

using ElementSet = std::unordered_set<Label, LabelHash>;

// Breadth-first sphere enumeration. Neighbors of sphere r lie in spheres
// r-1, r, r+1 because the generating set is symmetric, so only two previous
// spheres are needed to recognise new elements. `on_sphere` receives each
// sphere sorted lexicographically and returns false to stop.
template <typename OnSphere>
void enumerate_spheres(const GroupModel& model, int max_radius, OnSphere&& on_sphere) {
  std::vector<Label> previous;
  std::vector<Label> current{model.identity()};
  ElementSet previous_set, current_set{current.front()};
  if (!on_sphere(0, current)) return;
  for (int r = 1; r <= max_radius; ++r) {
    ElementSet next_set;
    for (const auto& g : current)
      for (std::size_t s = 0; s < model.generator_count(); ++s) {
        Label h = model.apply(g, s);
        if (current_set.count(h) || previous_set.count(h)) continue;
        next_set.insert(std::move(h));
      }
    std::vector<Label> next(next_set.begin(), next_set.end());
    std::sort(next.begin(), next.end());
    if (!on_sphere(r, next)) return;
    previous = std::move(current);
    previous_set = std::move(current_set);
    current = std::move(next);
    current_set = std::move(next_set);
  }
}

}  // namespace

std::size_t SpaceSpec::generator_count() const {
  if (!is_group()) throw InputError(fmt::format("space kind '{}' is not a group", to_string(kind)));
  return make_model(*this)->generator_count();
}

Graph cayley_ball(const SpaceSpec& spec, int radius, std::size_t vertex_budget) {
  auto model = checked_model(spec, radius);
  std::vector<Label> elements;
  enumerate_spheres(*model, radius, [&](int r, const std::vector<Label>& sphere) {
    if (elements.size() + sphere.size() > vertex_budget)
      throw ResourceError(fmt::format("Cayley ball of radius {} exceeds the vertex budget of {} (reached radius {})",
                                      radius, vertex_budget, r));
    elements.insert(elements.end(), sphere.begin(), sphere.end());
    return true;
  });
  std::unordered_map<Label, Vertex, LabelHash> index;
  index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<Vertex>(i));
  std::vector<Edge> edges;
  edges.reserve(elements.size() * model->generator_count() / 2);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t s = 0; s < model->generator_count(); ++s) {
      auto it = index.find(model->apply(elements[i], s));
      if (it != index.end() && it->second > i) edges.push_back({static_cast<Vertex>(i), it->second});
    }
  const std::size_t count = elements.size();
  return Graph::from_edges(count, std::move(edges), model->generator_count(), std::move(elements));
}

GrowthCurve growth_function(const SpaceSpec& spec, int max_radius, std::size_t vertex_budget) {
  auto model = checked_model(spec, max_radius);
  GrowthCurve curve;
  std::uint64_t total = 0;
  enumerate_spheres(*model, max_radius, [&](int r, const std::vector<Label>& sphere) {
    if (total + sphere.size() > vertex_budget) {
      curve.truncated = true;
      return false;
    }
    total += sphere.size();
    curve.radii.push_back(r);
    curve.counts.push_back(total);
    return true;
  });
  return curve;
}

std::int64_t DyadicLayout::extent(int level) const {
  return static_cast<std::int64_t>(width) << (levels - 1 - level);
}

std::size_t DyadicLayout::level_size(int level) const {
  std::size_t s = 1;
  for (int i = 0; i + 1 < n; ++i) s *= static_cast<std::size_t>(extent(level));
  return s;
}

std::size_t DyadicLayout::level_offset(int level) const {
  std::size_t off = 0;
  for (int m = 0; m < level; ++m) off += level_size(m);
  return off;
}

std::size_t DyadicLayout::vertex_count() const { return level_offset(levels); }

std::size_t DyadicLayout::degree_bound() const {
  return 2 * static_cast<std::size_t>(n - 1) + (std::size_t{1} << (n - 1)) + 1;
}

Vertex DyadicLayout::index(std::span<const std::int64_t> k, int level) const {
  std::size_t linear = 0;
  auto e = static_cast<std::size_t>(extent(level));
  for (auto c : k) linear = linear * e + static_cast<std::size_t>(c);
  return static_cast<Vertex>(level_offset(level) + linear);
}

Graph dyadic_hyperbolic_ball(int n, int levels, int width, bool wrap, std::size_t vertex_budget) {
  SpaceSpec::dyadic_hyperbolic(n, levels, width, wrap).validate();
  if (levels > 40) throw ResourceError("dyadic model with more than 40 levels");
  DyadicLayout layout{n, levels, width, wrap};
  // Level 0 dominates the count; check before any multiplication can overflow.
  long double approx = 0;
  for (int m = 0; m < levels; ++m) approx += std::pow(static_cast<long double>(layout.extent(m)), n - 1);
  if (approx > static_cast<long double>(vertex_budget))
    throw ResourceError(fmt::format("dyadic model needs about {:.0f} vertices, over the vertex budget of {}",
                                    static_cast<double>(approx), vertex_budget));
  const std::size_t total = layout.vertex_count();
  const std::size_t dims = static_cast<std::size_t>(n - 1);

  std::vector<Label> labels;
  labels.reserve(total);
  std::vector<Edge> edges;
  for (int m = 0; m < levels; ++m) {
    const std::int64_t ext = layout.extent(m);
    Label k(dims, 0);
    for (std::size_t i = 0; i < layout.level_size(m); ++i) {
      Vertex self = layout.index(k, m);
      Label lab = k;
      lab.push_back(m);
      labels.push_back(std::move(lab));
      for (std::size_t c = 0; c < dims; ++c) {
        Label nb = k;
        if (k[c] + 1 < ext) {
          nb[c] = k[c] + 1;
          edges.push_back({self, layout.index(nb, m)});
        } else if (wrap && ext > 2) {
          nb[c] = 0;
          edges.push_back({self, layout.index(nb, m)});
        }
      }
      if (m + 1 < levels) {
        Label parent = k;
        for (auto& c : parent) c /= 2;
        edges.push_back({self, layout.index(parent, m + 1)});
      }
      // Advance k in row-major order, last coordinate fastest.
      for (std::size_t c = dims; c-- > 0;) {
        if (++k[c] < ext) break;
        k[c] = 0;
      }
    }
  }
  return Graph::from_edges(total, std::move(edges), layout.degree_bound(), std::move(labels));
}

Graph horoball(const Graph& inner, int depth, std::size_t vertex_budget) {
  if (depth < 0) throw InputError("horoball depth must be non-negative");
  if (!is_connected(inner)) throw InputError("horoball needs a connected inner graph");
  const std::size_t n = inner.vertex_count();
  const std::size_t levels = static_cast<std::size_t>(depth) + 1;
  if (n > vertex_budget / levels)
    throw ResourceError(fmt::format("horoball needs {} x {} vertices, over the vertex budget of {}", n, levels,
                                    vertex_budget));
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    auto dist = bfs_distances(inner, v);
    for (Vertex w = v + 1; w < n; ++w)
      for (std::size_t m = 0; m < levels; ++m) {
        // 2^m saturates once it exceeds any possible distance.
        std::int64_t reach = m >= 40 ? std::numeric_limits<std::int64_t>::max() : (std::int64_t{1} << m);
        if (dist[w] <= reach)
          edges.push_back({static_cast<Vertex>(m * n + v), static_cast<Vertex>(m * n + w)});
      }
  }
  for (std::size_t m = 0; m + 1 < levels; ++m)
    for (Vertex v = 0; v < n; ++v)
      edges.push_back({static_cast<Vertex>(m * n + v), static_cast<Vertex>((m + 1) * n + v)});
  std::vector<Label> labels;
  labels.reserve(n * levels);
  for (std::size_t m = 0; m < levels; ++m)
    for (Vertex v = 0; v < n; ++v) {
      Label l = inner.has_labels() ? inner.label_copy(v) : Label{static_cast<std::int64_t>(v)};
      l.push_back(static_cast<std::int64_t>(m));
      labels.push_back(std::move(l));
    }
  return Graph::from_edges(n * levels, std::move(edges), std::nullopt, std::move(labels));
}

Graph build_space(const SpaceSpec& spec, std::size_t vertex_budget) {
  spec.validate();
  switch (spec.kind) {
    case SpaceKind::DyadicHyperbolic:
      return dyadic_hyperbolic_ball(spec.dim, spec.levels, spec.width, spec.wrap, vertex_budget);
    case SpaceKind::Horoball:
      return horoball(build_space(spec.factors.front(), vertex_budget), spec.depth, vertex_budget);
    case SpaceKind::Product:
      if (!spec.is_group()) {
        Graph g = build_space(spec.factors.front(), vertex_budget);
        for (std::size_t i = 1; i < spec.factors.size(); ++i) {
          Graph h = build_space(spec.factors[i], vertex_budget);
          if (g.vertex_count() > vertex_budget / h.vertex_count())
            throw ResourceError(fmt::format("product exceeds the vertex budget of {}", vertex_budget));
          g = cartesian_product(g, h);
        }
        return g;
      }
      return cayley_ball(spec, spec.radius, vertex_budget);
    default: return cayley_ball(spec, spec.radius, vertex_budget);
  }
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back({static_cast<std::int64_t>(i)});
    if (i + 1 < n) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph::from_edges(n, std::move(edges), 2, std::move(labels));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back({static_cast<std::int64_t>(i)});
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph::from_edges(n, std::move(edges), 2, std::move(labels));
}

Graph grid_graph(std::size_t width, std::size_t height) {
  std::vector<Edge> edges;
  std::vector<Label> labels;
  auto id = [width](std::size_t x, std::size_t y) { return static_cast<Vertex>(y * width + x); };
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      labels.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
      if (x + 1 < width) edges.push_back({id(x, y), id(x + 1, y)});
      if (y + 1 < height) edges.push_back({id(x, y), id(x, y + 1)});
    }
  return Graph::from_edges(width * height, std::move(edges), 4, std::move(labels));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  return Graph::from_edges(n, std::move(edges), n > 1 ? n - 1 : 1);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph::from_edges(leaves + 1, std::move(edges), std::max<std::size_t>(leaves, 1));
}

Graph empty_graph(std::size_t n) { return Graph::from_edges(n, {}, 1); }

}  // namespace coarse
