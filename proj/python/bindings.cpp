#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/isoperimetry.hpp"
#include "coarse/pipeline.hpp"
#include "coarse/regmap.hpp"
#include "coarse/separation.hpp"

namespace py = pybind11;
using namespace coarse;

namespace {

py::object fraction(Ratio r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.numerator(), r.denominator());
}

// [(size, Fraction, certificate, witness), ...]
py::list points(const ProfileCurve& c) {
  py::list out;
  for (const auto& p : c.points) out.append(py::make_tuple(p.size, fraction(p.value), to_string(p.certificate), p.witness));
  return out;
}

SpaceSpec group(const std::string& kind, int dim) {
  if (kind == "zpower") return SpaceSpec::zpower(dim);
  if (kind == "heisenberg") return SpaceSpec::heisenberg();
  if (kind == "lamplighter") return SpaceSpec::lamplighter();
  if (kind == "free") return SpaceSpec::free_group(dim);
  if (kind == "polycyclic") return SpaceSpec::polycyclic_lambda(dim);
  throw InputError("unknown group kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_coarse, m) {
  m.doc() = "Bounded-degree graph models, isoperimetric and separation profiles, regular maps";

  auto base = py::register_exception<Error>(m, "CoarseError");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                       std::optional<std::size_t> degree_bound) {
             std::vector<Edge> es;
             for (auto [u, v] : edges) es.push_back({u, v});
             return Graph::from_edges(n, std::move(es), degree_bound);
           }),
           py::arg("vertex_count"), py::arg("edges"), py::arg("degree_bound") = py::none())
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<Vertex, Vertex>> out;
             for (auto e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("label", &Graph::label_copy)
      .def("__len__", &Graph::vertex_count);

  m.def("path_graph", &path_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("grid_graph", &grid_graph);
  m.def("complete_graph", &complete_graph);
  m.def("star_graph", &star_graph);

  m.def(
      "cayley_ball", [](const std::string& kind, int radius, int dim) { return cayley_ball(group(kind, dim), radius); },
      py::arg("kind"), py::arg("radius"), py::arg("dim") = 2);
  m.def(
      "growth",
      [](const std::string& kind, int max_radius, int dim) {
        auto g = growth_function(group(kind, dim), max_radius);
        return g.counts;
      },
      py::arg("kind"), py::arg("max_radius"), py::arg("dim") = 2);
  m.def("dyadic_hyperbolic_ball", &dyadic_hyperbolic_ball, py::arg("n"), py::arg("levels"), py::arg("width"),
        py::arg("wrap") = false, py::arg("vertex_budget") = kDefaultVertexBudget);

  m.def(
      "exact_isoperimetric_profile",
      [](const Graph& g, std::size_t max_size, std::optional<Vertex> root, unsigned threads) {
        ExactProfileOptions o;
        o.root = root;
        o.threads = threads;
        return points(exact_isoperimetric_profile(g, max_size, o));
      },
      py::arg("graph"), py::arg("max_size"), py::arg("root") = py::none(), py::arg("threads") = 1);
  m.def(
      "family_isoperimetric_lowerbound",
      [](const Graph& g, const std::string& family, Vertex root) {
        FamilyOptions o;
        o.root = root;
        return points(family_isoperimetric_lowerbound(g, set_family_from_string(family), o));
      },
      py::arg("graph"), py::arg("family"), py::arg("root") = 0);

  m.def(
      "cut_exact",
      [](const Graph& g, std::size_t max_vertices) {
        auto c = cut_exact(g, {max_vertices});
        return py::make_tuple(c.removed_count, c.separator.members(), c.component_sizes);
      },
      py::arg("graph"), py::arg("max_vertices") = 24);
  m.def("cut_spectral", [](const Graph& g) {
    auto c = cut_spectral(g);
    return py::make_tuple(c.removed_count, c.separator.members(), c.component_sizes);
  });
  m.def(
      "separation_profile",
      [](const Graph& g, std::vector<std::size_t> sizes, const std::string& strategy, Vertex root) {
        SeparationOptions o;
        o.root = root;
        return points(separation_profile(g, std::move(sizes), sep_strategy_from_string(strategy), o));
      },
      py::arg("graph"), py::arg("sizes"), py::arg("strategy") = "family_balls", py::arg("root") = 0);

  m.def(
      "horospherical_embedding",
      [](int n, int d, int radius) {
        auto r = verify_regular(horospherical_embedding(n, d, radius));
        py::dict out;
        out["lipschitz"] = r.lipschitz;
        out["multiplicity"] = r.multiplicity;
        out["compression"] = r.compression;
        out["exact"] = r.compression_exact;
        return out;
      },
      py::arg("n"), py::arg("d"), py::arg("radius"));

  m.def("fit_power", [](const std::vector<double>& x, const std::vector<double>& y) {
    Series s;
    s.x = x;
    s.y = y;
    return fit_power(s).slope;
  });

  m.def(
      "theorem_pipeline",
      [](const std::string& kind, int dim, const std::vector<std::pair<int, int>>& targets, int growth_radius,
         int profile_radius, bool product_checks) {
        PipelineConfig c;
        c.group = group(kind, dim);
        c.targets.clear();
        for (auto [n, d] : targets) c.targets.push_back({n, d});
        c.growth_radius = growth_radius;
        c.profile_radius = profile_radius;
        c.product_checks = product_checks;
        auto r = theorem_pipeline(c);
        py::dict out;
        out["polynomial"] = r.growth.polynomial;
        out["degree"] = r.growth.degree;
        out["csc"] = to_string(r.csc.verdict);
        out["lcg"] = to_string(r.lcg.verdict);
        py::dict verdicts;
        for (const auto& t : r.targets) verdicts[py::make_tuple(t.target.n, t.target.d)] = to_string(t.verdict);
        out["targets"] = verdicts;
        return out;
      },
      py::arg("kind"), py::arg("dim") = 3, py::arg("targets") = std::vector<std::pair<int, int>>{{3, 1}},
      py::arg("growth_radius") = 16, py::arg("profile_radius") = 5, py::arg("product_checks") = false);
}
