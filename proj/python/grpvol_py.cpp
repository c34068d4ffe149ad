// Python bindings. Inputs and outputs cross the boundary as plain Python
// values (str, int, dict, list); reports are the same JSON the CLI writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/hopf.hpp"
#include "grpvol/io.hpp"
#include "grpvol/subgroups.hpp"
#include "grpvol/volumes.hpp"

namespace py = pybind11;
using namespace grpvol;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
  if (py::isinstance<py::str>(o)) return parse_json(o.cast<std::string>());
  return parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Triangulation load_triangulation(const py::object& o) { return triangulation_from_json(from_py(o)).load(); }

VolumeOptions volume_options(int max_index, std::int64_t node_budget, const std::string& filter) {
  VolumeOptions opt;
  opt.max_index = max_index;
  opt.node_budget = node_budget;
  opt.filter = parse_subgroup_filter(filter);
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Volumes of finitely presented groups and Hopf pairings on triangulated 3-manifolds";

  auto base = py::register_exception<Error>(m, "GrpvolError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  // groups
  m.def("named_presentation", [](const std::string& name) { return to_string(named_presentation(name)); },
        py::arg("name"));
  m.def("analyze", [](const std::string& text, int budget) { return to_py(analyze_presentation(parse_presentation(text), budget)); },
        py::arg("presentation"), py::arg("simplify_budget") = kDefaultSimplifyBudget);
  m.def(
      "subgroup_counts",
      [](const std::string& text, int max_index, std::int64_t node_budget) {
        EnumerationOptions opt;
        opt.max_index = max_index;
        opt.node_budget = node_budget;
        std::vector<int> counts(static_cast<std::size_t>(max_index), 0);
        for (const auto& t : enumerate_subgroups(parse_presentation(text), opt)) ++counts[static_cast<std::size_t>(t.index - 1)];
        return counts;
      },
      py::arg("presentation"), py::arg("max_index"), py::arg("node_budget") = 10'000'000);
  m.def(
      "volume",
      [](const std::string& text, const std::string& kind, int max_index, std::int64_t prime, std::int64_t node_budget,
         const std::string& filter) {
        VolumeOptions opt = volume_options(max_index, node_budget, filter);
        opt.prime = prime;
        const VolumeKind k = parse_volume_kind(kind);
        const Presentation p = parse_presentation(text);
        return to_py(to_json(k == VolumeKind::modp ? modp_mu1(p, prime, opt) : truncated_volume(p, k, opt)));
      },
      py::arg("presentation"), py::arg("kind"), py::arg("max_index"), py::arg("prime") = 2,
      py::arg("node_budget") = 10'000'000, py::arg("filter") = "all");
  m.def(
      "axioms",
      [](const std::string& text, int max_index) {
        return to_py(to_json(check_volume_axiom(parse_presentation(text), volume_options(max_index, 10'000'000, "all"))));
      },
      py::arg("presentation"), py::arg("max_index"));
  m.def("distinct", [](const std::string& text) { return to_py(to_json(distinctability_report(parse_presentation(text)))); },
        py::arg("presentation"));

  // manifolds
  m.def("boundary_4simplex", [] { return to_py(to_json(boundary_4simplex())); });
  m.def(
      "lens_space",
      [](int p, int q) {
        const LensFixture l = lens_space(p, q);
        Json j = to_json(l.data);
        j["generator"] = to_json(l.generator);
        return to_py(j);
      },
      py::arg("p"), py::arg("q") = 1);
  m.def("check", [](const py::object& t) { return to_py(check_triangulation(load_triangulation(t))); },
        py::arg("triangulation"));
  m.def(
      "random_cocycle",
      [](const py::object& t, std::uint64_t seed, bool unit) {
        const Triangulation tri = load_triangulation(t);
        std::mt19937_64 rng(seed);
        return to_py(to_json(unit ? random_unit_cocycle(tri, rng) : random_exact_cocycle(tri, rng)));
      },
      py::arg("triangulation"), py::arg("seed") = 0, py::arg("unit") = false);
  m.def(
      "pairing",
      [](const py::object& t, const py::object& gamma, const std::string& gauge) {
        const PairingEngine engine(load_triangulation(t));
        return to_string(engine.pairing(cochain_from_json(from_py(gamma)), parse_gauge(gauge)).value);
      },
      py::arg("triangulation"), py::arg("gamma"), py::arg("gauge") = "harmonic");
  m.def(
      "bound",
      [](const py::object& t, const std::string& sup_norm) {
        return to_py(to_json(hadamard_bound(load_triangulation(t), parse_sup_norm(sup_norm))));
      },
      py::arg("triangulation"), py::arg("sup_norm") = "pi");
  m.def(
      "cover",
      [](const py::object& t, const py::object& spec, const py::object& gamma) {
        return to_py(to_json(cover_multiplicativity(load_triangulation(t), cover_spec_from_json(from_py(spec)),
                                                    cochain_from_json(from_py(gamma)))));
      },
      py::arg("triangulation"), py::arg("spec"), py::arg("gamma"));
  m.def(
      "growth",
      [](const py::object& t, const py::object& family, const py::object& gamma) {
        return to_py(to_json(growth_report(load_triangulation(t), cover_family_from_json(from_py(family)),
                                           cochain_from_json(from_py(gamma)))));
      },
      py::arg("triangulation"), py::arg("family"), py::arg("gamma"));
}
