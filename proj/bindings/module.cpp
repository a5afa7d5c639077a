#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lfwave/json_io.hpp"
#include "lfwave/verify.hpp"

namespace py = pybind11;
using namespace lfwave;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items())
        out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

Json py_to_json(const py::handle& obj) {
  return Json::parse(
      py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object spectrum_to_py(const SpectralStepFunction& f) {
  return json_to_py(to_json(f));
}

struct PyFamily;
struct PySystem;

struct PyTree {
  ValidTree tree;

  static PyTree basic(std::uint32_t p, std::uint32_t s, std::uint32_t N) {
    return {ValidTree::basic({p, s}, N)};
  }
  static PyTree from_json(const py::handle& obj) {
    return {tree_from_json(py_to_json(obj))};
  }
  py::object to_json_py() const { return json_to_py(to_json(tree)); }
  py::object validate() const {
    const auto r = validate_tree(tree);
    py::dict out;
    out["valid"] = r.valid();
    out["root_zero"] = r.root_zero;
    out["zero_spine"] = r.zero_spine;
    out["windows_complete"] = r.windows_complete;
    out["windows_unique"] = r.windows_unique;
    out["height"] = r.height;
    out["node_count"] = r.node_count;
    out["problems"] = r.problems;
    return out;
  }
  PyTree basic_step(int node, int target) const {
    return {tree.with_basic_step(node, target)};
  }
  std::vector<std::pair<int, int>> admissible_moves() const {
    return tree.admissible_moves();
  }
  py::object windows(int len) const {
    py::list out;
    for (const auto& [w, id] : tree.windows(len)) {
      py::list labels;
      for (const GFBlock& b : w) labels.append(py::cast(b.digits()));
      out.append(py::make_tuple(labels, id));
    }
    return out;
  }
};

py::object elementary_from_tree_py(const PyTree& t) {
  return json_to_py(to_json(ElementarySet::from_tree(t.tree)));
}

py::object validate_elementary_py(const py::handle& set_obj,
                                  std::uint32_t N, std::uint32_t M) {
  const ElementarySet set = elementary_set_from_json(py_to_json(set_obj));
  const auto r = validate_elementary(set.cosets(), set.params(), N, M);
  py::dict out;
  out["valid"] = r.valid();
  out["count_ok"] = r.count_ok;
  out["disjoint"] = r.disjoint;
  out["xi_exhaustive"] = r.xi_exhaustive;
  out["xi0_trivial"] = r.xi0_trivial;
  out["shells_hit"] = r.shells_hit;
  out["problems"] = r.problems;
  if (r.maximal_M) out["maximal_M"] = *r.maximal_M;
  return out;
}

py::object default_mask_py(const PyTree& t, double A, double B,
                           std::uint64_t seed) {
  const Mask m = default_mask(ElementarySet::from_tree(t.tree), A, B, seed);
  return json_to_py(mask_to_json(m));
}

struct PyFamily {
  ValidTree tree;
  MRAFamily family;

  static PyFamily build(const PyTree& t, const py::handle& mask_obj) {
    const Mask m = mask_from_json(t.tree, py_to_json(mask_obj));
    return {t.tree, MRAFamily::build(t.tree, m)};
  }
  py::object to_json_py() const {
    return json_to_py(family_to_json(family, tree));
  }
  py::object scaling() const { return spectrum_to_py(family.scaling()); }
  py::object dual_scaling() const {
    return spectrum_to_py(family.dual_scaling());
  }
  std::pair<double, double> bounds() const { return riesz_bounds(family); }
  py::object verify(double tol) const {
    VerifyOptions options;
    options.tolerance = tol;
    VerifyOutcome outcome = verify_family(tree, family, options);
    py::list checks;
    for (const CheckResult& c : outcome.checks) {
      py::dict item;
      item["name"] = c.name;
      item["pass"] = c.pass;
      if (c.deviation) item["deviation"] = *c.deviation;
      if (c.tolerance) item["tolerance"] = *c.tolerance;
      if (!c.detail.empty()) item["detail"] = c.detail;
      checks.append(item);
    }
    py::dict out;
    out["pass"] = outcome.pass;
    out["checks"] = checks;
    return out;
  }
  py::object scaling_grid() const {
    const SpatialStepFunction phi = inverse_fourier(family.scaling());
    py::list out;
    for (std::size_t i = 0; i < phi.grid_size(); ++i) {
      const FieldElement x = phi.point(i);
      py::dict blocks;
      for (const auto& [idx, b] : x.blocks())
        blocks[py::str(std::to_string(idx))] = py::cast(b.digits());
      out.append(py::make_tuple(blocks, phi.at_index(i)));
    }
    return out;
  }
};

struct PySystem {
  ValidTree tree;
  WaveletSystem system;

  static PySystem build(const PyFamily& f) {
    return {f.tree, WaveletSystem::build(f.family)};
  }
  py::object to_json_py() const {
    return json_to_py(system_to_json(system, tree));
  }
  py::object psi(std::size_t i) const { return spectrum_to_py(system.psi(i)); }
  py::object dual_psi(std::size_t i) const {
    return spectrum_to_py(system.dual_psi(i));
  }
  std::size_t count() const { return system.count(); }
  py::object verify(std::optional<std::uint32_t> depth, int level_lo,
                    int level_hi, double tol) const {
    VerifyOptions options;
    options.depth = depth;
    options.level_lo = level_lo;
    options.level_hi = level_hi;
    options.tolerance = tol;
    VerifyOutcome outcome = verify_all(tree, system, options);
    py::list checks;
    for (const CheckResult& c : outcome.checks) {
      py::dict item;
      item["name"] = c.name;
      item["pass"] = c.pass;
      if (c.deviation) item["deviation"] = *c.deviation;
      if (c.tolerance) item["tolerance"] = *c.tolerance;
      if (!c.detail.empty()) item["detail"] = c.detail;
      checks.append(item);
    }
    py::dict out;
    out["pass"] = outcome.pass;
    out["checks"] = checks;
    return out;
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Tree-generated Riesz multiresolution analyses and biorthogonal "
      "wavelet systems on local fields of positive characteristic";

  py::register_exception<SchemaError>(m, "SchemaError");

  py::class_<PyTree>(m, "Tree")
      .def_static("basic", &PyTree::basic, py::arg("p"), py::arg("s"),
                  py::arg("N"),
                  "Minimal-height N-valid tree over GF(p)^s")
      .def_static("from_json", &PyTree::from_json)
      .def("to_json", &PyTree::to_json_py)
      .def("validate", &PyTree::validate)
      .def("basic_step", &PyTree::basic_step, py::arg("node"),
           py::arg("target"))
      .def("admissible_moves", &PyTree::admissible_moves)
      .def("windows", &PyTree::windows, py::arg("len"))
      .def_property_readonly(
          "height", [](const PyTree& t) { return t.tree.height(); })
      .def_property_readonly(
          "node_count", [](const PyTree& t) { return t.tree.size(); })
      .def_property_readonly(
          "N", [](const PyTree& t) { return t.tree.window_length(); });

  py::class_<PyFamily>(m, "Family")
      .def_static("build", &PyFamily::build, py::arg("tree"),
                  py::arg("mask"),
                  "Scaling pair from a tree and a mask dictionary")
      .def("to_json", &PyFamily::to_json_py)
      .def("scaling", &PyFamily::scaling)
      .def("dual_scaling", &PyFamily::dual_scaling)
      .def("bounds", &PyFamily::bounds)
      .def("scaling_grid", &PyFamily::scaling_grid)
      .def("verify", &PyFamily::verify, py::arg("tol") = 1e-9);

  py::class_<PySystem>(m, "System")
      .def_static("build", &PySystem::build, py::arg("family"))
      .def("to_json", &PySystem::to_json_py)
      .def("psi", &PySystem::psi, py::arg("index"))
      .def("dual_psi", &PySystem::dual_psi, py::arg("index"))
      .def_property_readonly("count", &PySystem::count)
      .def("verify", &PySystem::verify, py::arg("depth") = py::none(),
           py::arg("level_lo") = -1, py::arg("level_hi") = 1,
           py::arg("tol") = 1e-9);

  m.def("elementary_from_tree", &elementary_from_tree_py, py::arg("tree"),
        "Coset family of a tree's padded (N+1)-windows");
  m.def("validate_elementary", &validate_elementary_py, py::arg("set"),
        py::arg("N"), py::arg("M"));
  m.def("default_mask", &default_mask_py, py::arg("tree"), py::arg("A"),
        py::arg("B"), py::arg("seed") = 0,
        "Seeded mask fixture with |m|^2 in [A, B]");

#ifdef LFWAVE_VERSION
  m.attr("__version__") = LFWAVE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
