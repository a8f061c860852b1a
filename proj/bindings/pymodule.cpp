#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bldg/checks.hpp"

namespace py = pybind11;
using namespace bldg;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_((long long)j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

py::object report_py(const CheckReport& rep) { return to_py(rep.to_json()); }

SampleWindow window_of(long radius, int den, int samples, uint64_t seed) {
  return SampleWindow{radius, den, samples, seed};
}

struct PyInstance {
  BuildingInstance b;

  std::string name() const { return b.name; }
  std::string root_system_name() const { return b.rs->name; }
  std::string lambda() const { return lambda_name(b.lambda); }
  std::string t_mode() const { return tmode_name(b.tmode); }
  int apartments() const { return b.apartments; }

  std::string save() const { return save_instance(b); }
  void save_file(const std::string& path) const { write_instance_file(b, path); }

  py::object validate() const { return report_py(validate_atlas(b)); }

  py::object check(const std::string& axiom, long radius, int den, int samples, uint64_t seed,
                   const std::string& metric_) const {
    return report_py(
        check_axiom(b, axiom, window_of(radius, den, samples, seed), metric_from_name(metric_)));
  }

  py::object matrix(long radius, int den, int samples, uint64_t seed,
                    const std::string& metric_) const {
    return to_py(
        bundle_matrix(b, window_of(radius, den, samples, seed), metric_from_name(metric_))
            .to_json());
  }

  py::object metric_independence(long radius, int den, int samples, uint64_t seed) const {
    return report_py(check_metric_independence(b, window_of(radius, den, samples, seed)));
  }

  py::object residue_at(const std::string& at) const {
    BPoint x = parse_bpoint(b, at);
    ResidueComplex rc = residue(b, x);
    json j;
    j["at"] = bpoint_to_string(rc.at);
    j["chambers"] = json::array();
    for (const auto& g : rc.chambers) j["chambers"].push_back(germ_to_string(g, *b.rs));
    j["apartments"] = json::array();
    for (size_t a = 0; a < rc.apartments.size(); ++a)
      j["apartments"].push_back({{"chart", rc.apartment_chart[a]}, {"chambers", rc.apartments[a]}});
    json adj = json::array();
    for (const auto& row : rc.adjacency) adj.push_back(row);
    j["adjacency"] = adj;
    j["building"] = rc.building_check.to_json();
    return to_py(j);
  }

  py::object infinity() const {
    BoundaryComplex bc = boundary_complex(b);
    json j;
    j["chambers"] = (int)bc.chambers.size();
    j["panels"] = (int)bc.panels.size();
    j["apartments"] = json::array();
    for (const auto& ap : bc.apartments) j["apartments"].push_back(ap);
    j["building"] = bc.building_check.to_json();
    return to_py(j);
  }

  py::object sundial_at(int apartment, int chamber) const {
    BoundaryComplex bc = boundary_complex(b);
    auto res = sundial(b, bc, apartment, chamber);
    if (!res) return py::none();
    json j;
    j["opposite"] = {res->d1, res->d2};
    j["apartments"] = {res->a1, res->a2};
    j["triple"] = res->triple.cls == RegionClass::hyperplane ? "hyperplane" : "other";
    return to_py(j);
  }

  py::object retract_point(int apartment, const std::string& germ_base, const std::string& word,
                           const std::string& point) const {
    BPoint base = parse_bpoint(b, germ_base);
    int elem = 0;
    if (word != "e")
      for (char ch : word) {
        if (ch < '1' || ch > '0' + b.rs->rank) throw parse_error("bad word letter: " + word);
        elem = b.rs->mult[elem][b.rs->reflection[ch - '1']];
      }
    Germ mu = canonical_germ(b, base.chart, base.local, elem, 0);
    Retraction r = make_retraction(b, apartment, mu);
    auto img = retract(b, r, parse_bpoint(b, point));
    if (!img) return py::none();
    return py::str(bpoint_to_string(*img));
  }

  py::object distance_between(const std::string& p, const std::string& q,
                              const std::string& metric_) const {
    auto d = distance(b, parse_bpoint(b, p), parse_bpoint(b, q), metric_from_name(metric_));
    if (!d) return py::none();
    return py::str(to_string(*d));
  }

  bool same(const std::string& p, const std::string& q) const {
    return same_point(b, parse_bpoint(b, p), parse_bpoint(b, q));
  }

  py::object transport_point(const std::string& p, int chart) const {
    auto t = transport(b, parse_bpoint(b, p), chart);
    if (!t) return py::none();
    return py::str(bpoint_to_string(BPoint{chart, *t}));
  }

  PyInstance closed() const { return PyInstance{ec_closure(b)}; }
};

} // namespace

PYBIND11_MODULE(_lambdabuildings, m) {
  m.doc() = "exact-arithmetic workbench for finitely presented generalized affine buildings";

  py::class_<PyInstance>(m, "Instance")
      .def_property_readonly("name", &PyInstance::name)
      .def_property_readonly("root_system", &PyInstance::root_system_name)
      .def_property_readonly("lambda_group", &PyInstance::lambda)
      .def_property_readonly("t_mode", &PyInstance::t_mode)
      .def_property_readonly("apartments", &PyInstance::apartments)
      .def("save", &PyInstance::save)
      .def("save_file", &PyInstance::save_file, py::arg("path"))
      .def("validate", &PyInstance::validate)
      .def("check", &PyInstance::check, py::arg("axiom"), py::arg("radius") = 8,
           py::arg("den") = 4, py::arg("samples") = 200, py::arg("seed") = 1,
           py::arg("metric") = "d1")
      .def("matrix", &PyInstance::matrix, py::arg("radius") = 8, py::arg("den") = 4,
           py::arg("samples") = 200, py::arg("seed") = 1, py::arg("metric") = "d1")
      .def("metric_independence", &PyInstance::metric_independence, py::arg("radius") = 8,
           py::arg("den") = 4, py::arg("samples") = 200, py::arg("seed") = 1)
      .def("residue", &PyInstance::residue_at, py::arg("at"))
      .def("infinity", &PyInstance::infinity)
      .def("sundial", &PyInstance::sundial_at, py::arg("apartment"), py::arg("chamber"))
      .def("retract", &PyInstance::retract_point, py::arg("apartment"), py::arg("germ_base"),
           py::arg("word"), py::arg("point"))
      .def("distance", &PyInstance::distance_between, py::arg("p"), py::arg("q"),
           py::arg("metric") = "d1")
      .def("same_point", &PyInstance::same, py::arg("p"), py::arg("q"))
      .def("transport", &PyInstance::transport_point, py::arg("p"), py::arg("chart"))
      .def("ec_closure", &PyInstance::closed);

  m.def(
      "generate",
      [](const std::string& kind, const std::string& type, const std::string& lambda,
         int wall_root, int branches, const std::string& t_mode) {
        return PyInstance{generate(kind, type, lambda_from_name(lambda), wall_root - 1, branches,
                                   tmode_from_name(t_mode))};
      },
      py::arg("kind"), py::arg("type") = "A1", py::arg("lambda_group") = "Z",
      py::arg("wall_root") = 1, py::arg("branches") = 3, py::arg("t_mode") = "full");
  m.def("load", [](const std::string& path) { return PyInstance{load_instance_file(path)}; },
        py::arg("path"));
  m.def("loads", [](const std::string& text) { return PyInstance{load_instance(text)}; },
        py::arg("text"));
  m.def("axioms", [] { return all_axioms(); });

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
}
