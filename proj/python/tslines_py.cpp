#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tslines/error.hpp"
#include "tslines/json_io.hpp"
#include "tslines/linespace.hpp"
#include "tslines/verify.hpp"

namespace py = pybind11;
using namespace tslines;

namespace {

using Terms = std::map<std::pair<int, int>, Complex>;

SupportFunction support(const Terms& t) {
  MonomialField::Terms out;
  for (const auto& [e, c] : t) out[{e.first, e.second}] = c;
  return SupportFunction(MonomialField(std::move(out)));
}

Terms section_terms(const Terms& support_terms) {
  const MonomialField F = section_from_support(support(support_terms)).F.with_den_power(0).num;
  Terms out;
  for (const auto& [e, c] : F.terms()) out[{e.m, e.n}] = c;
  return out;
}

std::string points(const Terms& t, Complex center, double radius, int grid_n) {
  const SectionGraph F = section_from_support(support(t));
  Json out = Json::array();
  for (const auto& p : find_complex_points(F, {center, radius}, grid_n)) out.push_back(to_json(p));
  return out.dump();
}

std::string umbilics(const Terms& t, double C, Complex center, double radius) {
  const SupportFunction r = support(t);
  const PrincipalAnalysis pa = principal_analysis(section_from_support(r), r, C, {center, radius});
  Json list = Json::array();
  for (const auto& u : pa.umbilics) list.push_back(to_json(u));
  return Json{{"umbilics", list}, {"totally_umbilic", pa.totally_umbilic}, {"max_defect", pa.max_defect}}
      .dump();
}

std::string reconstruct(const Terms& t, double C, double radius, int radial_n, int angular_n,
                        const std::string& format) {
  const SupportFunction r = support(t);
  const MeshR3 m = reconstruct_surface(section_from_support(r), r, C, {radius, radial_n, angular_n, 0.0});
  if (format == "obj") return export_obj(m);
  if (format == "csv") return export_csv(m);
  throw Error(ErrorCode::BadInput, "format must be obj or csv");
}

std::string certify_c1(double c, double r0_squared, double eps, int radial_n, int angular_n, double min_mag) {
  C1CrossCapParams p;
  p.c = c;
  p.r0 = std::sqrt(r0_squared);
  p.eps = eps;
  return to_json(certify_c1_crosscap(p, radial_n, angular_n, min_mag)).dump();
}

py::dict probe(Complex xi, Complex eta) {
  const OrientedLine at{xi, eta};
  const LineVectors lv = line_to_vectors(at);
  const Signature s = metric_signature(at);
  py::dict d;
  d["U"] = Eigen::Vector3d(lv.U);
  d["V"] = Eigen::Vector3d(lv.V);
  d["omega"] = omega_matrix(at);
  d["metric"] = metric_matrix(at);
  d["signature"] = py::make_tuple(s.positive, s.negative, s.null);
  return d;
}

}  // namespace

PYBIND11_MODULE(_tslines, m) {
  m.doc() = "Oriented lines, Lagrangian sections and complex points";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = to_string(e.code());
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.def("direction_vector", [](Complex xi) { return Eigen::Vector3d(direction_vector(xi)); }, py::arg("xi"));
  m.def("point_from_line", [](Complex xi, Complex eta, double r) { return Eigen::Vector3d(point_from_line(xi, eta, r)); },
        py::arg("xi"), py::arg("eta"), py::arg("r"));
  m.def("tensor_probe", &probe, py::arg("xi"), py::arg("eta"));
  m.def("winding_number",
        [](const std::function<Complex(Complex)>& f, Complex center, double radius) {
          return winding_number(f, Loop(center, radius));
        },
        py::arg("f"), py::arg("center") = Complex{}, py::arg("radius") = 1.0);

  m.def("section_from_support", &section_terms, py::arg("support"));
  m.def("max_lagrangian_defect",
        [](const Terms& t, double radius) { return max_lagrangian_defect(section_from_support(support(t)), radius); },
        py::arg("support"), py::arg("radius") = 0.9);
  m.def("_complex_points", &points, py::arg("support"), py::arg("center") = Complex{}, py::arg("radius") = 0.5,
        py::arg("grid_n") = 64);
  m.def("boundary_index",
        [](const Terms& t, Complex center, double radius) {
          return boundary_index(section_from_support(support(t)), {center, radius});
        },
        py::arg("support"), py::arg("center") = Complex{}, py::arg("radius") = 0.5);
  m.def("_umbilics", &umbilics, py::arg("support"), py::arg("C"), py::arg("center") = Complex{},
        py::arg("radius") = 0.9);
  m.def("reconstruct", &reconstruct, py::arg("support"), py::arg("C"), py::arg("radius") = 0.9,
        py::arg("radial_n") = 40, py::arg("angular_n") = 40, py::arg("format") = "obj");

  m.def("c1_matching_constants",
        [](double c, double r0) {
          const MatchingConstants k = c1_matching_constants(c, r0);
          return py::make_tuple(k.a, k.b);
        },
        py::arg("c"), py::arg("r0"));
  m.def("_c2_constants", [](double r0) { return to_json(c2_constants(r0)).dump(); }, py::arg("r0"));
  m.def("_certify_c1", &certify_c1, py::arg("c"), py::arg("r0_squared"), py::arg("eps") = 0.1,
        py::arg("radial_n") = 256, py::arg("angular_n") = 256, py::arg("min_mag") = 1e-6);

  m.def("_reformulation_scenario", [](int k, int pairs) { return to_json(reformulation_scenario(k, pairs)).dump(); },
        py::arg("k"), py::arg("pairs") = 1);
  m.def("_verify_paper",
        [](std::uint64_t seed) {
          py::gil_scoped_release release;
          return verify_paper(seed).to_json().dump();
        },
        py::arg("seed") = kDefaultSeed);
}
