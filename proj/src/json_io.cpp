#include "tslines/json_io.hpp"

#include "tslines/error.hpp"

namespace tslines {

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw Error(ErrorCode::BadInput, "expected a complex number");
}

Json to_json(const MonomialField& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"m", e.m}, {"n", e.n}, {"re", c.real()}, {"im", c.imag()}});
  }
  return Json{{"terms", terms}, {"real", f.real()}};
}

MonomialField field_from_json(const Json& j) {
  const Json* terms = &j;
  bool real = false;
  if (j.is_object()) {
    if (!j.contains("terms")) throw Error(ErrorCode::BadInput, "field object needs \"terms\"");
    terms = &j.at("terms");
    real = j.value("real", false);
  }
  if (!terms->is_array()) throw Error(ErrorCode::BadInput, "field terms must be an array");
  MonomialField::Terms t;
  for (const Json& rec : *terms) {
    const int m = rec.at("m").get<int>();
    const int n = rec.at("n").get<int>();
    if (m < 0 || n < 0) throw Error(ErrorCode::BadInput, "negative exponent in field record");
    t[{m, n}] += Complex{rec.value("re", 0.0), rec.value("im", 0.0)};
  }
  MonomialField f(std::move(t));
  return real ? f.as_real() : f;
}

Json to_json(const RationalField& f) { return Json{{"num", to_json(f.num)}, {"den_power", f.den_power}}; }

RationalField rational_from_json(const Json& j) {
  if (j.is_object() && j.contains("num")) {
    return {field_from_json(j.at("num")), j.value("den_power", 0)};
  }
  return {field_from_json(j), 0};
}

Json to_json(const ComplexPointReport& r) {
  return Json{{"location", to_json(r.location)},   {"kind", to_string(r.kind)},
              {"index", r.index},                   {"umbilic_index", r.umbilic_index()},
              {"loop_radius", r.loop_radius}};
}

Json to_json(const SeamReport& r) {
  return Json{{"radius", r.radius},
              {"value_jump", r.value_jump},
              {"derivative_jumps", r.derivative_jumps},
              {"certified_order", r.certified_order},
              {"tolerance", r.tolerance}};
}

Json to_json(const CertificationReport& r) {
  Json pieces = Json::array();
  for (const auto& p : r.pieces) {
    pieces.push_back({{"rho_in", p.rho_in}, {"rho_out", p.rho_out}, {"min_abs_w", p.min_abs_w},
                      {"argmin", to_json(p.argmin)}});
  }
  Json j{{"pieces", pieces},         {"min_abs_w", r.min_abs_w}, {"argmin", to_json(r.argmin)},
         {"min_mag", r.min_mag},     {"phase_jumps", r.phase_jumps}, {"pass", r.pass}};
  if (r.min_abs_g) j["min_abs_g"] = *r.min_abs_g;
  return j;
}

Json to_json(const GCriticalReport& r) {
  return Json{{"c", r.c},
              {"value", r.value},
              {"gradient", {r.gx, r.gy}},
              {"gxx", r.gxx},
              {"gyy", r.gyy},
              {"gxy", r.gxy},
              {"hessian_det", r.hessian_det},
              {"expected_det_magnitude", r.expected_det_magnitude},
              {"definite", r.definite},
              {"printed_second_derivatives_flipped", r.printed_second_derivatives_flipped},
              {"pass", r.pass}};
}

Json to_json(const C2Constants& k) {
  return Json{{"R0", k.r0},
              {"solved", {{"a", k.a}, {"b", k.b}, {"c", k.c}}},
              {"printed", {{"a", k.printed_a}, {"b", k.printed_b}, {"c", k.printed_c}}},
              {"printed_residuals", {k.printed_value_residual, k.printed_d1_residual, k.printed_d2_residual}},
              {"solved_max_residual", k.solved_max_residual}};
}

Json to_json(const Poly2& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"x", e.first}, {"y", e.second}, {"coeff", c}});
  return terms;
}

Json to_json(const TopLedger& l) {
  Json inv = Json::array();
  for (const auto& p : l.inventory) inv.push_back({{"label", p.label}, {"index", p.index}});
  return Json{{"chi_t", l.chi_t}, {"chi_n", l.chi_n}, {"inventory", inv}, {"index_sum", l.index_sum()},
              {"consistent", l.consistent()}};
}

Json to_json(const ScenarioReport& r) {
  return Json{{"k", r.k},
              {"pairs", r.pairs},
              {"umbilic_index", 0.5 * r.umbilic_index_doubled},
              {"complex_index", r.complex_index},
              {"annulus_sum", r.annulus_sum},
              {"closed", to_json(r.closed)},
              {"cancelled", to_json(r.cancelled)},
              {"blown_up", to_json(r.blown_up)},
              {"lai_total", r.lai_total},
              {"identities_hold", r.identities_hold}};
}

Json to_json(const UmbilicReport& r) {
  return Json{{"location", to_json(r.location)}, {"index", r.index()}, {"loop_radius", r.loop_radius}};
}

}  // namespace tslines
