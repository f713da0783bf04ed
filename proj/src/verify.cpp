#include "tslines/verify.hpp"

#include <cmath>
#include <random>

#include "tslines/error.hpp"

namespace tslines {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Suite {
 public:
  explicit Suite(VerifyReport& r) : report_(r) {}

  void add(std::string id, std::string anchor, bool ok, Json measured, Json expected, double tol) {
    push(std::move(id), std::move(anchor), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(measured),
         std::move(expected), tol);
  }

  /// `reproduced`: the known misprint reproduces exactly as characterized.
  void discrepancy(std::string id, std::string anchor, bool reproduced, Json measured, Json expected,
                   double tol) {
    push(std::move(id), std::move(anchor), reproduced ? CheckStatus::Discrepancy : CheckStatus::Fail,
         std::move(measured), std::move(expected), tol);
  }

  template <class Fn>
  void guarded(const std::string& id, const std::string& anchor, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      push(id, anchor, CheckStatus::Fail, Json{{"error", e.what()}}, nullptr, 0.0);
    }
  }

 private:
  void push(std::string id, std::string anchor, CheckStatus st, Json measured, Json expected, double tol) {
    for (const auto& c : report_.checks) {
      if (c.id == id) throw Error(ErrorCode::BadInput, "duplicate check id " + id);
    }
    report_.checks.push_back({std::move(id), std::move(anchor), st, std::move(measured), std::move(expected), tol});
  }

  VerifyReport& report_;
};

MonomialField cubic_support_field() {
  return MonomialField::monomial(3, 0, 2.0 / 3.0) + MonomialField::monomial(0, 3, 2.0 / 3.0);
}

MonomialField cubic_section_field() {
  return MonomialField::conformal().pow(2) * MonomialField::monomial(0, 2);
}

Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = radius * std::sqrt(u(rng));
  const double th = 2.0 * kPi * u(rng);
  return std::polar(rho, th);
}

MonomialField random_support(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MonomialField::Terms t;
  for (int m = 0; m <= degree; ++m) {
    for (int n = m; m + n <= degree; ++n) {
      if (m + n == 0) continue;
      const Complex c = m == n ? Complex{u(rng), 0.0} : Complex{u(rng), u(rng)};
      t[{m, n}] += c;
      if (m != n) t[{n, m}] += std::conj(c);
    }
  }
  return MonomialField(std::move(t)).as_real();
}

TangentVec section_tangent(const SectionGraph& F, const RationalField& dF, const RationalField& dbF, Complex xi,
                           Complex dxi) {
  return {{xi, F(xi)}, dxi, eval(dF, xi) * dxi + eval(dbF, xi) * std::conj(dxi)};
}

void check_support_pair(Suite& s, std::mt19937_64& rng) {
  s.guarded("support_pair_identity", "dr/dxi = 2 conj(F) / (1+xi xibar)^2 for r = (2/3)(xi^3 + xibar^3)", [&] {
    const SupportFunction r(cubic_support_field());
    const MonomialField F = cubic_section_field();
    const MonomialField lhs = d_xi(r.field()) * MonomialField::conformal().pow(2);
    const MonomialField rhs = MonomialField(2.0) * F.conj();
    const double coeff = coefficient_distance(lhs, rhs);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Complex z = random_point(rng, 2.0);
      const double t = std::norm(z);
      worst = std::max(worst, std::abs(eval(d_xi(r.field()), z) - 2.0 * std::conj(eval(F, z)) / ((1 + t) * (1 + t))));
    }
    const SectionGraph built = section_from_support(r);
    const double construct = coefficient_distance(built.F.with_den_power(0).num, F);
    s.add("support_pair_identity", "dr/dxi = 2 conj(F) / (1+xi xibar)^2 for r = (2/3)(xi^3 + xibar^3)",
          coeff == 0.0 && worst < 1e-12 && construct < 1e-12 && built.F.den_power == 0,
          {{"coefficient_distance", coeff}, {"max_point_residual", worst}, {"section_from_support_distance", construct}},
          0.0, 1e-12);
  });
}

void check_hyperbolic(Suite& s) {
  const std::string anchor = "the section from r = (2/3)(xi^3 + xibar^3) has a complex point of index -1 at 0";
  s.guarded("hyperbolic_index", anchor, [&] {
    const SectionGraph F = section_from_support(SupportFunction(cubic_support_field()));
    Json m = Json::array();
    bool ok = true;
    for (double rad : {0.05, 0.1, 0.2}) {
      const IndexResult ir = section_complex_index(F, 0.0, rad);
      m.push_back({{"loop_radius", rad}, {"index", ir.index}, {"umbilic_index", ir.umbilic_index()}});
      ok = ok && ir.index == -1 && ir.umbilic_index() == -0.5;
    }
    const auto pts = find_complex_points(F, {0.0, 0.9});
    ok = ok && pts.size() == 1 && std::abs(pts[0].location) < 1e-10 && pts[0].kind == PointKind::Hyperbolic;
    m.push_back({{"complex_points_in_disc", pts.size()}});
    s.add("hyperbolic_index", anchor, ok, m, {{"index", -1}, {"umbilic_index", -0.5}}, 0.0);
  });

  const std::string anchor2 = "the umbilic at the origin of the reconstructed surface has index -1/2";
  s.guarded("umbilic_index_principal", anchor2, [&] {
    const SupportFunction r(cubic_support_field());
    const SectionGraph F = section_from_support(r);
    const PrincipalAnalysis pa3 = principal_analysis(F, r, 3.0, {0.0, 0.9});
    const PrincipalAnalysis pa4 = principal_analysis(F, r, 4.0, {0.0, 0.9});
    bool ok = pa3.umbilics.size() == 1 && pa4.umbilics.size() == 1;
    Json m = Json::array();
    for (const auto* pa : {&pa3, &pa4}) {
      for (const auto& u : pa->umbilics) m.push_back(to_json(u));
    }
    if (ok) {
      ok = pa3.umbilics[0].index_doubled == -1 && pa4.umbilics[0].index_doubled == -1 &&
           std::abs(pa3.umbilics[0].location) < 1e-8 && std::abs(pa3.umbilics[0].location - pa4.umbilics[0].location) < 1e-10;
    }
    s.add("umbilic_index_principal", anchor2, ok, {{"C=3,C=4", m}}, {{"index", -0.5}, {"location", to_json(Complex{0.0, 0.0})}},
          1e-8);
  });
}

void check_lagrangian(Suite& s, std::mt19937_64& rng) {
  const std::string anchor = "the section of a support function is Lagrangian for the symplectic form";
  s.guarded("lagrangian_section", anchor, [&] {
    const SectionGraph F = section_from_support(SupportFunction(cubic_support_field()));
    const RationalField dF = d_xi(F.F);
    const RationalField dbF = d_xibar(F.F);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      for (int j = 0; j < 30; ++j) {
        const Complex xi{-1.0 + 2.0 * i / 29.0, -1.0 + 2.0 * j / 29.0};
        const TangentVec a = section_tangent(F, dF, dbF, xi, 1.0);
        const TangentVec b = section_tangent(F, dF, dbF, xi, {0.0, 1.0});
        worst = std::max(worst, std::abs(omega(a, b)));
      }
    }
    s.add("lagrangian_section", anchor, worst < 1e-10, {{"max_abs_omega", worst}, {"grid", "30x30 on [-1,1]^2"}}, 0.0,
          1e-10);
  });

  const std::string anchor2 = "the neutral metric has signature (2,2)";
  s.guarded("metric_signature", anchor2, [&] {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      const OrientedLine at{random_point(rng, 2.0), {u(rng), u(rng)}};
      ok = ok && metric_signature(at) == Signature{2, 2, 0};
    }
    s.add("metric_signature", anchor2, ok, {{"points", 20}, {"all_2_2", ok}}, {{"positive", 2}, {"negative", 2}}, 0.0);
  });

  const std::string anchor3 = "the symplectic form and the metric are compatible through the complex structure";
  s.guarded("kahler_compatibility", anchor3, [&] {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 50; ++k) {
      const OrientedLine at{random_point(rng, 2.0), {u(rng), u(rng)}};
      const TangentVec v{at, {u(rng), u(rng)}, {u(rng), u(rng)}};
      const TangentVec w{at, {u(rng), u(rng)}, {u(rng), u(rng)}};
      if (std::abs(metric_g(apply_j(v), w)) < 1e-3) continue;
      const double q = compatibility_ratio(v, w);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    s.add("kahler_compatibility", anchor3, hi - lo < 1e-9 && std::abs(lo + 2.0) < 1e-9,
          {{"ratio_min", lo}, {"ratio_max", hi}}, -2.0, 1e-9);
  });
}

void check_c1(Suite& s, std::mt19937_64& rng) {
  const std::string anchor = "the C1 cross-cap with a = (c-1)(1-R0^2)^2, b = 2(1-c)(1-R0^2) is C1 across the seam";
  s.guarded("c1_seam", anchor, [&] {
    std::uniform_real_distribution<double> uc(1.2, 8.8);
    std::uniform_real_distribution<double> ur(0.93, 0.99);
    double v = 0.0, d1 = 0.0;
    for (int k = 0; k < 10; ++k) {
      C1CrossCapParams p;
      p.c = uc(rng);
      p.r0 = ur(rng);
      p.eps = 0.1;
      const SeamReport sr = seam_report(build_c1_crosscap(p), 0, 1, 1e-12);
      v = std::max(v, sr.value_jump);
      d1 = std::max(d1, sr.derivative_jumps[0]);
    }
    s.add("c1_seam", anchor, v < 1e-12 && d1 < 1e-12, {{"max_value_jump", v}, {"max_first_derivative_jump", d1}}, 0.0,
          1e-12);
  });

  const std::string anchor2 = "the C1 cross-cap is not C2 across the seam";
  s.guarded("c1_not_c2", anchor2, [&] {
    const SeamReport sr = seam_report(build_c1_crosscap({}), 0, 2, 1e-12);
    s.add("c1_not_c2", anchor2, sr.derivative_jumps[1] > 1e-3 && sr.certified_order == 1, to_json(sr),
          {{"second_derivative_jump_above", 1e-3}}, 1e-3);
  });

  const std::string anchor3 = "c = 1 gives the trivial matching a = b = 0";
  s.guarded("c1_trivial_c", anchor3, [&] {
    const MatchingConstants mc = c1_matching_constants(1.0, 0.95);
    s.add("c1_trivial_c", anchor3, mc.a == 0.0 && mc.b == 0.0, {{"a", mc.a}, {"b", mc.b}}, {{"a", 0.0}, {"b", 0.0}},
          0.0);
  });
}

void check_reality_polynomial(Suite& s) {
  const std::string anchor = "bracket coefficients of 1, x, x^2 in the totally real condition g";
  s.guarded("g_low_coefficients", anchor, [&] {
    bool ok = true;
    Json m = Json::array();
    for (double c : {1.5, 5.0, 8.5}) {
      C1CrossCapParams p;
      p.c = c;
      const RealityPolynomial rp = derive_reality_polynomial(p);
      const Poly2 printed = printed_reality_polynomial(c);
      double worst = 0.0;
      for (int i = 0; i <= 2; ++i) {
        const auto a = rp.g.x_coefficient(i);
        const auto b = printed.x_coefficient(i);
        for (std::size_t j = 0; j < std::max(a.size(), b.size()); ++j) {
          const double aj = j < a.size() ? a[j] : 0.0;
          const double bj = j < b.size() ? b[j] : 0.0;
          worst = std::max(worst, std::abs(aj - bj));
        }
      }
      ok = ok && worst < 1e-12 && rp.inner_factorization_holds && rp.g.x_degree() == 3;
      m.push_back({{"c", c}, {"max_coefficient_difference", worst}, {"inner_factorization", rp.inner_factorization_holds}});
    }
    s.add("g_low_coefficients", anchor, ok, m, 0.0, 1e-12);
  });

  const std::string anchor2 = "x^3 coefficient of g";
  s.guarded("g_cubic_sign", anchor2, [&] {
    bool reproduced = true;
    Json m = Json::array();
    for (double c : {1.5, 5.0, 8.5}) {
      C1CrossCapParams p;
      p.c = c;
      const Poly2 g = derive_reality_polynomial(p).g;
      const Poly2 printed = printed_reality_polynomial(c);
      const auto dv = g.x_coefficient(3);
      const auto pv = printed.x_coefficient(3);
      const double derived = dv.empty() ? 0.0 : dv[0];
      const double shown = pv.empty() ? 0.0 : pv[0];
      reproduced = reproduced && dv.size() == 1 && std::abs(derived + 3.0 * c) < 1e-12 &&
                   std::abs(shown - 3.0 * c) < 1e-12;
      m.push_back({{"c", c}, {"derived", derived}, {"printed", shown}});
    }
    s.discrepancy("g_cubic_sign", anchor2, reproduced, m, "derived -3c, printed +3c", 1e-12);
  });

  const std::string anchor3 = "g(1,1) = 0, grad g(1,1) = 0, |det Hess g(1,1)| = |(9-c)(c-1)|";
  s.guarded("g_critical_point", anchor3, [&] {
    bool ok = true;
    Json m = Json::array();
    for (double c : {1.5, 5.0, 8.5}) {
      C1CrossCapParams p;
      p.c = c;
      const GCriticalReport r = g_critical_report(derive_reality_polynomial(p).g, c);
      ok = ok && r.pass && r.value_zero && r.gradient_zero && r.det_matches;
      m.push_back(to_json(r));
    }
    s.add("g_critical_point", anchor3, ok, m, "value 0, gradient 0, |det| = |(9-c)(c-1)|", 1e-10);
  });

  const std::string anchor4 = "the Hessian of g at (1,1) is definite exactly for 1 < c < 9";
  s.guarded("g_definite_range", anchor4, [&] {
    bool ok = true;
    Json m = Json::array();
    for (double c : {0.5, 1.5, 5.0, 8.5, 9.5}) {
      C1CrossCapParams p;
      p.c = c;
      const GCriticalReport r = g_critical_report(derive_reality_polynomial(p).g, c);
      ok = ok && r.pass && r.definite == (c > 1.0 && c < 9.0);
      m.push_back({{"c", c}, {"definite", r.definite}});
    }
    s.add("g_definite_range", anchor4, ok, m, "definite iff 1 < c < 9", 0.0);
  });

  const std::string anchor5 = "the C1 cross-cap with c = 5, R0^2 = 0.95, eps = 0.1 is totally real";
  s.guarded("c1_totally_real", anchor5, [&] {
    C1CrossCapParams p;
    p.c = 5.0;
    p.r0 = std::sqrt(0.95);
    p.eps = 0.1;
    const CertificationReport r = certify_c1_crosscap(p, 512, 512, 1e-6);
    s.add("c1_totally_real", anchor5, r.pass && r.min_abs_w > 1e-6, to_json(r), {{"min_abs_w_above", 1e-6}}, 1e-6);
  });
}

void check_c2(Suite& s) {
  const std::string anchor = "solved constants make the C2 cross-cap match through second order at the seam";
  s.guarded("c2_seam", anchor, [&] {
    bool ok = true;
    Json m = Json::array();
    for (double r2 : {0.8, 0.9, 0.95}) {
      C2CrossCapParams p;
      p.r0 = std::sqrt(r2);
      const ParamSurface surf = build_c2_crosscap(p);
      const SeamReport sr = seam_report(surf, surf.pieces().size() - 2, 2, 1e-9);
      const C2Constants k = c2_constants(p.r0);
      ok = ok && sr.value_jump < 1e-9 && sr.derivative_jumps[0] < 1e-9 && sr.derivative_jumps[1] < 1e-9 &&
           k.solved_max_residual < 1e-9;
      m.push_back({{"R0_squared", r2}, {"seam", to_json(sr)}, {"constants", to_json(k)}});
    }
    s.add("c2_seam", anchor, ok, m, 0.0, 1e-9);
  });

  const std::string anchor2 = "printed C2 constants a, b, c at R0^2 = 0.8";
  s.guarded("c2_printed_constants", anchor2, [&] {
    const C2Constants k = c2_constants(std::sqrt(0.8));
    const bool reproduced = k.printed_value_residual > 1e-3 && std::abs(k.printed_value_residual - 3.4e-2) < 1e-3 &&
                            k.solved_max_residual < 1e-9 && std::abs(k.printed_a - k.a) < 1e-12 &&
                            std::abs(k.printed_c - k.c) < 1e-12 && std::abs(k.printed_b + k.b) < 1e-12;
    s.discrepancy("c2_printed_constants", anchor2, reproduced, to_json(k),
                  {{"printed_value_residual", 3.4e-2}, {"note", "printed b has the opposite sign"}}, 1e-3);
  });

  const std::string anchor3 = "C2 constants tend to (0, 0, 1) as R0 tends to 1";
  s.guarded("c2_limit", anchor3, [&] {
    const C2Constants k = c2_constants(std::sqrt(0.999));
    const double d = std::max({std::abs(k.a), std::abs(k.b), std::abs(k.c - 1.0)});
    s.add("c2_limit", anchor3, d < 1e-2, to_json(k), {{"a", 0.0}, {"b", 0.0}, {"c", 1.0}}, 1e-2);
  });

  const std::string anchor4 = "the C2 cross-cap is totally real";
  s.guarded("c2_totally_real", anchor4, [&] {
    bool ok = true;
    Json m = Json::array();
    for (double r2 : {0.8, 0.9, 0.95}) {
      C2CrossCapParams p;
      p.r0 = std::sqrt(r2);
      const CertificationReport r = certify_totally_real(build_c2_crosscap(p), 256, 256, 1e-6);
      ok = ok && r.pass;
      m.push_back({{"R0_squared", r2}, {"min_abs_w", r.min_abs_w}});
    }
    s.add("c2_totally_real", anchor4, ok, m, {{"min_abs_w_above", 1e-6}}, 1e-6);
  });
}

void check_reconstruction(Suite& s, std::mt19937_64& rng) {
  const std::string anchor = "the line congruence of a support function is orthogonal to x with x.U = r + C";
  s.guarded("reconstruction_support", anchor, [&] {
    const DiscGrid grid{0.9, 40, 40, 0.0};
    std::vector<MonomialField> supports{cubic_support_field()};
    for (int k = 0; k < 5; ++k) supports.push_back(random_support(rng, 4));
    double worst = 0.0, ortho = 0.0;
    for (const auto& f : supports) {
      const SupportFunction r(f);
      const SectionGraph F = section_from_support(r);
      const MeshR3 mesh = reconstruct_surface(F, r, 2.0, grid);
      const SupportCheck chk = support_property_check(mesh, F, r, 2.0);
      worst = std::max(worst, chk.max_support_residual);
      ortho = std::max(ortho, chk.max_orthogonality);
    }
    s.add("reconstruction_support", anchor, worst < 1e-10 && ortho < 1e-6,
          {{"max_support_residual", worst}, {"max_orthogonality", ortho}, {"surfaces", supports.size()}}, 0.0, 1e-10);
  });

  const std::string anchor2 = "changing C moves the surface a unit distance along U";
  s.guarded("parallel_surfaces", anchor2, [&] {
    const SupportFunction r(cubic_support_field());
    const SectionGraph F = section_from_support(r);
    const DiscGrid grid{0.9, 40, 40, 0.0};
    const MeshR3 a = reconstruct_surface(F, r, 0.0, grid);
    const MeshR3 b = reconstruct_surface(F, r, 1.0, grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.vertices.size(); ++k) {
      worst = std::max(worst, (b.vertices[k].x - a.vertices[k].x - direction_vector(a.vertices[k].xi)).norm());
    }
    s.add("parallel_surfaces", anchor2, worst < 1e-12, {{"max_deviation", worst}}, 0.0, 1e-12);
  });

  const std::string anchor3 = "explicit family x1 + i x2 for r = (2/3)(xi^3 + xibar^3)";
  s.guarded("printed_family", anchor3, [&] {
    const SupportFunction r(cubic_support_field());
    const SectionGraph F = section_from_support(r);
    auto family = [](Complex z, double C) {
      const Complex zb = std::conj(z);
      const double t = std::norm(z);
      return 2.0 * (3.0 * zb * zb - std::pow(z, 4) + 5.0 * z * std::pow(zb, 3) - 3.0 * std::pow(z, 5) * zb) /
                 (3.0 * (1.0 + t)) +
             2.0 * C * z / (1.0 + t);
    };
    const Vec3 x = point_from_line(1.0, F(1.0), r(1.0));
    const Complex at1{x.x(), x.y()};
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Complex z = random_point(rng, 1.5);
      const double C = 3.0 * (k % 5) / 4.0;
      const Vec3 p = point_from_line(z, F(z), r(z) + C);
      worst = std::max(worst, std::abs(Complex{p.x(), p.y()} - family(z, C)));
    }
    const bool ok = std::abs(at1 - 4.0 / 3.0) < 1e-12 && std::abs(family(1.0, 0.0) - 4.0 / 3.0) < 1e-12 &&
                    worst < 1e-12;
    s.add("printed_family", anchor3, ok,
          {{"x1_plus_ix2_at_1", to_json(at1)}, {"family_at_1", to_json(family(1.0, 0.0))}, {"max_family_residual", worst}},
          4.0 / 3.0, 1e-12);
  });

  const std::string anchor4 = "the round sphere r = 0 is totally umbilic";
  s.guarded("round_sphere", anchor4, [&] {
    const SupportFunction r;
    const SectionGraph F = section_from_support(r);
    const PrincipalAnalysis pa = principal_analysis(F, r, 1.0, {0.0, 0.9});
    const MeshR3 m = reconstruct_surface(F, r, 1.0, {0.9, 20, 20, 0.0});
    double radius_err = 0.0;
    for (const auto& v : m.vertices) radius_err = std::max(radius_err, std::abs(v.x.norm() - 1.0));
    s.add("round_sphere", anchor4, pa.totally_umbilic && radius_err < 1e-12,
          {{"totally_umbilic", pa.totally_umbilic}, {"max_radius_error", radius_err}}, true, 1e-12);
  });
}

void check_correspondence(Suite& s) {
  const std::string anchor = "complex index is twice the umbilic index, I = 2i";
  s.guarded("index_correspondence", anchor, [&] {
    Json m = Json::array();
    bool ok = true;
    struct Case {
      const char* name;
      MonomialField r;
      double disc;
      int expected;
    };
    const std::vector<Case> cases{{"hyperbolic", cubic_support_field(), 0.9, -1},
                                  {"elliptic", MonomialField::monomial(1, 1), 0.5, 2}};
    for (const auto& c : cases) {
      const SupportFunction r(c.r);
      const SectionGraph F = section_from_support(r);
      const IndexResult ci = section_complex_index(F, 0.0, 0.1);
      const PrincipalAnalysis pa = principal_analysis(F, r, 3.0, {0.0, c.disc});
      const bool one = pa.umbilics.size() == 1;
      const int doubled = one ? pa.umbilics[0].index_doubled : 0;
      ok = ok && one && ci.index == c.expected && doubled == ci.index;
      m.push_back({{"case", c.name}, {"complex_index", ci.index}, {"umbilic_index", 0.5 * doubled}});
    }
    s.add("index_correspondence", anchor, ok, m, "I = 2i with I = -1 and I = 2", 0.0);
  });

  const std::string anchor2 = "local complex indices add up to the boundary winding";
  s.guarded("index_additivity", anchor2, [&] {
    const SectionGraph F =
        section_from_support(SupportFunction(cubic_support_field() + MonomialField::monomial(2, 2, 4.0)));
    const Disc disc{0.0, 0.8};
    const auto pts = find_complex_points(F, disc);
    int sum = 0;
    Json m = Json::array();
    for (const auto& p : pts) {
      sum += p.index;
      m.push_back(to_json(p));
    }
    const int bnd = boundary_index(F, disc);
    s.add("index_additivity", anchor2, pts.size() > 1 && sum == bnd,
          {{"points", m}, {"sum", sum}, {"boundary_index", bnd}}, "sum of indices = boundary winding", 0.0);
  });

  const std::string anchor3 = "normal form a xibar^2 + b xi xibar has index -1 when 2|a| > |b|";
  s.guarded("quadratic_model", anchor3, [&] {
    const QuadraticModel hyp = quadratic_model_index(1.0, 0.3);
    const QuadraticModel gap = quadratic_model_index(1.0, 1.0);
    const QuadraticModel ell = quadratic_model_index(0.2, 1.0);
    const bool ok = hyp.index == -1 && !hyp.in_gap_zone && gap.index == -1 && gap.in_gap_zone && ell.index == 1;
    s.add("quadratic_model", anchor3, ok,
          {{"beta_0.3", hyp.index}, {"beta_1", gap.index}, {"alpha_0.2_beta_1", ell.index}, {"gap_flag", gap.in_gap_zone}},
          {{"beta_0.3", -1}, {"beta_1", -1}, {"alpha_0.2_beta_1", 1}}, 0.0);
  });
}

void check_ledger(Suite& s, std::mt19937_64& rng) {
  const std::string anchor = "sphere section: chi(T) + chi(N) = 4";
  s.guarded("lai_sphere", anchor, [&] {
    const LaiSum l = lai_sum({2, 2, {{"p", 4}}});
    s.add("lai_sphere", anchor, l.total == 4 && l.consistent, {{"total", l.total}, {"consistent", l.consistent}}, 4, 0.0);
  });

  const std::string anchor2 = "umbilic of index 2 + k/2 closes to a single complex point of index 4 + k";
  s.guarded("reformulation_scenario", anchor2, [&] {
    bool ok = true;
    for (int k = 0; k <= 20; ++k) {
      const ScenarioReport r = reformulation_scenario(k);
      ok = ok && r.identities_hold && r.complex_index == 4 + k && r.umbilic_index_doubled == 4 + k &&
           r.annulus_sum == -k && r.lai_total == 4 + k && r.blown_up.inventory.size() == 1;
    }
    s.add("reformulation_scenario", anchor2, ok, {{"k_range", {0, 20}}, {"k0", to_json(reformulation_scenario(0))}},
          "exact integer identities", 0.0);
  });

  const std::string anchor3 = "connect sum with RP^2 keeps Lai's formula";
  s.guarded("connect_sum_consistency", anchor3, [&] {
    std::uniform_int_distribution<int> chi(-6, 6), nh(0, 5), ne(0, 4), idx(1, 3);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      TopLedger l{chi(rng), chi(rng), {}};
      const int h = nh(rng);
      for (int k = 0; k < h; ++k) l.inventory.push_back({"h" + std::to_string(k), -1});
      const int e = ne(rng);
      for (int k = 0; k < e; ++k) l.inventory.push_back({"e" + std::to_string(k), idx(rng)});
      l.inventory.push_back({"p", l.chi_t + l.chi_n - l.index_sum()});
      std::uniform_int_distribution<int> pick(0, h);
      const int k = pick(rng);
      std::vector<std::string> removed;
      for (int j = 0; j < k; ++j) removed.push_back("h" + std::to_string(j));
      const TopLedger out = connect_sum_rp2(l, k, removed);
      ok = ok && l.consistent() && out.consistent() && out.chi_t == l.chi_t - k && out.chi_n == l.chi_n + 2 * k;
    }
    s.add("connect_sum_consistency", anchor3, ok, {{"trials", 100}, {"all_consistent", ok}}, true, 0.0);
  });
}

void check_crosscap(Suite& s) {
  const std::string anchor = "the simple cross-cap identifies antipodal boundary points";
  s.guarded("crosscap_antipodal", anchor, [&] {
    const ParamSurface cc = simple_crosscap(0.5);
    const double gap = antipodal_gap(cc);
    s.add("crosscap_antipodal", anchor, gap < 1e-12, {{"max_antipodal_gap", gap}}, 0.0, 1e-12);
  });

  const std::string anchor2 = "boundary lines of the simple cross-cap meet a translate in exactly two lines";
  s.guarded("crosscap_translate", anchor2, [&] {
    const ParamSurface cc = simple_crosscap(0.5);
    std::vector<SurfacePiece> moved;
    const MonomialField shift = translation_section(Vec3(0.3, 0.1, 0.0));
    for (auto p : cc.pieces()) {
      p.eta_expr = p.eta_expr + compose(shift, p.xi_expr);
      moved.push_back(std::move(p));
    }
    const int n = count_coincident_lines(cc, ParamSurface(std::move(moved)), 1.0);
    s.add("crosscap_translate", anchor2, n == 2, {{"coincident_lines", n}}, 2, 1e-6);
  });
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Discrepancy:
      return "discrepancy";
  }
  return "fail";
}

int VerifyReport::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

int VerifyReport::exit_code() const {
  if (count(CheckStatus::Fail) > 0) return 1;
  return count(CheckStatus::Discrepancy) > 0 ? 2 : 0;
}

Json VerifyReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id},
                   {"anchor", c.anchor},
                   {"status", tslines::to_string(c.status)},
                   {"measured", c.measured},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance}});
  }
  return Json{{"seed", seed},
              {"checks", arr},
              {"summary",
               {{"pass", count(CheckStatus::Pass)},
                {"fail", count(CheckStatus::Fail)},
                {"discrepancy", count(CheckStatus::Discrepancy)}}}};
}

VerifyReport verify_paper(std::uint64_t seed) {
  VerifyReport report;
  report.seed = seed;
  Suite s(report);
  std::mt19937_64 rng(seed);
  check_support_pair(s, rng);
  check_hyperbolic(s);
  check_lagrangian(s, rng);
  check_c1(s, rng);
  check_reality_polynomial(s);
  check_c2(s);
  check_reconstruction(s, rng);
  check_correspondence(s);
  check_ledger(s, rng);
  check_crosscap(s);
  return report;
}

}  // namespace tslines
