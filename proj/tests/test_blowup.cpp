#include <doctest.h>

#include "oracles.hpp"
#include "tslines/blowup.hpp"
#include "tslines/error.hpp"

using namespace tslines;

namespace {

/// Q(s) = (1 + s²(1-s))² s² and its first two derivatives, expanded by hand.
double Q(double s) { return std::pow(1 + s * s * (1 - s), 2) * s * s; }

double Q1(double s) {
  const double p = 1 + s * s - s * s * s;
  return 2 * p * (2 * s - 3 * s * s) * s * s + 2 * p * p * s;
}

double Q2(double s) {
  const double p = 1 + s * s - s * s * s;
  const double dp = 2 * s - 3 * s * s;
  const double ddp = 2 - 6 * s;
  return 2 * (dp * dp + p * ddp) * s * s + 8 * p * dp * s + 2 * p * p;
}

C1CrossCapParams c1(double c, double r0_squared, double eps = 0.1) {
  C1CrossCapParams p;
  p.c = c;
  p.r0 = std::sqrt(r0_squared);
  p.eps = eps;
  return p;
}

}  // namespace

TEST_CASE("C1 matching constants") {
  const MatchingConstants z = c1_matching_constants(1.0, 0.9);
  CHECK(z.a == 0.0);
  CHECK(z.b == 0.0);
  const MatchingConstants m = c1_matching_constants(5.0, std::sqrt(0.8));
  CHECK(m.a == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(m.b == doctest::Approx(-1.6).epsilon(1e-12));

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uc(0.2, 12.0), ur(0.7, 0.99);
  for (int k = 0; k < 10; ++k) {
    const double c = uc(rng), r0 = ur(rng);
    const MatchingConstants mc = c1_matching_constants(c, r0);
    const double s0 = 1 - r0 * r0;
    CHECK(std::abs(s0 * s0 - (mc.a + mc.b * s0 + c * s0 * s0)) < 1e-12);
    CHECK(std::abs(2 * s0 - (mc.b + 2 * c * s0)) < 1e-12);
  }
}

TEST_CASE("C1 cross-cap geometry") {
  const ParamSurface s = build_c1_crosscap(c1(5.0, 0.95));
  REQUIRE(s.pieces().size() == 2);
  for (double th : {0.0, 1.0, 2.5}) {
    const Complex nu = std::polar(1.0 - 1e-13, th);
    CHECK(std::abs(s.xi(std::polar(1.0, th))) < 1e-15);
    CHECK(std::abs(s.eta(nu) - s.eta(-nu)) < 1e-10);
  }
  const SeamReport sr = seam_report(s, 0, 2, 1e-12);
  CHECK(sr.value_jump < 1e-12);
  CHECK(sr.derivative_jumps[0] < 1e-12);
  CHECK(sr.derivative_jumps[1] > 1e-3);
  CHECK(sr.certified_order == 1);
  CHECK_THROWS_AS(build_c1_crosscap(c1(5.0, 0.5)), Error);
  CHECK_THROWS_AS(build_c1_crosscap(c1(5.0, 0.95, 0.5)), Error);
}

TEST_CASE("reality polynomial coefficients") {
  for (double c : {0.5, 1.5, 5.0, 8.5}) {
    const RealityPolynomial rp = derive_reality_polynomial(c1(c, 0.95));
    CHECK(rp.inner_factorization_holds);
    const Poly2& g = rp.g;
    for (double y : {0.3, 0.8, 0.95}) {
      CHECK(g(0.0, y) == doctest::Approx(1 + (c - 1) * y * y).epsilon(1e-13));
      const auto x1 = g.x_coefficient(1);
      double v = 0.0;
      for (std::size_t j = 0; j < x1.size(); ++j) v += x1[j] * std::pow(y, static_cast<double>(j));
      CHECK(v == doctest::Approx(-(c * (3 + 2 * y) * y + (5 + 2 * y) * (1 - y))).epsilon(1e-13));
    }
    const auto x3 = g.x_coefficient(3);
    REQUIRE(x3.size() == 1);
    CHECK(x3[0] == doctest::Approx(-3 * c));
    CHECK(printed_reality_polynomial(c).x_coefficient(3)[0] == doctest::Approx(3 * c));
    const Poly2 diff = g - printed_reality_polynomial(c);
    for (const auto& [e, v] : diff.terms()) {
      CHECK(std::abs(v - (e == std::pair{3, 0} ? -6 * c : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("reality polynomial reproduces the defect on the outer piece") {
  // W = -2 alpha g(x, R0²) conj(nu) on the cross-cap annulus.
  for (Complex alpha : {Complex{1.0, 0.0}, Complex{0.3, -0.8}}) {
    C1CrossCapParams p = c1(5.0, 0.95);
    p.alpha = alpha;
    const ParamSurface s = build_c1_crosscap(p);
    const Poly2 g = derive_reality_polynomial(p).g;
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> ur(p.r0 + 1e-3, 1.0), ut(0.0, 2 * oracle::kPi);
    for (int k = 0; k < 10; ++k) {
      const Complex nu = std::polar(ur(rng), ut(rng));
      const Complex expect = -2.0 * alpha * g(std::norm(nu), p.r0 * p.r0) * std::conj(nu);
      CHECK(std::abs(surface_defect(s, nu) - expect) < 1e-12);
    }
    const double x = 0.85, rho = std::sqrt(x);
    CHECK(std::abs(surface_defect(s, rho) - 2.0 * alpha * (1 - x) * (1 - x) * (3 * x - 1) * rho) < 1e-12);
  }
}

TEST_CASE("critical point of g") {
  for (double c : {1.5, 5.0, 8.5}) {
    const GCriticalReport r = g_critical_report(derive_reality_polynomial(c1(c, 0.95)).g, c);
    CHECK(r.pass);
    CHECK(std::abs(r.value) < 1e-12);
    CHECK(std::abs(r.gx) < 1e-12);
    CHECK(std::abs(r.gy) < 1e-12);
    CHECK(std::abs(std::abs(r.hessian_det) - std::abs((9 - c) * (c - 1))) < 1e-10);
    CHECK(r.gxx == doctest::Approx(-4 * c));
    CHECK(r.gyy == doctest::Approx(-2 * (c - 1)));
    CHECK(r.gxy == doctest::Approx(3 * (c - 1)));
    CHECK(r.definite);
    CHECK(r.printed_second_derivatives_flipped);
  }
  const GCriticalReport r5 = g_critical_report(derive_reality_polynomial(c1(5.0, 0.95)).g, 5.0);
  CHECK(r5.expected_det_magnitude == doctest::Approx(16.0));
  for (double c : {0.5, 9.5}) {
    const GCriticalReport r = g_critical_report(derive_reality_polynomial(c1(c, 0.95)).g, c);
    CHECK_FALSE(r.definite);
    CHECK(r.pass);
  }
}

TEST_CASE("total reality certification") {
  const CertificationReport r = certify_c1_crosscap(c1(5.0, 0.95), 256, 256, 1e-6);
  CHECK(r.pass);
  REQUIRE(r.min_abs_g);
  CHECK(*r.min_abs_g > 1e-4);

  // Dense direct evaluation at the same parameters.
  const ParamSurface s = build_c1_crosscap(c1(5.0, 0.95));
  double dense = 1e300;
  for (int i = 0; i < 400; ++i) {
    const double rho = 0.9 + 0.1 * (i + 0.5) / 400;
    if (std::abs(rho - std::sqrt(0.95)) < 1e-9) continue;
    for (int j = 0; j < 64; ++j) dense = std::min(dense, std::abs(surface_defect(s, std::polar(rho, 0.1 * j))));
  }
  CHECK(dense > 1e-6);
  CHECK(dense == doctest::Approx(r.min_abs_w).epsilon(0.2));

  // Outside 1 < c < 9 the bracket changes sign: a circle of complex points.
  const CertificationReport bad = certify_c1_crosscap(c1(0.5, 0.95), 256, 256, 1e-6);
  CHECK_FALSE(bad.pass);
  CHECK(bad.phase_jumps > 0);
  CHECK(*bad.min_abs_g == 0.0);
  CHECK(r.phase_jumps == 0);
}

TEST_CASE("C2 constants") {
  const C2Constants k = c2_constants(std::sqrt(0.8));
  const double s0 = 0.2;
  CHECK(Q(s0) == doctest::Approx(0.04260096).epsilon(1e-12));
  CHECK(std::abs(k.a + k.b * s0 + k.c * s0 * s0 - Q(s0)) < 1e-12);
  CHECK(std::abs(k.b + 2 * k.c * s0 - Q1(s0)) < 1e-12);
  CHECK(std::abs(2 * k.c - Q2(s0)) < 1e-11);
  CHECK(k.printed_value_residual == doctest::Approx(0.03352576).epsilon(1e-9));
  CHECK(k.printed_a == doctest::Approx(k.a));
  CHECK(k.printed_c == doctest::Approx(k.c));
  CHECK(k.printed_b == doctest::Approx(-k.b));

  const C2Constants lim = c2_constants(std::sqrt(0.999));
  CHECK(std::abs(lim.a) < 1e-2);
  CHECK(std::abs(lim.b) < 1e-2);
  CHECK(std::abs(lim.c - 1) < 1e-2);
  CHECK(lim.printed_c == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("C2 cross-cap") {
  for (double r2 : {0.8, 0.9, 0.95}) {
    C2CrossCapParams p;
    p.r0 = std::sqrt(r2);
    const ParamSurface s = build_c2_crosscap(p);
    const SeamReport sr = seam_report(s, s.pieces().size() - 2, 2, 1e-9);
    CHECK(sr.value_jump < 1e-9);
    CHECK(sr.derivative_jumps[0] < 1e-9);
    CHECK(sr.derivative_jumps[1] < 1e-9);
    CHECK(certify_totally_real(s, 128, 128, 1e-7).pass);
    CHECK(antipodal_gap(s) < 1e-12);
  }
  C2CrossCapParams bad;
  bad.r0 = 0.5;
  CHECK_THROWS_AS(build_c2_crosscap(bad), Error);
}

TEST_CASE("simple cross-cap") {
  const OrientedLine one = simple_crosscap_map(1.0);
  CHECK(one.xi == Complex{0.0, 0.0});
  CHECK(one.eta == Complex{1.0, 0.0});
  CHECK(simple_crosscap_map(-1.0) == one);
  const OrientedLine m = simple_crosscap_map(0.9);
  CHECK(std::abs(m.xi - 0.19 * 0.9) < 1e-15);
  CHECK(std::abs(m.eta - 0.81) < 1e-15);
  CHECK(antipodal_gap(simple_crosscap(0.5)) < 1e-15);
}
