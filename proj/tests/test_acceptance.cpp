// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tslines/blowup.hpp"
#include "tslines/error.hpp"
#include "tslines/euclid.hpp"
#include "tslines/ledger.hpp"
#include "tslines/verify.hpp"

using namespace tslines;

namespace {

using Clock = std::chrono::steady_clock;

const MonomialField kXi = MonomialField::xi();
const MonomialField kXib = MonomialField::xibar();

MonomialField cubic_support() {
  return MonomialField::monomial(3, 0, 2.0 / 3) + MonomialField::monomial(0, 3, 2.0 / 3);
}

MonomialField cubic_section() { return MonomialField::conformal().pow(2) * kXib.pow(2); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int n, const char* name, double time_limit_s, const std::function<Outcome()>& fn) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    o.ok = false;
    o.detail += fmt(" [over time limit %.0fs]", time_limit_s);
  }
  failures += !o.ok;
  std::printf("%s criterion %2d: %-28s %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<double> padded(std::vector<double> v, std::size_t n) {
  v.resize(std::max(v.size(), n), 0.0);
  return v;
}

C1CrossCapParams c1(double c, double r0, double eps) {
  C1CrossCapParams p;
  p.c = c;
  p.r0 = r0;
  p.eps = eps;
  return p;
}

}  // namespace

int main() {
  criterion(1, "support-pair identity", 1.0, [] {
    const MonomialField r = cubic_support();
    const MonomialField F = cubic_section();
    std::mt19937_64 rng(1);
    double worst = 0.0, fd = 0.0;
    auto rf = [&](Complex w) { return eval(r, w); };
    for (int k = 0; k < 100; ++k) {
      const Complex z = oracle::random_in_disc(rng, 2.0);
      const double t = std::norm(z);
      const Complex lhs = eval(d_xi(r), z);
      worst = std::max(worst, std::abs(lhs - 2.0 * std::conj(eval(F, z)) / ((1 + t) * (1 + t))));
      fd = std::max(fd, std::abs(oracle::d_xi(rf, z) - lhs));
    }
    const double poly = coefficient_distance(d_xi(r) * MonomialField::conformal().pow(2), MonomialField(2.0) * F.conj());
    return Outcome{poly == 0.0 && worst < 1e-12 && fd < 1e-6,
                   fmt("coeff dist %.1e, max residual %.1e, finite-difference gap %.1e", poly, worst, fd)};
  });

  criterion(2, "hyperbolic example index", 0.0, [] {
    const SectionGraph F = section_from_support(SupportFunction(cubic_support()));
    bool ok = true;
    for (double rad : {0.05, 0.1, 0.2}) {
      const IndexResult ir = section_complex_index(F, 0.0, rad);
      auto dbar = [&](Complex z) { return eval(d_xibar(F.F), z); };
      ok = ok && ir.index == -1 && ir.umbilic_index() == -0.5 && oracle::winding(dbar, 0.0, rad) == -1;
    }
    return Outcome{ok, "I = -1, i = -1/2 at radii 0.05, 0.1, 0.2"};
  });

  criterion(3, "Lagrangian + signature", 0.0, [] {
    const SectionGraph F = section_from_support(SupportFunction(cubic_support()));
    const RationalField dF = d_xi(F.F), dbF = d_xibar(F.F);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      for (int j = 0; j < 30; ++j) {
        const Complex z{-1.0 + 2.0 * i / 29, -1.0 + 2.0 * j / 29};
        const OrientedLine at{z, F(z)};
        const TangentVec a{at, 1.0, eval(dF, z) + eval(dbF, z)};
        const TangentVec b{at, {0, 1}, Complex{0, 1} * (eval(dF, z) - eval(dbF, z))};
        worst = std::max(worst, std::abs(omega(a, b)));
      }
    }
    std::mt19937_64 rng(3);
    int good = 0;
    for (int k = 0; k < 20; ++k) {
      const OrientedLine at{oracle::random_in_disc(rng, 2.0), oracle::random_in_disc(rng, 2.0)};
      good += metric_signature(at) == Signature{2, 2, 0};
    }
    return Outcome{worst < 1e-10 && good == 20, fmt("max|omega| %.1e, (2,2) at %.0f/20 points", worst, good)};
  });

  criterion(4, "C1 cross-cap seam", 0.0, [] {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> uc(1.1, 8.9), ur(0.92, 0.99);
    double v = 0.0, d1 = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double c = uc(rng), r0 = ur(rng);
      const ParamSurface s = build_c1_crosscap(c1(c, r0, 0.1));
      // Direct one-sided comparison of both piece expressions at the seam.
      const auto& in = s.pieces()[0];
      const auto& out = s.pieces()[1];
      for (int j = 0; j < 32; ++j) {
        const Complex nu = std::polar(r0, 0.2 * j);
        v = std::max({v, std::abs(eval(in.xi_expr, nu) - eval(out.xi_expr, nu)),
                      std::abs(eval(in.eta_expr, nu) - eval(out.eta_expr, nu))});
        d1 = std::max({d1, std::abs(radial_derivative(in.xi_expr, nu, 1) - radial_derivative(out.xi_expr, nu, 1)),
                       std::abs(radial_derivative(in.eta_expr, nu, 1) - radial_derivative(out.eta_expr, nu, 1))});
      }
      const SeamReport sr = seam_report(s, 0, 1, 1e-12);
      v = std::max(v, sr.value_jump);
      d1 = std::max(d1, sr.derivative_jumps[0]);
    }
    const double d2 = seam_report(build_c1_crosscap(c1(5.0, 0.95, 0.1)), 0, 2, 1e-12).derivative_jumps[1];
    return Outcome{v < 1e-12 && d1 < 1e-12 && d2 > 1e-3,
                   fmt("value %.1e, d1 %.1e, d2 at c=5 %.3g", v, d1, d2)};
  });

  criterion(5, "reality polynomial", 30.0, [] {
    bool ok = true;
    for (double c : {1.5, 5.0, 8.5}) {
      const Poly2 g = derive_reality_polynomial(c1(c, 0.95, 0.1)).g;
      const Poly2 printed = printed_reality_polynomial(c);
      for (int i = 0; i <= 2; ++i) ok = ok && padded(g.x_coefficient(i), 4) == padded(printed.x_coefficient(i), 4);
      ok = ok && g.x_coefficient(3) == std::vector<double>{-3 * c};
      const double det = g.dx().dx()(1, 1) * g.dy().dy()(1, 1) - std::pow(g.dx().dy()(1, 1), 2);
      ok = ok && std::abs(g(1, 1)) < 1e-10 && std::abs(g.dx()(1, 1)) < 1e-10 && std::abs(g.dy()(1, 1)) < 1e-10 &&
           std::abs(std::abs(det) - std::abs((9 - c) * (c - 1))) < 1e-10;
    }
    const CertificationReport cert = certify_c1_crosscap(c1(5.0, std::sqrt(0.95), 0.1), 512, 512, 1e-6);
    return Outcome{ok && cert.pass && cert.min_abs_w > 1e-6,
                   fmt("coefficients and critical point ok=%.0f, min|W| %.3e", ok, cert.min_abs_w)};
  });

  criterion(6, "C2 cross-cap", 0.0, [] {
    double worst = 0.0;
    for (double r2 : {0.8, 0.9, 0.95}) {
      C2CrossCapParams p;
      p.r0 = std::sqrt(r2);
      const ParamSurface s = build_c2_crosscap(p);
      const SeamReport sr = seam_report(s, s.pieces().size() - 2, 2, 1e-9);
      worst = std::max({worst, sr.value_jump, sr.derivative_jumps[0], sr.derivative_jumps[1]});
    }
    const C2Constants k = c2_constants(std::sqrt(0.8));
    const double s0 = 0.2;
    const double q = std::pow(1 + s0 * s0 * (1 - s0), 2) * s0 * s0;
    const double printed_resid = std::abs(k.printed_a + k.printed_b * s0 + k.printed_c * s0 * s0 - q);
    const C2Constants lim = c2_constants(std::sqrt(0.999));
    const double dist = std::max({std::abs(lim.a), std::abs(lim.b), std::abs(lim.c - 1)});
    const bool ok = worst < 1e-9 && std::abs(printed_resid - 3.4e-2) < 1e-3 &&
                    std::abs(printed_resid - k.printed_value_residual) < 1e-12 && dist < 1e-2;
    return Outcome{ok, fmt("seam %.1e, printed residual %.5f (discrepancy), limit dist %.1e", worst, printed_resid, dist)};
  });

  criterion(7, "reconstruction", 0.0, [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<MonomialField> supports{cubic_support()};
    for (int n = 0; n < 5; ++n) {
      MonomialField::Terms t;
      for (int a = 0; a <= 4; ++a) {
        for (int b = a; a + b <= 4; ++b) {
          const Complex c = a == b ? Complex{u(rng), 0} : Complex{u(rng), u(rng)};
          t[{a, b}] += c;
          if (a != b) t[{b, a}] += std::conj(c);
        }
      }
      supports.push_back(MonomialField(std::move(t)));
    }
    double resid = 0.0, parallel = 0.0;
    for (const auto& f : supports) {
      const SupportFunction r(f);
      const SectionGraph F = section_from_support(r);
      const MeshR3 m = reconstruct_surface(F, r, 3.0, {0.9, 40, 40, 0.0});
      const MeshR3 m1 = reconstruct_surface(F, r, 4.0, {0.9, 40, 40, 0.0});
      for (std::size_t k = 0; k < m.vertices.size(); ++k) {
        const Vec3 U = direction_vector(m.vertices[k].xi);
        resid = std::max(resid, std::abs(m.vertices[k].x.dot(U) - (r(m.vertices[k].xi) + 3.0)));
        parallel = std::max(parallel, (m1.vertices[k].x - m.vertices[k].x - U).norm());
      }
    }
    const SupportFunction r(cubic_support());
    const Vec3 p = point_from_line(1.0, section_from_support(r)(1.0), r(1.0));
    const Complex family = 2.0 * (3.0 - 1.0 + 5.0 - 3.0) / (3.0 * 2.0);
    const double at1 = std::abs(Complex{p.x(), p.y()} - family);
    return Outcome{resid < 1e-10 && parallel < 1e-12 && at1 < 1e-12 && std::abs(family - 4.0 / 3.0) < 1e-15,
                   fmt("support residual %.1e, parallel %.1e, |x1+ix2 - 4/3| %.1e", resid, parallel, at1)};
  });

  criterion(8, "index correspondence", 0.0, [] {
    bool ok = true;
    std::string detail;
    for (const auto& [f, disc, expect] : {std::tuple{cubic_support(), 0.9, -1}, std::tuple{kXi * kXib, 0.5, 2}}) {
      const SupportFunction r(f);
      const SectionGraph F = section_from_support(r);
      const int I = section_complex_index(F, 0.0, 0.1).index;
      const PrincipalAnalysis pa = principal_analysis(F, r, 3.0, {0.0, disc});
      ok = ok && I == expect && pa.umbilics.size() == 1 && pa.umbilics[0].index_doubled == I;
      detail += fmt("I=%.0f i=%.1f; ", I, pa.umbilics.empty() ? 0.0 : pa.umbilics[0].index());
    }
    const SectionGraph P = section_from_support(SupportFunction(cubic_support() + MonomialField::monomial(2, 2, 4.0)));
    const auto pts = find_complex_points(P, {0.0, 0.8});
    int sum = 0;
    for (const auto& p : pts) sum += p.index;
    auto dbar = [&](Complex z) { return eval(d_xibar(P.F), z); };
    const int bnd = oracle::winding(dbar, 0.0, 0.8);
    ok = ok && pts.size() == 4 && sum == bnd;
    detail += fmt("perturbed: %.0f points, sum %.0f, boundary %.0f", pts.size(), sum, bnd);
    return Outcome{ok, detail};
  });

  criterion(9, "ledger identities", 0.0, [] {
    bool ok = true;
    for (int k = 0; k <= 20; ++k) {
      const ScenarioReport r = reformulation_scenario(k);
      ok = ok && r.identities_hold && r.complex_index == 4 + k && r.annulus_sum == -k && r.lai_total == 4 + k &&
           r.blown_up.chi_t + r.blown_up.chi_n == 4 + k;
    }
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> chi(-5, 5), nh(0, 6);
    int preserved = 0;
    for (int trial = 0; trial < 100; ++trial) {
      TopLedger l{chi(rng), chi(rng), {}};
      const int h = nh(rng);
      std::vector<std::string> hs;
      for (int j = 0; j < h; ++j) {
        hs.push_back("h" + std::to_string(j));
        l.inventory.push_back({hs.back(), -1});
      }
      l.inventory.push_back({"p", l.chi_t + l.chi_n - l.index_sum()});
      const int k = std::uniform_int_distribution<int>(0, h)(rng);
      const std::vector<std::string> removed(hs.begin(), hs.begin() + k);
      preserved += connect_sum_rp2(l, k, removed).consistent();
    }
    return Outcome{ok && preserved == 100, fmt("k in [0,20] ok=%.0f, consistent %.0f/100", ok, preserved)};
  });

  criterion(10, "verify-paper report", 120.0, [] {
    const VerifyReport a = verify_paper();
    const VerifyReport b = verify_paper();
    const bool same = a.to_json().dump() == b.to_json().dump();
    const int disc = a.count(CheckStatus::Discrepancy), fail = a.count(CheckStatus::Fail);
    return Outcome{same && disc == 2 && fail == 0 && a.exit_code() == 2,
                   fmt("%.0f checks, %.0f discrepancies, %.0f failures", a.checks.size(), disc, fail) +
                       (same ? ", deterministic" : ", NOT deterministic")};
  });

  std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
