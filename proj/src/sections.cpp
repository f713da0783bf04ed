#include "tslines/sections.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "tslines/error.hpp"

namespace tslines {

namespace {

const MonomialField& conformal() {
  static const MonomialField c = MonomialField::conformal();
  return c;
}

// Exact division by (1+ξξ̄)^times. Terms of equal charge m-n form a
// polynomial in t = ξξ̄, so each class is divided by (1+t) synthetically.
std::optional<MonomialField> divide_by_conformal(const MonomialField& f, int times, double tol) {
  std::map<int, std::vector<Complex>> classes;  // charge -> coeffs in t
  for (const auto& [e, c] : f.terms()) {
    const int charge = e.m - e.n;
    const int tpow = std::min(e.m, e.n);
    auto& v = classes[charge];
    if (static_cast<int>(v.size()) <= tpow) v.resize(tpow + 1);
    v[tpow] = c;
  }
  double scale = 0.0;
  for (const auto& [e, c] : f.terms()) scale = std::max(scale, std::abs(c));
  MonomialField::Terms out;
  for (auto& [charge, coeffs] : classes) {
    for (int k = 0; k < times; ++k) {
      if (coeffs.size() < 2) return std::nullopt;
      // p(t) = (1+t) q(t) + rem, highest degree first.
      const std::size_t deg = coeffs.size() - 1;
      std::vector<Complex> q(deg);
      Complex carry{};
      for (std::size_t j = deg; j >= 1; --j) {
        q[j - 1] = coeffs[j] - carry;
        carry = q[j - 1];
      }
      const Complex rem = coeffs[0] - carry;
      if (std::abs(rem) > tol * std::max(1.0, scale)) return std::nullopt;
      coeffs = std::move(q);
    }
    for (std::size_t tpow = 0; tpow < coeffs.size(); ++tpow) {
      const int t = static_cast<int>(tpow);
      const Exponent e = charge >= 0 ? Exponent{t + charge, t} : Exponent{t, t - charge};
      out[e] = coeffs[tpow];
    }
  }
  return MonomialField(std::move(out));
}

// dr along the ray t ↦ tξ is 2 Re(∂r(tξ) ξ) dt with ∂r = 2F̄/(1+ξξ̄)².
double radial_integrand(const SectionGraph& F, Complex xi, double t) {
  const Complex z = t * xi;
  const Complex dr = 2.0 * std::conj(F(z)) / std::pow(1.0 + std::norm(z), 2);
  return 2.0 * std::real(dr * xi);
}

double romberg(const SectionGraph& F, Complex xi, double tol) {
  constexpr int kMaxLevels = 20;
  std::vector<double> prev, cur;
  double h = 1.0;
  prev.push_back(0.5 * (radial_integrand(F, xi, 0.0) + radial_integrand(F, xi, 1.0)));
  for (int level = 1; level < kMaxLevels; ++level) {
    h *= 0.5;
    double sum = 0.0;
    const int n = 1 << (level - 1);
    for (int k = 0; k < n; ++k) sum += radial_integrand(F, xi, (2 * k + 1) * h);
    cur.assign(level + 1, 0.0);
    cur[0] = 0.5 * prev[0] + h * sum;
    double factor = 1.0;
    for (int j = 1; j <= level; ++j) {
      factor *= 4.0;
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (factor - 1.0);
    }
    if (level >= 3 && std::abs(cur[level] - prev[level - 1]) <= tol * std::max(1.0, std::abs(cur[level]))) {
      return cur[level];
    }
    std::swap(prev, cur);
  }
  return prev.back();
}

}  // namespace

SectionGraph section_from_support(const SupportFunction& r) {
  const MonomialField half_conj_dr = MonomialField(0.5) * d_xi(r.field()).conj();
  return {RationalField{conformal().pow(2) * half_conj_dr, 0}, Provenance::FromSupport};
}

double lagrangian_defect(const SectionGraph& F, Complex xi) {
  const RationalField scaled{F.F.num, F.F.den_power + 2};
  return std::abs(eval(d_xi(scaled), xi).imag());
}

double max_lagrangian_defect(const SectionGraph& F, double radius, int radial_n, int angular_n) {
  const RationalField scaled{F.F.num, F.F.den_power + 2};
  const RationalField d = d_xi(scaled);
  double worst = 0.0;
  for (int i = 0; i <= radial_n; ++i) {
    const double rho = radius * i / radial_n;
    for (int j = 0; j < angular_n; ++j) {
      const Complex z = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / angular_n);
      worst = std::max(worst, std::abs(eval(d, z).imag()));
    }
  }
  return worst;
}

double RecoveredSupport::operator()(Complex xi) const {
  if (xi == Complex{}) return 0.0;
  return romberg(section, xi, tolerance);
}

RecoveredSupport support_from_section(const SectionGraph& F, double validation_radius,
                                      double defect_tol) {
  const double defect = max_lagrangian_defect(F, validation_radius);
  if (defect >= defect_tol) {
    throw Error(ErrorCode::NotLagrangian,
                "Im ∂(F/(1+ξξ̄)²) reaches " + std::to_string(defect) + " on the validation grid");
  }
  RecoveredSupport out{F, std::nullopt};

  // ∂r/∂ξ = 2 conj(num) / (1+ξξ̄)^(p+2); integrate in ξ when the quotient is
  // polynomial and fill the ξ̄-only terms by reality.
  const MonomialField numerator = MonomialField(2.0) * F.F.num.conj();
  if (auto quotient = divide_by_conformal(numerator, F.F.den_power + 2, 1e-12)) {
    MonomialField::Terms terms;
    for (const auto& [e, c] : quotient->terms()) terms[{e.m + 1, e.n}] = c / static_cast<double>(e.m + 1);
    MonomialField holo_part(terms);
    for (const auto& [e, c] : holo_part.terms()) {
      if (e.n > 0 && e.m > 0) continue;
      terms[{e.n, e.m}] = std::conj(c);  // pure ξ^m terms mirror to pure ξ̄^m
    }
    MonomialField candidate(terms);
    if (candidate.is_conjugate_symmetric(1e-10)) out.polynomial = SupportFunction(candidate);
  }
  return out;
}

// ∂ₓ₁ = ∂ + ∂̄ and ∂ₓ₂ = i(∂ - ∂̄)
ChartHessian chart_hessian(const SupportFunction& r, Complex xi) {
  const MonomialField& f = r.field();
  const Complex dd = eval(d_xi(d_xi(f)), xi);
  const Complex db = eval(d_xi(d_xibar(f)), xi);
  const Complex bb = eval(d_xibar(d_xibar(f)), xi);
  ChartHessian h;
  h.r11 = std::real(dd + 2.0 * db + bb);
  h.r22 = std::real(-(dd - 2.0 * db + bb));
  h.r12 = std::real(Complex{0.0, 1.0} * (dd - bb));
  return h;
}

Complex traceless_hessian(const SupportFunction& r, Complex xi) {
  const ChartHessian h = chart_hessian(r, xi);
  return {h.r11 - h.r22, 2.0 * h.r12};
}

double totally_real_defect(const SupportFunction& r, Complex xi) {
  return std::norm(traceless_hessian(r, xi));
}

int boundary_winding(const SupportFunction& r, const Loop& loop, double min_mag) {
  return winding_number([&](Complex z) { return traceless_hessian(r, z); }, loop, min_mag);
}

}  // namespace tslines
