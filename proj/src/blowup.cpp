#include "tslines/blowup.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "tslines/error.hpp"

namespace tslines {

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// s = 1 - νν̄ and the radial map ξ = (1 - νν̄)ν
MonomialField gauss_shrink() { return MonomialField(1.0) - MonomialField::monomial(1, 1); }
MonomialField crosscap_xi() { return gauss_shrink() * MonomialField::xi(); }

// Polynomial in (ν, ν̄, y) with real coefficients; y stands for R₀².
class TriPoly {
 public:
  using Key = std::array<int, 3>;
  TriPoly() = default;
  TriPoly(double c) { if (c != 0.0) t_[{0, 0, 0}] = c; }  // NOLINT
  static TriPoly mono(int m, int n, int k, double c = 1.0) {
    TriPoly p;
    p.t_[{m, n, k}] = c;
    return p;
  }
  const std::map<Key, double>& terms() const { return t_; }

  friend TriPoly operator+(TriPoly a, const TriPoly& b) {
    for (const auto& [k, c] : b.t_) a.t_[k] += c;
    a.prune();
    return a;
  }
  friend TriPoly operator-(const TriPoly& a, const TriPoly& b) { return a + b * TriPoly(-1.0); }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly out;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) out.t_[{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}] += ca * cb;
    out.prune();
    return out;
  }
  TriPoly d_nu() const { return derive(0); }
  TriPoly d_nubar() const { return derive(1); }

 private:
  TriPoly derive(int slot) const {
    TriPoly out;
    for (const auto& [key, c] : t_) {
      if (key[slot] == 0) continue;
      Key k = key;
      const double f = k[slot];
      --k[slot];
      out.t_[k] += f * c;
    }
    out.prune();
    return out;
  }
  void prune() { std::erase_if(t_, [](const auto& kv) { return kv.second == 0.0; }); }

  std::map<Key, double> t_;
};

double max_abs(std::initializer_list<double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Section profile on the C² cross-cap: η = Q(s) ν̄².
double profile(double s) { return std::pow(1.0 + s * s * (1.0 - s), 2) * s * s; }
double profile_d1(double s) {
  const double u = 1.0 + s * s - s * s * s;
  return 2.0 * u * (2.0 * s - 3.0 * s * s) * s * s + 2.0 * u * u * s;
}
double profile_d2(double s) {
  const double u = 1.0 + s * s - s * s * s;
  const double du = 2.0 * s - 3.0 * s * s;
  const double ddu = 2.0 - 6.0 * s;
  return 2.0 * (du * du + u * ddu) * s * s + 8.0 * u * du * s + 2.0 * u * u;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

void C1CrossCapParams::validate() const {
  if (!(r0 < 1.0 && 1.0 - eps < r0)) throw Error(ErrorCode::BadParams, "need 1-eps < R0 < 1");
  if (!((1.0 - eps) * (1.0 - eps) > 1.0 / 3.0)) {
    throw Error(ErrorCode::BadParams, "need (1-eps)^2 > 1/3 so the inner piece has no complex points");
  }
  if (alpha == Complex{}) throw Error(ErrorCode::BadParams, "alpha must be nonzero");
}

void C2CrossCapParams::validate() const {
  if (!(r0 > kInvSqrt3 && r0 < 1.0)) throw Error(ErrorCode::BadParams, "need 3^-1/2 < R0 < 1");
  const double inner = effective_inner_radius();
  if (!(inner > kInvSqrt3 && inner < r0)) throw Error(ErrorCode::BadParams, "need 3^-1/2 < inner radius < R0");
}

double C2CrossCapParams::effective_inner_radius() const {
  return inner_radius > 0.0 ? inner_radius : 0.5 * (kInvSqrt3 + r0);
}

// ---------------------------------------------------------------------------
// Poly2

Poly2::Poly2(Terms t) : terms_(std::move(t)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}
Poly2::Poly2(double constant) {
  if (constant != 0.0) terms_[{0, 0}] = constant;
}
Poly2 Poly2::x() { return Poly2(Terms{{{1, 0}, 1.0}}); }
Poly2 Poly2::y() { return Poly2(Terms{{{0, 1}, 1.0}}); }

double Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly2::operator()(double x, double y) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * std::pow(x, e.first) * std::pow(y, e.second);
  return s;
}

Poly2 Poly2::dx() const {
  Terms t;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) t[{e.first - 1, e.second}] += e.first * c;
  return Poly2(std::move(t));
}

Poly2 Poly2::dy() const {
  Terms t;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) t[{e.first, e.second - 1}] += e.second * c;
  return Poly2(std::move(t));
}

std::vector<double> Poly2::x_coefficient(int i) const {
  std::vector<double> out;
  for (const auto& [e, c] : terms_) {
    if (e.first != i) continue;
    if (static_cast<int>(out.size()) <= e.second) out.resize(e.second + 1, 0.0);
    out[e.second] = c;
  }
  return out;
}

int Poly2::x_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2::Terms t = a.terms_;
  for (const auto& [e, c] : b.terms_) t[e] += c;
  return Poly2(std::move(t));
}

Poly2 operator-(const Poly2& a, const Poly2& b) { return a + b * Poly2(-1.0); }

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2::Terms t;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) t[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return Poly2(std::move(t));
}

// ---------------------------------------------------------------------------
// C¹ cross-cap

MatchingConstants c1_matching_constants(double c, double r0) {
  const double s0 = 1.0 - r0 * r0;
  return {(c - 1.0) * s0 * s0, 2.0 * (1.0 - c) * s0};
}

ParamSurface build_c1_crosscap(const C1CrossCapParams& p) {
  p.validate();
  const auto [a, b] = c1_matching_constants(p.c, p.r0);
  const MonomialField s = gauss_shrink();
  const MonomialField nb2 = MonomialField::monomial(0, 2);
  const MonomialField xi = crosscap_xi();
  SurfacePiece inner{1.0 - p.eps, p.r0, xi, MonomialField(p.alpha) * s * s * nb2, "section"};
  SurfacePiece outer{p.r0, 1.0, xi,
                     MonomialField(p.alpha) * (MonomialField(a) + MonomialField(b) * s + MonomialField(p.c) * s * s) * nb2,
                     "crosscap"};
  return ParamSurface({inner, outer});
}

RealityPolynomial derive_reality_polynomial(const C1CrossCapParams& p) {
  const double c = p.c;
  const TriPoly one(1.0);
  const TriPoly y = TriPoly::mono(0, 0, 1);
  const TriPoly s = one - TriPoly::mono(1, 1, 0);
  const TriPoly xi = s * TriPoly::mono(1, 0, 0);
  const TriPoly a = TriPoly(c - 1.0) * (one - y) * (one - y);
  const TriPoly b = TriPoly(2.0 * (1.0 - c)) * (one - y);
  const TriPoly eta = (a + b * s + TriPoly(c) * s * s) * TriPoly::mono(0, 2, 0);
  const TriPoly w = eta.d_nu() * xi.d_nubar() - eta.d_nubar() * xi.d_nu();

  // W = -2 g(νν̄, y) ν̄ requires every term to be ν^m ν̄^(m+1) y^k.
  Poly2::Terms g;
  for (const auto& [k, coef] : w.terms()) {
    if (k[1] != k[0] + 1) {
      throw Error(ErrorCode::FactorizationFailed, "W is not of the form g(νν̄, y) ν̄");
    }
    g[{k[0], k[2]}] += coef / -2.0;
  }

  // Inner piece with α = 1: W = 2 (1-x)² (3x-1) ν̄.
  SurfacePiece inner{0.0, 1.0, crosscap_xi(), gauss_shrink() * gauss_shrink() * MonomialField::monomial(0, 2), ""};
  const MonomialField x = MonomialField::monomial(1, 1);
  const MonomialField expected = MonomialField(2.0) * gauss_shrink() * gauss_shrink() *
                                 (MonomialField(3.0) * x - MonomialField(1.0)) * MonomialField::xibar();
  const bool inner_ok = coefficient_distance(inner.defect_field(), expected) < 1e-12;
  return {Poly2(std::move(g)), c, p.alpha, inner_ok};
}

Poly2 printed_reality_polynomial(double c) {
  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();
  const Poly2 one(1.0);
  return one + Poly2(c - 1.0) * y * y -
         (Poly2(c) * (Poly2(3.0) + Poly2(2.0) * y) * y + (Poly2(5.0) + Poly2(2.0) * y) * (one - y)) * x +
         (Poly2(5.0) * (one - y) + Poly2(c) * (Poly2(2.0) + Poly2(5.0) * y)) * x * x +
         Poly2(3.0 * c) * x * x * x;
}

GCriticalReport g_critical_report(const Poly2& g, double c, double tol) {
  GCriticalReport r;
  r.c = c;
  r.value = g(1.0, 1.0);
  r.gx = g.dx()(1.0, 1.0);
  r.gy = g.dy()(1.0, 1.0);
  r.gxx = g.dx().dx()(1.0, 1.0);
  r.gyy = g.dy().dy()(1.0, 1.0);
  r.gxy = g.dx().dy()(1.0, 1.0);
  r.hessian_det = r.gxx * r.gyy - r.gxy * r.gxy;
  r.expected_det_magnitude = std::abs((9.0 - c) * (c - 1.0));
  const double scale = std::max(1.0, r.expected_det_magnitude);
  r.value_zero = std::abs(r.value) <= tol;
  r.gradient_zero = std::abs(r.gx) <= tol && std::abs(r.gy) <= tol;
  r.det_matches = std::abs(std::abs(r.hessian_det) - r.expected_det_magnitude) <= tol * scale;
  r.definite = r.hessian_det > tol * scale;
  r.printed_second_derivatives_flipped = max_abs({r.gxx + 4.0 * c, r.gyy + 2.0 * (c - 1.0), r.gxy - 3.0 * (c - 1.0)}) <= tol * scale;
  const bool in_range = c > 1.0 && c < 9.0;
  r.pass = r.value_zero && r.gradient_zero && r.det_matches && (r.definite == in_range);
  return r;
}

// ---------------------------------------------------------------------------
// Seams and certification

SeamReport seam_report(const ParamSurface& s, std::size_t seam, int max_order, double tol, int angular_n) {
  if (seam + 1 >= s.pieces().size()) throw Error(ErrorCode::BadParams, "no such seam");
  const SurfacePiece& in = s.pieces()[seam];
  const SurfacePiece& out = s.pieces()[seam + 1];
  SeamReport rep;
  rep.radius = out.rho_in;
  rep.tolerance = tol;
  std::vector<double> jumps(max_order + 1, 0.0);
  for (int j = 0; j < angular_n; ++j) {
    const Complex nu = std::polar(rep.radius, 2.0 * std::numbers::pi * j / angular_n);
    for (int k = 0; k <= max_order; ++k) {
      const double dxi = std::abs(radial_derivative(in.xi_expr, nu, k) - radial_derivative(out.xi_expr, nu, k));
      const double deta = std::abs(radial_derivative(in.eta_expr, nu, k) - radial_derivative(out.eta_expr, nu, k));
      jumps[k] = std::max({jumps[k], dxi, deta});
    }
  }
  rep.value_jump = jumps[0];
  rep.derivative_jumps.assign(jumps.begin() + 1, jumps.end());
  for (int k = 0; k <= max_order && jumps[k] <= tol; ++k) rep.certified_order = k;
  return rep;
}

CertificationReport certify_totally_real(const ParamSurface& s, int radial_n, int angular_n, double min_mag) {
  if (radial_n < 64 || angular_n < 64) throw Error(ErrorCode::BadParams, "certification grids need >= 64 samples");
  CertificationReport rep;
  rep.min_mag = min_mag;
  rep.min_abs_w = std::numeric_limits<double>::infinity();
  // Neighbouring samples with Re(w conj(w')) <= 0 straddle a zero of W.
  auto opposed = [](Complex a, Complex b) { return (a * std::conj(b)).real() <= 0.0; };
  std::vector<Complex> prev(angular_n), row(angular_n);
  for (std::size_t k = 0; k < s.pieces().size(); ++k) {
    const SurfacePiece& p = s.pieces()[k];
    PieceMinimum pm{p.rho_in, p.rho_out, std::numeric_limits<double>::infinity(), {}};
    for (int i = 0; i < radial_n; ++i) {
      const double rho = p.rho_in + (p.rho_out - p.rho_in) * i / (radial_n - 1);
      for (int j = 0; j < angular_n; ++j) {
        const Complex nu = std::polar(rho, 2.0 * std::numbers::pi * j / angular_n);
        row[j] = piece_defect(s, k, nu);
        const double w = std::abs(row[j]);
        if (w < pm.min_abs_w) {
          pm.min_abs_w = w;
          pm.argmin = nu;
        }
        if (i > 0 && opposed(row[j], prev[j])) ++rep.phase_jumps;
      }
      for (int j = 0; j < angular_n; ++j) rep.phase_jumps += opposed(row[j], row[(j + 1) % angular_n]);
      std::swap(prev, row);
    }
    if (pm.min_abs_w < rep.min_abs_w) {
      rep.min_abs_w = pm.min_abs_w;
      rep.argmin = pm.argmin;
    }
    rep.pieces.push_back(pm);
  }
  rep.pass = rep.min_abs_w > min_mag && rep.phase_jumps == 0;
  return rep;
}

CertificationReport certify_c1_crosscap(const C1CrossCapParams& p, int radial_n, int angular_n, double min_mag) {
  CertificationReport rep = certify_totally_real(build_c1_crosscap(p), radial_n, angular_n, min_mag);
  const Poly2 g = derive_reality_polynomial(p).g;
  const double x0 = (1.0 - p.eps) * (1.0 - p.eps);
  const double y = p.r0 * p.r0;
  double m = std::numeric_limits<double>::infinity();
  const int n = std::max(4096, radial_n);
  double last = g(x0, y);
  for (int i = 0; i <= n; ++i) {
    const double v = g(x0 + (1.0 - x0) * i / n, y);
    m = std::min(m, v * last <= 0.0 ? 0.0 : std::abs(v));
    last = v;
  }
  rep.min_abs_g = m;
  rep.pass = rep.pass && m > 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// C² cross-cap

C2Constants c2_constants(double r0) {
  if (!(r0 > kInvSqrt3 && r0 < 1.0)) throw Error(ErrorCode::BadParams, "need 3^-1/2 < R0 < 1");
  const double s0 = 1.0 - r0 * r0;
  // Rows: value, first and second s-derivatives of a + b s + c s².
  Eigen::Matrix3d m;
  m << 1.0, s0, s0 * s0, 0.0, 1.0, 2.0 * s0, 0.0, 0.0, 2.0;
  const Eigen::Vector3d rhs(profile(s0), profile_d1(s0), profile_d2(s0));
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatch, "seam matching system is singular");
  const Eigen::Vector3d abc = lu.solve(rhs);

  C2Constants k;
  k.r0 = r0;
  k.a = abc(0);
  k.b = abc(1);
  k.c = abc(2);
  const double y = r0 * r0;
  const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y, y6 = y5 * y;
  k.printed_a = -std::pow(1.0 - y, 4) * (5.0 + 2.0 * y - 46.0 * y2 + 54.0 * y3 - 21.0 * y4);
  k.printed_b = -2.0 * std::pow(1.0 - y, 3) * (6.0 - 51.0 * y2 + 61.0 * y3 - 24.0 * y4);
  k.printed_c = -6.0 + 18.0 * y + 42.0 * y2 - 180.0 * y3 + 225.0 * y4 - 126.0 * y5 + 28.0 * y6;

  const Eigen::Vector3d printed(k.printed_a, k.printed_b, k.printed_c);
  const Eigen::Vector3d res_printed = m * printed - rhs;
  k.printed_value_residual = res_printed(0);
  k.printed_d1_residual = res_printed(1);
  k.printed_d2_residual = res_printed(2);
  k.solved_max_residual = (m * abc - rhs).cwiseAbs().maxCoeff();
  return k;
}

ParamSurface build_c2_crosscap(const C2CrossCapParams& p) {
  p.validate();
  const C2Constants k = c2_constants(p.r0);
  const MonomialField s = gauss_shrink();
  const MonomialField x = MonomialField::monomial(1, 1);
  const MonomialField nb2 = MonomialField::monomial(0, 2);
  const MonomialField lift = MonomialField(1.0) + s * s * x;
  SurfacePiece inner{p.effective_inner_radius(), p.r0, crosscap_xi(), lift * lift * s * s * nb2, "section"};
  SurfacePiece outer{p.r0, 1.0, crosscap_xi(),
                     (MonomialField(k.a) + MonomialField(k.b) * s + MonomialField(k.c) * s * s) * nb2, "crosscap"};
  return ParamSurface({inner, outer});
}

OrientedLine simple_crosscap_map(Complex nu, double r0) {
  const double rho = std::abs(nu);
  if (rho < r0 - kSeamTolerance || rho > 1.0 + kSeamTolerance) {
    throw Error(ErrorCode::BadParams, "need R0 <= |nu| <= 1");
  }
  const Complex nb = std::conj(nu);
  return {(1.0 - std::norm(nu)) * nu, nb * nb};
}

ParamSurface simple_crosscap(double r0) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorCode::BadParams, "need 0 < R0 < 1");
  return ParamSurface({SurfacePiece{r0, 1.0, crosscap_xi(), MonomialField::monomial(0, 2), "crosscap"}});
}

double antipodal_gap(const ParamSurface& s, int samples) {
  const SurfacePiece& outer = s.pieces().back();
  if (outer.rho_out != 1.0) throw Error(ErrorCode::BadParams, "surface does not reach |nu| = 1");
  double gap = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Complex nu = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    gap = std::max({gap, std::abs(eval(outer.xi_expr, nu) - eval(outer.xi_expr, -nu)),
                    std::abs(eval(outer.eta_expr, nu) - eval(outer.eta_expr, -nu))});
  }
  return gap;
}

}  // namespace tslines
