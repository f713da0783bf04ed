#pragma once

// Totally real blow-up: cross-cap surfaces replacing a neighbourhood of a
// hyperbolic complex point, with seam-smoothness and total-reality checks.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tslines/cpoints.hpp"
#include "tslines/linespace.hpp"

namespace tslines {

/// C¹ cross-cap around the normal form η = αξ̄².
struct C1CrossCapParams {
  Complex alpha{1.0, 0.0};
  double c = 5.0;
  double r0 = 0.95;
  double eps = 0.1;

  /// 1-ε < R₀ < 1 and (1-ε)² > 1/3; throws BadParams.
  void validate() const;
  /// Total reality is only guaranteed for 1 < c < 9.
  bool in_guaranteed_range() const { return c > 1.0 && c < 9.0; }
};

struct C2CrossCapParams {
  double r0 = 0.9;
  /// Inner edge of the section piece; 0 picks the midpoint of (3^-1/2, R₀).
  double inner_radius = 0.0;

  void validate() const;
  double effective_inner_radius() const;
};

/// Real polynomial Σ c_ij x^i y^j.
class Poly2 {
 public:
  using Terms = std::map<std::pair<int, int>, double>;

  Poly2() = default;
  explicit Poly2(Terms t);
  Poly2(double constant);  // NOLINT
  static Poly2 x();
  static Poly2 y();

  const Terms& terms() const noexcept { return terms_; }
  double coeff(int i, int j) const;
  double operator()(double x, double y) const;
  Poly2 dx() const;
  Poly2 dy() const;
  /// Coefficient of x^i as a polynomial in y (index = power of y).
  std::vector<double> x_coefficient(int i) const;
  int x_degree() const;

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

struct MatchingConstants {
  double a = 0.0;
  double b = 0.0;
};

/// a = (c-1)(1-R₀²)², b = 2(1-c)(1-R₀²)
MatchingConstants c1_matching_constants(double c, double r0);

ParamSurface build_c1_crosscap(const C1CrossCapParams& p);

/// Result of expanding W on the C¹ cross-cap with R₀² kept symbolic as y.
struct RealityPolynomial {
  /// Outer piece: W = -2 α g(νν̄, R₀²) ν̄.
  Poly2 g;
  double c = 0.0;
  Complex alpha{1.0, 0.0};
  /// Inner piece: W = 2 α (1-x)² (3x-1) ν̄ checked as a polynomial identity.
  bool inner_factorization_holds = false;
};

RealityPolynomial derive_reality_polynomial(const C1CrossCapParams& p);

/// The bracket exactly as printed, including its +3c x³ term.
Poly2 printed_reality_polynomial(double c);

struct GCriticalReport {
  double c = 0.0;
  double value = 0.0;
  double gx = 0.0;
  double gy = 0.0;
  double gxx = 0.0;
  double gyy = 0.0;
  double gxy = 0.0;
  double hessian_det = 0.0;
  double expected_det_magnitude = 0.0;  // |(9-c)(c-1)|
  bool value_zero = false;
  bool gradient_zero = false;
  bool det_matches = false;
  bool definite = false;
  /// Printed second derivatives 4c, 2(c-1), -3(c-1) differ by a sign flip.
  bool printed_second_derivatives_flipped = false;
  bool pass = false;
};

GCriticalReport g_critical_report(const Poly2& g, double c, double tol = 1e-10);

struct SeamReport {
  double radius = 0.0;
  double value_jump = 0.0;
  /// derivative_jumps[k-1] = max jump of the k-th radial derivative.
  std::vector<double> derivative_jumps;
  int certified_order = -1;
  double tolerance = 0.0;
};

/// Jumps of ξ, η and their radial derivatives across seam `seam`
/// (between pieces seam and seam+1), sampled on `angular_n` angles.
SeamReport seam_report(const ParamSurface& s, std::size_t seam, int max_order, double tol,
                       int angular_n = 256);

struct PieceMinimum {
  double rho_in = 0.0;
  double rho_out = 0.0;
  double min_abs_w = 0.0;
  Complex argmin;
};

struct CertificationReport {
  std::vector<PieceMinimum> pieces;
  double min_abs_w = 0.0;
  Complex argmin;
  double min_mag = 0.0;
  /// Adjacent grid samples whose defects point in opposing directions; each
  /// one brackets a zero of W that the grid minimum can miss.
  int phase_jumps = 0;
  bool pass = false;
  /// C¹ cross-cap only: min |g(x, R₀²)| over x ∈ [(1-ε)², 1].
  std::optional<double> min_abs_g;
};

CertificationReport certify_totally_real(const ParamSurface& s, int radial_n, int angular_n,
                                         double min_mag);
CertificationReport certify_c1_crosscap(const C1CrossCapParams& p, int radial_n, int angular_n,
                                        double min_mag);

struct C2Constants {
  double r0 = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
  double printed_a = 0.0, printed_b = 0.0, printed_c = 0.0;
  /// Seam mismatch of the printed constants in value and first two
  /// s-derivatives of a + bs + cs² against the section profile.
  double printed_value_residual = 0.0;
  double printed_d1_residual = 0.0;
  double printed_d2_residual = 0.0;
  /// Same residuals for the solved constants.
  double solved_max_residual = 0.0;
};

/// Solves the value/first/second-derivative seam match at s₀ = 1-R₀² for
/// Q(s) = (1 + s²(1-s))² s² and compares with the printed constants.
C2Constants c2_constants(double r0);

ParamSurface build_c2_crosscap(const C2CrossCapParams& p);

/// ξ = (1-νν̄)ν, η = ν̄²
OrientedLine simple_crosscap_map(Complex nu, double r0 = 0.0);
ParamSurface simple_crosscap(double r0);

/// max over θ of the distance between the images of e^{iθ} and -e^{iθ}.
double antipodal_gap(const ParamSurface& s, int samples = 256);

}  // namespace tslines
