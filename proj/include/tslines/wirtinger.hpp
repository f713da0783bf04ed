#pragma once

// Polynomial fields in (ξ, ξ̄) on the stereographic chart, exact Wirtinger
// calculus on them, and discrete winding numbers of complex-valued loops.

#include <compare>
#include <complex>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace tslines {

using Complex = std::complex<double>;

inline constexpr double kChartLimit = 1e3;
inline constexpr double kDefaultMinMagnitude = 1e-9;
inline constexpr int kDefaultLoopSamples = 256;
inline constexpr int kMaxLoopSamples = 1 << 16;

/// Exponent pair (m, n) of the monomial ξ^m ξ̄^n.
struct Exponent {
  int m = 0;
  int n = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Finite sum Σ c_mn ξ^m ξ̄^n.
///
/// Zero coefficients are never stored. A field flagged real is kept exactly
/// conjugate-symmetric (c_nm == conj(c_mn)); the flag survives +, -, * and
/// conj between real fields and multiplication by real scalars.
class MonomialField {
 public:
  using Terms = std::map<Exponent, Complex>;

  MonomialField() = default;
  explicit MonomialField(Terms terms, bool real = false);
  MonomialField(Complex constant);  // NOLINT: implicit scalar promotion
  MonomialField(double constant);   // NOLINT

  static MonomialField monomial(int m, int n, Complex coeff = 1.0);
  static MonomialField xi() { return monomial(1, 0); }
  static MonomialField xibar() { return monomial(0, 1); }
  /// 1 + ξξ̄
  static MonomialField conformal();

  const Terms& terms() const noexcept { return terms_; }
  Complex coeff(int m, int n) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  bool real() const noexcept { return real_; }
  int degree() const;
  /// Largest exponent of ξ (resp. ξ̄) over all terms.
  int max_m() const;
  int max_n() const;

  /// Returns a copy flagged real, symmetrizing coefficients. Throws BadInput
  /// when the field is not conjugate-symmetric to within `tol`.
  MonomialField as_real(double tol = 1e-12) const;
  bool is_conjugate_symmetric(double tol = 0.0) const;

  Complex operator()(Complex xi) const;

  MonomialField conj() const;
  MonomialField pow(int k) const;

  MonomialField& operator+=(const MonomialField& rhs);
  MonomialField& operator-=(const MonomialField& rhs);
  MonomialField& operator*=(const MonomialField& rhs);

  friend MonomialField operator+(MonomialField a, const MonomialField& b) { return a += b; }
  friend MonomialField operator-(MonomialField a, const MonomialField& b) { return a -= b; }
  friend MonomialField operator*(MonomialField a, const MonomialField& b) { return a *= b; }
  friend MonomialField operator-(const MonomialField& a) { return a * MonomialField(-1.0); }
  friend bool operator==(const MonomialField& a, const MonomialField& b) {
    return a.terms_ == b.terms_;
  }

  /// Max coefficient distance |a_mn - b_mn| over the union of supports.
  friend double coefficient_distance(const MonomialField& a, const MonomialField& b);

 private:
  void canonicalize();

  Terms terms_;
  bool real_ = false;
};

MonomialField d_xi(const MonomialField& f);
MonomialField d_xibar(const MonomialField& f);

/// f(g(ν), conj g(ν)) as a field in ν.
MonomialField compose(const MonomialField& f, const MonomialField& g);

/// Evaluates f at ξ; rejects |ξ| beyond the north chart.
Complex eval(const MonomialField& f, Complex xi);

/// num / (1+ξξ̄)^den_power
struct RationalField {
  MonomialField num;
  int den_power = 0;

  RationalField() = default;
  RationalField(MonomialField n, int p = 0);  // NOLINT

  Complex operator()(Complex xi) const;
  RationalField conj() const { return {num.conj(), den_power}; }
  /// Same value, numerator multiplied up to denominator power `p` >= den_power.
  RationalField with_den_power(int p) const;

  friend RationalField operator+(const RationalField& a, const RationalField& b);
  friend RationalField operator-(const RationalField& a, const RationalField& b);
  friend RationalField operator*(const RationalField& a, const RationalField& b);
};

RationalField d_xi(const RationalField& f);
RationalField d_xibar(const RationalField& f);
Complex eval(const RationalField& f, Complex xi);

/// k-th derivative of f along the ray ν = ρ e^{iθ}, taken at ν ≠ 0:
/// Σ_j C(k,j) e^{i(k-2j)θ} ∂^{k-j} ∂̄^j f.
Complex radial_derivative(const MonomialField& f, Complex nu, int order);

struct Loop {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int sample_count = kDefaultLoopSamples;

  Loop(Complex c, double r, int n = kDefaultLoopSamples);
  Complex point(int k) const;
  std::vector<Complex> samples() const;
};

/// Net argument change / 2π of a closed sampled loop (last sample connects
/// back to the first). Throws VanishingOnLoop when some |value| < min_mag and
/// UnresolvedWinding when a single increment is too large to be unambiguous.
int winding_number(std::span<const Complex> values, double min_mag = kDefaultMinMagnitude);

/// Samples `f` on `loop`, doubling the sample count until every argument
/// increment is resolved or `max_samples` is reached.
int winding_number(const std::function<Complex(Complex)>& f, Loop loop,
                   double min_mag = kDefaultMinMagnitude, int max_samples = kMaxLoopSamples);

}  // namespace tslines
