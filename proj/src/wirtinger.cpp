#include "tslines/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tslines/error.hpp"

namespace tslines {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::VanishingOnLoop: return "VanishingOnLoop";
    case ErrorCode::UnresolvedWinding: return "UnresolvedWinding";
    case ErrorCode::ChartRange: return "ChartRange";
    case ErrorCode::BasePointMismatch: return "BasePointMismatch";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::OnSeam: return "OnSeam";
    case ErrorCode::DegenerateZeroCurve: return "DegenerateZeroCurve";
    case ErrorCode::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::SingularMatch: return "SingularMatch";
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// MonomialField

MonomialField::MonomialField(Terms terms, bool real) : terms_(std::move(terms)), real_(real) {
  for (const auto& [e, c] : terms_) {
    if (e.m < 0 || e.n < 0) throw Error(ErrorCode::BadInput, "negative exponent");
  }
  canonicalize();
}

MonomialField::MonomialField(Complex constant) {
  if (constant != Complex{}) terms_[{0, 0}] = constant;
  real_ = constant.imag() == 0.0;
}

MonomialField::MonomialField(double constant) : MonomialField(Complex{constant, 0.0}) {}

MonomialField MonomialField::monomial(int m, int n, Complex coeff) {
  Terms t;
  t[{m, n}] = coeff;
  return MonomialField(std::move(t), m == n && coeff.imag() == 0.0);
}

MonomialField MonomialField::conformal() {
  return MonomialField(Terms{{{0, 0}, 1.0}, {{1, 1}, 1.0}}, true);
}

void MonomialField::canonicalize() {
  if (real_) {
    // Average each conjugate pair so the symmetry holds bit-exactly.
    Terms sym;
    for (const auto& [e, c] : terms_) {
      const Exponent mirror{e.n, e.m};
      auto it = terms_.find(mirror);
      const Complex partner = it == terms_.end() ? Complex{} : std::conj(it->second);
      Complex v = 0.5 * (c + partner);
      if (e.m == e.n) v = {c.real(), 0.0};
      sym[e] = v;
      sym[mirror] = std::conj(v);
    }
    terms_ = std::move(sym);
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{}; });
}

Complex MonomialField::coeff(int m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? Complex{} : it->second;
}

int MonomialField::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.m + e.n);
  return d;
}

int MonomialField::max_m() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.m);
  return d;
}

int MonomialField::max_n() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.n);
  return d;
}

bool MonomialField::is_conjugate_symmetric(double tol) const {
  for (const auto& [e, c] : terms_) {
    if (std::abs(c - std::conj(coeff(e.n, e.m))) > tol) return false;
  }
  return true;
}

MonomialField MonomialField::as_real(double tol) const {
  if (!is_conjugate_symmetric(tol)) {
    throw Error(ErrorCode::BadInput, "field is not conjugate-symmetric, cannot flag real");
  }
  return MonomialField(terms_, true);
}

Complex MonomialField::operator()(Complex xi) const { return eval(*this, xi); }

MonomialField MonomialField::conj() const {
  Terms t;
  for (const auto& [e, c] : terms_) t[{e.n, e.m}] = std::conj(c);
  return MonomialField(std::move(t), real_);
}

MonomialField MonomialField::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::BadInput, "negative power");
  MonomialField result(1.0);
  MonomialField base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

MonomialField& MonomialField::operator+=(const MonomialField& rhs) {
  for (const auto& [e, c] : rhs.terms_) terms_[e] += c;
  real_ = real_ && rhs.real_;
  canonicalize();
  return *this;
}

MonomialField& MonomialField::operator-=(const MonomialField& rhs) {
  for (const auto& [e, c] : rhs.terms_) terms_[e] -= c;
  real_ = real_ && rhs.real_;
  canonicalize();
  return *this;
}

MonomialField& MonomialField::operator*=(const MonomialField& rhs) {
  Terms out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) out[{ea.m + eb.m, ea.n + eb.n}] += ca * cb;
  }
  terms_ = std::move(out);
  real_ = real_ && rhs.real_;
  canonicalize();
  return *this;
}

double coefficient_distance(const MonomialField& a, const MonomialField& b) {
  double d = 0.0;
  for (const auto& [e, c] : a.terms_) d = std::max(d, std::abs(c - b.coeff(e.m, e.n)));
  for (const auto& [e, c] : b.terms_) d = std::max(d, std::abs(c - a.coeff(e.m, e.n)));
  return d;
}

MonomialField d_xi(const MonomialField& f) {
  MonomialField::Terms t;
  for (const auto& [e, c] : f.terms()) {
    if (e.m > 0) t[{e.m - 1, e.n}] = static_cast<double>(e.m) * c;
  }
  return MonomialField(std::move(t));
}

MonomialField d_xibar(const MonomialField& f) {
  MonomialField::Terms t;
  for (const auto& [e, c] : f.terms()) {
    if (e.n > 0) t[{e.m, e.n - 1}] = static_cast<double>(e.n) * c;
  }
  return MonomialField(std::move(t));
}

MonomialField compose(const MonomialField& f, const MonomialField& g) {
  const MonomialField gb = g.conj();
  std::vector<MonomialField> gp{MonomialField(1.0)}, gbp{MonomialField(1.0)};
  for (int k = 1; k <= f.max_m(); ++k) gp.push_back(gp.back() * g);
  for (int k = 1; k <= f.max_n(); ++k) gbp.push_back(gbp.back() * gb);
  MonomialField out;
  for (const auto& [e, c] : f.terms()) out += MonomialField(c) * gp[e.m] * gbp[e.n];
  return out;
}

Complex eval(const MonomialField& f, Complex xi) {
  if (!(std::abs(xi) <= kChartLimit)) {
    std::ostringstream os;
    os << "|xi| = " << std::abs(xi) << " outside the north chart";
    throw Error(ErrorCode::ChartRange, os.str());
  }
  if (f.is_zero()) return {};
  // Power tables, then accumulate per ξ̄-row with Horner in ξ.
  const int mm = f.max_m();
  const int mn = f.max_n();
  std::vector<Complex> xb(mn + 1, 1.0);
  const Complex xibar = std::conj(xi);
  for (int k = 1; k <= mn; ++k) xb[k] = xb[k - 1] * xibar;
  std::vector<Complex> row(mn + 1);
  std::vector<std::vector<Complex>> coeffs(mn + 1, std::vector<Complex>(mm + 1));
  for (const auto& [e, c] : f.terms()) coeffs[e.n][e.m] = c;
  Complex total{};
  for (int n = 0; n <= mn; ++n) {
    Complex acc{};
    for (int m = mm; m >= 0; --m) acc = acc * xi + coeffs[n][m];
    total += acc * xb[n];
  }
  if (f.real()) total.imag(0.0);
  return total;
}

// ---------------------------------------------------------------------------
// RationalField

RationalField::RationalField(MonomialField n, int p) : num(std::move(n)), den_power(p) {
  if (p < 0) throw Error(ErrorCode::BadInput, "negative denominator power");
}

Complex RationalField::operator()(Complex xi) const { return eval(*this, xi); }

RationalField RationalField::with_den_power(int p) const {
  if (p < den_power) throw Error(ErrorCode::BadInput, "cannot lower denominator power");
  return {num * MonomialField::conformal().pow(p - den_power), p};
}

RationalField operator+(const RationalField& a, const RationalField& b) {
  const int p = std::max(a.den_power, b.den_power);
  return {a.with_den_power(p).num + b.with_den_power(p).num, p};
}

RationalField operator-(const RationalField& a, const RationalField& b) {
  const int p = std::max(a.den_power, b.den_power);
  return {a.with_den_power(p).num - b.with_den_power(p).num, p};
}

RationalField operator*(const RationalField& a, const RationalField& b) {
  return {a.num * b.num, a.den_power + b.den_power};
}

// ∂(N (1+ξξ̄)^-p) = (∂N (1+ξξ̄) - p ξ̄ N) (1+ξξ̄)^-(p+1)
RationalField d_xi(const RationalField& f) {
  if (f.den_power == 0) return {d_xi(f.num), 0};
  const MonomialField num =
      d_xi(f.num) * MonomialField::conformal() -
      MonomialField::monomial(0, 1, static_cast<double>(f.den_power)) * f.num;
  return {num, f.den_power + 1};
}

RationalField d_xibar(const RationalField& f) {
  if (f.den_power == 0) return {d_xibar(f.num), 0};
  const MonomialField num =
      d_xibar(f.num) * MonomialField::conformal() -
      MonomialField::monomial(1, 0, static_cast<double>(f.den_power)) * f.num;
  return {num, f.den_power + 1};
}

Complex eval(const RationalField& f, Complex xi) {
  const Complex n = eval(f.num, xi);
  if (f.den_power == 0) return n;
  return n / std::pow(1.0 + std::norm(xi), f.den_power);
}

Complex radial_derivative(const MonomialField& f, Complex nu, int order) {
  if (order < 0) throw Error(ErrorCode::BadInput, "negative derivative order");
  if (order == 0) return eval(f, nu);
  if (nu == Complex{}) throw Error(ErrorCode::BadInput, "radial direction undefined at the origin");
  const Complex phase = nu / std::abs(nu);
  Complex total{};
  double binom = 1.0;
  for (int j = 0; j <= order; ++j) {
    MonomialField g = f;
    for (int a = 0; a < order - j; ++a) g = d_xi(g);
    for (int b = 0; b < j; ++b) g = d_xibar(g);
    total += binom * std::pow(phase, order - 2 * j) * eval(g, nu);
    binom = binom * (order - j) / (j + 1);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Winding numbers

Loop::Loop(Complex c, double r, int n) : center(c), radius(r), sample_count(n) {
  if (!(r > 0.0)) throw Error(ErrorCode::BadInput, "loop radius must be positive");
  if (n < 64 || n % 2 != 0) throw Error(ErrorCode::BadInput, "loop sample count must be even and >= 64");
}

Complex Loop::point(int k) const {
  const double theta = 2.0 * std::numbers::pi * k / sample_count;
  return center + std::polar(radius, theta);
}

std::vector<Complex> Loop::samples() const {
  std::vector<Complex> pts(sample_count);
  for (int k = 0; k < sample_count; ++k) pts[k] = point(k);
  return pts;
}

namespace {

// Increments above this are treated as unresolved; strictly inside the
// principal branch so aliasing needs a much coarser loop than π would allow.
constexpr double kMaxIncrement = std::numbers::pi / 2.0;

struct Accumulation {
  double total = 0.0;
  double max_step = 0.0;
};

Accumulation accumulate(std::span<const Complex> values, double min_mag) {
  Accumulation acc;
  const std::size_t n = values.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(values[k]) < min_mag) {
      std::ostringstream os;
      os << "|value| = " << std::abs(values[k]) << " below " << min_mag << " at sample " << k;
      throw Error(ErrorCode::VanishingOnLoop, os.str());
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double step = std::arg(values[(k + 1) % n] / values[k]);
    acc.total += step;
    acc.max_step = std::max(acc.max_step, std::abs(step));
  }
  return acc;
}

}  // namespace

int winding_number(std::span<const Complex> values, double min_mag) {
  if (values.size() < 3) throw Error(ErrorCode::BadInput, "need at least three samples");
  const Accumulation acc = accumulate(values, min_mag);
  if (acc.max_step > kMaxIncrement) {
    throw Error(ErrorCode::UnresolvedWinding, "argument increment too large; refine the loop");
  }
  return static_cast<int>(std::lround(acc.total / (2.0 * std::numbers::pi)));
}

int winding_number(const std::function<Complex(Complex)>& f, Loop loop, double min_mag,
                   int max_samples) {
  while (true) {
    std::vector<Complex> values;
    values.reserve(loop.sample_count);
    for (int k = 0; k < loop.sample_count; ++k) values.push_back(f(loop.point(k)));
    const Accumulation acc = accumulate(values, min_mag);
    if (acc.max_step <= kMaxIncrement) {
      return static_cast<int>(std::lround(acc.total / (2.0 * std::numbers::pi)));
    }
    if (loop.sample_count * 2 > max_samples) {
      throw Error(ErrorCode::UnresolvedWinding, "refinement cap reached");
    }
    loop.sample_count *= 2;
  }
}

}  // namespace tslines
