#include "tslines/linespace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tslines/error.hpp"

namespace tslines {

namespace {

void require_same_base(const TangentVec& v, const TangentVec& w) {
  if (!(v.at == w.at)) throw Error(ErrorCode::BasePointMismatch, "tangent vectors at different lines");
}

double conformal_factor(Complex xi) { return 1.0 + std::norm(xi); }

// dα∧dβ(v,w) = dα(v)dβ(w) - dα(w)dβ(v)
Complex wedge(Complex av, Complex bv, Complex aw, Complex bw) { return av * bw - aw * bv; }

TangentVec basis(const OrientedLine& at, int k) {
  switch (k) {
    case 0: return {at, {1.0, 0.0}, {}};
    case 1: return {at, {0.0, 1.0}, {}};
    case 2: return {at, {}, {1.0, 0.0}};
    default: return {at, {}, {0.0, 1.0}};
  }
}

}  // namespace

std::array<RationalField, 3> direction_fields() {
  using MF = MonomialField;
  const MF xi = MF::xi();
  const MF xb = MF::xibar();
  return {RationalField{xi + xb, 1}, RationalField{MF(Complex{0.0, -1.0}) * (xi - xb), 1},
          RationalField{MF(1.0) - xi * xb, 1}};
}

Vec3 direction_vector(Complex xi) {
  if (!(std::abs(xi) <= kChartLimit)) throw Error(ErrorCode::ChartRange, "direction outside north chart");
  const double d = conformal_factor(xi);
  return Vec3(2.0 * xi.real(), 2.0 * xi.imag(), 1.0 - std::norm(xi)) / d;
}

Eigen::Vector3cd direction_dxi(Complex xi) {
  const double d2 = std::pow(conformal_factor(xi), 2);
  const Complex xb2 = std::conj(xi) * std::conj(xi);
  return Eigen::Vector3cd((1.0 - xb2) / d2, Complex{0.0, -1.0} * (1.0 + xb2) / d2,
                          -2.0 * std::conj(xi) / d2);
}

LineVectors line_to_vectors(const OrientedLine& line) {
  const Eigen::Vector3cd e = direction_dxi(line.xi);
  const Eigen::Vector3cd v = line.eta * e;
  return {direction_vector(line.xi), 2.0 * v.real()};
}

// ∂U·∂U = 0 and ∂U·∂̄U = 2/(1+ξξ̄)², so η = ½(1+ξξ̄)² V·∂̄U.
OrientedLine vectors_to_line(const LineVectors& lv) {
  const Vec3 u = lv.U.normalized();
  if (u.z() <= -1.0 + 1e-12) throw Error(ErrorCode::ChartRange, "direction is the chart antipode");
  const Complex xi = Complex{u.x(), u.y()} / (1.0 + u.z());
  const Eigen::Vector3cd ebar = direction_dxi(xi).conjugate();
  const Complex dot = lv.V.cast<Complex>().dot(ebar);  // Eigen's dot conjugates the first arg
  return {xi, 0.5 * std::pow(conformal_factor(xi), 2) * dot};
}

double omega(const TangentVec& v, const TangentVec& w) {
  require_same_base(v, w);
  const Complex xi = v.at.xi;
  const Complex eta = v.at.eta;
  const double d = conformal_factor(xi);
  const Complex first = wedge(v.deta, std::conj(v.dxi), w.deta, std::conj(w.dxi));
  const Complex second = wedge(v.dxi, std::conj(v.dxi), w.dxi, std::conj(w.dxi));
  return 4.0 / (d * d) * std::real(first - 2.0 * std::conj(xi) * eta / d * second);
}

double metric_g(const TangentVec& v, const TangentVec& w) {
  require_same_base(v, w);
  const Complex xi = v.at.xi;
  const Complex eta = v.at.eta;
  const double d = conformal_factor(xi);
  const Complex first = 0.5 * (std::conj(v.deta) * w.dxi + std::conj(w.deta) * v.dxi);
  const double second = std::real(v.dxi * std::conj(w.dxi));
  return 4.0 / (d * d) * std::imag(first + 2.0 * std::conj(xi) * eta / d * second);
}

TangentVec apply_j(const TangentVec& v) {
  const Complex i{0.0, 1.0};
  return {v.at, i * v.dxi, i * v.deta};
}

Eigen::Matrix4d omega_matrix(const OrientedLine& at) {
  Eigen::Matrix4d m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = omega(basis(at, a), basis(at, b));
  return m;
}

Eigen::Matrix4d metric_matrix(const OrientedLine& at) {
  Eigen::Matrix4d m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = metric_g(basis(at, a), basis(at, b));
  return m;
}

Signature metric_signature(const OrientedLine& at, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(metric_matrix(at), Eigen::EigenvaluesOnly);
  Signature s;
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  for (double lambda : solver.eigenvalues()) {
    if (lambda > tol * scale) ++s.positive;
    else if (lambda < -tol * scale) ++s.negative;
    else ++s.null;
  }
  return s;
}

double compatibility_ratio(const TangentVec& v, const TangentVec& w) {
  return omega(v, w) / metric_g(apply_j(v), w);
}

// Translating by a keeps U and moves V by a - (a·U)U; only the ∂U/∂ξ
// component survives, giving Δη = ½(a₁+ia₂) - a₃ξ - ½(a₁-ia₂)ξ².
MonomialField translation_section(const Vec3& a) {
  const Complex ap{a.x(), a.y()};
  MonomialField::Terms t{{{0, 0}, 0.5 * ap}, {{1, 0}, -a.z()}, {{2, 0}, -0.5 * std::conj(ap)}};
  return MonomialField(std::move(t));
}

}  // namespace tslines
