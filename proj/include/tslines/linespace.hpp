#pragma once

// TS² as the space of oriented lines in R³ and its neutral Kähler structure.

#include <Eigen/Core>

#include "tslines/wirtinger.hpp"

namespace tslines {

using Vec3 = Eigen::Vector3d;

/// Oriented line in holomorphic coordinates: ξ is the stereographic
/// direction, η the perpendicular-distance coordinate.
struct OrientedLine {
  Complex xi;
  Complex eta;
  friend bool operator==(const OrientedLine&, const OrientedLine&) = default;
};

/// The same line as (U, V): unit direction and the foot of the perpendicular
/// from the origin.
struct LineVectors {
  Vec3 U;
  Vec3 V;
};

/// Real tangent vector 2Re(dξ ∂_ξ + dη ∂_η) at `at`.
struct TangentVec {
  OrientedLine at;
  Complex dxi;
  Complex deta;
};

/// Components of direction_vector as exact rational fields in ξ.
std::array<RationalField, 3> direction_fields();

Vec3 direction_vector(Complex xi);
/// ∂U/∂ξ as a complex 3-vector.
Eigen::Vector3cd direction_dxi(Complex xi);

LineVectors line_to_vectors(const OrientedLine& line);
OrientedLine vectors_to_line(const LineVectors& lv);

double omega(const TangentVec& v, const TangentVec& w);
double metric_g(const TangentVec& v, const TangentVec& w);
TangentVec apply_j(const TangentVec& v);

/// Matrices of Ω and G in the real basis (Re dξ, Im dξ, Re dη, Im dη).
Eigen::Matrix4d omega_matrix(const OrientedLine& at);
Eigen::Matrix4d metric_matrix(const OrientedLine& at);

struct Signature {
  int positive = 0;
  int negative = 0;
  int null = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature metric_signature(const OrientedLine& at, double tol = 1e-12);

/// Ω(v,w) / G(Jv,w); constant over TS² when Ω and G are compatible.
double compatibility_ratio(const TangentVec& v, const TangentVec& w);

/// Change Δη(ξ) of the η-coordinate of every line under the translation
/// x → x + a of R³: a holomorphic quadratic in ξ.
MonomialField translation_section(const Vec3& a);

}  // namespace tslines
