#include <doctest.h>

#include <Eigen/Geometry>

#include "oracles.hpp"
#include "tslines/error.hpp"
#include "tslines/linespace.hpp"

using namespace tslines;

namespace {

/// Distance from point p to the line through V with direction U.
double point_line_distance(const Vec3& p, const LineVectors& l) {
  const Vec3 d = p - l.V;
  return (d - d.dot(l.U) * l.U).norm();
}

OrientedLine random_line(std::mt19937_64& rng) {
  return {oracle::random_in_disc(rng, 2.0), oracle::random_in_disc(rng, 2.0)};
}

TangentVec random_tangent(std::mt19937_64& rng, const OrientedLine& at) {
  return {at, oracle::random_in_disc(rng, 1.0), oracle::random_in_disc(rng, 1.0)};
}

/// Displacement of (U, V) along a tangent vector by centered differences.
std::pair<Vec3, Vec3> line_velocity(const TangentVec& v, double h = 1e-6) {
  const LineVectors p = line_to_vectors({v.at.xi + h * v.dxi, v.at.eta + h * v.deta});
  const LineVectors m = line_to_vectors({v.at.xi - h * v.dxi, v.at.eta - h * v.deta});
  return {(p.U - m.U) / (2 * h), (p.V - m.V) / (2 * h)};
}

}  // namespace

TEST_CASE("direction vector at reference points") {
  CHECK((direction_vector(0.0) - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((direction_vector(1.0) - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((direction_vector({0, 1}) - Vec3(0, 1, 0)).norm() < 1e-15);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) CHECK(direction_vector(oracle::random_in_disc(rng, 5.0)).norm() == doctest::Approx(1.0));
}

TEST_CASE("exact direction fields and chart derivative") {
  const auto U = direction_fields();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const Complex z = oracle::random_in_disc(rng, 1.5);
    const Vec3 u = direction_vector(z);
    const Eigen::Vector3cd du = direction_dxi(z);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(eval(U[i], z) - u[i]) < 1e-14);
      auto comp = [i](Complex w) { return Complex{direction_vector(w)[i], 0.0}; };
      CHECK(std::abs(du[i] - oracle::d_xi(comp, z)) < 1e-8);
    }
  }
}

TEST_CASE("line vectors") {
  const LineVectors o = line_to_vectors({0.0, 0.0});
  CHECK((o.U - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK(o.V.norm() < 1e-15);
  const Complex eta0{0.7, -0.3};
  CHECK((line_to_vectors({0.0, eta0}).V - Vec3(2 * eta0.real(), 2 * eta0.imag(), 0)).norm() < 1e-15);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const OrientedLine l = random_line(rng);
    const LineVectors lv = line_to_vectors(l);
    CHECK(std::abs(lv.U.dot(lv.V)) < 1e-13);
    const OrientedLine back = vectors_to_line(lv);
    CHECK(std::abs(back.xi - l.xi) < 1e-12);
    CHECK(std::abs(back.eta - l.eta) < 1e-12);
  }
}

TEST_CASE("symplectic form reference values") {
  const OrientedLine o{0.0, 0.0};
  const TangentVec v{o, 1.0, 0.0};
  const TangentVec w{o, 0.0, 1.0};
  CHECK(omega(v, v) == 0.0);
  CHECK(omega(v, w) == doctest::Approx(-4.0));
  CHECK(omega(w, v) == doctest::Approx(4.0));
  const TangentVec elsewhere{{0.5, 0.0}, 1.0, 0.0};
  CHECK_THROWS_AS(omega(v, elsewhere), Error);
}

TEST_CASE("metric reference values") {
  const OrientedLine o{0.0, 0.0};
  CHECK(metric_g({o, 1.0, {0, 1}}, {o, 1.0, {0, 1}}) == doctest::Approx(-4.0));
  CHECK(metric_g({o, 1.0, {0, -1}}, {o, 1.0, {0, -1}}) == doctest::Approx(4.0));
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const OrientedLine at = random_line(rng);
    CHECK(metric_signature(at) == Signature{2, 2, 0});
    const Eigen::Matrix4d G = metric_matrix(at);
    const Eigen::Matrix4d W = omega_matrix(at);
    CHECK((G - G.transpose()).norm() < 1e-12);
    CHECK((W + W.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("complex structure") {
  const OrientedLine o{0.3, 0.1};
  const TangentVec v{o, 1.0, 0.0};
  const TangentVec jv = apply_j(v);
  CHECK(std::abs(jv.dxi - Complex{0, 1}) < 1e-15);
  CHECK(std::abs(jv.deta) < 1e-15);
  std::mt19937_64 rng(23);
  const TangentVec u = random_tangent(rng, o);
  const TangentVec jju = apply_j(apply_j(u));
  CHECK(std::abs(jju.dxi + u.dxi) < 1e-15);
  CHECK(std::abs(jju.deta + u.deta) < 1e-15);
}

TEST_CASE("compatibility constant is the same everywhere") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 30; ++k) {
    const OrientedLine at = random_line(rng);
    const TangentVec v = random_tangent(rng, at);
    const TangentVec w = random_tangent(rng, at);
    if (std::abs(metric_g(apply_j(v), w)) < 1e-3) continue;
    CHECK(compatibility_ratio(v, w) == doctest::Approx(-2.0).epsilon(1e-9));
  }
}

TEST_CASE("omega is a fixed multiple of the canonical form dU.dV") {
  // Invariant form on the space of lines: dU_v . dV_w - dU_w . dV_v.
  std::mt19937_64 rng(31);
  double ratio = 0.0;
  for (int k = 0; k < 20; ++k) {
    const OrientedLine at = random_line(rng);
    const TangentVec v = random_tangent(rng, at);
    const TangentVec w = random_tangent(rng, at);
    const auto [uv, vv] = line_velocity(v);
    const auto [uw, vw] = line_velocity(w);
    const double canonical = uv.dot(vw) - uw.dot(vv);
    if (std::abs(canonical) < 1e-2) continue;
    const double q = omega(v, w) / canonical;
    if (ratio == 0.0) ratio = q;
    CHECK(q == doctest::Approx(ratio).epsilon(1e-6));
  }
  CHECK(ratio != 0.0);
}

TEST_CASE("translation shifts eta by a holomorphic quadratic") {
  std::mt19937_64 rng(37);
  const Vec3 a(0.4, -0.7, 1.1);
  const MonomialField d = translation_section(a);
  CHECK(d.max_n() == 0);
  CHECK(d.degree() == 2);
  for (int k = 0; k < 20; ++k) {
    const OrientedLine l = random_line(rng);
    const LineVectors before = line_to_vectors(l);
    const LineVectors after = line_to_vectors({l.xi, l.eta + eval(d, l.xi)});
    CHECK((after.U - before.U).norm() < 1e-15);
    for (double t : {-1.0, 0.0, 2.0}) CHECK(point_line_distance(before.V + t * before.U + a, after) < 1e-12);
  }
}
