#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <sstream>

#include "oracles.hpp"
#include "tslines/blowup.hpp"
#include "tslines/error.hpp"
#include "tslines/euclid.hpp"

using namespace tslines;

namespace {

const MonomialField kXi = MonomialField::xi();
const MonomialField kXib = MonomialField::xibar();

MonomialField cubic_support() {
  return MonomialField::monomial(3, 0, 2.0 / 3) + MonomialField::monomial(0, 3, 2.0 / 3);
}

Vec3 surface_point(const SectionGraph& F, const SupportFunction& r, double C, Complex z) {
  return point_from_line(z, F(z), r(z) + C);
}

/// Half the principal-curvature gap from finite-difference fundamental forms.
double fd_umbilic_defect(const SectionGraph& F, const SupportFunction& r, double C, Complex z) {
  const double h = 1e-4;
  const Complex e[2] = {1.0, {0.0, 1.0}};
  auto x = [&](Complex w) { return surface_point(F, r, C, w); };
  Vec3 d[2];
  for (int i = 0; i < 2; ++i) d[i] = (x(z + h * e[i]) - x(z - h * e[i])) / (2 * h);
  const Vec3 n = direction_vector(z);
  Eigen::Matrix2d I, II;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      I(i, j) = d[i].dot(d[j]);
      const Vec3 dd = (x(z + h * e[i] + h * e[j]) - x(z + h * e[i] - h * e[j]) - x(z - h * e[i] + h * e[j]) +
                       x(z - h * e[i] - h * e[j])) /
                      (4 * h * h);
      II(i, j) = dd.dot(n);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(II, I);
  const auto k = es.eigenvalues();
  return 0.5 * std::abs(k[1] - k[0]);
}

}  // namespace

TEST_CASE("points on lines") {
  CHECK((point_from_line(0.0, 0.0, 2.0) - Vec3(0, 0, 2)).norm() < 1e-15);
  const Complex eta0{0.3, -0.4};
  CHECK((point_from_line(0.0, eta0, 0.0) - line_to_vectors({0.0, eta0}).V).norm() < 1e-15);
  CHECK((point_from_line(0.0, eta0, 0.0) - Vec3(0.6, -0.8, 0)).norm() < 1e-15);
  const Vec3 p = point_from_line(1.0, 4.0, 4.0 / 3.0);
  CHECK(std::abs(Complex{p.x(), p.y()} - 4.0 / 3.0) < 1e-14);
}

TEST_CASE("exact surface fields agree with pointwise reconstruction") {
  const SupportFunction r(cubic_support());
  const SectionGraph F = section_from_support(r);
  const auto X = surface_fields(F, r, 3.0);
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const Complex z = oracle::random_in_disc(rng, 1.0);
    const Vec3 p = surface_point(F, r, 3.0, z);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(eval(X[i], z) - p[i]) < 1e-12);
  }
}

TEST_CASE("round sphere") {
  const SupportFunction r;
  const SectionGraph F = section_from_support(r);
  const MeshR3 m = reconstruct_surface(F, r, 1.0, {0.9, 12, 16, 0.0});
  for (const auto& v : m.vertices) CHECK(v.x.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(support_property_check(m, F, r, 1.0).max_support_residual < 1e-12);
  const PrincipalAnalysis pa = principal_analysis(F, r, 1.0, {0.0, 0.9});
  CHECK(pa.totally_umbilic);
  CHECK(pa.umbilics.empty());
  CHECK(pa.max_defect < 1e-6);
}

TEST_CASE("support property on random supports") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    MonomialField::Terms t;
    for (int m = 0; m <= 3; ++m) {
      for (int n = m; m + n <= 3; ++n) {
        const Complex c = m == n ? Complex{u(rng), 0} : Complex{u(rng), u(rng)};
        t[{m, n}] += c;
        if (m != n) t[{n, m}] += std::conj(c);
      }
    }
    const SupportFunction r(MonomialField(std::move(t)));
    const SectionGraph F = section_from_support(r);
    const MeshR3 m = reconstruct_surface(F, r, 2.0, {0.9, 20, 20, 0.0});
    const SupportCheck chk = support_property_check(m, F, r, 2.0);
    CHECK(chk.max_support_residual < 1e-8);
    CHECK(chk.max_orthogonality < 1e-6);
    // Tangent vectors by differencing the chart are orthogonal to U.
    const Complex z = oracle::random_in_disc(rng, 0.7);
    const double h = 1e-5;
    for (Complex e : {Complex{1, 0}, Complex{0, 1}}) {
      const Vec3 d = (surface_point(F, r, 2.0, z + h * e) - surface_point(F, r, 2.0, z - h * e)) / (2 * h);
      CHECK(std::abs(d.dot(direction_vector(z))) < 1e-7);
    }
  }
}

TEST_CASE("umbilic defect matches finite-difference curvatures") {
  const SupportFunction r(cubic_support());
  const SectionGraph F = section_from_support(r);
  for (Complex z : {Complex{0.3, 0.2}, Complex{-0.5, 0.1}, Complex{0.1, -0.6}}) {
    CHECK(umbilic_defect(F, r, 3.0, z) == doctest::Approx(fd_umbilic_defect(F, r, 3.0, z)).epsilon(1e-4));
  }
  CHECK(umbilic_defect(F, r, 3.0, 0.0) < 1e-12);
  CHECK_THROWS_AS(umbilic_defect(F, r, 0.0, 0.0), Error);
}

TEST_CASE("principal foliation indices") {
  const SupportFunction r(cubic_support());
  const SectionGraph F = section_from_support(r);
  const PrincipalAnalysis a = principal_analysis(F, r, 3.0, {0.0, 0.9});
  const PrincipalAnalysis b = principal_analysis(F, r, 4.0, {0.0, 0.9});
  REQUIRE(a.umbilics.size() == 1);
  REQUIRE(b.umbilics.size() == 1);
  CHECK(a.umbilics[0].index() == -0.5);
  CHECK(std::abs(a.umbilics[0].location) < 1e-10);
  CHECK(b.umbilics[0].index_doubled == a.umbilics[0].index_doubled);
  CHECK(std::abs(b.umbilics[0].location - a.umbilics[0].location) < 1e-12);
  CHECK(a.umbilics[0].index_doubled == section_complex_index(F, 0.0, 0.1).index);

  const SupportFunction e(kXi * kXib);
  const SectionGraph E = section_from_support(e);
  const PrincipalAnalysis pe = principal_analysis(E, e, 3.0, {0.0, 0.5});
  REQUIRE(pe.umbilics.size() == 1);
  CHECK(pe.umbilics[0].index() == 1.0);
  CHECK(pe.umbilics[0].index_doubled == section_complex_index(E, 0.0, 0.1).index);
}

TEST_CASE("mesh normals follow the Gauss map") {
  const SupportFunction r(cubic_support());
  const SectionGraph F = section_from_support(r);
  CHECK(normal_alignment(reconstruct_surface(F, r, 3.0, {0.5, 80, 80, 0.0})) < 1e-2);
  CHECK(normal_alignment(reconstruct_surface(F, r, 10.0, {0.7, 80, 80, 0.0})) < 1e-2);
  // Past the focal set the mesh folds and the normals flip.
  CHECK(normal_alignment(reconstruct_surface(F, r, 3.0, {0.9, 80, 80, 0.0})) > 0.5);
  const MeshR3 sphere = reconstruct_surface(SectionGraph{}, SupportFunction(), 1.0, {0.9, 80, 80, 0.0});
  CHECK(normal_alignment(sphere) < 1e-2);
}

TEST_CASE("OBJ and CSV export") {
  const SupportFunction r(cubic_support());
  const MeshR3 m = reconstruct_surface(section_from_support(r), r, 3.0, {0.9, 2, 3, 0.0});
  const std::string obj = export_obj(m);
  int v = 0, f = 0;
  std::istringstream in(obj);
  for (std::string line; std::getline(in, line);) {
    v += line.rfind("v ", 0) == 0;
    f += line.rfind("f ", 0) == 0;
  }
  CHECK(v == 6);
  CHECK(f == 2);
  CHECK(obj.find("f 1 2 5 4\n") != std::string::npos);
  CHECK(obj.back() == '\n');
  const auto pts = parse_obj_vertices(obj);
  REQUIRE(pts.size() == m.vertices.size());
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK((pts[k] - m.vertices[k].x).norm() < 1e-8);
  const std::string csv = export_csv(m);
  CHECK(csv.rfind("u,v,x1,x2,x3\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK_THROWS_AS(export_obj(MeshR3{}), Error);
}

TEST_CASE("ruled families") {
  const ParamSurface cc = simple_crosscap(0.5);
  const std::vector<double> radii{0.8, 1.0};
  const auto meshes = ruled_family(cc, radii, -1.0, 1.0, 16, 5);
  REQUIRE(meshes.size() == 2);
  CHECK(meshes[0].rows == 32);
  CHECK(meshes[0].cols == 5);
  // Each row is a segment of the line through the surface point.
  const MeshR3& m = meshes[1];
  for (int i = 0; i < m.rows; ++i) {
    const Vec3 dir = (m.at(i, m.cols - 1).x - m.at(i, 0).x).normalized();
    for (int j = 1; j < m.cols - 1; ++j) {
      const Vec3 d = (m.at(i, j).x - m.at(i, 0).x);
      CHECK((d - d.dot(dir) * dir).norm() < 1e-12);
    }
  }
  // At |nu| = 1 nu and -nu give the same line; off the boundary they differ.
  const auto ring = [&](double R) {
    double worst = 0.0, best = 1e300;
    for (int k = 0; k < 32; ++k) {
      const Complex nu = std::polar(R, 2 * oracle::kPi * k / 32.0);
      const LineVectors a = line_to_vectors({cc.xi(nu), cc.eta(nu)});
      const LineVectors b = line_to_vectors({cc.xi(-nu), cc.eta(-nu)});
      const double dist = line_distance(a, b) + (a.U - b.U).norm();
      worst = std::max(worst, dist);
      best = std::min(best, dist);
    }
    return std::pair{worst, best};
  };
  CHECK(ring(1.0).first < 1e-12);
  CHECK(ring(0.8).second > 1e-3);
}

TEST_CASE("a translate of the cross-cap shares two boundary lines") {
  const ParamSurface cc = simple_crosscap(0.5);
  const MonomialField shift = translation_section(Vec3(0.3, 0.1, 0.0));
  std::vector<SurfacePiece> moved;
  for (auto p : cc.pieces()) {
    p.eta_expr = p.eta_expr + compose(shift, p.xi_expr);
    moved.push_back(std::move(p));
  }
  CHECK(count_coincident_lines(cc, ParamSurface(std::move(moved)), 1.0) == 2);
}
