#include "tslines/euclid.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tslines/error.hpp"

namespace tslines {

namespace {

using MF = MonomialField;


// Exact jets of the surface position: ∂X, ∂̄X, ∂²X, ∂∂̄X, ∂̄²X.
struct SurfaceJets {
  std::array<RationalField, 3> x, d, db, dd, ddb, dbdb;
  std::array<RationalField, 3> unit;

  SurfaceJets(const SectionGraph& F, const SupportFunction& r, double C) : x(surface_fields(F, r, C)), unit(direction_fields()) {
    for (int k = 0; k < 3; ++k) {
      d[k] = d_xi(x[k]);
      db[k] = d_xibar(x[k]);
      dd[k] = d_xi(d[k]);
      ddb[k] = d_xibar(d[k]);
      dbdb[k] = d_xibar(db[k]);
    }
  }

  static std::array<Complex, 3> at(const std::array<RationalField, 3>& f, Complex xi) {
    return {eval(f[0], xi), eval(f[1], xi), eval(f[2], xi)};
  }
};

struct FundamentalForms {
  Eigen::Matrix2d first;
  Eigen::Matrix2d second;
};

// u + iv = ξ: ∂ᵤ = ∂ + ∂̄ and ∂ᵥ = i(∂ - ∂̄).
FundamentalForms forms_at(const SurfaceJets& j, Complex xi) {
  const Complex i{0.0, 1.0};
  const auto d = SurfaceJets::at(j.d, xi), db = SurfaceJets::at(j.db, xi);
  const auto dd = SurfaceJets::at(j.dd, xi), ddb = SurfaceJets::at(j.ddb, xi), bb = SurfaceJets::at(j.dbdb, xi);
  Vec3 xu, xv, xuu, xuv, xvv;
  for (int k = 0; k < 3; ++k) {
    xu[k] = std::real(d[k] + db[k]);
    xv[k] = std::real(i * (d[k] - db[k]));
    xuu[k] = std::real(dd[k] + 2.0 * ddb[k] + bb[k]);
    xvv[k] = std::real(-(dd[k] - 2.0 * ddb[k] + bb[k]));
    xuv[k] = std::real(i * (dd[k] - bb[k]));
  }
  const Vec3 n = direction_vector(xi);
  FundamentalForms f;
  f.first << xu.dot(xu), xu.dot(xv), xu.dot(xv), xv.dot(xv);
  f.second << xuu.dot(n), xuv.dot(n), xuv.dot(n), xvv.dot(n);
  return f;
}

double defect_from_forms(const FundamentalForms& f, Complex xi) {
  const double det_i = f.first.determinant();
  if (!(det_i > 1e-14 * std::max(1.0, f.first.squaredNorm()))) {
    std::ostringstream os;
    os << "first fundamental form degenerate at xi = " << xi;
    throw Error(ErrorCode::NotImmersed, os.str());
  }
  const Eigen::Matrix2d shape = f.first.inverse() * f.second;
  const double half_trace = 0.5 * shape.trace();
  return std::sqrt(std::max(0.0, half_trace * half_trace - shape.determinant()));
}

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

Vec3 point_from_line(Complex xi, Complex eta, double r) {
  if (!(std::abs(xi) <= kChartLimit)) throw Error(ErrorCode::ChartRange, "direction outside north chart");
  const double t = std::norm(xi);
  const double d2 = (1.0 + t) * (1.0 + t);
  const Complex z = (2.0 * (eta - std::conj(eta) * xi * xi) + 2.0 * xi * (1.0 + t) * r) / d2;
  const double x3 = (-2.0 * std::real(eta * std::conj(xi) + std::conj(eta) * xi) + (1.0 - t * t) * r) / d2;
  return {z.real(), z.imag(), x3};
}

std::array<RationalField, 3> surface_fields(const SectionGraph& F, const SupportFunction& r, double C) {
  const RationalField f = F.F;
  const RationalField fb = f.conj();
  const RationalField rho{r.field() + MF(C), 0};
  const RationalField xi{MF::xi(), 0};
  const RationalField xib{MF::xibar(), 0};
  const RationalField conf{MF::conformal(), 0};
  const RationalField inv2{MF(1.0), 2};
  const RationalField two{MF(2.0), 0};

  const RationalField z = (two * (f - fb * xi * xi) + two * xi * conf * rho) * inv2;
  const RationalField zb = z.conj();
  const RationalField x1 = RationalField{MF(0.5), 0} * (z + zb);
  const RationalField x2 = RationalField{MF(Complex{0.0, -0.5}), 0} * (z - zb);
  const RationalField one_minus_t2{MF(1.0) - MF::monomial(2, 2), 0};
  const RationalField x3 = (RationalField{MF(-2.0), 0} * (f * xib + fb * xi) + one_minus_t2 * rho) * inv2;
  return {x1, x2, x3};
}

MeshR3 reconstruct_surface(const SectionGraph& F, const SupportFunction& r, double C, const DiscGrid& grid) {
  if (grid.radial_n < 2 || grid.angular_n < 3) throw Error(ErrorCode::BadParams, "grid must be at least 2x3");
  MeshR3 mesh;
  mesh.rows = grid.radial_n;
  mesh.cols = grid.angular_n;
  mesh.vertices.reserve(static_cast<std::size_t>(mesh.rows) * mesh.cols);
  for (int i = 0; i < grid.radial_n; ++i) {
    const double rho = grid.radius * (i + 1) / grid.radial_n;
    for (int j = 0; j < grid.angular_n; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / (grid.angular_n - 1);
      const Complex xi = grid.center + std::polar(rho, theta);
      mesh.vertices.push_back({point_from_line(xi, F(xi), r(xi) + C), xi, rho, theta});
    }
  }
  return mesh;
}

SupportCheck support_property_check(const MeshR3& mesh, const SectionGraph& F, const SupportFunction& r,
                                    double C, double h) {
  SupportCheck out;
  auto pos = [&](Complex xi) { return point_from_line(xi, F(xi), r(xi) + C); };
  for (const SurfacePoint& p : mesh.vertices) {
    const Vec3 u = direction_vector(p.xi);
    out.max_support_residual = std::max(out.max_support_residual, std::abs(p.x.dot(u) - (r(p.xi) + C)));
    const Vec3 dx1 = (pos(p.xi + h) - pos(p.xi - h)) / (2.0 * h);
    const Vec3 dx2 = (pos(p.xi + Complex{0.0, h}) - pos(p.xi - Complex{0.0, h})) / (2.0 * h);
    out.max_orthogonality = std::max({out.max_orthogonality, std::abs(dx1.dot(u)), std::abs(dx2.dot(u))});
  }
  return out;
}

RationalField traceless_second_form(const SectionGraph& F, const SupportFunction& r, double C) {
  // ½(II₁₁ - II₂₂) - i II₁₂ = 2 ∂²X · U
  const auto x = surface_fields(F, r, C);
  const auto u = direction_fields();
  RationalField q{MF(), 0};
  for (int k = 0; k < 3; ++k) q = q + d_xi(d_xi(x[k])) * u[k];
  return RationalField{MF(2.0), 0} * q;
}

double umbilic_defect(const SectionGraph& F, const SupportFunction& r, double C, Complex xi) {
  const SurfaceJets jets(F, r, C);
  return defect_from_forms(forms_at(jets, xi), xi);
}

PrincipalAnalysis principal_analysis(const SectionGraph& F, const SupportFunction& r, double C,
                                     const Disc& disc, int grid_n) {
  const SurfaceJets jets(F, r, C);
  PrincipalAnalysis out;
  out.min_defect = std::numeric_limits<double>::infinity();
  const int nr = 24, nt = 48;
  for (int i = 0; i <= nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const Complex xi = disc.center + std::polar(disc.radius * i / nr, 2.0 * std::numbers::pi * (j + 0.5) / nt);
      const double d = defect_from_forms(forms_at(jets, xi), xi);
      out.max_defect = std::max(out.max_defect, d);
      out.min_defect = std::min(out.min_defect, d);
    }
  }
  const RationalField q = traceless_second_form(F, r, C);
  double qscale = 0.0;
  for (const auto& [e, c] : q.num.terms()) qscale = std::max(qscale, std::abs(c));
  if (qscale < 1e-12 || out.max_defect < 1e-10) {
    out.totally_umbilic = true;
    return out;
  }
  const std::vector<Complex> all = find_zeros(q, {disc.center, disc.radius * 1.25}, grid_n);
  for (Complex z : all) {
    if (std::abs(z - disc.center) > disc.radius) continue;
    double nearest = disc.radius;
    for (Complex w : all)
      if (w != z) nearest = std::min(nearest, std::abs(w - z));
    const IndexResult idx = zero_index(q, z, 0.5 * nearest);
    out.umbilics.push_back({z, kFoliationSign * idx.index, idx.loop_radius});
  }
  return out;
}

double normal_alignment(const MeshR3& mesh) {
  double worst = 0.0;
  for (int i = 1; i + 1 < mesh.rows; ++i) {
    for (int j = 1; j + 1 < mesh.cols; ++j) {
      const Vec3 a = mesh.at(i + 1, j).x - mesh.at(i - 1, j).x;
      const Vec3 b = mesh.at(i, j + 1).x - mesh.at(i, j - 1).x;
      const Vec3 n = a.cross(b);
      if (n.norm() < 1e-12 * a.norm() * b.norm() || n.norm() == 0.0) continue;
      worst = std::max(worst, n.normalized().cross(direction_vector(mesh.at(i, j).xi)).norm());
    }
  }
  return worst;
}

std::vector<MeshR3> ruled_family(const ParamSurface& s, std::span<const double> radii, double t_min,
                                 double t_max, int angular_n, int t_n) {
  if (angular_n < 2 || t_n < 2) throw Error(ErrorCode::BadParams, "ruled mesh needs angular_n, t_n >= 2");
  std::vector<MeshR3> out;
  for (double radius : radii) {
    MeshR3 mesh;
    mesh.rows = 2 * angular_n;
    mesh.cols = t_n;
    for (int i = 0; i < mesh.rows; ++i) {
      const double theta = std::numbers::pi * i / angular_n;
      const Complex nu = std::polar(radius, theta);
      const Complex xi = s.xi(nu);
      const Complex eta = s.eta(nu);
      for (int j = 0; j < t_n; ++j) {
        const double t = t_min + (t_max - t_min) * j / (t_n - 1);
        mesh.vertices.push_back({point_from_line(xi, eta, t), xi, theta, t});
      }
    }
    out.push_back(std::move(mesh));
  }
  return out;
}

double line_distance(const LineVectors& a, const LineVectors& b) {
  const Vec3 cross = a.U.cross(b.U);
  const Vec3 gap = b.V - a.V;
  if (cross.norm() < 1e-12) return gap.cross(a.U).norm();
  return std::abs(gap.dot(cross)) / cross.norm();
}

int count_coincident_lines(const ParamSurface& a, const ParamSurface& b, double radius, double tol, int samples) {
  auto line_a = [&](double th) {
    const Complex nu = std::polar(radius, th);
    return line_to_vectors({a.xi(nu), a.eta(nu)});
  };
  auto line_b = [&](double th) {
    const Complex nu = std::polar(radius, th);
    return line_to_vectors({b.xi(nu), b.eta(nu)});
  };
  const double step = 2.0 * std::numbers::pi / samples;
  std::vector<LineVectors> b_lines;
  for (int k = 0; k < samples; ++k) b_lines.push_back(line_b(k * step));

  auto dist_to_b = [&](double th) {
    const LineVectors la = line_a(th);
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
      const double d = line_distance(la, b_lines[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    const auto refined = boost::math::tools::brent_find_minima(
        [&](double tb) { return line_distance(la, line_b(tb)); }, (best - 1) * step, (best + 1) * step, 52);
    return std::min(best_d, refined.second);
  };

  std::vector<double> d(samples);
  for (int k = 0; k < samples; ++k) d[k] = dist_to_b(k * step);

  std::vector<LineVectors> found;
  for (int k = 0; k < samples; ++k) {
    const double prev = d[(k + samples - 1) % samples];
    const double next = d[(k + 1) % samples];
    if (!(d[k] <= prev && d[k] < next)) continue;
    const auto refined = boost::math::tools::brent_find_minima(dist_to_b, (k - 1) * step, (k + 1) * step, 52);
    if (refined.second >= tol) continue;
    const LineVectors la = line_a(refined.first);
    const bool seen = std::any_of(found.begin(), found.end(), [&](const LineVectors& f) {
      return (f.U - la.U).norm() < tol && (f.V - la.V).norm() < tol;
    });
    if (!seen) found.push_back(la);
  }
  return static_cast<int>(found.size());
}

std::string export_obj(const MeshR3& mesh) {
  if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "nothing to export");
  std::string out;
  for (const SurfacePoint& p : mesh.vertices) {
    out += "v " + fmt9(p.x.x()) + " " + fmt9(p.x.y()) + " " + fmt9(p.x.z()) + "\n";
  }
  for (int i = 0; i + 1 < mesh.rows; ++i) {
    for (int j = 0; j + 1 < mesh.cols; ++j) {
      const int v00 = i * mesh.cols + j + 1;
      const int v01 = v00 + 1;
      const int v10 = v00 + mesh.cols;
      const int v11 = v10 + 1;
      out += "f " + std::to_string(v00) + " " + std::to_string(v01) + " " + std::to_string(v11) + " " +
             std::to_string(v10) + "\n";
    }
  }
  return out;
}

std::string export_csv(const MeshR3& mesh) {
  if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "nothing to export");
  std::string out = "u,v,x1,x2,x3\n";
  for (const SurfacePoint& p : mesh.vertices) {
    out += fmt9(p.u) + "," + fmt9(p.v) + "," + fmt9(p.x.x()) + "," + fmt9(p.x.y()) + "," + fmt9(p.x.z()) + "\n";
  }
  return out;
}

std::vector<Vec3> parse_obj_vertices(const std::string& obj) {
  std::vector<Vec3> out;
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) != 0) continue;
    std::istringstream ls(line.substr(2));
    Vec3 v;
    if (!(ls >> v.x() >> v.y() >> v.z())) throw Error(ErrorCode::BadInput, "malformed vertex line: " + line);
    out.push_back(v);
  }
  return out;
}

}  // namespace tslines
