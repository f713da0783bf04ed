#pragma once

// Surfaces in R³ orthogonal to line congruences: reconstruction from a
// support pair, principal-foliation analysis, ruled families, mesh export.

#include <span>
#include <string>
#include <vector>

#include "tslines/cpoints.hpp"
#include "tslines/linespace.hpp"
#include "tslines/sections.hpp"

namespace tslines {

struct SurfacePoint {
  Vec3 x;
  Complex xi;
  double u = 0.0;  // grid parameters written to CSV
  double v = 0.0;
};

/// Row-major structured grid of surface points.
struct MeshR3 {
  int rows = 0;
  int cols = 0;
  std::vector<SurfacePoint> vertices;
  std::vector<double> scalars;  // optional, one per vertex

  const SurfacePoint& at(int i, int j) const { return vertices[static_cast<std::size_t>(i) * cols + j]; }
  bool empty() const { return rows == 0 || cols == 0 || vertices.empty(); }
};

/// Polar lattice over |ξ| ≤ radius: ρ_i = radius·(i+1)/radial_n and
/// θ_j = 2πj/(angular_n-1), so the first and last columns coincide.
struct DiscGrid {
  double radius = 1.0;
  int radial_n = 40;
  int angular_n = 40;
  Complex center{0.0, 0.0};
};

/// Point on line (ξ, η) at support value r: V(ξ, η) + r U(ξ).
Vec3 point_from_line(Complex xi, Complex eta, double r);

MeshR3 reconstruct_surface(const SectionGraph& F, const SupportFunction& r, double C, const DiscGrid& grid);

struct SupportCheck {
  double max_support_residual = 0.0;  // |x·U - (r + C)|
  double max_orthogonality = 0.0;     // |∂x/∂x^k · U| by centered differences
};

SupportCheck support_property_check(const MeshR3& mesh, const SectionGraph& F, const SupportFunction& r,
                                    double C, double h = 1e-5);

/// Position x(ξ) of the orthogonal surface as exact rational fields.
std::array<RationalField, 3> surface_fields(const SectionGraph& F, const SupportFunction& r, double C);

/// ½(II₁₁ - II₂₂) - i II₁₂ in the Gauss-map chart, normal U.
RationalField traceless_second_form(const SectionGraph& F, const SupportFunction& r, double C);

/// |κ₁ - κ₂| / 2 from the first and second fundamental forms.
double umbilic_defect(const SectionGraph& F, const SupportFunction& r, double C, Complex xi);

struct UmbilicReport {
  Complex location;
  /// Twice the half-integer index of the principal foliation.
  int index_doubled = 0;
  double loop_radius = 0.0;
  double index() const { return 0.5 * index_doubled; }
};

struct PrincipalAnalysis {
  std::vector<UmbilicReport> umbilics;
  double max_defect = 0.0;
  double min_defect = 0.0;
  bool totally_umbilic = false;
};

/// Principal foliation index is -½·winding(q): principal directions θ
/// satisfy arg q + 2θ ≡ 0 (mod π), so a line field turns by -½ per turn of q.
inline constexpr int kFoliationSign = -1;

PrincipalAnalysis principal_analysis(const SectionGraph& F, const SupportFunction& r, double C,
                                     const Disc& disc, int grid_n = 64);

/// Max angle-defect |n̂ × U| between mesh cross-product normals and U(ξ).
double normal_alignment(const MeshR3& mesh);

/// Oriented lines over |ν| = radius, each swept as {V + tU : t ∈ [t_min, t_max]}.
std::vector<MeshR3> ruled_family(const ParamSurface& s, std::span<const double> radii, double t_min,
                                 double t_max, int angular_n = 64, int t_n = 8);

/// Distance between two oriented lines as point sets.
double line_distance(const LineVectors& a, const LineVectors& b);

/// Number of distinct lines in the |ν| = radius ruling of `a` that coincide
/// with some line of the ruling of `b` (closest approach below `tol`),
/// counting ν and -ν once when the boundary is antipodally identified.
int count_coincident_lines(const ParamSurface& a, const ParamSurface& b, double radius, double tol = 1e-6,
                           int samples = 720);

std::string export_obj(const MeshR3& mesh);
std::string export_csv(const MeshR3& mesh);
/// Parses `v` lines of an OBJ stream.
std::vector<Vec3> parse_obj_vertices(const std::string& obj);

}  // namespace tslines
