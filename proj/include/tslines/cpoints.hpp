#pragma once

// Complex points of real surfaces in TS²: the defect ∂η∂̄ξ - ∂̄η∂ξ on
// parameterized surfaces, and zeros of ∂̄F with their indices on sections.

#include <optional>
#include <string>
#include <vector>

#include "tslines/sections.hpp"
#include "tslines/wirtinger.hpp"

namespace tslines {

inline constexpr double kSeamTolerance = 1e-12;

/// One annulus ρ_in ≤ |ν| ≤ ρ_out of a piecewise surface ν ↦ (ξ, η).
struct SurfacePiece {
  double rho_in = 0.0;
  double rho_out = 1.0;
  MonomialField xi_expr;
  MonomialField eta_expr;
  std::string label;

  /// W = ∂η ∂̄ξ - ∂̄η ∂ξ, exact.
  MonomialField defect_field() const;
};

class ParamSurface {
 public:
  ParamSurface() = default;
  /// Pieces must be contiguous with strictly increasing radii.
  explicit ParamSurface(std::vector<SurfacePiece> pieces);

  const std::vector<SurfacePiece>& pieces() const noexcept { return pieces_; }
  std::vector<double> seam_radii() const;
  double inner_radius() const { return pieces_.front().rho_in; }
  double outer_radius() const { return pieces_.back().rho_out; }

  /// Piece containing |ν|; throws OnSeam within kSeamTolerance of a seam and
  /// BadParams outside the parameter annulus.
  std::size_t piece_index(Complex nu) const;
  Complex xi(Complex nu) const;
  Complex eta(Complex nu) const;

 private:
  std::vector<SurfacePiece> pieces_;
  std::vector<MonomialField> defects_;
  friend Complex surface_defect(const ParamSurface& s, Complex nu);
  friend Complex piece_defect(const ParamSurface& s, std::size_t piece, Complex nu);
};

Complex surface_defect(const ParamSurface& s, Complex nu);
/// Defect of a given piece's expressions, usable on the piece's boundary.
Complex piece_defect(const ParamSurface& s, std::size_t piece, Complex nu);

enum class PointKind { Elliptic, Hyperbolic, Degenerate };

const char* to_string(PointKind kind);
PointKind kind_from_index(int index);

struct ComplexPointReport {
  Complex location;
  PointKind kind = PointKind::Degenerate;
  int index = 0;
  double loop_radius = 0.0;
  /// The umbilic index of the matching surface point is index / 2.
  double umbilic_index() const { return 0.5 * index; }
};

struct IndexResult {
  int index = 0;
  double loop_radius = 0.0;
  double umbilic_index() const { return 0.5 * index; }
};

/// Winding of G around ξ₀, halving the radius (at most `max_shrinks` times)
/// while G vanishes on the loop.
IndexResult zero_index(const RationalField& G, Complex center, double loop_radius,
                       int max_shrinks = 8);

/// Index I of the complex point of the section at ξ₀: winding of ∂̄F.
IndexResult section_complex_index(const SectionGraph& F, Complex xi0, double loop_radius);

struct Disc {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

/// Isolated zeros of G in the disc: grid sign structure, then Newton on
/// (Re G, Im G) to |G| < 1e-12. Throws DegenerateZeroCurve for zero sets
/// that are not isolated points.
std::vector<Complex> find_zeros(const RationalField& G, const Disc& disc, int grid_n);

/// Located and classified zeros of ∂̄F.
std::vector<ComplexPointReport> find_complex_points(const SectionGraph& F, const Disc& disc,
                                                    int grid_n = 64);

/// Winding of ∂̄F on the disc boundary: the total complex index inside.
int boundary_index(const SectionGraph& F, const Disc& disc);

struct QuadraticModel {
  int index = 0;
  /// Winding says hyperbolic but the stronger |α| > 2|β| condition fails.
  bool in_gap_zone = false;
};

/// Index of the model η = αξ̄² + βξξ̄ at 0: winding of 2αξ̄ + βξ.
QuadraticModel quadratic_model_index(Complex alpha, Complex beta);

}  // namespace tslines
