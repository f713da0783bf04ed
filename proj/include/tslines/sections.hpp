#pragma once

// Graphs ξ ↦ (ξ, F(ξ, ξ̄)) of the projection TS² → S², their support
// functions, and the Lagrangian / totally-real diagnostics on them.

#include <optional>

#include "tslines/wirtinger.hpp"

namespace tslines {

/// Real polynomial r on the chart; r + C gives the parallel surfaces.
class SupportFunction {
 public:
  SupportFunction() : r_(0.0) {}
  explicit SupportFunction(const MonomialField& r) : r_(r.as_real()) {}

  const MonomialField& field() const noexcept { return r_; }
  double operator()(Complex xi) const { return eval(r_, xi).real(); }

 private:
  MonomialField r_;
};

enum class Provenance { FromSupport, Raw };

struct SectionGraph {
  RationalField F;
  Provenance provenance = Provenance::Raw;

  Complex operator()(Complex xi) const { return eval(F, xi); }
};

/// F = ½ (1+ξξ̄)² conj(∂r/∂ξ).
SectionGraph section_from_support(const SupportFunction& r);

/// |Im ∂(F / (1+ξξ̄)²)| at ξ.
double lagrangian_defect(const SectionGraph& F, Complex xi);

/// Max of lagrangian_defect on a polar grid over |ξ| ≤ radius.
double max_lagrangian_defect(const SectionGraph& F, double radius, int radial_n = 16,
                             int angular_n = 32);

/// Support function recovered from a Lagrangian section, normalized r(0) = 0.
struct RecoveredSupport {
  SectionGraph section;
  /// Closed form when ∂r/∂ξ = 2F̄/(1+ξξ̄)² integrates to a polynomial.
  std::optional<SupportFunction> polynomial;
  double tolerance = 1e-10;

  /// Radial line integral of dr from 0 to ξ, Romberg-extrapolated.
  double operator()(Complex xi) const;
};

/// Throws NotLagrangian when the section fails the integrability test on
/// |ξ| ≤ validation_radius.
RecoveredSupport support_from_section(const SectionGraph& F, double validation_radius = 0.9,
                                      double defect_tol = 1e-8);

/// Chart second derivatives r₁₁, r₁₂, r₂₂ with ξ = x¹ + i x².
struct ChartHessian {
  double r11 = 0.0;
  double r12 = 0.0;
  double r22 = 0.0;
};

ChartHessian chart_hessian(const SupportFunction& r, Complex xi);

/// (r₁₁ - r₂₂) + i (r₁₂ + r₂₁)
Complex traceless_hessian(const SupportFunction& r, Complex xi);

/// (r₁₁ - r₂₂)² + (r₁₂ + r₂₁)²
double totally_real_defect(const SupportFunction& r, Complex xi);

/// Winding of traceless_hessian around `loop`.
int boundary_winding(const SupportFunction& r, const Loop& loop,
                     double min_mag = kDefaultMinMagnitude);

}  // namespace tslines
