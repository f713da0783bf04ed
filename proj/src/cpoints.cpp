#include "tslines/cpoints.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tslines/error.hpp"

namespace tslines {

MonomialField SurfacePiece::defect_field() const {
  return d_xi(eta_expr) * d_xibar(xi_expr) - d_xibar(eta_expr) * d_xi(xi_expr);
}

ParamSurface::ParamSurface(std::vector<SurfacePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::BadParams, "surface needs at least one piece");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& p = pieces_[k];
    if (!(p.rho_in >= 0.0 && p.rho_out > p.rho_in)) {
      throw Error(ErrorCode::BadParams, "piece radii must satisfy 0 <= rho_in < rho_out");
    }
    if (k > 0 && p.rho_in != pieces_[k - 1].rho_out) {
      throw Error(ErrorCode::BadParams, "pieces must be contiguous");
    }
    defects_.push_back(p.defect_field());
  }
}

std::vector<double> ParamSurface::seam_radii() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < pieces_.size(); ++k) out.push_back(pieces_[k].rho_in);
  return out;
}

std::size_t ParamSurface::piece_index(Complex nu) const {
  const double rho = std::abs(nu);
  for (double seam : seam_radii()) {
    if (std::abs(rho - seam) <= kSeamTolerance) {
      throw Error(ErrorCode::OnSeam, "|nu| = " + std::to_string(rho) + " lies on a seam");
    }
  }
  if (rho < inner_radius() - kSeamTolerance || rho > outer_radius() + kSeamTolerance) {
    throw Error(ErrorCode::BadParams, "|nu| = " + std::to_string(rho) + " outside the parameter annulus");
  }
  for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) {
    if (rho < pieces_[k].rho_out) return k;
  }
  return pieces_.size() - 1;
}

Complex ParamSurface::xi(Complex nu) const { return eval(pieces_[piece_index(nu)].xi_expr, nu); }
Complex ParamSurface::eta(Complex nu) const { return eval(pieces_[piece_index(nu)].eta_expr, nu); }

Complex surface_defect(const ParamSurface& s, Complex nu) { return eval(s.defects_[s.piece_index(nu)], nu); }

Complex piece_defect(const ParamSurface& s, std::size_t piece, Complex nu) {
  return eval(s.defects_.at(piece), nu);
}

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Elliptic: return "elliptic";
    case PointKind::Hyperbolic: return "hyperbolic";
    case PointKind::Degenerate: return "degenerate";
  }
  return "degenerate";
}

PointKind kind_from_index(int index) {
  if (index == 1) return PointKind::Elliptic;
  if (index == -1) return PointKind::Hyperbolic;
  return PointKind::Degenerate;
}

IndexResult zero_index(const RationalField& G, Complex center, double loop_radius, int max_shrinks) {
  double radius = loop_radius;
  for (int attempt = 0;; ++attempt) {
    try {
      const int w = winding_number([&](Complex z) { return eval(G, z); }, Loop(center, radius));
      return {w, radius};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VanishingOnLoop || attempt >= max_shrinks) throw;
      radius *= 0.5;
    }
  }
}

IndexResult section_complex_index(const SectionGraph& F, Complex xi0, double loop_radius) {
  return zero_index(d_xibar(F.F), xi0, loop_radius);
}

namespace {

struct NewtonResult {
  Complex z;
  bool converged = false;
};

// Solve ∂G δ + ∂̄G δ̄ = -G as a real 2×2 system per step.
NewtonResult newton(const RationalField& G, const RationalField& dG, const RationalField& dbG,
                    Complex z) {
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 50;
  for (int it = 0; it < kMaxIter; ++it) {
    const Complex g = eval(G, z);
    if (std::abs(g) < kTol) return {z, true};
    const Complex a = eval(dG, z);
    const Complex b = eval(dbG, z);
    const Complex gx = a + b;
    const Complex gy = Complex{0.0, 1.0} * (a - b);
    Eigen::Matrix2d J;
    J << gx.real(), gy.real(), gx.imag(), gy.imag();
    const double det = J.determinant();
    if (!(std::abs(det) > std::numeric_limits<double>::min())) return {z, false};
    const Eigen::Vector2d step = J.inverse() * Eigen::Vector2d(-g.real(), -g.imag());
    z += Complex{step.x(), step.y()};
    if (!(std::abs(z) <= kChartLimit)) return {z, false};
  }
  return {z, std::abs(eval(G, z)) < kTol};
}

bool sign_change(std::initializer_list<double> vals) {
  bool pos = false, neg = false;
  for (double v : vals) {
    if (v == 0.0) return true;
    pos |= v > 0.0;
    neg |= v < 0.0;
  }
  return pos && neg;
}

}  // namespace

std::vector<Complex> find_zeros(const RationalField& G, const Disc& disc, int grid_n) {
  if (grid_n < 16) throw Error(ErrorCode::BadParams, "grid_n must be at least 16");
  if (G.num.is_zero()) throw Error(ErrorCode::DegenerateZeroCurve, "function vanishes identically");
  const RationalField dG = d_xi(G);
  const RationalField dbG = d_xibar(G);

  const double h = 2.0 * disc.radius / grid_n;
  const Complex origin = disc.center - Complex{disc.radius, disc.radius};
  std::vector<Complex> values((grid_n + 1) * (grid_n + 1));
  auto at = [&](int i, int j) -> Complex& { return values[i * (grid_n + 1) + j]; };
  for (int i = 0; i <= grid_n; ++i)
    for (int j = 0; j <= grid_n; ++j) at(i, j) = eval(G, origin + Complex{i * h, j * h});

  std::vector<Complex> zeros;
  const double merge = std::max(1e-7, h * 1e-3);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Complex c00 = at(i, j), c10 = at(i + 1, j), c01 = at(i, j + 1), c11 = at(i + 1, j + 1);
      if (!sign_change({c00.real(), c10.real(), c01.real(), c11.real()}) ||
          !sign_change({c00.imag(), c10.imag(), c01.imag(), c11.imag()})) {
        continue;
      }
      const Complex start = origin + Complex{(i + 0.5) * h, (j + 0.5) * h};
      const NewtonResult nr = newton(G, dG, dbG, start);
      if (!nr.converged || std::abs(nr.z - start) > 2.0 * h) continue;
      const bool seen = std::any_of(zeros.begin(), zeros.end(),
                                    [&](Complex z) { return std::abs(z - nr.z) < merge; });
      if (!seen) zeros.push_back(nr.z);
    }
  }
  if (static_cast<int>(zeros.size()) > grid_n) {
    throw Error(ErrorCode::DegenerateZeroCurve,
                std::to_string(zeros.size()) + " zeros found; zero set is not isolated points");
  }
  std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return zeros;
}

std::vector<ComplexPointReport> find_complex_points(const SectionGraph& F, const Disc& disc, int grid_n) {
  const RationalField G = d_xibar(F.F);
  // Search a slightly larger square so loop radii see zeros just outside.
  const std::vector<Complex> all = find_zeros(G, {disc.center, disc.radius * 1.25}, grid_n);
  std::vector<ComplexPointReport> out;
  for (Complex z : all) {
    if (std::abs(z - disc.center) > disc.radius) continue;
    double nearest = disc.radius;
    for (Complex w : all) {
      if (w != z) nearest = std::min(nearest, std::abs(w - z));
    }
    IndexResult idx;
    try {
      idx = zero_index(G, z, 0.5 * nearest);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::VanishingOnLoop || e.code() == ErrorCode::UnresolvedWinding) {
        throw Error(ErrorCode::DegenerateZeroCurve, "zero near " + std::to_string(z.real()) + "," +
                                                        std::to_string(z.imag()) + " is not isolated");
      }
      throw;
    }
    out.push_back({z, kind_from_index(idx.index), idx.index, idx.loop_radius});
  }
  return out;
}

int boundary_index(const SectionGraph& F, const Disc& disc) {
  const RationalField G = d_xibar(F.F);
  return winding_number([&](Complex z) { return eval(G, z); }, Loop(disc.center, disc.radius));
}

QuadraticModel quadratic_model_index(Complex alpha, Complex beta) {
  const double two_a = 2.0 * std::abs(alpha);
  const double b = std::abs(beta);
  if (std::abs(two_a - b) <= 1e-14 * std::max({1.0, two_a, b})) {
    throw Error(ErrorCode::DegenerateQuadratic, "2|alpha| = |beta|");
  }
  const int w = winding_number(
      [&](Complex z) { return 2.0 * alpha * std::conj(z) + beta * z; }, Loop(0.0, 1.0));
  return {w, w == -1 && !(std::abs(alpha) > 2.0 * b)};
}

}  // namespace tslines
