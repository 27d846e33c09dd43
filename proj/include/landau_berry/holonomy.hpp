#pragma once

// Closed loops in parameter space and the phases they accumulate.
//
// Convention: the holonomy of a degenerate frame is the ordered product
//   U = prod_k exp(-sum_l A_l(mid_k) dl_k),   later segments on the left,
// with A_l = <psi|d_l psi>. For scalar connections U = e^{i gamma},
// gamma = i oint <psi|d psi>.

#include <optional>
#include <vector>

#include "landau_berry/flux.hpp"
#include "landau_berry/fock.hpp"

namespace landau {

/// Ordered vertices; for closed paths the closing edge last -> first is
/// implicit and the first vertex is not repeated.
struct ParameterPath {
  std::vector<ParameterPoint> points;
  bool closed = true;
};

/// Throws InvalidArgument on repeated consecutive vertices, too few vertices
/// or invalid points.
void validate(const ParameterPath& path);

ParameterPath reversed(const ParameterPath& path);
/// Traverses a closed path `times` times in a row.
ParameterPath repeated(const ParameterPath& path, int times);

/// Regular polygon inscribed in the circle of `radius` about (X1, X2) =
/// center, at fixed B (r = theta = 0).
ParameterPath circle_path(double center_x1, double center_x2, double radius, int segments,
                          double B, bool counterclockwise = true);

/// Axis-aligned rectangle in the (X2, ln B) plane at fixed X1, traversed
/// counterclockwise in (X2, ln B) axes starting from (x2_lo, lnb_lo).
ParameterPath rectangle_x2_lnb(double x2_lo, double x2_hi, double lnb_lo, double lnb_hi,
                               double X1 = 0.0);

/// Axes: X1X2 -> (X1, X2); X2lnB -> (X2, ln B).
enum class Plane { X1X2, X2lnB };

/// Shoelace area, counterclockwise positive in the plane's axes.
double signed_area(const ParameterPath& path, Plane plane);

struct HolonomyResult {
  std::optional<double> abelian_phase;  // signed radians, never reduced mod 2 pi
  std::optional<CMatrix> unitary;       // on the degenerate m-block
  std::vector<double> eigenphases;      // closed form only, ascending in T eigenvalue
  double area = 0.0;                    // sigma / S of the relevant plane, if any
  int segments_used = 0;
  double richardson_estimate = 0.0;
};

/// polygon: the vertices are the loop; the connection is taken at each edge
///   midpoint, which integrates straight edges exactly (shoelace area).
/// periodic: the vertices are equally spaced samples of a smooth closed
///   curve; tangents come from fourth-order periodic differences and the sum
///   is the periodic trapezoid rule, so the curve itself (not its inscribed
///   polygon) is integrated.
enum class LoopRule { polygon, periodic };

/// gamma = i oint (A_X1 dX1 + A_X2 dX2) with the level-n diagonal element of
/// the analytic connection.
HolonomyResult abelian_phase(const ParameterPath& path, int n = 0,
                             LoopRule rule = LoopRule::polygon);

inline constexpr int kMinHolonomySegments = 100;

/// Path-ordered product over the degenerate m-block of level n, with every
/// varying coordinate included (ln B is the field coordinate).
HolonomyResult nonabelian_holonomy(const FockBasis& basis, const ParameterPath& path, int n,
                                   int segments);

/// The fixed tridiagonal T with T(m, m-1) = T(m-1, m) = sqrt(m).
CMatrix field_block_generator(int m_count);

/// X1 = 0 loops in the (X2, ln B) plane: A_B = (i X2 / 2B) T and A_X2 = 0, so
/// all generators commute and U = exp(-(i/2) sigma T) with
/// sigma = oint X2 d(ln B). Evaluated through the eigendecomposition of T;
/// eigenphases are -sigma t / 2 for T eigenvalues t.
HolonomyResult commuting_closed_form(const FockBasis& basis, const ParameterPath& path, int n);

/// Moves the flux centre once counterclockwise around a circle of radius R
/// about the electron, maps each centre through to_displacement() and
/// returns the periodic-rule loop integral of the resulting (X1, X2) loop. Only Phi0 and
/// Delta of `flux` are used. The map (x0, y0) -> (X1, X2) ~ (y0, x0)
/// reverses orientation, so the signed result is +|gamma'|.
double flux_loop_phase(const GaussianFlux& flux, double B, double R, int segments);

/// -Phi0^2 (1 - e^{-R^2/Delta^2})^2 / (4 pi B R^2).
double flux_loop_closed_form(double Phi0, double Delta, double R, double B);

}  // namespace landau
