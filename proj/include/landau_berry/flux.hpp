#pragma once

// Gaussian flux tube of total flux Phi0 and spread Delta centred at
// (x0, y0), in natural units (magnetic length 1/sqrt(B)).
//
//   B'(x, y) = Phi0 / (pi Delta^2) exp(-rho^2 / Delta^2)
//   A'       = Phi0 (exp(-rho^2/Delta^2) - 1) / (2 pi rho^2) * (y - y0, -(x - x0))
//
// Seen from an electron near the origin, a distant tube adds an almost
// constant vector potential, i.e. the displacement alpha = X1 + i X2.

#include <complex>
#include <utility>

namespace landau {

struct GaussianFlux {
  double x0 = 0.0;
  double y0 = 0.0;
  double Phi0 = 0.0;
  double Delta = 1.0;
};

/// Throws InvalidArgument unless Delta > 0 and all fields are finite.
void validate(const GaussianFlux& flux);

double flux_field(const GaussianFlux& flux, double x, double y);

/// Nonsingular potential; returns (A'_x, A'_y).
std::pair<double, double> vector_potential(const GaussianFlux& flux, double x, double y);

/// dA_y/dx - dA_x/dy by the fourth-order central stencil with step h.
double numeric_curl(const GaussianFlux& flux, double x, double y, double h);

/// Line integral of A' around the circle of `radius` about (x0, y0); the
/// periodic trapezoid rule in angle.
double circulation(const GaussianFlux& flux, double radius, int segments);

/// Flux enclosed by a centred circle: Phi0 (1 - exp(-radius^2 / Delta^2)).
double enclosed_flux(const GaussianFlux& flux, double radius);

/// (X1, X2) of the coherent-state Hamiltonian produced by the tube.
std::pair<double, double> to_displacement(const GaussianFlux& flux, double B);

/// Real-space shift (dx, dy) equivalent to the constant potential.
std::pair<double, double> to_shift(const GaussianFlux& flux, double B);

inline constexpr double kDefaultKappa = 10.0;

struct ValidityReport {
  bool spread_ok = false;    // Delta > sqrt(2/B)
  bool distance_ok = false;  // r0 >= kappa sqrt(2/B)
  bool shift_small = false;  // |dx| <= 0.1|x0| and |dy| <= 0.1|y0|
  double spread_ratio = 0.0;    // Delta / sqrt(2/B)
  double distance_ratio = 0.0;  // r0 / sqrt(2/B)
  double shift_ratio = 0.0;     // max(|dx|/|x0|, |dy|/|y0|)
  double kappa = kDefaultKappa;
};

/// Reports, never throws for violated conditions.
ValidityReport validity(const GaussianFlux& flux, double B, double kappa = kDefaultKappa);

struct QuadratureGrid {
  int points = 256;          // per axis
  double half_extent = 8.0;  // in magnetic lengths
};

/// Ground state psi_00 = sqrt(B / 2 pi) exp(-B (x^2 + y^2) / 4).
double ground_state(double B, double x, double y);

/// Real-space coherent state D(alpha) psi_00, solving b psi = alpha psi and
/// a psi = 0 in the symmetric gauge:
///   psi_alpha = sqrt(B/2pi) exp(-|alpha|^2/2 - B(x^2+y^2)/4
///                               + sqrt(B/2) (i alpha x - alpha y)).
std::complex<double> coherent_state(double B, std::complex<double> alpha, double x, double y);

/// Trapezoid quadrature of conj(psi_00(x + dx, y + dy)) psi_alpha(x, y).
std::complex<double> shifted_ground_overlap(const GaussianFlux& flux, double B,
                                            const QuadratureGrid& grid = {});

}  // namespace landau
