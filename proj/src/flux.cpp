#include "landau_berry/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "landau_berry/errors.hpp"

namespace landau {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_field(double B) {
  if (!(B > 0.0) || !std::isfinite(B)) {
    throw InvalidArgument("flux model: field must be finite and > 0");
  }
}

// Phi0 (exp(-r0^2/Delta^2) - 1) / (2 pi r0^2), the common factor of the
// displacement and the shift.
double offset_factor(const GaussianFlux& f) {
  validate(f);
  const double r0sq = f.x0 * f.x0 + f.y0 * f.y0;
  if (r0sq == 0.0) {
    throw InvalidArgument("flux model: flux centred at the origin has no displacement");
  }
  return f.Phi0 * std::expm1(-r0sq / (f.Delta * f.Delta)) / (2.0 * kPi * r0sq);
}

}  // namespace

void validate(const GaussianFlux& f) {
  if (!std::isfinite(f.x0) || !std::isfinite(f.y0) || !std::isfinite(f.Phi0) ||
      !std::isfinite(f.Delta)) {
    throw InvalidArgument("GaussianFlux: fields must be finite");
  }
  if (!(f.Delta > 0.0)) throw InvalidArgument("GaussianFlux: Delta must be > 0");
}

double flux_field(const GaussianFlux& f, double x, double y) {
  const double dx = x - f.x0;
  const double dy = y - f.y0;
  const double d2 = f.Delta * f.Delta;
  return f.Phi0 / (kPi * d2) * std::exp(-(dx * dx + dy * dy) / d2);
}

std::pair<double, double> vector_potential(const GaussianFlux& f, double x, double y) {
  const double dx = x - f.x0;
  const double dy = y - f.y0;
  const double rho2 = dx * dx + dy * dy;
  const double d2 = f.Delta * f.Delta;
  // g = (exp(-rho^2/Delta^2) - 1) / rho^2, removable at rho = 0.
  double g;
  if (rho2 < 1e-8 * d2) {
    g = -1.0 / d2 + rho2 / (2.0 * d2 * d2);
  } else {
    g = std::expm1(-rho2 / d2) / rho2;
  }
  const double c = f.Phi0 * g / (2.0 * kPi);
  return {c * dy, -c * dx};
}

double numeric_curl(const GaussianFlux& f, double x, double y, double h) {
  auto Ay = [&](double xx) { return vector_potential(f, xx, y).second; };
  auto Ax = [&](double yy) { return vector_potential(f, x, yy).first; };
  auto d4 = [h](auto&& fn, double at) {
    return (-fn(at + 2 * h) + 8 * fn(at + h) - 8 * fn(at - h) + fn(at - 2 * h)) / (12 * h);
  };
  return d4(Ay, x) - d4(Ax, y);
}

double circulation(const GaussianFlux& f, double radius, int segments) {
  validate(f);
  if (!(radius > 0.0)) throw InvalidArgument("circulation: radius must be > 0");
  if (segments < 3) throw InvalidArgument("circulation: need at least 3 segments");
  const double dphi = 2.0 * kPi / segments;
  double sum = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double phi = k * dphi;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const auto [ax, ay] = vector_potential(f, f.x0 + radius * c, f.y0 + radius * s);
    sum += -ax * s + ay * c;  // A . t, t = (-sin, cos)
  }
  return sum * radius * dphi;
}

double enclosed_flux(const GaussianFlux& f, double radius) {
  return -f.Phi0 * std::expm1(-radius * radius / (f.Delta * f.Delta));
}

std::pair<double, double> to_displacement(const GaussianFlux& f, double B) {
  require_positive_field(B);
  const double c = std::sqrt(1.0 / (2.0 * B)) * offset_factor(f);
  return {c * f.y0, c * f.x0};
}

std::pair<double, double> to_shift(const GaussianFlux& f, double B) {
  require_positive_field(B);
  // Phi0 x0 (e - 1) / (pi B r0^2) = (2 / B) * offset_factor * x0
  const double c = 2.0 / B * offset_factor(f);
  return {c * f.x0, c * f.y0};
}

ValidityReport validity(const GaussianFlux& f, double B, double kappa) {
  validate(f);
  require_positive_field(B);
  ValidityReport rep;
  rep.kappa = kappa;
  const double spread = std::sqrt(2.0 / B);
  const double r0 = std::hypot(f.x0, f.y0);
  rep.spread_ratio = f.Delta / spread;
  rep.distance_ratio = r0 / spread;
  rep.spread_ok = rep.spread_ratio > 1.0;
  rep.distance_ok = rep.distance_ratio >= kappa;
  if (r0 == 0.0) {
    rep.shift_ratio = std::numeric_limits<double>::infinity();
    rep.shift_small = false;
    return rep;
  }
  const auto [dx, dy] = to_shift(f, B);
  auto ratio = [](double d, double c) {
    if (d == 0.0) return 0.0;
    return c == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(d) / std::abs(c);
  };
  rep.shift_ratio = std::max(ratio(dx, f.x0), ratio(dy, f.y0));
  rep.shift_small = std::abs(dx) <= 0.1 * std::abs(f.x0) && std::abs(dy) <= 0.1 * std::abs(f.y0);
  return rep;
}

double ground_state(double B, double x, double y) {
  return std::sqrt(B / (2.0 * kPi)) * std::exp(-B * (x * x + y * y) / 4.0);
}

std::complex<double> coherent_state(double B, std::complex<double> alpha, double x, double y) {
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> exponent = -std::norm(alpha) / 2.0 - B * (x * x + y * y) / 4.0 +
                                        std::sqrt(B / 2.0) * (i * alpha * x - alpha * y);
  return std::sqrt(B / (2.0 * kPi)) * std::exp(exponent);
}

std::complex<double> shifted_ground_overlap(const GaussianFlux& f, double B,
                                            const QuadratureGrid& grid) {
  require_positive_field(B);
  const double ell = 1.0 / std::sqrt(B);
  const double per_ell = grid.points / (2.0 * grid.half_extent);
  if (grid.points < 2 || per_ell < 16.0 || grid.half_extent < 8.0) {
    throw UnderResolvedGrid("shifted_ground_overlap: grid needs >= 16 points per magnetic "
                            "length and half-extent >= 8 lengths");
  }

  double dx = 0.0, dy = 0.0, X1 = 0.0, X2 = 0.0;
  if (f.Phi0 != 0.0) {
    std::tie(dx, dy) = to_shift(f, B);
    std::tie(X1, X2) = to_displacement(f, B);
  } else {
    validate(f);
  }
  const std::complex<double> alpha{X1, X2};

  const double L = grid.half_extent * ell;
  const double h = 2.0 * L / (grid.points - 1);
  // Rows are summed in order into per-row partials, then accumulated in
  // order, so the result is bit-stable.
  std::complex<double> total{0.0, 0.0};
  for (int i = 0; i < grid.points; ++i) {
    const double x = -L + i * h;
    const double wx = (i == 0 || i == grid.points - 1) ? 0.5 : 1.0;
    std::complex<double> row{0.0, 0.0};
    for (int j = 0; j < grid.points; ++j) {
      const double y = -L + j * h;
      const double wy = (j == 0 || j == grid.points - 1) ? 0.5 : 1.0;
      row += wy * ground_state(B, x + dx, y + dy) * coherent_state(B, alpha, x, y);
    }
    total += wx * row;
  }
  return total * h * h;
}

}  // namespace landau
