#include <doctest.h>

#include <cmath>

#include "landau_berry/errors.hpp"
#include "landau_berry/flux.hpp"

using namespace landau;

namespace {

// Plain trapezoid overlap <f|g> on a square grid.
template <typename F, typename G>
std::complex<double> overlap(F f, G g, double half, int pts) {
  const double h = 2 * half / (pts - 1);
  std::complex<double> s = 0.0;
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) {
      const double x = -half + i * h, y = -half + j * h;
      s += std::conj(f(x, y)) * g(x, y);
    }
  return s * h * h;
}

}  // namespace

TEST_CASE("field") {
  const GaussianFlux f{1.0, -2.0, 1.0, 2.0};
  CHECK(std::abs(flux_field(f, 1.0, -2.0) - 0.0795775) < 1e-7);
  CHECK(flux_field({0, 0, 0.0, 1.0}, 0.3, 0.1) == 0.0);
  CHECK(std::abs(enclosed_flux(f, 2.0) - (1 - std::exp(-1.0))) < 1e-15);
  CHECK_THROWS_AS(validate(GaussianFlux{0, 0, 1, 0}), InvalidArgument);
  CHECK_THROWS_AS(validate(GaussianFlux{0, 0, NAN, 1}), InvalidArgument);
}

TEST_CASE("disk integral by polar quadrature") {
  const GaussianFlux f{0.0, 0.0, 1.3, 2.0};
  // Midpoint rule in rho, field is radial.
  const int N = 20000;
  double s = 0.0;
  for (int k = 0; k < N; ++k) {
    const double rho = (k + 0.5) * 2.0 / N;
    s += flux_field(f, rho, 0.0) * 2 * M_PI * rho * (2.0 / N);
  }
  CHECK(std::abs(s - 1.3 * 0.6321206) < 1e-6);
}

TEST_CASE("vector potential") {
  const GaussianFlux f{0.5, 0.25, 1.7, 1.5};
  const auto [ax, ay] = vector_potential(f, 0.5, 0.25);
  CHECK(ax == 0.0);
  CHECK(ay == 0.0);
  // Near the centre the series branch is continuous with the closed form.
  const auto [bx, by] = vector_potential(f, 0.5 + 1e-5, 0.25);
  CHECK(std::abs(by - 1.7 / (2 * M_PI * 1.5 * 1.5) * 1e-5) < 1e-14);
  CHECK(std::abs(bx) < 1e-20);

  for (double rho : {8 * 1.5, 12.0, 40.0}) {
    const auto [vx, vy] = vector_potential(f, 0.5 + rho * 0.6, 0.25 + rho * 0.8);
    const double mag = std::hypot(vx, vy);
    CHECK(std::abs(mag - 1.7 / (2 * M_PI * rho)) / (1.7 / (2 * M_PI * rho)) < 1e-6);
  }

  // curl = field on a grid
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const double x = -3.5 + 8.0 * i / 31, y = -3.75 + 8.0 * j / 31;
      const double c = numeric_curl(f, x, y, 1e-3);
      worst = std::max(worst, std::abs(c - flux_field(f, x, y)) / flux_field(f, 0.5, 0.25));
    }
  CHECK(worst < 1e-8);
  const double c = numeric_curl(f, 0.5 + 1.5, 0.25, 1e-5);
  CHECK(std::abs(c - flux_field(f, 2.0, 0.25)) / flux_field(f, 2.0, 0.25) < 1e-8);
}

TEST_CASE("Stokes circulation") {
  const GaussianFlux f{-1.0, 2.0, 0.8, 2.0};
  for (double r : {1.0, 2.0, 4.0, 10.0}) {
    CHECK(std::abs(circulation(f, r, 10000) - enclosed_flux(f, r)) / enclosed_flux(f, r) < 1e-8);
  }
  CHECK(std::abs(circulation(f, 20.0, 10000) - 0.8) < 1e-8);
  CHECK(std::abs(circulation(f, 2e-4, 10000)) < 1e-8 * 0.8);
}

TEST_CASE("displacement and shift") {
  const GaussianFlux f{3.0, 0.0, 1.0, 2.0};
  const auto [X1, X2] = to_displacement(f, 1.0);
  CHECK(X1 == 0.0);
  CHECK(std::abs(X2 + 0.033560) < 1e-6);
  const auto [dx, dy] = to_shift(f, 1.0);
  CHECK(std::abs(dx + 0.094921) < 1e-6);
  CHECK(dy == 0.0);
  CHECK(std::abs(dx / X2 - 2 * std::sqrt(2.0)) < 1e-14);

  // Independent evaluation of the displacement formula.
  const GaussianFlux g{1.2, -2.5, -0.7, 1.1};
  const double r2 = 1.2 * 1.2 + 2.5 * 2.5;
  const double c = -0.7 * (std::exp(-r2 / 1.21) - 1) / (2 * M_PI * r2) / std::sqrt(2 * 2.3);
  const auto [Y1, Y2] = to_displacement(g, 2.3);
  CHECK(std::abs(Y1 - c * -2.5) < 1e-15);
  CHECK(std::abs(Y2 - c * 1.2) < 1e-15);
  const auto [ex, ey] = to_shift(g, 2.3);
  CHECK(std::abs(ex - 2 * std::sqrt(2 / 2.3) * Y2) < 1e-15);
  CHECK(std::abs(ey - 2 * std::sqrt(2 / 2.3) * Y1) < 1e-15);

  // swap and sign
  const auto [S1, S2] = to_displacement({0.0, 3.0, 1.0, 2.0}, 1.0);
  CHECK(std::abs(S1 - X2) < 1e-15);
  CHECK(S2 == 0.0);
  const auto [nx, ny] = to_shift({3.0, 0.0, -1.0, 2.0}, 1.0);
  CHECK(nx == -dx);
  CHECK(ny == 0.0);
  CHECK(to_displacement({3.0, 0.0, 0.0, 2.0}, 1.0).second == 0.0);
  CHECK_THROWS_AS(to_displacement({0.0, 0.0, 1.0, 2.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(to_shift({0.0, 0.0, 1.0, 2.0}, 1.0), InvalidArgument);
}

TEST_CASE("validity report") {
  const ValidityReport ok = validity({30.0, 0.0, 1.0, 2.0}, 1.0);
  CHECK(ok.spread_ok);
  CHECK(ok.distance_ok);
  CHECK(ok.shift_small);
  CHECK(std::abs(ok.distance_ratio - 30 / std::sqrt(2.0)) < 1e-12);
  CHECK_FALSE(validity({30.0, 0.0, 1.0, 0.5}, 1.0).spread_ok);
  CHECK_FALSE(validity({2.0, 0.0, 1.0, 2.0}, 1.0).distance_ok);
  CHECK(validity({2.0, 0.0, 1.0, 2.0}, 1.0, 1.0).distance_ok);
  const ValidityReport big = validity({30.0, 0.0, 2000.0, 40.0}, 1.0);
  CHECK_FALSE(big.shift_small);
  CHECK(big.shift_ratio > 0.1);
}

TEST_CASE("real-space coherent states") {
  const double B = 1.6;
  const double half = 9.0 / std::sqrt(B);
  auto psi = [&](std::complex<double> a) {
    return [=](double x, double y) { return coherent_state(B, a, x, y); };
  };
  // Ground state normalised and equal to the alpha = 0 member.
  CHECK(std::abs(coherent_state(B, 0.0, 0.3, -0.2) - ground_state(B, 0.3, -0.2)) < 1e-15);
  const std::complex<double> a(0.4, -0.7), c(-0.2, 0.5);
  CHECK(std::abs(overlap(psi(a), psi(a), half, 301) - 1.0) < 1e-10);
  // <c|a> = exp(-|a|^2/2 - |c|^2/2 + conj(c) a)
  const auto ref = std::exp(-std::norm(a) / 2 - std::norm(c) / 2 + std::conj(c) * a);
  CHECK(std::abs(overlap(psi(c), psi(a), half, 301) - ref) < 1e-10);
  CHECK(std::abs(overlap(psi(0.0), psi(a), half, 301) - std::exp(-std::norm(a) / 2)) < 1e-10);
}

TEST_CASE("shifted ground state overlap") {
  const double B = 1.0;
  CHECK(std::abs(shifted_ground_overlap({3.0, 0.0, 0.0, 2.0}, B) - 1.0) < 1e-10);

  // Choose Phi0 so that |dx| = 0.1 / sqrt(B).
  const auto [dx, dy] = to_shift({3.0, 0.0, 1.0, 2.0}, B);
  const double phi = 0.1 / std::abs(dx);
  const auto ov = shifted_ground_overlap({3.0, 0.0, phi, 2.0}, B);
  CHECK(1.0 - std::abs(ov) <= 0.01);
  const auto ovm = shifted_ground_overlap({3.0, 0.0, -phi, 2.0}, B);
  CHECK(std::abs(std::abs(ov) - std::abs(ovm)) < 1e-12);

  CHECK_THROWS_AS(shifted_ground_overlap({3.0, 0.0, 1.0, 2.0}, B, {64, 8.0}), UnderResolvedGrid);
  CHECK_THROWS_AS(shifted_ground_overlap({3.0, 0.0, 1.0, 2.0}, B, {512, 4.0}), UnderResolvedGrid);
}
