#include "landau_berry/holonomy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "landau_berry/connection.hpp"
#include "landau_berry/errors.hpp"
#include "landau_berry/expm.hpp"
#include "landau_berry/operators.hpp"

namespace landau {
namespace {

constexpr double kPlaneTol = 1e-12;

// Path coordinates (X1, X2, ln B, r, theta).
using Coords = std::array<double, 5>;

Coords coords(const ParameterPoint& p) { return {p.X1, p.X2, std::log(p.B), p.r, p.theta}; }

ParameterPoint from_coords(const Coords& c) {
  return {c[0], c[1], std::exp(c[2]), c[3], c[4]};
}

const ParameterPoint& vertex(const ParameterPath& path, std::size_t k) {
  return path.points[k % path.points.size()];
}

void require_closed(const ParameterPath& path, const char* where) {
  validate(path);
  if (!path.closed) throw InvalidArgument(std::string(where) + ": path must be closed");
}

// Coordinates that must stay fixed for a path to lie in `plane`.
void require_plane(const ParameterPath& path, Plane plane, const char* where) {
  const ParameterPoint& p0 = path.points.front();
  for (const auto& p : path.points) {
    bool off;
    if (plane == Plane::X1X2) {
      off = std::abs(p.B - p0.B) > kPlaneTol || std::abs(p.r - p0.r) > kPlaneTol ||
            std::abs(p.theta - p0.theta) > kPlaneTol;
    } else {
      off = std::abs(p.X1 - p0.X1) > kPlaneTol || std::abs(p.r - p0.r) > kPlaneTol ||
            std::abs(p.theta - p0.theta) > kPlaneTol;
    }
    if (off) {
      throw InvalidArgument(std::string(where) + ": path leaves the " +
                            (plane == Plane::X1X2 ? "X1-X2" : "X2-lnB") + " plane");
    }
  }
}

double loop_integral(const ParameterPath& path, int n, std::size_t stride) {
  const std::size_t count = path.points.size();
  double gamma = 0.0;
  for (std::size_t k = 0; k < count; k += stride) {
    const ParameterPoint& a = vertex(path, k);
    const ParameterPoint& b = vertex(path, k + stride >= count ? 0 : k + stride);
    ParameterPoint mid = a;
    mid.X1 = 0.5 * (a.X1 + b.X1);
    mid.X2 = 0.5 * (a.X2 + b.X2);
    const Complex a1 = connection_element(Parameter::X1, mid, n, 0, n, 0);
    const Complex a2 = connection_element(Parameter::X2, mid, n, 0, n, 0);
    gamma += (kI * (a1 * (b.X1 - a.X1) + a2 * (b.X2 - a.X2))).real();
  }
  return gamma;
}

// Trapezoid rule over equally spaced samples of a smooth periodic curve,
// using every `stride`-th vertex.
double periodic_integral(const ParameterPath& path, int n, std::size_t stride) {
  const std::size_t count = path.points.size() / stride;
  auto at = [&](std::ptrdiff_t k) -> const ParameterPoint& {
    const auto c = std::ptrdiff_t(count);
    return path.points[std::size_t(((k % c) + c) % c) * stride];
  };
  double gamma = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = std::ptrdiff_t(k);
    // d/dk by the fourth-order central stencil
    const double d1 = (-at(j + 2).X1 + 8.0 * at(j + 1).X1 - 8.0 * at(j - 1).X1 + at(j - 2).X1) / 12.0;
    const double d2 = (-at(j + 2).X2 + 8.0 * at(j + 1).X2 - 8.0 * at(j - 1).X2 + at(j - 2).X2) / 12.0;
    const ParameterPoint& p = at(j);
    const Complex a1 = connection_element(Parameter::X1, p, n, 0, n, 0);
    const Complex a2 = connection_element(Parameter::X2, p, n, 0, n, 0);
    gamma += (kI * (a1 * d1 + a2 * d2)).real();
  }
  return gamma;
}

CMatrix ordered_product(const ParameterPath& path, int n, int m_count, int segments,
                        int* used) {
  const std::size_t count = path.points.size();
  std::vector<double> lengths(count);
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const Coords a = coords(vertex(path, k));
    const Coords b = coords(vertex(path, k + 1));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
    lengths[k] = std::sqrt(s);
    total += lengths[k];
  }

  const FockBasis block_basis(kGuardBand + n, m_count - 1);
  CMatrix U = CMatrix::Identity(m_count, m_count);
  int steps_total = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const Coords a = coords(vertex(path, k));
    const Coords b = coords(vertex(path, k + 1));
    const int steps = std::max(1, int(std::lround(segments * lengths[k] / total)));
    steps_total += steps;
    Coords step{};
    for (std::size_t i = 0; i < a.size(); ++i) step[i] = (b[i] - a[i]) / steps;
    for (int j = 0; j < steps; ++j) {
      Coords mid{};
      for (std::size_t i = 0; i < a.size(); ++i) mid[i] = a[i] + (j + 0.5) * step[i];
      const ParameterPoint p = from_coords(mid);
      CMatrix generator = CMatrix::Zero(m_count, m_count);
      if (step[0] != 0.0) {
        generator += degenerate_connection(block_basis, Parameter::X1, p, n) * step[0];
      }
      if (step[1] != 0.0) {
        generator += degenerate_connection(block_basis, Parameter::X2, p, n) * step[1];
      }
      if (step[2] != 0.0) {
        // A_lnB = B A_B
        generator += degenerate_connection(block_basis, Parameter::B, p, n) * (p.B * step[2]);
      }
      if (step[3] != 0.0) {
        generator += degenerate_connection(block_basis, Parameter::r, p, n) * step[3];
      }
      if (step[4] != 0.0) {
        generator += degenerate_connection(block_basis, Parameter::theta, p, n) * step[4];
      }
      U = expm(-generator) * U;
    }
  }
  if (used) *used = steps_total;
  return U;
}

}  // namespace

void validate(const ParameterPath& path) {
  const std::size_t need = path.closed ? 3 : 2;
  if (path.points.size() < need) {
    throw InvalidArgument("ParameterPath: needs at least " + std::to_string(need) +
                          " points");
  }
  for (const auto& p : path.points) validate(p);
  for (std::size_t k = 1; k < path.points.size(); ++k) {
    const auto& a = path.points[k - 1];
    const auto& b = path.points[k];
    if (a.X1 == b.X1 && a.X2 == b.X2 && a.B == b.B && a.r == b.r && a.theta == b.theta) {
      throw InvalidArgument("ParameterPath: consecutive points coincide at index " +
                            std::to_string(k));
    }
  }
}

ParameterPath reversed(const ParameterPath& path) {
  ParameterPath out = path;
  if (path.closed) {
    // Keep the start vertex, walk the loop backwards.
    std::reverse(out.points.begin() + 1, out.points.end());
  } else {
    std::reverse(out.points.begin(), out.points.end());
  }
  return out;
}

ParameterPath repeated(const ParameterPath& path, int times) {
  if (!path.closed || times < 1) {
    throw InvalidArgument("repeated: needs a closed path and times >= 1");
  }
  ParameterPath out{{}, true};
  out.points.reserve(path.points.size() * times);
  for (int t = 0; t < times; ++t) {
    out.points.insert(out.points.end(), path.points.begin(), path.points.end());
  }
  return out;
}

ParameterPath circle_path(double cx, double cy, double radius, int segments, double B,
                          bool counterclockwise) {
  if (!(radius > 0.0)) throw InvalidArgument("circle_path: radius must be > 0");
  if (segments < 3) throw InvalidArgument("circle_path: needs >= 3 segments");
  ParameterPath path{{}, true};
  path.points.reserve(segments);
  const double sign = counterclockwise ? 1.0 : -1.0;
  for (int k = 0; k < segments; ++k) {
    const double phi = sign * 2.0 * std::numbers::pi * k / segments;
    path.points.push_back({cx + radius * std::cos(phi), cy + radius * std::sin(phi), B, 0.0, 0.0});
  }
  return path;
}

ParameterPath rectangle_x2_lnb(double x2_lo, double x2_hi, double lnb_lo, double lnb_hi,
                               double X1) {
  if (!(x2_hi > x2_lo) || !(lnb_hi > lnb_lo)) {
    throw InvalidArgument("rectangle_x2_lnb: bounds must satisfy lo < hi");
  }
  const double b_lo = std::exp(lnb_lo);
  const double b_hi = std::exp(lnb_hi);
  return {{{X1, x2_lo, b_lo, 0.0, 0.0},
           {X1, x2_hi, b_lo, 0.0, 0.0},
           {X1, x2_hi, b_hi, 0.0, 0.0},
           {X1, x2_lo, b_hi, 0.0, 0.0}},
          true};
}

double signed_area(const ParameterPath& path, Plane plane) {
  require_closed(path, "signed_area");
  require_plane(path, plane, "signed_area");
  double twice = 0.0;
  const std::size_t count = path.points.size();
  for (std::size_t k = 0; k < count; ++k) {
    const ParameterPoint& a = vertex(path, k);
    const ParameterPoint& b = vertex(path, k + 1);
    double ax, ay, bx, by;
    if (plane == Plane::X1X2) {
      ax = a.X1, ay = a.X2, bx = b.X1, by = b.X2;
    } else {
      ax = a.X2, ay = std::log(a.B), bx = b.X2, by = std::log(b.B);
    }
    twice += ax * by - bx * ay;
  }
  return 0.5 * twice;
}

HolonomyResult abelian_phase(const ParameterPath& path, int n, LoopRule rule) {
  require_closed(path, "abelian_phase");
  require_plane(path, Plane::X1X2, "abelian_phase");
  if (n < 0) throw InvalidArgument("abelian_phase: level must be >= 0");
  const std::size_t count = path.points.size();
  HolonomyResult res;
  res.area = signed_area(path, Plane::X1X2);
  res.segments_used = int(count);
  if (rule == LoopRule::polygon) {
    res.abelian_phase = loop_integral(path, n, 1);
    if (count >= 6 && count % 2 == 0) {
      res.richardson_estimate = std::abs(*res.abelian_phase - loop_integral(path, n, 2)) / 3.0;
    }
  } else {
    if (count < 5) throw InvalidArgument("abelian_phase: periodic rule needs >= 5 samples");
    res.abelian_phase = periodic_integral(path, n, 1);
    if (count >= 10 && count % 2 == 0) {
      res.richardson_estimate =
          std::abs(*res.abelian_phase - periodic_integral(path, n, 2)) / 15.0;
    }
  }
  return res;
}

HolonomyResult nonabelian_holonomy(const FockBasis& basis, const ParameterPath& path, int n,
                                   int segments) {
  require_closed(path, "nonabelian_holonomy");
  if (segments < kMinHolonomySegments) {
    throw InvalidArgument("nonabelian_holonomy: needs >= 100 segments");
  }
  if (n < 0 || n > basis.n_max() - kGuardBand) {
    throw InvalidArgument("nonabelian_holonomy: level n = " + std::to_string(n) +
                          " outside the guard band");
  }
  for (const auto& p : path.points) require_field_guard(p.B);

  HolonomyResult res;
  int used = 0;
  CMatrix U = ordered_product(path, n, basis.m_count(), segments, &used);
  const CMatrix U_half = ordered_product(path, n, basis.m_count(), segments / 2, nullptr);
  res.richardson_estimate = max_abs(U - U_half) / 3.0;
  res.segments_used = used;
  res.unitary = std::move(U);
  return res;
}

CMatrix field_block_generator(int m_count) {
  CMatrix T = CMatrix::Zero(m_count, m_count);
  for (int m = 1; m < m_count; ++m) T(m, m - 1) = T(m - 1, m) = std::sqrt(double(m));
  return T;
}

HolonomyResult commuting_closed_form(const FockBasis& basis, const ParameterPath& path,
                                     int n) {
  require_closed(path, "commuting_closed_form");
  for (const auto& p : path.points) {
    if (std::abs(p.X1) > kPlaneTol) {
      throw InvalidArgument(
          "commuting_closed_form: X1 != 0 on the path; the generators no longer commute, "
          "use nonabelian_holonomy");
    }
    require_field_guard(p.B);
  }
  require_plane(path, Plane::X2lnB, "commuting_closed_form");
  if (n < 0 || n > basis.n_max() - kGuardBand) {
    throw InvalidArgument("commuting_closed_form: level outside the guard band");
  }

  // sigma = oint X2 d(ln B): exact trapezoid sum on straight edges.
  double sigma = 0.0;
  const std::size_t count = path.points.size();
  for (std::size_t k = 0; k < count; ++k) {
    const auto& a = vertex(path, k);
    const auto& b = vertex(path, k + 1);
    sigma += 0.5 * (a.X2 + b.X2) * (std::log(b.B) - std::log(a.B));
  }

  const CMatrix T = field_block_generator(basis.m_count());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(T);
  const Eigen::VectorXd t = eig.eigenvalues();
  const CMatrix& V = eig.eigenvectors();
  CVector phase(t.size());
  HolonomyResult res;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double phi = -sigma * t(i) / 2.0;
    res.eigenphases.push_back(phi);
    phase(i) = std::polar(1.0, phi);
  }
  res.unitary = V * phase.asDiagonal() * V.adjoint();
  res.area = sigma;
  res.segments_used = int(count);
  return res;
}

double flux_loop_phase(const GaussianFlux& flux, double B, double R, int segments) {
  require_field_guard(B);
  if (!(R > 0.0)) throw InvalidArgument("flux_loop_phase: radius must be > 0");
  if (segments < 3) throw InvalidArgument("flux_loop_phase: needs >= 3 segments");
  GaussianFlux f = flux;
  validate(f);
  if (f.Phi0 == 0.0) return 0.0;

  ParameterPath loop{{}, true};
  loop.points.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / segments;
    f.x0 = R * std::cos(phi);
    f.y0 = R * std::sin(phi);
    const auto [X1, X2] = to_displacement(f, B);
    loop.points.push_back({X1, X2, B, 0.0, 0.0});
  }
  return *abelian_phase(loop, 0, LoopRule::periodic).abelian_phase;
}

double flux_loop_closed_form(double Phi0, double Delta, double R, double B) {
  const double s = -std::expm1(-R * R / (Delta * Delta));
  return -Phi0 * Phi0 * s * s / (4.0 * std::numbers::pi * B * R * R);
}

}  // namespace landau
