#include "landau_berry/connection.hpp"

#include <cmath>
#include <string>

#include "landau_berry/errors.hpp"
#include "landau_berry/expm.hpp"
#include "landau_berry/operators.hpp"

namespace landau {
namespace {

// <n|b^+|n'>, <n|b|n'> and their products, on one mode.
double raise(int n, int np) { return n == np + 1 ? std::sqrt(double(np + 1)) : 0.0; }
double lower(int n, int np) { return n == np - 1 ? std::sqrt(double(np)) : 0.0; }
double raise2(int n, int np) {
  return n == np + 2 ? std::sqrt(double(np + 1) * double(np + 2)) : 0.0;
}
double lower2(int n, int np) {
  return n == np - 2 ? std::sqrt(double(np) * double(np - 1)) : 0.0;
}
double same(int n, int np) { return n == np ? 1.0 : 0.0; }

// B-connection with a selectable coefficient on the (ab, a+b+) terms.
Complex b_element(const ParameterPoint& p, double pair_coeff, int n, int m, int np, int mp) {
  const Complex alpha = p.alpha();
  const Complex u = std::polar(1.0, p.theta);
  const double sh = std::sinh(p.r);
  Complex v = pair_coeff * (lower(n, np) * lower(m, mp) - raise(n, np) * raise(m, mp));
  v += u * sh * raise(n, np) * lower(m, mp);
  v -= std::conj(u) * sh * lower(n, np) * raise(m, mp);
  v += same(n, np) * (alpha * lower(m, mp) - std::conj(alpha) * raise(m, mp));
  return v / (2.0 * p.B);
}

template <typename Element>
CMatrix assemble(const FockBasis& basis, Element&& element) {
  const int dim = basis.dimension();
  CMatrix A = CMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto [np, mp] = basis.levels(col);
    // Every connection couples n to n' within +-2 and m to m' within +-1.
    for (int n = std::max(0, np - 2); n <= std::min(basis.n_max(), np + 2); ++n) {
      for (int m = std::max(0, mp - 1); m <= std::min(basis.m_max(), mp + 1); ++m) {
        A(basis.index(n, m), col) = element(n, m, np, mp);
      }
    }
  }
  return A;
}

CMatrix embedded_frame(const FockBasis& basis, double X1, double X2, Complex beta, double B,
                       double B_ref) {
  const ParameterPoint p{X1, X2, B_ref, std::abs(beta), std::arg(beta)};
  CMatrix F = state_frame(basis, p).matrix;
  if (B != B_ref) F = b_embedding(basis, B, B_ref).matrix * F;
  return F;
}

}  // namespace

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::X1: return "X1";
    case Parameter::X2: return "X2";
    case Parameter::B: return "B";
    case Parameter::r: return "r";
    case Parameter::theta: return "theta";
  }
  return "unknown";
}

Parameter parse_parameter(std::string_view name) {
  for (auto p : kAllParameters) {
    if (to_string(p) == name) return p;
  }
  throw InvalidArgument("unknown connection parameter '" + std::string(name) + "'");
}

double coordinate(const ParameterPoint& point, Parameter p) {
  switch (p) {
    case Parameter::X1: return point.X1;
    case Parameter::X2: return point.X2;
    case Parameter::B: return point.B;
    case Parameter::r: return point.r;
    case Parameter::theta: return point.theta;
  }
  throw InvalidArgument("coordinate: unknown parameter");
}

ParameterPoint with_coordinate(ParameterPoint point, Parameter p, double value) {
  switch (p) {
    case Parameter::X1: point.X1 = value; break;
    case Parameter::X2: point.X2 = value; break;
    case Parameter::B: point.B = value; break;
    case Parameter::r: point.r = value; break;
    case Parameter::theta: point.theta = value; break;
  }
  return point;
}

void require_field_guard(double B) {
  if (!(B > kMinField)) {
    throw FieldGuard("field B = " + std::to_string(B) +
                     " is at or below 1e-6; the 1/2B connection diverges and the phase is "
                     "ill-defined");
  }
}

Complex connection_element(Parameter p, const ParameterPoint& point, int n, int m, int np,
                           int mp) {
  const double dm = same(m, mp);
  const double ch = std::cosh(point.r);
  const double sh = std::sinh(point.r);
  const Complex u = std::polar(1.0, point.theta);
  switch (p) {
    case Parameter::X1:
      return dm * (-kI * point.X2 * same(n, np) + (ch - u * sh) * raise(n, np) -
                   (ch - std::conj(u) * sh) * lower(n, np));
    case Parameter::X2:
      return dm * (kI * point.X1 * same(n, np) +
                   kI * ((ch + u * sh) * raise(n, np) + (ch + std::conj(u) * sh) * lower(n, np)));
    case Parameter::B:
      return b_element(point, ch, n, m, np, mp);
    case Parameter::r:
      return dm * 0.5 * (u * raise2(n, np) - std::conj(u) * lower2(n, np));
    case Parameter::theta:
      return dm * (kI * std::sinh(2.0 * point.r) / 4.0 *
                       (u * raise2(n, np) + std::conj(u) * lower2(n, np)) +
                   kI * sh * sh / 2.0 * (2.0 * np + 1.0) * same(n, np));
  }
  throw InvalidArgument("connection_element: unknown parameter");
}

ConnectionMatrix connection_analytic(const FockBasis& basis, Parameter p,
                                     const ParameterPoint& point) {
  validate(point);
  require_field_guard(point.B);
  CMatrix A = assemble(basis, [&](int n, int m, int np, int mp) {
    return connection_element(p, point, n, m, np, mp);
  });
  return {p, point, {std::move(A), OperatorRole::anti_hermitian}};
}

ConnectionMatrix b_connection_as_printed(const FockBasis& basis, const ParameterPoint& point) {
  validate(point);
  require_field_guard(point.B);
  const double s = std::sinh(point.r / 2.0);
  CMatrix A = assemble(basis, [&](int n, int m, int np, int mp) {
    return b_element(point, 2.0 * s * s, n, m, np, mp);
  });
  return {Parameter::B, point, {std::move(A), OperatorRole::generic}};
}

ConnectionMatrix connection_numeric(const FockBasis& basis, Parameter p,
                                    const ParameterPoint& point, double h) {
  validate(point);
  require_field_guard(point.B);
  if (!(h >= kMinStep)) {
    throw StepSizeError("connection_numeric: h = " + std::to_string(h) +
                        " is below 1e-6 (cancellation dominates)");
  }
  if (!(h <= kMaxStep)) {
    throw StepSizeError("connection_numeric: h = " + std::to_string(h) +
                        " is above 1e-2 (truncation error dominates)");
  }
  if (p == Parameter::B && point.B - h < kMinField) {
    throw FieldGuard("connection_numeric: B - h leaves the admissible field range");
  }

  const double B_ref = point.B;
  auto frame_at = [&](double value) {
    const ParameterPoint q = with_coordinate(point, p, value);
    // r may step below zero; beta = r e^{i theta} stays smooth through it.
    const Complex beta = q.r * std::polar(1.0, q.theta);
    return embedded_frame(basis, q.X1, q.X2, beta, q.B, B_ref);
  };
  const double x = coordinate(point, p);
  const CMatrix F0 = frame_at(x);
  const CMatrix dF = (frame_at(x + h) - frame_at(x - h)) / (2.0 * h);
  return {p, point, {F0.adjoint() * dF, OperatorRole::generic}};
}

Block trusted_block(const FockBasis& basis, const ParameterPoint& point, double tail) {
  if (basis.m_max() < 1) {
    throw InvalidArgument("trusted_block: needs m_max >= 1 (the B-connection raises m)");
  }
  const CMatrix F = state_frame(basis, point).matrix;
  int n_hi = -1;
  for (int np = 0; np <= basis.n_max() - kGuardBand; ++np) {
    double worst = 0.0;
    for (int mp = 0; mp < basis.m_max(); ++mp) {
      const int col = basis.index(np, mp);
      for (int n = basis.n_max() - kGuardBand + 1; n <= basis.n_max(); ++n) {
        for (int m = 0; m <= basis.m_max(); ++m) {
          worst = std::max(worst, std::abs(F(basis.index(n, m), col)));
        }
      }
    }
    if (worst > tail) break;
    n_hi = np;
  }
  if (n_hi < 0) {
    throw GuardBandViolation("trusted_block: even the lowest frame column reaches the guard "
                             "band; raise n_max");
  }
  return {n_hi, basis.m_max() - 1};
}

OperatorMatrix degenerate_block(const ConnectionMatrix& conn, const FockBasis& basis, int n) {
  if (conn.full.dim() != basis.dimension()) {
    throw DimensionMismatch("degenerate_block: connection does not live on this basis");
  }
  if (n < 0 || n > basis.n_max() - kGuardBand) {
    throw InvalidArgument("degenerate_block: level n = " + std::to_string(n) +
                          " outside the guard band");
  }
  const int mc = basis.m_count();
  return {conn.full.matrix.block(basis.index(n, 0), basis.index(n, 0), mc, mc),
          conn.full.role};
}

CMatrix degenerate_connection(const FockBasis& basis, Parameter p,
                              const ParameterPoint& point, int n) {
  require_field_guard(point.B);
  if (n < 0 || n > basis.n_max() - kGuardBand) {
    throw InvalidArgument("degenerate_connection: level n = " + std::to_string(n) +
                          " outside the guard band");
  }
  const int mc = basis.m_count();
  CMatrix A = CMatrix::Zero(mc, mc);
  for (int mp = 0; mp < mc; ++mp) {
    for (int m = std::max(0, mp - 1); m <= std::min(mc - 1, mp + 1); ++m) {
      A(m, mp) = connection_element(p, point, n, m, n, mp);
    }
  }
  return A;
}

}  // namespace landau
