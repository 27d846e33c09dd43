#pragma once

// Berry connections A_lambda(n m; n' m') = <n(.), m| d_lambda |n'(.), m'> of
// the frame |n(alpha, beta), m> = K(B) D(alpha) S(beta) |n, m>.
//
// Coherent family (r = 0):
//   A_X1 = -i X2 + (b^+ - b)
//   A_X2 =  i X1 + i (b^+ + b)
//   A_B  = (1/2B) [ (a b - a^+ b^+) + alpha a - alpha^* a^+ ]
// Squeezed family: A_r, A_theta and A_B in closed form; A_X1, A_X2 with
// b, b^+ replaced by their squeezed images S^+ b S, S^+ b^+ S.

#include <array>
#include <string_view>

#include "landau_berry/fock.hpp"

namespace landau {

enum class Parameter { X1, X2, B, r, theta };

inline constexpr std::array<Parameter, 5> kAllParameters{
    Parameter::X1, Parameter::X2, Parameter::B, Parameter::r, Parameter::theta};

std::string_view to_string(Parameter p);
Parameter parse_parameter(std::string_view name);

/// Reads / writes the coordinate `p` of a point.
double coordinate(const ParameterPoint& point, Parameter p);
ParameterPoint with_coordinate(ParameterPoint point, Parameter p, double value);

inline constexpr double kMinField = 1e-6;
/// Throws FieldGuard for B <= kMinField (the 1/2B divergence).
void require_field_guard(double B);

struct ConnectionMatrix {
  Parameter parameter;
  ParameterPoint point;
  OperatorMatrix full;
};

/// Single analytic matrix element <n, m| A_p |n', m'>.
Complex connection_element(Parameter p, const ParameterPoint& point, int n, int m, int np,
                           int mp);

ConnectionMatrix connection_analytic(const FockBasis& basis, Parameter p,
                                     const ParameterPoint& point);

/// Analytic B-connection with the inter-level (a b, a^+ b^+) coefficient
/// 2 sinh^2(r/2) in place of cosh r. Kept to quantify how far that variant
/// sits from the finite-difference oracle; it vanishes at r = 0 where the
/// coherent-family value is 1.
ConnectionMatrix b_connection_as_printed(const FockBasis& basis, const ParameterPoint& point);

inline constexpr double kMinStep = 1e-6;
inline constexpr double kMaxStep = 1e-2;
inline constexpr double kDefaultStep = 1e-4;

/// Central finite differences <psi(l)| [psi(l + h) - psi(l - h)] / 2h of the
/// embedded frame K(B, B_point) D(alpha) S(beta).
ConnectionMatrix connection_numeric(const FockBasis& basis, Parameter p,
                                    const ParameterPoint& point, double h = kDefaultStep);

/// Largest block {n <= n_hi, m <= m_max - 1} whose frame columns D S |n, m>
/// keep every amplitude in the top guard band below `tail`; on it the
/// truncated frame is faithful and finite differences can be compared with
/// the analytic connections. Throws GuardBandViolation if even n = 0 fails.
Block trusted_block(const FockBasis& basis, const ParameterPoint& point, double tail = 1e-6);

/// (m_max + 1) x (m_max + 1) block at n = n'.
OperatorMatrix degenerate_block(const ConnectionMatrix& conn, const FockBasis& basis, int n);

/// Same block evaluated directly from connection_element(), without
/// assembling the full matrix.
CMatrix degenerate_connection(const FockBasis& basis, Parameter p,
                              const ParameterPoint& point, int n);

}  // namespace landau
