#pragma once

// Unitaries and Hamiltonians on the truncated Landau basis.
//
//   D(alpha) = exp(alpha b^+ - alpha^* b)
//   S(beta)  = exp(beta b^+^2 / 2 - beta^* b^2 / 2)
//   K(B, B_ref) = exp(ln(B / B_ref) (a b - a^+ b^+) / 2)
//
// K maps the Landau basis at B_ref onto the basis at B, so that every state
// family can be embedded in one fixed representation. Its generator is
// calibrated against the inter-level B-connection elements
// (1/2B) sqrt(n'm') and -(1/2B) sqrt((n'+1)(m'+1)).

#include <string_view>

#include "landau_berry/fock.hpp"

namespace landau {

/// Smallest n_max that may host D(alpha): |alpha|^2 + 6|alpha| + 10.
int required_n_max_for_displacement(double abs_alpha);
/// Smallest n_max that may host S(beta): e^{2r} + 10.
int required_n_max_for_squeeze(double r);
inline constexpr double kMaxSqueeze = 2.0;

OperatorMatrix displacement(const FockBasis& basis, Complex alpha);
OperatorMatrix squeeze(const FockBasis& basis, Complex beta);
/// D(alpha) S(beta); column (n, m) is the state |n(alpha, beta), m>.
OperatorMatrix state_frame(const FockBasis& basis, const ParameterPoint& point);

/// G(B) = (a b - a^+ b^+) / 2B, the generator with dK/dB = G K.
OperatorMatrix embedding_generator(const FockBasis& basis, double B);
OperatorMatrix b_embedding(const FockBasis& basis, double B, double B_ref);

/// Kinetic momenta pi_x = sqrt(B/2)(b + b^+), pi_y = -i sqrt(B/2)(b^+ - b).
OperatorMatrix kinetic_x(const FockBasis& basis, double B);
OperatorMatrix kinetic_y(const FockBasis& basis, double B);

enum class HamiltonianKind { h0, coherent_fock, coherent_pi, squeezed_fock, squeezed_pi };

std::string_view to_string(HamiltonianKind kind);
HamiltonianKind parse_hamiltonian_kind(std::string_view name);

struct HamiltonianForm {
  HamiltonianKind kind;
  ParameterPoint point;
  OperatorMatrix matrix;
};

/// Builds one of the five Hamiltonian forms.
///
///  h0             B (b^+ b + 1/2)
///  coherent_fock  D H0 D^+
///  coherent_pi    [(pi_x - sqrt(2B) X1)^2 + (pi_y + sqrt(2B) X2)^2] / 2
///  squeezed_fock  D S H0 S^+ D^+
///  squeezed_pi    {e^{-2r} P^2 + e^{2r} Q^2} / 2 with (P, Q) the shifted
///                 momenta (pi'_x, pi'_y) rotated by -theta/2
///
/// The rotation sense of squeezed_pi is the one that agrees with
/// D S H0 S^+ D^+ for S as defined above; squeezed_pi_as_printed() keeps the
/// opposite sense for comparison.
HamiltonianForm hamiltonian(const FockBasis& basis, HamiltonianKind kind,
                            const ParameterPoint& point);

/// Anisotropic form with (pi'_x, pi'_y) rotated by +theta/2. Agrees with
/// squeezed_fock only when theta is a multiple of pi.
OperatorMatrix squeezed_pi_as_printed(const FockBasis& basis, const ParameterPoint& point);

/// Landau energy B (n + 1/2).
inline double landau_energy(double B, int n) { return B * (n + 0.5); }

inline constexpr int kGuardBand = 5;
inline constexpr double kGuardLeak = 1e-10;

/// Probability carried by levels n > n_max - kGuardBand.
double guard_band_leak(const FockBasis& basis, const CVector& state);

/// |n(alpha, beta), m> = D(alpha) S(beta) |n, m>. Throws GuardBandViolation
/// when n > n_max - kGuardBand or the state leaks into the guard band.
StateVector eigenstate(const FockBasis& basis, const ParameterPoint& point, int n, int m);

}  // namespace landau
