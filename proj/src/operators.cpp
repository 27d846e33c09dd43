#include "landau_berry/operators.hpp"

#include <cmath>
#include <string>

#include "landau_berry/errors.hpp"
#include "landau_berry/expm.hpp"

namespace landau {
namespace {

CMatrix identity(const FockBasis& basis) {
  return CMatrix::Identity(basis.dimension(), basis.dimension());
}

CMatrix h0_matrix(const FockBasis& basis, double B) {
  CMatrix h = CMatrix::Zero(basis.dimension(), basis.dimension());
  for (int k = 0; k < basis.dimension(); ++k) {
    h(k, k) = landau_energy(B, basis.levels(k).first);
  }
  return h;
}

void require_field(double B, const char* where) {
  if (!(B > 0.0) || !std::isfinite(B)) {
    throw InvalidArgument(std::string(where) + ": field must be finite and > 0");
  }
}

// Shifted momenta pi'_x = pi_x - sqrt(2B) X1, pi'_y = pi_y + sqrt(2B) X2.
std::pair<CMatrix, CMatrix> shifted_momenta(const FockBasis& basis, const ParameterPoint& p) {
  const double k = std::sqrt(2.0 * p.B);
  CMatrix px = kinetic_x(basis, p.B).matrix - k * p.X1 * identity(basis);
  CMatrix py = kinetic_y(basis, p.B).matrix + k * p.X2 * identity(basis);
  return {std::move(px), std::move(py)};
}

CMatrix anisotropic(const FockBasis& basis, const ParameterPoint& p, double half_angle) {
  auto [px, py] = shifted_momenta(basis, p);
  const double c = std::cos(half_angle);
  const double s = std::sin(half_angle);
  const CMatrix P = c * px + s * py;
  const CMatrix Q = -s * px + c * py;
  return 0.5 * (std::exp(-2.0 * p.r) * (P * P) + std::exp(2.0 * p.r) * (Q * Q));
}

// b on the Landau mode alone.
CMatrix single_mode_b(int n_count) {
  CMatrix b = CMatrix::Zero(n_count, n_count);
  for (int n = 1; n < n_count; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

// D and S never touch m: build them on one mode, then copy into every m sector.
CMatrix spread_over_m(const CMatrix& single, const FockBasis& basis) {
  const int mc = basis.m_count();
  CMatrix out = CMatrix::Zero(basis.dimension(), basis.dimension());
  for (int np = 0; np < basis.n_count(); ++np) {
    for (int n = 0; n < basis.n_count(); ++n) {
      const Complex v = single(n, np);
      if (v == Complex(0.0)) continue;
      for (int m = 0; m < mc; ++m) out(n * mc + m, np * mc + m) = v;
    }
  }
  return out;
}

void require_displacement_room(const FockBasis& basis, Complex alpha) {
  const int need = required_n_max_for_displacement(std::abs(alpha));
  if (basis.n_max() < need) {
    throw TruncationRisk("displacement: |alpha| = " + std::to_string(std::abs(alpha)) +
                             " needs n_max >= " + std::to_string(need) + ", basis has " +
                             std::to_string(basis.n_max()),
                         need);
  }
}

void require_squeeze_room(const FockBasis& basis, Complex beta) {
  const double r = std::abs(beta);
  if (r > kMaxSqueeze) {
    throw TruncationRisk("squeeze: r = " + std::to_string(r) + " exceeds the supported 2.0",
                         required_n_max_for_squeeze(r));
  }
  const int need = required_n_max_for_squeeze(r);
  if (basis.n_max() < need) {
    throw TruncationRisk("squeeze: r = " + std::to_string(r) + " needs n_max >= " +
                             std::to_string(need) + ", basis has " +
                             std::to_string(basis.n_max()),
                         need);
  }
}

CMatrix single_mode_displacement(int n_count, Complex alpha) {
  const CMatrix b = single_mode_b(n_count);
  return expm_blocked(alpha * b.adjoint() - std::conj(alpha) * b);
}

CMatrix single_mode_squeeze(int n_count, Complex beta) {
  const CMatrix b = single_mode_b(n_count);
  const CMatrix bd = b.adjoint();
  return expm_blocked(0.5 * beta * (bd * bd) - 0.5 * std::conj(beta) * (b * b));
}

}  // namespace

int required_n_max_for_displacement(double abs_alpha) {
  return int(std::ceil(abs_alpha * abs_alpha + 6.0 * abs_alpha + 10.0));
}

int required_n_max_for_squeeze(double r) { return int(std::ceil(std::exp(2.0 * r))) + 10; }

OperatorMatrix displacement(const FockBasis& basis, Complex alpha) {
  require_displacement_room(basis, alpha);
  return {spread_over_m(single_mode_displacement(basis.n_count(), alpha), basis),
          OperatorRole::unitary};
}

OperatorMatrix squeeze(const FockBasis& basis, Complex beta) {
  require_squeeze_room(basis, beta);
  return {spread_over_m(single_mode_squeeze(basis.n_count(), beta), basis),
          OperatorRole::unitary};
}

OperatorMatrix state_frame(const FockBasis& basis, const ParameterPoint& point) {
  validate(point);
  require_displacement_room(basis, point.alpha());
  CMatrix single = single_mode_displacement(basis.n_count(), point.alpha());
  if (point.r != 0.0) {
    require_squeeze_room(basis, point.beta());
    single = single * single_mode_squeeze(basis.n_count(), point.beta());
  }
  return {spread_over_m(single, basis), OperatorRole::unitary};
}

OperatorMatrix embedding_generator(const FockBasis& basis, double B) {
  require_field(B, "embedding_generator");
  // <n-1, m-1| a b |n, m> = sqrt(n m)
  CMatrix g = CMatrix::Zero(basis.dimension(), basis.dimension());
  for (int n = 1; n <= basis.n_max(); ++n) {
    for (int m = 1; m <= basis.m_max(); ++m) {
      const double v = std::sqrt(double(n) * double(m)) / (2.0 * B);
      g(basis.index(n - 1, m - 1), basis.index(n, m)) = v;
      g(basis.index(n, m), basis.index(n - 1, m - 1)) = -v;
    }
  }
  return {std::move(g), OperatorRole::anti_hermitian};
}

OperatorMatrix b_embedding(const FockBasis& basis, double B, double B_ref) {
  require_field(B, "b_embedding");
  require_field(B_ref, "b_embedding");
  if (B == B_ref) return {identity(basis), OperatorRole::unitary};
  // ln(B/B_ref)/2 * (ab - a+b+) = ln(B/B_ref) * B_ref * G(B_ref)
  const CMatrix gen = std::log(B / B_ref) * B_ref * embedding_generator(basis, B_ref).matrix;
  return {expm_blocked(gen), OperatorRole::unitary};
}

OperatorMatrix kinetic_x(const FockBasis& basis, double B) {
  require_field(B, "kinetic_x");
  const CMatrix b = ladder_b(basis).matrix;
  return {std::sqrt(B / 2.0) * (b + b.adjoint()), OperatorRole::hermitian};
}

OperatorMatrix kinetic_y(const FockBasis& basis, double B) {
  require_field(B, "kinetic_y");
  const CMatrix b = ladder_b(basis).matrix;
  return {-kI * std::sqrt(B / 2.0) * (b.adjoint() - b), OperatorRole::hermitian};
}

std::string_view to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::h0: return "h0";
    case HamiltonianKind::coherent_fock: return "coherent_fock";
    case HamiltonianKind::coherent_pi: return "coherent_pi";
    case HamiltonianKind::squeezed_fock: return "squeezed_fock";
    case HamiltonianKind::squeezed_pi: return "squeezed_pi";
  }
  return "unknown";
}

HamiltonianKind parse_hamiltonian_kind(std::string_view name) {
  for (auto k : {HamiltonianKind::h0, HamiltonianKind::coherent_fock,
                 HamiltonianKind::coherent_pi, HamiltonianKind::squeezed_fock,
                 HamiltonianKind::squeezed_pi}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown Hamiltonian kind '" + std::string(name) + "'");
}

HamiltonianForm hamiltonian(const FockBasis& basis, HamiltonianKind kind,
                            const ParameterPoint& point) {
  validate(point);
  const bool displaced = point.X1 != 0.0 || point.X2 != 0.0;
  const bool squeezed = point.r != 0.0;
  if (kind == HamiltonianKind::h0 && (displaced || squeezed)) {
    throw InvalidArgument("hamiltonian: h0 takes alpha = 0 and r = 0");
  }
  if ((kind == HamiltonianKind::coherent_fock || kind == HamiltonianKind::coherent_pi) &&
      squeezed) {
    throw InvalidArgument("hamiltonian: coherent forms require r = 0");
  }

  CMatrix h;
  switch (kind) {
    case HamiltonianKind::h0:
      h = h0_matrix(basis, point.B);
      break;
    case HamiltonianKind::coherent_fock: {
      const CMatrix D = displacement(basis, point.alpha()).matrix;
      h = D * h0_matrix(basis, point.B) * D.adjoint();
      break;
    }
    case HamiltonianKind::coherent_pi: {
      auto [px, py] = shifted_momenta(basis, point);
      h = 0.5 * (px * px + py * py);
      break;
    }
    case HamiltonianKind::squeezed_fock: {
      const CMatrix F = state_frame(basis, point).matrix;
      h = F * h0_matrix(basis, point.B) * F.adjoint();
      break;
    }
    case HamiltonianKind::squeezed_pi:
      h = anisotropic(basis, point, -point.theta / 2.0);
      break;
  }
  // Products of exactly Hermitian factors pick up rounding asymmetry.
  h = 0.5 * (h + h.adjoint()).eval();
  return {kind, point, {std::move(h), OperatorRole::hermitian}};
}

OperatorMatrix squeezed_pi_as_printed(const FockBasis& basis, const ParameterPoint& point) {
  validate(point);
  CMatrix h = anisotropic(basis, point, point.theta / 2.0);
  h = 0.5 * (h + h.adjoint()).eval();
  return {std::move(h), OperatorRole::hermitian};
}

double guard_band_leak(const FockBasis& basis, const CVector& state) {
  double leak = 0.0;
  for (int n = basis.n_max() - kGuardBand + 1; n <= basis.n_max(); ++n) {
    if (n < 0) continue;
    for (int m = 0; m <= basis.m_max(); ++m) leak += std::norm(state(basis.index(n, m)));
  }
  return leak;
}

StateVector eigenstate(const FockBasis& basis, const ParameterPoint& point, int n, int m) {
  if (n < 0 || m < 0 || m > basis.m_max()) {
    throw InvalidArgument("eigenstate: level (" + std::to_string(n) + ", " +
                          std::to_string(m) + ") outside the basis");
  }
  if (n > basis.n_max() - kGuardBand) {
    throw GuardBandViolation("eigenstate: n = " + std::to_string(n) +
                             " lies inside the top guard band (n_max - " +
                             std::to_string(kGuardBand) + ")");
  }
  CVector psi = state_frame(basis, point).matrix.col(basis.index(n, m));
  const double leak = guard_band_leak(basis, psi);
  if (leak > kGuardLeak) {
    throw GuardBandViolation("eigenstate: probability " + std::to_string(leak) +
                             " above n_max - " + std::to_string(kGuardBand) +
                             " exceeds 1e-10; raise n_max");
  }
  return {std::move(psi)};
}

}  // namespace landau
