#pragma once

// Truncated two-mode Fock space |n, m> for Landau levels: n is the Landau
// index (b-mode), m the degeneracy label (a-mode). Natural units
// hbar = e = c = mu = 1, so the cyclotron frequency equals B.

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace landau {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Rectangular sub-block {n <= n_hi, m <= m_hi} of the basis.
struct Block {
  int n_hi = 0;
  int m_hi = 0;
};

class FockBasis {
 public:
  FockBasis(int n_max, int m_max);

  int n_max() const noexcept { return n_max_; }
  int m_max() const noexcept { return m_max_; }
  int n_count() const noexcept { return n_max_ + 1; }
  int m_count() const noexcept { return m_max_ + 1; }
  int dimension() const noexcept { return n_count() * m_count(); }

  // Row-major in n then m.
  int index(int n, int m) const;
  std::pair<int, int> levels(int flat) const;

  bool contains(int n, int m) const noexcept {
    return n >= 0 && n <= n_max_ && m >= 0 && m <= m_max_;
  }

  /// All states with n <= n_max - 1 and m <= m_max - 1.
  Block interior() const noexcept { return {n_max_ - 1, m_max_ - 1}; }
  /// Block with `n_guard` top Landau rows and `m_guard` top m rows removed.
  Block guarded(int n_guard, int m_guard) const;
  Block full() const noexcept { return {n_max_, m_max_}; }

  bool operator==(const FockBasis&) const = default;

 private:
  int n_max_;
  int m_max_;
};

FockBasis build_basis(int n_max, int m_max);

enum class OperatorRole { ladder, unitary, hermitian, anti_hermitian, generic };

struct OperatorMatrix {
  CMatrix matrix;
  OperatorRole role = OperatorRole::generic;

  Eigen::Index dim() const noexcept { return matrix.rows(); }
};

struct StateVector {
  CVector amplitudes;

  Eigen::Index dim() const noexcept { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }
};

StateVector basis_state(const FockBasis& basis, int n, int m);

/// The five-dimensional parameter (X1, X2, B, r, theta).
struct ParameterPoint {
  double X1 = 0.0;
  double X2 = 0.0;
  double B = 1.0;
  double r = 0.0;
  double theta = 0.0;

  Complex alpha() const noexcept { return {X1, X2}; }
  Complex beta() const noexcept { return std::polar(r, theta); }
};

/// Throws InvalidArgument unless B > 0, r >= 0 and every field is finite.
void validate(const ParameterPoint& point);

OperatorMatrix ladder_b(const FockBasis& basis);
OperatorMatrix ladder_a(const FockBasis& basis);

/// Max-norm of ([P, Q] - I) on the interior block. With
/// `identity_target == false` the target is the zero matrix instead.
double commutator_defect(const OperatorMatrix& P, const OperatorMatrix& Q,
                         const FockBasis& basis, bool identity_target = true);

// Helpers shared by every module.

/// Flat indices of a block, in basis order.
Eigen::VectorXi block_indices(const FockBasis& basis, const Block& block);
CMatrix restrict_to(const CMatrix& op, const FockBasis& basis, const Block& block);
double max_abs(const CMatrix& op);
double max_abs_on(const CMatrix& op, const FockBasis& basis, const Block& block);
/// ||A - A^dagger||_max.
double hermiticity_defect(const CMatrix& op);
/// ||A + A^dagger||_max.
double anti_hermiticity_defect(const CMatrix& op);
/// ||U^dagger U - I||_max.
double unitarity_defect(const CMatrix& op);

}  // namespace landau
