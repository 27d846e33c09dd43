#include "landau_berry/fock.hpp"

#include <cmath>
#include <string>

#include "landau_berry/errors.hpp"

namespace landau {

FockBasis::FockBasis(int n_max, int m_max) : n_max_(n_max), m_max_(m_max) {
  if (n_max < 1 || m_max < 1) {
    throw InvalidArgument("FockBasis: cutoffs must be >= 1 (got n_max=" +
                          std::to_string(n_max) + ", m_max=" + std::to_string(m_max) +
                          ")");
  }
}

int FockBasis::index(int n, int m) const {
  if (!contains(n, m)) {
    throw InvalidArgument("FockBasis::index: (" + std::to_string(n) + ", " +
                          std::to_string(m) + ") outside the basis");
  }
  return n * m_count() + m;
}

std::pair<int, int> FockBasis::levels(int flat) const {
  if (flat < 0 || flat >= dimension()) {
    throw InvalidArgument("FockBasis::levels: flat index out of range");
  }
  return {flat / m_count(), flat % m_count()};
}

Block FockBasis::guarded(int n_guard, int m_guard) const {
  Block b{n_max_ - n_guard, m_max_ - m_guard};
  if (b.n_hi < 0 || b.m_hi < 0) {
    throw InvalidArgument("FockBasis::guarded: guard band swallows the whole basis");
  }
  return b;
}

FockBasis build_basis(int n_max, int m_max) { return FockBasis(n_max, m_max); }

StateVector basis_state(const FockBasis& basis, int n, int m) {
  StateVector s{CVector::Zero(basis.dimension())};
  s.amplitudes(basis.index(n, m)) = 1.0;
  return s;
}

void validate(const ParameterPoint& p) {
  if (!std::isfinite(p.X1) || !std::isfinite(p.X2) || !std::isfinite(p.B) ||
      !std::isfinite(p.r) || !std::isfinite(p.theta)) {
    throw InvalidArgument("ParameterPoint: all fields must be finite");
  }
  if (!(p.B > 0.0)) throw InvalidArgument("ParameterPoint: B must be > 0");
  if (p.r < 0.0) throw InvalidArgument("ParameterPoint: r must be >= 0");
}

OperatorMatrix ladder_b(const FockBasis& basis) {
  CMatrix b = CMatrix::Zero(basis.dimension(), basis.dimension());
  for (int n = 1; n <= basis.n_max(); ++n) {
    for (int m = 0; m <= basis.m_max(); ++m) {
      b(basis.index(n - 1, m), basis.index(n, m)) = std::sqrt(double(n));
    }
  }
  return {std::move(b), OperatorRole::ladder};
}

OperatorMatrix ladder_a(const FockBasis& basis) {
  CMatrix a = CMatrix::Zero(basis.dimension(), basis.dimension());
  for (int n = 0; n <= basis.n_max(); ++n) {
    for (int m = 1; m <= basis.m_max(); ++m) {
      a(basis.index(n, m - 1), basis.index(n, m)) = std::sqrt(double(m));
    }
  }
  return {std::move(a), OperatorRole::ladder};
}

double commutator_defect(const OperatorMatrix& P, const OperatorMatrix& Q,
                         const FockBasis& basis, bool identity_target) {
  if (P.dim() != Q.dim() || P.dim() != basis.dimension()) {
    throw DimensionMismatch("commutator_defect: operator dimensions differ from the basis");
  }
  CMatrix c = P.matrix * Q.matrix - Q.matrix * P.matrix;
  if (identity_target) c -= CMatrix::Identity(c.rows(), c.cols());
  return max_abs_on(c, basis, basis.interior());
}

Eigen::VectorXi block_indices(const FockBasis& basis, const Block& block) {
  Eigen::VectorXi idx((block.n_hi + 1) * (block.m_hi + 1));
  int k = 0;
  for (int n = 0; n <= block.n_hi; ++n) {
    for (int m = 0; m <= block.m_hi; ++m) idx(k++) = basis.index(n, m);
  }
  return idx;
}

CMatrix restrict_to(const CMatrix& op, const FockBasis& basis, const Block& block) {
  const Eigen::VectorXi idx = block_indices(basis, block);
  return op(idx, idx);
}

double max_abs(const CMatrix& op) {
  return op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff();
}

double max_abs_on(const CMatrix& op, const FockBasis& basis, const Block& block) {
  return max_abs(restrict_to(op, basis, block));
}

double hermiticity_defect(const CMatrix& op) { return max_abs(op - op.adjoint()); }

double anti_hermiticity_defect(const CMatrix& op) { return max_abs(op + op.adjoint()); }

double unitarity_defect(const CMatrix& op) {
  return max_abs(op.adjoint() * op - CMatrix::Identity(op.cols(), op.cols()));
}

}  // namespace landau
