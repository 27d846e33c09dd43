#include <doctest.h>

#include <cmath>

#include "landau_berry/errors.hpp"
#include "landau_berry/fock.hpp"

using namespace landau;

TEST_CASE("basis dimensions") {
  CHECK(build_basis(1, 1).dimension() == 4);
  CHECK(build_basis(40, 8).dimension() == 369);
  CHECK_THROWS_AS(build_basis(0, 5), InvalidArgument);
  CHECK_THROWS_AS(build_basis(3, 0), InvalidArgument);
  CHECK_THROWS_AS(build_basis(-1, 2), InvalidArgument);
}

TEST_CASE("index bijection round-trips") {
  const FockBasis b(7, 3);
  for (int k = 0; k < b.dimension(); ++k) {
    const auto [n, m] = b.levels(k);
    CHECK(b.index(n, m) == k);
  }
  // row-major in n then m
  CHECK(b.index(0, 0) == 0);
  CHECK(b.index(0, 3) == 3);
  CHECK(b.index(1, 0) == 4);
  CHECK_THROWS_AS(b.index(8, 0), InvalidArgument);
  CHECK_THROWS_AS(b.levels(b.dimension()), InvalidArgument);
}

TEST_CASE("ladder b") {
  const FockBasis basis(6, 2);
  const CMatrix b = ladder_b(basis).matrix;
  const CVector out = b * basis_state(basis, 2, 0).amplitudes;
  CHECK(std::abs(out(basis.index(1, 0)) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(out.norm() - std::sqrt(2.0)) < 1e-15);
  for (int m = 0; m <= 2; ++m) {
    CHECK((b * basis_state(basis, 0, m).amplitudes).norm() == 0.0);
  }
  CHECK(std::abs(b(basis.index(1, 1), basis.index(2, 1)) - 1.41421356) < 1e-8);
}

TEST_CASE("ladder a") {
  const FockBasis basis(3, 4);
  const CMatrix a = ladder_a(basis).matrix;
  const CVector out = a * basis_state(basis, 0, 3).amplitudes;
  CHECK(std::abs(out(basis.index(0, 2)) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(out.norm() - std::sqrt(3.0)) < 1e-15);
  for (int n = 0; n <= 3; ++n) CHECK((a * basis_state(basis, n, 0).amplitudes).norm() == 0.0);
  const CMatrix b = ladder_b(basis).matrix;
  CHECK(max_abs(a * b - b * a) == 0.0);
  CHECK(max_abs(a * b.adjoint() - b.adjoint() * a) == 0.0);
}

TEST_CASE("canonical commutators on the interior") {
  const FockBasis basis(9, 5);
  const OperatorMatrix b = ladder_b(basis);
  const OperatorMatrix a = ladder_a(basis);
  const OperatorMatrix bd{b.matrix.adjoint(), OperatorRole::ladder};
  const OperatorMatrix ad{a.matrix.adjoint(), OperatorRole::ladder};
  CHECK(commutator_defect(b, bd, basis) < 1e-14);
  CHECK(commutator_defect(a, ad, basis) < 1e-14);
  CHECK(commutator_defect(a, b, basis, false) == 0.0);

  // The defect lives only on the boundary row.
  const CMatrix c = b.matrix * bd.matrix - bd.matrix * b.matrix;
  const int top = basis.index(basis.n_max(), 0);
  CHECK(std::abs(c(top, top) - Complex(-double(basis.n_max()))) < 1e-12);

  const OperatorMatrix small = ladder_b(FockBasis(2, 2));
  CHECK_THROWS_AS(commutator_defect(b, small, basis), DimensionMismatch);
}

TEST_CASE("number operator is diagonal below the cutoff") {
  const FockBasis basis(8, 2);
  const CMatrix b = ladder_b(basis).matrix;
  const CMatrix N = b.adjoint() * b;
  for (int n = 0; n <= basis.n_max(); ++n) {
    for (int m = 0; m <= 2; ++m) {
      const CVector v = N * basis_state(basis, n, m).amplitudes;
      CHECK((v - double(n) * basis_state(basis, n, m).amplitudes).norm() < 1e-14);
    }
  }
}

TEST_CASE("blocks") {
  const FockBasis basis(10, 4);
  CHECK(basis.interior().n_hi == 9);
  CHECK(basis.interior().m_hi == 3);
  const Block g = basis.guarded(5, 1);
  CHECK(g.n_hi == 5);
  CHECK(g.m_hi == 3);
  CHECK(block_indices(basis, g).size() == 6 * 4);
  CHECK_THROWS_AS(basis.guarded(11, 0), InvalidArgument);
}

TEST_CASE("parameter point") {
  ParameterPoint p{0.3, -0.4, 2.0, 0.5, 1.0};
  CHECK(p.alpha() == Complex(0.3, -0.4));
  CHECK(std::abs(p.beta() - std::polar(0.5, 1.0)) < 1e-16);
  CHECK_NOTHROW(validate(p));
  p.B = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidArgument);
  p.B = 1.0;
  p.r = -0.1;
  CHECK_THROWS_AS(validate(p), InvalidArgument);
  p.r = 0.0;
  p.X1 = std::nan("");
  CHECK_THROWS_AS(validate(p), InvalidArgument);
}

TEST_CASE("defect helpers") {
  CMatrix h(2, 2);
  h << 1.0, Complex(0, 1), Complex(0, -1), 2.0;
  CHECK(hermiticity_defect(h) == 0.0);
  CHECK(anti_hermiticity_defect(kI * h) == 0.0);
  CMatrix u(2, 2);
  u << 0.0, 1.0, 1.0, 0.0;
  CHECK(unitarity_defect(u) == 0.0);
}
