#pragma once

#include "landau_berry/fock.hpp"

namespace landau {

/// Dense matrix exponential by scaling and squaring with the
/// [m/m] Pade approximants of Higham (2005), m in {3, 5, 7, 9, 13}.
/// Backward error is at unit-roundoff level for any input norm.
CMatrix expm(const CMatrix& A);

/// Same result as expm(), computed component by component: the sparsity
/// graph of A is split into connected components, each exponentiated on its
/// own. Ladder generators decompose into many small blocks (D and S act
/// per m, the two-mode embedding per n - m sector), which makes this far
/// cheaper than a dense exponential of the full space.
CMatrix expm_blocked(const CMatrix& A);

}  // namespace landau
