#pragma once

#include <stdexcept>
#include <string>

namespace landau {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated precondition, malformed configuration, unknown tag.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical guard refused to produce a result it cannot vouch for.
class NumericalGuard : public Error {
 public:
  using Error::Error;
};

/// The Fock cutoff is too small for the requested displacement/squeeze.
class TruncationRisk : public NumericalGuard {
 public:
  TruncationRisk(const std::string& what, int required_n_max)
      : NumericalGuard(what), required_n_max_(required_n_max) {}
  int required_n_max() const noexcept { return required_n_max_; }

 private:
  int required_n_max_;
};

/// Occupied probability leaked into the top guard band of the basis.
class GuardBandViolation : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Magnetic field at or below the 1/2B divergence guard.
class FieldGuard : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Finite-difference step outside the trusted window.
class StepSizeError : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Time integration lost too much norm.
class NormDrift : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// The evolved state no longer overlaps its reference level.
class LoopFidelity : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Quadrature grid does not resolve the magnetic length.
class UnderResolvedGrid : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

}  // namespace landau
