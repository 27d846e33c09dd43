#pragma once

// Brute-force time evolution along slow parameter schedules.
//
// The state is carried in the co-moving frame phi = K(B, B0)^+ psi, where K
// embeds the Landau basis at B into the one at the initial field B0:
//   i dphi/dt = [H_B(p(t)) - i (dB/dt) G(B)] phi,
// with H_B the Hamiltonian written in the ladder operators of field B and G
// the embedding generator. Every ladder product is a single band in the flat
// index, so both pieces are applied band by band; the evolved state never
// needs a dense matrix.

#include <optional>
#include <string_view>
#include <vector>

#include "landau_berry/fock.hpp"
#include "landau_berry/holonomy.hpp"

namespace landau {

enum class TimeProfile { linear, smoothstep };
std::string_view to_string(TimeProfile profile);
TimeProfile parse_time_profile(std::string_view name);

/// Arclength fraction s(tau) and ds/dtau; smoothstep is 3 tau^2 - 2 tau^3.
double profile_value(TimeProfile profile, double tau);
double profile_rate(TimeProfile profile, double tau);

struct Schedule {
  ParameterPath path;  // a single point means a static schedule
  double total_time = 1.0;
  TimeProfile time_profile = TimeProfile::smoothstep;
  double dt = 0.0;   // 0 picks min(T / 1e4, 0.05 / ||H||_max)
  int level = 0;     // Landau level carried along the loop
  int samples = 64;  // instantaneous-frame projections per run
};

/// Throws InvalidArgument for T <= 0, dt < 0, level < 0, samples < 1 or an
/// invalid path.
void validate(const Schedule& schedule);

/// Parameters at time t; the path is walked at constant speed in
/// (X1, X2, ln B, r, theta), reparametrized by the time profile.
ParameterPoint schedule_point(const Schedule& schedule, double t);
/// dB/dt along the schedule.
double schedule_field_rate(const Schedule& schedule, double t);

/// H_B(p) - i Bdot G(B) stored as bands of the flat index.
class LabGenerator {
 public:
  explicit LabGenerator(const FockBasis& basis);

  void set(const ParameterPoint& point, double field_rate);

  /// Hv and Gv for every column of v; the generator is Hv - i Bdot Gv.
  void apply_parts(const CMatrix& v, CMatrix& Hv, CMatrix& Gv) const;
  double field_rate() const noexcept { return field_rate_; }

  /// Assembled H_B (without the G term).
  CMatrix hamiltonian_dense() const;
  /// Assembled H_B - i Bdot G.
  CMatrix generator_dense() const;
  /// Largest entry modulus of the full generator.
  double max_entry() const;

 private:
  struct Band {
    int offset;
    std::vector<double> weight;  // indexed by source flat index
  };
  FockBasis basis_;
  std::vector<Band> h_bands_;
  std::vector<Complex> h_coeffs_;
  std::vector<Band> g_bands_;
  std::vector<Complex> g_coeffs_;
  double field_rate_ = 0.0;
};

struct EvolutionRecord {
  StateVector final_state;      // embedded at the initial field
  double total_phase = 0.0;     // -dynamical + geometric
  double dynamical_phase = 0.0; // integral of B(t) (n + 1/2)
  double geometric_phase = 0.0; // principal branch about -dynamical
  double population_drift = 0.0;
  double norm_drift = 0.0;
  // diagnostics
  double expectation_dynamical_phase = 0.0;  // integral of <psi|H|psi>
  double guard_leak = 0.0;
  double dt = 0.0;
  long steps = 0;
};

inline constexpr double kNormAbort = 1e-6;

/// RK4 evolution of `initial` (embedded at the first path point) from t = 0
/// to T. Throws NormDrift if the norm drifts beyond 1e-6, GuardBandViolation
/// if the carried level or the path's displacement needs more levels than
/// the guard band leaves, StepSizeError if a fixed dt breaks
/// dt ||H||_max <= 0.05.
EvolutionRecord propagate(const FockBasis& basis, const Schedule& schedule,
                          const StateVector& initial);

struct GeometricPhase {
  double value = 0.0;
  int branch = 0;  // multiples of 2 pi added to the principal value
  double overlap = 0.0;
};

/// arg<reference|final> + dynamical phase, moved onto the 2 pi branch
/// nearest `prediction` when one is supplied. Throws LoopFidelity when
/// |<reference|final>| < 0.5.
GeometricPhase extract_geometric_phase(const EvolutionRecord& record,
                                       const StateVector& reference,
                                       std::optional<double> prediction = std::nullopt);

struct DriftReport {
  double population_drift = 0.0;     // max_t max_m | |f_m(t)| - |f_m(0)| |
  double relative_phase_drift = 0.0; // max_m |arg f_m/f_0 change| at t = T
  EvolutionRecord record;
};

/// Evolves sum_m f_m |n(alpha), m> over the schedule's level n and
/// tracks the projections f_m(t) onto the instantaneous frame.
DriftReport degenerate_drift(const FockBasis& basis, const Schedule& schedule,
                             const CVector& f);

/// W(m', m) = <n(p0), m'| psi_m(T)> e^{i dynamical}, the transported
/// degenerate frame after a closed schedule.
CMatrix transported_frame(const FockBasis& basis, const Schedule& schedule);

/// |tr(U^+ W)| / dim.
double frame_fidelity(const CMatrix& W, const CMatrix& U);

}  // namespace landau
