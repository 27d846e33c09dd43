#include "landau_berry/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "landau_berry/connection.hpp"
#include "landau_berry/errors.hpp"
#include "landau_berry/operators.hpp"

namespace landau {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStabilityBound = 0.05;  // dt ||H||_max
constexpr int kNormCheckEvery = 1024;

using Coords = std::array<double, 5>;  // X1, X2, ln B, r, theta

Coords to_coords(const ParameterPoint& p) {
  return {p.X1, p.X2, std::log(p.B), p.r, p.theta};
}

// Polyline through the path vertices (closing edge included when closed),
// parametrized by arclength fraction.
struct Polyline {
  std::vector<Coords> vertices;
  std::vector<double> cumulative;  // cumulative[k] = length up to vertex k
  double total = 0.0;

  explicit Polyline(const ParameterPath& path) {
    for (const auto& p : path.points) vertices.push_back(to_coords(p));
    if (path.closed && path.points.size() > 1) vertices.push_back(vertices.front());
    cumulative.assign(vertices.size(), 0.0);
    for (std::size_t k = 1; k < vertices.size(); ++k) {
      double s = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double d = vertices[k][i] - vertices[k - 1][i];
        s += d * d;
      }
      cumulative[k] = cumulative[k - 1] + std::sqrt(s);
    }
    total = cumulative.back();
  }

  // Position and d(position)/d(fraction) at arclength fraction s in [0, 1].
  std::pair<Coords, Coords> at(double s) const {
    if (total == 0.0) return {vertices.front(), Coords{}};
    const double target = std::clamp(s, 0.0, 1.0) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t k = std::size_t(it - cumulative.begin());
    k = std::clamp<std::size_t>(k, 1, vertices.size() - 1);
    const double len = cumulative[k] - cumulative[k - 1];
    const double w = (target - cumulative[k - 1]) / len;
    Coords pos{}, vel{};
    for (int i = 0; i < 5; ++i) {
      const double d = vertices[k][i] - vertices[k - 1][i];
      pos[i] = vertices[k - 1][i] + w * d;
      vel[i] = d / len * total;
    }
    return {pos, vel};
  }
};

ParameterPoint from_coords(const Coords& c) { return {c[0], c[1], std::exp(c[2]), c[3], c[4]}; }

struct Kinematics {
  ParameterPoint point;
  double field_rate;
};

Kinematics kinematics(const Schedule& s, const Polyline& line, double t) {
  const double tau = std::clamp(t / s.total_time, 0.0, 1.0);
  const auto [pos, vel] = line.at(profile_value(s.time_profile, tau));
  const ParameterPoint p = from_coords(pos);
  // dB/dt = B d(ln B)/ds ds/dtau / T
  const double rate = p.B * vel[2] * profile_rate(s.time_profile, tau) / s.total_time;
  return {p, rate};
}

void require_lab_basis(const FockBasis& basis, const Schedule& schedule) {
  const int n = schedule.level;
  if (n > basis.n_max() - kGuardBand) {
    throw GuardBandViolation("adiabatic: level n = " + std::to_string(n) +
                             " lies inside the top guard band");
  }
  int need = 0;
  for (const auto& p : schedule.path.points) {
    need = std::max(need, required_n_max_for_displacement(std::abs(p.alpha())));
    if (p.r != 0.0) need = std::max(need, required_n_max_for_squeeze(p.r));
    require_field_guard(p.B);
  }
  if (basis.n_max() < need) {
    throw GuardBandViolation("adiabatic: the path needs n_max >= " + std::to_string(need) +
                             " to keep the carried level clear of the guard band; basis has " +
                             std::to_string(basis.n_max()));
  }
}

double wrap(double phase) { return std::remainder(phase, kTwoPi); }

// Level-n columns of the instantaneous frame D S.
CMatrix level_frame(const FockBasis& basis, const ParameterPoint& p, int n) {
  const CMatrix F = state_frame(basis, p).matrix;
  return F.middleCols(basis.index(n, 0), basis.m_count());
}

struct Trajectory {
  CMatrix final_comoving;
  double dynamical = 0.0;
  double expectation = 0.0;  // for column 0
  double norm_drift = 0.0;
  double dt = 0.0;
  long steps = 0;
  // projections onto the level-n frame at the sample times, one matrix
  // (m_count x columns) per sample
  std::vector<CMatrix> projections;
};

Trajectory evolve(const FockBasis& basis, const Schedule& schedule, const CMatrix& initial) {
  validate(schedule);
  require_lab_basis(basis, schedule);
  if (initial.rows() != basis.dimension()) {
    throw DimensionMismatch("adiabatic: initial state does not live on this basis");
  }
  const Polyline line(schedule.path);
  const double T = schedule.total_time;
  const int n = schedule.level;

  LabGenerator gen(basis);
  // Step size from the largest generator entry along the schedule.
  double norm_max = 0.0;
  constexpr int kProbe = 256;
  for (int k = 0; k <= kProbe; ++k) {
    const auto kin = kinematics(schedule, line, T * k / kProbe);
    gen.set(kin.point, kin.field_rate);
    norm_max = std::max(norm_max, gen.max_entry());
  }
  double dt = schedule.dt;
  if (dt == 0.0) {
    dt = std::min(T / 1e4, kStabilityBound / norm_max);
  } else if (dt * norm_max > kStabilityBound * (1.0 + 1e-12)) {
    throw StepSizeError("adiabatic: dt = " + std::to_string(dt) + " gives dt ||H||_max = " +
                        std::to_string(dt * norm_max) + " > 0.05");
  }
  const long steps = std::max(1L, long(std::ceil(T / dt - 1e-9)));
  dt = T / double(steps);

  std::vector<long> sample_steps;
  for (int k = 0; k <= schedule.samples; ++k) {
    sample_steps.push_back(std::lround(double(k) * double(steps) / schedule.samples));
  }

  Trajectory out;
  out.dt = dt;
  out.steps = steps;

  // The initial state is embedded at the first point's field, where the
  // co-moving frame starts.
  CMatrix phi = initial;
  const Eigen::VectorXd norm0 = phi.colwise().norm();

  const int dim = basis.dimension();
  const int cols = int(phi.cols());
  CMatrix Hv(dim, cols), Gv(dim, cols), k1(dim, cols), k2(dim, cols), k3(dim, cols),
      k4(dim, cols), tmp(dim, cols);
  auto rhs = [&](const Kinematics& kin, const CMatrix& v, CMatrix& k) {
    gen.set(kin.point, kin.field_rate);
    gen.apply_parts(v, Hv, Gv);
    // d phi/dt = -i (H - i Bdot G) phi = -i H phi - Bdot G phi
    if (kin.field_rate == 0.0) {
      k.noalias() = -kI * Hv;
    } else {
      k.noalias() = -kI * Hv - kin.field_rate * Gv;
    }
  };
  const double level_factor = n + 0.5;

  std::size_t next_sample = 0;
  auto maybe_sample = [&](long step, const ParameterPoint& p) {
    while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      out.projections.push_back(level_frame(basis, p, n).adjoint() * phi);
      ++next_sample;
    }
  };

  Kinematics kin0 = kinematics(schedule, line, 0.0);
  maybe_sample(0, kin0.point);
  for (long s = 0; s < steps; ++s) {
    const double t = s * dt;
    const Kinematics kh = kinematics(schedule, line, t + 0.5 * dt);
    const Kinematics k1n = kinematics(schedule, line, t + dt);

    rhs(kin0, phi, k1);
    out.expectation += dt * phi.col(0).dot(Hv.col(0)).real();
    tmp.noalias() = phi + 0.5 * dt * k1;
    rhs(kh, tmp, k2);
    tmp.noalias() = phi + 0.5 * dt * k2;
    rhs(kh, tmp, k3);
    tmp.noalias() = phi + dt * k3;
    rhs(k1n, tmp, k4);
    phi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    out.dynamical += dt / 6.0 * (kin0.point.B + 4.0 * kh.point.B + k1n.point.B) * level_factor;

    if ((s + 1) % kNormCheckEvery == 0 || s + 1 == steps) {
      const Eigen::VectorXd norms = phi.colwise().norm();
      const double drift = (norms - norm0).cwiseAbs().maxCoeff();
      out.norm_drift = std::max(out.norm_drift, drift);
      if (drift > kNormAbort) {
        throw NormDrift("adiabatic: norm drifted by " + std::to_string(drift) + " at t = " +
                        std::to_string(t + dt) + " (dt = " + std::to_string(dt) + ")");
      }
      for (int c = 0; c < cols; ++c) {
        const double leak = guard_band_leak(basis, phi.col(c));
        if (leak > kGuardLeak) {
          throw GuardBandViolation("adiabatic: probability " + std::to_string(leak) +
                                   " reached the guard band at t = " + std::to_string(t + dt));
        }
      }
    }
    kin0 = k1n;
    maybe_sample(s + 1, kin0.point);
  }
  out.final_comoving = std::move(phi);
  return out;
}

// Back from the co-moving frame to the embedding at the initial field.
CMatrix to_embedded(const FockBasis& basis, const Schedule& schedule, const CMatrix& phi) {
  const double B0 = schedule.path.points.front().B;
  const double BT = schedule_point(schedule, schedule.total_time).B;
  if (BT == B0) return phi;
  return b_embedding(basis, BT, B0).matrix * phi;
}

double population_drift(const std::vector<CMatrix>& projections, int col) {
  double drift = 0.0;
  const CMatrix& first = projections.front();
  for (const auto& f : projections) {
    for (Eigen::Index m = 0; m < f.rows(); ++m) {
      drift = std::max(drift, std::abs(std::abs(f(m, col)) - std::abs(first(m, col))));
    }
  }
  return drift;
}

}  // namespace

std::string_view to_string(TimeProfile profile) {
  return profile == TimeProfile::linear ? "linear" : "smoothstep";
}

TimeProfile parse_time_profile(std::string_view name) {
  if (name == "linear") return TimeProfile::linear;
  if (name == "smoothstep") return TimeProfile::smoothstep;
  throw InvalidArgument("unknown time profile '" + std::string(name) + "'");
}

double profile_value(TimeProfile profile, double tau) {
  if (profile == TimeProfile::linear) return tau;
  return tau * tau * (3.0 - 2.0 * tau);
}

double profile_rate(TimeProfile profile, double tau) {
  if (profile == TimeProfile::linear) return 1.0;
  return 6.0 * tau * (1.0 - tau);
}

void validate(const Schedule& s) {
  if (!(s.total_time > 0.0) || !std::isfinite(s.total_time)) {
    throw InvalidArgument("Schedule: total_time must be finite and > 0");
  }
  if (!(s.dt >= 0.0) || !std::isfinite(s.dt)) {
    throw InvalidArgument("Schedule: dt must be >= 0 (0 = automatic)");
  }
  if (s.level < 0) throw InvalidArgument("Schedule: level must be >= 0");
  if (s.samples < 1) throw InvalidArgument("Schedule: samples must be >= 1");
  if (s.path.points.empty()) throw InvalidArgument("Schedule: empty path");
  if (s.path.points.size() == 1) {
    validate(s.path.points.front());
  } else {
    validate(s.path);
  }
}

ParameterPoint schedule_point(const Schedule& schedule, double t) {
  validate(schedule);
  return kinematics(schedule, Polyline(schedule.path), t).point;
}

double schedule_field_rate(const Schedule& schedule, double t) {
  validate(schedule);
  return kinematics(schedule, Polyline(schedule.path), t).field_rate;
}

// ---------------------------------------------------------------------------

LabGenerator::LabGenerator(const FockBasis& basis) : basis_(basis) {
  const int dim = basis.dimension();
  const int mc = basis.m_count();
  auto band = [&](int offset, auto&& w) {
    Band b{offset, std::vector<double>(dim, 0.0)};
    for (int j = 0; j < dim; ++j) {
      const auto [n, m] = basis.levels(j);
      b.weight[j] = w(n, m);
    }
    return b;
  };
  const int top = basis.n_max();
  const int mtop = basis.m_max();
  // Order matters: set() fills h_coeffs_ in the same order.
  h_bands_.push_back(band(0, [](int n, int) { return double(n); }));  // b+ b
  h_bands_.push_back(band(0, [](int, int) { return 1.0; }));          // 1
  h_bands_.push_back(band(mc, [&](int n, int) { return n < top ? std::sqrt(n + 1.0) : 0.0; }));
  h_bands_.push_back(band(-mc, [](int n, int) { return std::sqrt(double(n)); }));
  h_bands_.push_back(band(2 * mc, [&](int n, int) {
    return n + 2 <= top ? std::sqrt((n + 1.0) * (n + 2.0)) : 0.0;
  }));
  h_bands_.push_back(band(-2 * mc, [](int n, int) { return std::sqrt(n * (n - 1.0)); }));
  // a b and a+ b+
  g_bands_.push_back(band(-mc - 1, [](int n, int m) { return std::sqrt(double(n) * m); }));
  g_bands_.push_back(band(mc + 1, [&](int n, int m) {
    return (n < top && m < mtop) ? std::sqrt((n + 1.0) * (m + 1.0)) : 0.0;
  }));
  h_coeffs_.assign(h_bands_.size(), 0.0);
  g_coeffs_.assign(g_bands_.size(), 0.0);
}

void LabGenerator::set(const ParameterPoint& p, double field_rate) {
  // H = B (c^+ c + 1/2) with c = ch (b - alpha) - u sh (b^+ - alpha^*),
  // expanded with b b^+ = b^+ b + 1.
  const double ch = std::cosh(p.r);
  const double sh = std::sinh(p.r);
  const Complex u = std::polar(1.0, p.theta);
  const Complex a = p.alpha();
  const Complex ac = std::conj(a);
  const Complex g = -ch * a + u * sh * ac;  // c = ch b - u sh b^+ + g
  const double B = p.B;
  h_coeffs_[0] = B * (ch * ch + sh * sh);
  h_coeffs_[1] = B * (std::norm(g) + sh * sh + 0.5);
  h_coeffs_[2] = B * (ch * g - std::conj(g) * u * sh);
  h_coeffs_[3] = B * (ch * std::conj(g) - std::conj(u) * sh * g);
  h_coeffs_[4] = -B * ch * sh * u;
  h_coeffs_[5] = -B * ch * sh * std::conj(u);
  g_coeffs_[0] = 1.0 / (2.0 * B);
  g_coeffs_[1] = -1.0 / (2.0 * B);
  field_rate_ = field_rate;
}

namespace {

template <typename Bands, typename Coeffs>
void apply_bands(const Bands& bands, const Coeffs& coeffs, const CMatrix& v, CMatrix& out) {
  const Eigen::Index dim = v.rows();
  out.setZero(dim, v.cols());
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const Complex c = coeffs[k];
    if (c == Complex(0.0)) continue;
    const int off = bands[k].offset;
    const double* w = bands[k].weight.data();
    const Eigen::Index lo = std::max<Eigen::Index>(0, -off);
    const Eigen::Index hi = std::min<Eigen::Index>(dim, dim - off);
    const double cr = c.real();
    const double ci = c.imag();
    // Plain real arithmetic: std::complex products carry NaN/inf recovery
    // branches that dominate this loop.
    for (Eigen::Index col = 0; col < v.cols(); ++col) {
      const double* src = reinterpret_cast<const double*>(v.col(col).data());
      double* dst = reinterpret_cast<double*>(out.col(col).data());
      for (Eigen::Index j = lo; j < hi; ++j) {
        const double x = w[j] * src[2 * j];
        const double y = w[j] * src[2 * j + 1];
        dst[2 * (j + off)] += cr * x - ci * y;
        dst[2 * (j + off) + 1] += cr * y + ci * x;
      }
    }
  }
}

template <typename Bands, typename Coeffs>
void add_dense(const Bands& bands, const Coeffs& coeffs, Complex scale, CMatrix& out) {
  const Eigen::Index dim = out.rows();
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const int off = bands[k].offset;
    for (Eigen::Index j = std::max<Eigen::Index>(0, -off);
         j < std::min<Eigen::Index>(dim, dim - off); ++j) {
      out(j + off, j) += scale * coeffs[k] * bands[k].weight[j];
    }
  }
}

}  // namespace

void LabGenerator::apply_parts(const CMatrix& v, CMatrix& Hv, CMatrix& Gv) const {
  apply_bands(h_bands_, h_coeffs_, v, Hv);
  if (field_rate_ == 0.0) {
    Gv.setZero(v.rows(), v.cols());
  } else {
    apply_bands(g_bands_, g_coeffs_, v, Gv);
  }
}

CMatrix LabGenerator::hamiltonian_dense() const {
  CMatrix out = CMatrix::Zero(basis_.dimension(), basis_.dimension());
  add_dense(h_bands_, h_coeffs_, 1.0, out);
  return out;
}

CMatrix LabGenerator::generator_dense() const {
  CMatrix out = hamiltonian_dense();
  add_dense(g_bands_, g_coeffs_, -kI * field_rate_, out);
  return out;
}

double LabGenerator::max_entry() const { return generator_dense().cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

EvolutionRecord propagate(const FockBasis& basis, const Schedule& schedule,
                          const StateVector& initial) {
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("propagate: initial state must be normalized");
  }
  const Trajectory tr = evolve(basis, schedule, initial.amplitudes);

  EvolutionRecord rec;
  rec.final_state = {to_embedded(basis, schedule, tr.final_comoving).col(0)};
  rec.dynamical_phase = tr.dynamical;
  rec.expectation_dynamical_phase = tr.expectation;
  const Complex overlap = initial.amplitudes.dot(rec.final_state.amplitudes);
  // Principal branch about -dynamical: geometric in (-pi, pi].
  rec.geometric_phase = wrap(std::arg(overlap) + tr.dynamical);
  rec.total_phase = rec.geometric_phase - tr.dynamical;
  rec.population_drift = population_drift(tr.projections, 0);
  rec.norm_drift = tr.norm_drift;
  rec.guard_leak = guard_band_leak(basis, rec.final_state.amplitudes);
  rec.dt = tr.dt;
  rec.steps = tr.steps;
  return rec;
}

GeometricPhase extract_geometric_phase(const EvolutionRecord& record,
                                       const StateVector& reference,
                                       std::optional<double> prediction) {
  if (reference.dim() != record.final_state.dim()) {
    throw DimensionMismatch("extract_geometric_phase: reference and state differ in size");
  }
  const Complex overlap = reference.amplitudes.dot(record.final_state.amplitudes);
  GeometricPhase out;
  out.overlap = std::abs(overlap);
  if (out.overlap < 0.5) {
    throw LoopFidelity("extract_geometric_phase: |<reference|final>| = " +
                       std::to_string(out.overlap) + " < 0.5; the state left its level");
  }
  out.value = wrap(std::arg(overlap) + record.dynamical_phase);
  if (prediction) {
    out.branch = int(std::lround((*prediction - out.value) / kTwoPi));
    out.value += kTwoPi * out.branch;
  }
  return out;
}

DriftReport degenerate_drift(const FockBasis& basis, const Schedule& schedule,
                             const CVector& f) {
  validate(schedule);
  if (f.size() != basis.m_count()) {
    throw DimensionMismatch("degenerate_drift: need one coefficient per m");
  }
  if (std::abs(f.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("degenerate_drift: coefficients must be normalized");
  }
  for (const auto& p : schedule.path.points) {
    if (p.r != 0.0 || p.theta != 0.0 || p.B != schedule.path.points.front().B) {
      throw InvalidArgument("degenerate_drift: schedule must stay in the X1-X2 plane");
    }
  }
  require_lab_basis(basis, schedule);
  const ParameterPoint p0 = schedule.path.points.front();
  StateVector initial{level_frame(basis, p0, schedule.level) * f};

  const Trajectory tr = evolve(basis, schedule, initial.amplitudes);
  DriftReport rep;
  rep.population_drift = population_drift(tr.projections, 0);

  const CMatrix& first = tr.projections.front();
  const CMatrix& last = tr.projections.back();
  Eigen::Index ref = 0;
  first.col(0).cwiseAbs().maxCoeff(&ref);
  for (Eigen::Index m = 0; m < first.rows(); ++m) {
    if (std::abs(first(m, 0)) < 1e-6 || m == ref) continue;
    const double before = std::arg(first(m, 0) / first(ref, 0));
    const double after = std::arg(last(m, 0) / last(ref, 0));
    rep.relative_phase_drift = std::max(rep.relative_phase_drift, std::abs(wrap(after - before)));
  }

  EvolutionRecord& rec = rep.record;
  rec.final_state = {to_embedded(basis, schedule, tr.final_comoving).col(0)};
  rec.dynamical_phase = tr.dynamical;
  rec.expectation_dynamical_phase = tr.expectation;
  const Complex overlap = initial.amplitudes.dot(rec.final_state.amplitudes);
  rec.geometric_phase = wrap(std::arg(overlap) + tr.dynamical);
  rec.total_phase = rec.geometric_phase - tr.dynamical;
  rec.population_drift = rep.population_drift;
  rec.norm_drift = tr.norm_drift;
  rec.guard_leak = guard_band_leak(basis, rec.final_state.amplitudes);
  rec.dt = tr.dt;
  rec.steps = tr.steps;
  return rep;
}

CMatrix transported_frame(const FockBasis& basis, const Schedule& schedule) {
  validate(schedule);
  if (!schedule.path.closed) {
    throw InvalidArgument("transported_frame: schedule must be closed");
  }
  require_lab_basis(basis, schedule);
  const ParameterPoint p0 = schedule.path.points.front();
  const CMatrix frame0 = level_frame(basis, p0, schedule.level);
  const Trajectory tr = evolve(basis, schedule, frame0);
  const CMatrix final = to_embedded(basis, schedule, tr.final_comoving);
  return frame0.adjoint() * final * std::polar(1.0, tr.dynamical);
}

double frame_fidelity(const CMatrix& W, const CMatrix& U) {
  if (W.rows() != U.rows() || W.cols() != U.cols()) {
    throw DimensionMismatch("frame_fidelity: shapes differ");
  }
  return std::abs((U.adjoint() * W).trace()) / double(U.rows());
}

}  // namespace landau
