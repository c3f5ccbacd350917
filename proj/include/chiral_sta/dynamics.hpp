#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chiral_sta/errors.hpp"
#include "chiral_sta/pulses.hpp"

namespace chiral_sta {

using Complex = std::complex<double>;
template <int N> using VecN = Eigen::Matrix<Complex, N, 1>;
template <int N> using MatN = Eigen::Matrix<Complex, N, N>;
using Vec3 = VecN<3>;
using Vec4 = VecN<4>;
using Mat3 = MatN<3>;
using Mat4 = MatN<4>;

// Handedness couples through the sign of the one-photon Rabi frequency:
// left-handed molecules see +Omega_Q, right-handed see -Omega_Q. The
// convention is fixed so that a pi/2 pulse with phase pi/2 drives a
// left-handed molecule from |1> to (|1> - |3>)/sqrt(2).
enum class Chirality { Left, Right };

inline double chirality_sign(Chirality c) {
  return c == Chirality::Left ? 1.0 : -1.0;
}
inline const char* chirality_name(Chirality c) {
  return c == Chirality::Left ? "L" : "R";
}

// ---------------------------------------------------------------------------
// Level structure and relaxation
// ---------------------------------------------------------------------------

struct LevelStructure {
  double omega12 = 0.0;  // |1><->|2| transition frequency, rad/us
  double omega13 = 0.0;  // |1><->|3|
  std::optional<double> omega4;  // spectator level energy (lab-frame model)

  // Off-resonant couplings picked up by the spectator level: the P field also
  // drives |2><->|4> and the Q field also drives |3><->|4>.
  bool p_drives_24 = true;
  bool q_drives_34 = true;

  double omega23() const { return omega13 - omega12; }
  bool has_level4() const { return omega4.has_value(); }
  void validate() const;

  // 1,2-propanediol rotational constants (frequencies in rad/us under the
  // angular-frequency unit convention).
  static LevelStructure propanediol();
};

struct RelaxationRates {
  double gamma12 = 0.0;  // |2> -> |1>, 1/us
  double gamma13 = 0.0;  // |3> -> |1>
  double gamma23 = 0.0;  // |3> -> |2>

  // gamma12 = 1/tau2, gamma13 = gamma23 = 0.5/tau3.
  static RelaxationRates from_lifetimes(double tau2, double tau3);

  bool any() const { return gamma12 != 0.0 || gamma13 != 0.0 || gamma23 != 0.0; }
  double tau2() const { return gamma12 > 0.0 ? 1.0 / gamma12 : INFINITY; }
  double tau3() const {
    const double g = gamma13 + gamma23;
    return g > 0.0 ? 1.0 / g : INFINITY;
  }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Hamiltonian builders
// ---------------------------------------------------------------------------

// One-photon interaction Hamiltonian, resonant Q drive:
//   +/- (omega_q/2) e^{i phase_q} |1><3| + h.c.
Mat3 build_stage1_h(double omega_q, double phase_q, Chirality chirality);

// Two-photon interaction Hamiltonian (common to both enantiomers):
//   (1/2)(omega_p e^{i phase_p} |1><2| + omega_s e^{i phase_s} |2><3|) + h.c.
Mat3 build_stage2_h(double omega_p, double omega_s, double phase_p,
                    double phase_s);

// Sum of both stages evaluated from the three control fields, with optional
// interaction-picture detunings (carrier minus transition frequency, indexed
// by FieldLabel) entering as time-linear phases.
Mat3 combined_stage_h(double t, const std::array<ControlField, 3>& fields,
                      const std::array<double, 3>& detunings,
                      Chirality chirality);

// Full lab-frame Hamiltonian with the spectator level and its off-resonant
// couplings; cos(carrier * t + phase) factors kept (no rotating-wave
// approximation).
Mat4 build_lab_h(double t, const std::array<ControlField, 3>& fields,
                 const LevelStructure& levels, Chirality chirality);

// Largest angular frequency appearing in the lab-frame model; used to derive
// the integration step.
double lab_frame_max_frequency(const std::array<ControlField, 3>& fields,
                               const LevelStructure& levels);

// ---------------------------------------------------------------------------
// Evolution
// ---------------------------------------------------------------------------

struct IntegratorSettings {
  int interaction_steps = 10000;          // minimum steps over the span
  double lab_samples_per_period = 160.0;  // of the fastest lab-frame cycle
  double max_step = 0.0;                  // resolved step, us (0 = unresolved)
  double norm_tol = 1e-6;                 // divergence threshold, pure states
  double trace_tol = 1e-6;                // divergence threshold, mixed states
  double positivity_tol = 1e-6;
};

template <class StateT>
struct Trajectory {
  std::vector<double> times;
  std::vector<StateT> states;  // recorded at `times`
  double final_time = 0.0;
  StateT final_state;
};

namespace detail {

// Sorted unique split points: span ends, envelope discontinuities, sample
// times. RK4 steps never straddle one, so piecewise-constant waveforms are
// integrated exactly piecewise.
inline std::vector<double> split_points(double t0, double t1,
                                        const std::vector<double>& breakpoints,
                                        const std::vector<double>& samples) {
  std::vector<double> pts;
  pts.reserve(breakpoints.size() + samples.size() + 2);
  pts.push_back(t0);
  pts.push_back(t1);
  const double eps = 1e-12 * std::max(1.0, std::max(std::abs(t0), std::abs(t1)));
  for (double b : breakpoints)
    if (b > t0 + eps && b < t1 - eps) pts.push_back(b);
  for (double s : samples)
    if (s > t0 + eps && s < t1 - eps) pts.push_back(s);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [eps](double a, double b) { return b - a < eps; }),
            pts.end());
  return pts;
}

// Classic fixed-step RK4 over [t0, t1] split at `points`. Calls
// step_check(y, t) after every step and record(y, t) at recorded points.
template <class StateT, class Rhs, class StepCheck>
void rk4_over(StateT& y, const std::vector<double>& points, double max_step,
              Rhs&& rhs, StepCheck&& step_check) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_step - 1e-9)));
    const double h = (b - a) / n;
    double t = a;
    for (int k = 0; k < n; ++k) {
      const StateT k1 = rhs(t, y);
      const StateT k2 = rhs(t + 0.5 * h, StateT(y + (0.5 * h) * k1));
      const StateT k3 = rhs(t + 0.5 * h, StateT(y + (0.5 * h) * k2));
      const double tn = (k + 1 == n) ? b : a + (k + 1) * h;
      const StateT k4 = rhs(tn, StateT(y + h * k3));
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = tn;
      step_check(y, t);
    }
  }
}

inline bool is_sample_time(double t, const std::vector<double>& samples,
                           std::size_t& cursor) {
  const double eps = 1e-12 * std::max(1.0, std::abs(t));
  bool hit = false;
  while (cursor < samples.size() && samples[cursor] <= t + eps) {
    if (std::abs(samples[cursor] - t) <= eps) hit = true;
    ++cursor;
  }
  return hit;
}

}  // namespace detail

// Fourth-order fixed-step integration of i d|psi>/dt = H(t)|psi>. The norm is
// never renormalized; drift beyond norm_tol raises IntegrationError naming
// the offending time.
template <int N>
Trajectory<VecN<N>> evolve_schrodinger(
    const VecN<N>& psi0, const std::function<MatN<N>(double)>& hamiltonian,
    double t0, double t1, const std::vector<double>& breakpoints,
    const std::vector<double>& sample_times, const IntegratorSettings& settings) {
  if (!(settings.max_step > 0.0))
    throw ValidationError("evolve_schrodinger: max_step must be resolved (> 0)");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw ValidationError("evolve_schrodinger: initial state not normalized");

  std::vector<double> samples = sample_times;
  std::sort(samples.begin(), samples.end());

  Trajectory<VecN<N>> out;
  VecN<N> y = psi0;
  std::size_t cursor = 0;
  if (detail::is_sample_time(t0, samples, cursor)) {
    out.times.push_back(t0);
    out.states.push_back(y);
  }

  const auto points = detail::split_points(t0, t1, breakpoints, samples);
  const Complex minus_i(0.0, -1.0);
  auto rhs = [&](double t, const VecN<N>& v) -> VecN<N> {
    return minus_i * (hamiltonian(t) * v);
  };

  std::size_t point_cursor = cursor;
  auto check = [&](const VecN<N>& v, double t) {
    const double drift = std::abs(v.norm() - 1.0);
    if (drift > settings.norm_tol)
      throw IntegrationError(
          "norm drift " + std::to_string(drift) + " at t = " + std::to_string(t),
          t);
    if (detail::is_sample_time(t, samples, point_cursor)) {
      out.times.push_back(t);
      out.states.push_back(v);
    }
  };
  detail::rk4_over(y, points, settings.max_step, rhs, check);

  out.final_time = t1;
  out.final_state = y;
  return out;
}

// Markovian master equation with the three decay channels
// |1><2|, |1><3|, |2><3| at the given rates. Trace drift beyond trace_tol or
// negativity beyond positivity_tol (checked at sample times and at the end)
// raises IntegrationError.
template <int N>
Trajectory<MatN<N>> evolve_master(
    const MatN<N>& rho0, const std::function<MatN<N>(double)>& hamiltonian,
    const RelaxationRates& rates, double t0, double t1,
    const std::vector<double>& breakpoints,
    const std::vector<double>& sample_times, const IntegratorSettings& settings) {
  static_assert(N >= 3);
  if (!(settings.max_step > 0.0))
    throw ValidationError("evolve_master: max_step must be resolved (> 0)");
  rates.validate();
  if (std::abs(rho0.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho0.trace().imag()) > 1e-12)
    throw ValidationError("evolve_master: initial state must have unit trace");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("evolve_master: initial state must be Hermitian");

  std::vector<double> samples = sample_times;
  std::sort(samples.begin(), samples.end());

  // Decay channels as (upper m, lower n, rate) for sigma = |m><n|.
  const std::array<std::array<double, 3>, 3> channels = {{
      {0.0, 1.0, rates.gamma12},
      {0.0, 2.0, rates.gamma13},
      {1.0, 2.0, rates.gamma23},
  }};

  auto rhs = [&](double t, const MatN<N>& rho) -> MatN<N> {
    const MatN<N> h = hamiltonian(t);
    MatN<N> d = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (const auto& ch : channels) {
      const int m = static_cast<int>(ch[0]);
      const int n = static_cast<int>(ch[1]);
      const double g = ch[2];
      if (g == 0.0) continue;
      d(m, m) += g * rho(n, n);
      d.row(n) -= (0.5 * g) * rho.row(n);
      d.col(n) -= (0.5 * g) * rho.col(n);
    }
    return d;
  };

  auto positivity_check = [&](const MatN<N>& rho, double t) {
    Eigen::SelfAdjointEigenSolver<MatN<N>> es(rho, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -settings.positivity_tol)
      throw IntegrationError("density matrix negativity " +
                                 std::to_string(min_ev) + " at t = " +
                                 std::to_string(t),
                             t);
  };

  Trajectory<MatN<N>> out;
  MatN<N> y = rho0;
  std::size_t cursor = 0;
  if (detail::is_sample_time(t0, samples, cursor)) {
    out.times.push_back(t0);
    out.states.push_back(y);
  }

  const auto points = detail::split_points(t0, t1, breakpoints, samples);
  std::size_t point_cursor = cursor;
  auto check = [&](const MatN<N>& rho, double t) {
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift > settings.trace_tol)
      throw IntegrationError(
          "trace drift " + std::to_string(drift) + " at t = " + std::to_string(t),
          t);
    if (detail::is_sample_time(t, samples, point_cursor)) {
      positivity_check(rho, t);
      out.times.push_back(t);
      out.states.push_back(rho);
    }
  };
  detail::rk4_over(y, points, settings.max_step, rhs, check);

  positivity_check(y, t1);
  out.final_time = t1;
  out.final_state = y;
  return out;
}

// ---------------------------------------------------------------------------
// Population observables
// ---------------------------------------------------------------------------

template <int N>
std::array<double, 4> populations(const VecN<N>& psi) {
  std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < N; ++i) p[i] = std::norm(psi(i));
  return p;
}

template <int N>
std::array<double, 4> populations(const MatN<N>& rho) {
  std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < N; ++i) p[i] = rho(i, i).real();
  return p;
}

}  // namespace chiral_sta
