#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace chiral_sta {

enum class FieldLabel { P = 0, S = 1, Q = 2 };
const char* field_name(FieldLabel label);

// One driving tone: Rabi-amplitude envelope [rad/us] on a closed support,
// carrier angular frequency [rad/us] and phase [rad]. The envelope is signed
// (counterdiabatic S changes sign); handedness is applied by the Hamiltonian
// builders, not stored here.
struct ControlField {
  FieldLabel label = FieldLabel::P;
  std::function<double(double)> envelope;  // evaluated only inside support
  double carrier = 1.0;                    // rad/us, > 0
  double phase = 0.0;                      // rad, in (-pi, pi]
  double support_start = 0.0;              // us
  double support_end = 0.0;                // us
  // Envelope discontinuities (zero-order-hold segment edges). Integrators
  // split steps here so piecewise-constant waveforms stay exactly resolved.
  std::vector<double> breakpoints;

  double operator()(double t) const {
    if (t < support_start || t > support_end || !envelope) return 0.0;
    return envelope(t);
  }
  void validate() const;
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

// ---------------------------------------------------------------------------
// Stage 1: one-photon Gaussian pulse, pi/2 area
// ---------------------------------------------------------------------------

struct StageOneParams {
  double peak = 0.0;   // rad/us
  double width = 0.0;  // us
  double t_end = 0.0;  // us; pulse lives on [0, t_end], centered at t_end/2

  // Conventional construction: area exactly pi/2 over the full Gaussian,
  // support six widths long.
  static StageOneParams pi_half(double width, double end_over_width = 6.0);

  void validate() const;
};

double gaussian_q(double t, const StageOneParams& p);

// ---------------------------------------------------------------------------
// Stage 2: two-photon schedule (mixing angle theta, dressing angle beta)
// ---------------------------------------------------------------------------

enum class ThetaFamily { FromStirapPulses, PolynomialSine };
enum class BetaFamily { Gaussian, CosLike };

struct StageTwoParams {
  double peak = 1.0;     // Omega_0 of the underlying double/single Gaussians
  double width = 1.0;    // T, us
  double delay = 2.0;    // tau, us; separation of the two P Gaussians
  double t_start = 0.0;  // ti
  double t_end = 8.0;    // tf
  ThetaFamily theta_family = ThetaFamily::FromStirapPulses;
  BetaFamily beta_family = BetaFamily::Gaussian;
  double beta_peak = 0.0;   // beta_m, rad, in (0, pi)
  double beta_width = 0.0;  // T_beta; 0 means (t_end - t_start)/6
  double epsilon = 0.0;     // singularity offset for the cos-like beta
  double cp_ceiling = 0.0;  // amplitude ceiling; 0 means 1e3/width

  // Window convention for the pulse-derived mixing angle:
  // t_end = t_start + 6*width + delay.
  static StageTwoParams stirap_window(double width, double delay,
                                      double t_start, double beta_peak);

  double duration() const { return t_end - t_start; }
  double effective_beta_width() const {
    return beta_width > 0.0 ? beta_width : duration() / 6.0;
  }
  double effective_ceiling() const {
    return cp_ceiling > 0.0 ? cp_ceiling : 1e3 / width;
  }
  void validate() const;
};

struct SchedulePoint {
  double t = 0.0;
  double theta = 0.0;      // rad
  double theta_dot = 0.0;  // rad/us
  double beta = 0.0;       // rad
  double beta_dot = 0.0;   // rad/us
};

// Double-Gaussian P and single-Gaussian S, zero outside [ti, tf].
std::pair<double, double> stirap_pulses(double t, const StageTwoParams& p);

// Analytic derivatives of the raw pulses (used for theta_dot).
std::pair<double, double> stirap_pulse_derivatives(double t,
                                                   const StageTwoParams& p);

// Mixing angle and its analytic rate. Throws ScheduleError(ScheduleUndefined)
// if both pulses underflow to exactly zero.
SchedulePoint theta_of(double t, const StageTwoParams& p);

// Dressing angle and its analytic rate (total function).
SchedulePoint beta_of(double t, const StageTwoParams& p);

// Full schedule sample: theta and beta parts combined.
SchedulePoint schedule_at(double t, const StageTwoParams& p);

// Counterdiabatic pulse pair driving the chosen paths exactly:
//   P = 2(beta_dot cos(theta) + theta_dot cot(beta) sin(theta))
//   S = -2(beta_dot sin(theta) - theta_dot cot(beta) cos(theta))
// Zero outside [ti, tf]. Throws ScheduleError(SingularSchedule) naming the
// offending time if either amplitude exceeds the ceiling.
std::pair<double, double> cp_pulses(double t, const StageTwoParams& p);

// ---------------------------------------------------------------------------
// Field construction helpers
// ---------------------------------------------------------------------------

ControlField make_q_field(const StageOneParams& p, double carrier,
                          double phase);
ControlField make_cp_field(FieldLabel label, const StageTwoParams& p,
                           double carrier, double phase);
ControlField make_stirap_field(FieldLabel label, const StageTwoParams& p,
                               double carrier, double phase);

// ---------------------------------------------------------------------------
// Discretization (zero-order hold) and amplitude noise
// ---------------------------------------------------------------------------

struct DiscretizedPulse {
  double dt = 0.0;     // segment duration, us
  double start = 0.0;  // support start
  double end = 0.0;    // support end
  std::vector<double> samples;  // one constant amplitude per segment

  double value(double t) const;
  std::vector<double> segment_edges() const;  // start of every segment + end
};

// Zero-order hold: each segment holds the waveform sampled at the segment's
// start. Segments tile [support_start, support_end]; the last one may be
// shorter than dt.
DiscretizedPulse discretize(const ControlField& field, double dt);

// Rebuild a field whose envelope is the held waveform.
ControlField field_from_discretized(const DiscretizedPulse& pulse,
                                    FieldLabel label, double carrier,
                                    double phase);

enum class NoiseKind { Awgn, UniformFluctuation };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Awgn;
  double snr_db = 0.0;  // signal-to-noise ratio [dB] (awgn)
  double bound = 0.0;   // Gamma, fractional fluctuation bound (uniform)
  std::uint64_t seed = 0;
  void validate() const;
};

// Adds an independent zero-mean Gaussian deviate to every sample with
// variance P_sig / 10^(snr_db/10), P_sig = mean squared sample over the
// support. Deterministic given the seed.
DiscretizedPulse add_awgn(const DiscretizedPulse& pulse, const NoiseSpec& spec);

// Multiplies every sample by (1 + u), u i.i.d. uniform on [-bound, bound].
DiscretizedPulse add_uniform_fluctuation(const DiscretizedPulse& pulse,
                                         const NoiseSpec& spec);

// ---------------------------------------------------------------------------
// Systematic drift
// ---------------------------------------------------------------------------

struct DriftSpec {
  // Indexed by FieldLabel (P, S, Q).
  std::array<double, 3> amplitude_rel{0.0, 0.0, 0.0};   // delta_x / x
  std::array<double, 3> carrier_shift{0.0, 0.0, 0.0};   // delta_omega, rad/us
  bool any() const;
};

// Scales each envelope by (1 + delta_x/x) and shifts each carrier.
std::array<ControlField, 3> apply_drift(const std::array<ControlField, 3>& fields,
                                        const DriftSpec& spec);

}  // namespace chiral_sta
