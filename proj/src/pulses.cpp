#include "chiral_sta/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chiral_sta/errors.hpp"
#include "chiral_sta/rng.hpp"

namespace chiral_sta {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

const char* field_name(FieldLabel label) {
  switch (label) {
    case FieldLabel::P: return "P";
    case FieldLabel::S: return "S";
    case FieldLabel::Q: return "Q";
  }
  return "?";
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);  // (-pi, pi], remainder gives [-pi, pi]
  if (phi <= -kPi) phi += 2.0 * kPi;
  return phi;
}

void ControlField::validate() const {
  if (!(carrier > 0.0))
    throw ValidationError("control field: carrier must be positive");
  if (!(phase > -kPi - 1e-15 && phase <= kPi + 1e-15))
    throw ValidationError("control field: phase must lie in (-pi, pi]");
  if (!(support_end >= support_start))
    throw ValidationError("control field: empty support interval");
}

// ---------------------------------------------------------------------------
// Stage 1
// ---------------------------------------------------------------------------

StageOneParams StageOneParams::pi_half(double width, double end_over_width) {
  StageOneParams p;
  p.width = width;
  p.peak = kSqrtPi / (2.0 * width);  // full-Gaussian area = pi/2
  p.t_end = end_over_width * width;
  return p;
}

void StageOneParams::validate() const {
  if (!(peak > 0.0 && width > 0.0 && t_end > 0.0))
    throw ValidationError("stage-1 params: peak, width, end time must be positive");
  // pi/2 pulse-area constraint; tolerant enough to admit rounded published
  // parameter sets (e.g. 2.5 x 0.3545).
  const double area_err = std::abs(peak * width - kSqrtPi / 2.0) / (kSqrtPi / 2.0);
  if (area_err > 1e-3)
    throw ValidationError("stage-1 params: peak*width must equal sqrt(pi)/2 "
                          "(pi/2 pulse area), relative error " +
                          std::to_string(area_err));
}

double gaussian_q(double t, const StageOneParams& p) {
  if (t < 0.0 || t > p.t_end) return 0.0;
  const double u = (t - 0.5 * p.t_end) / p.width;
  return p.peak * std::exp(-u * u);
}

// ---------------------------------------------------------------------------
// Stage 2 schedule
// ---------------------------------------------------------------------------

StageTwoParams StageTwoParams::stirap_window(double width, double delay,
                                             double t_start, double beta_peak) {
  StageTwoParams p;
  p.width = width;
  p.delay = delay;
  p.t_start = t_start;
  p.t_end = t_start + 6.0 * width + delay;
  p.beta_peak = beta_peak;
  return p;
}

void StageTwoParams::validate() const {
  if (!(t_start < t_end))
    throw ValidationError("stage-2 params: t_start must precede t_end");
  if (!(width > 0.0))
    throw ValidationError("stage-2 params: width must be positive");
  if (peak < 0.0)
    throw ValidationError("stage-2 params: peak must be non-negative");
  if (theta_family == ThetaFamily::FromStirapPulses) {
    if (!(delay > 0.0))
      throw ValidationError("stage-2 params: delay must be positive");
    // Window convention for the pulse-derived mixing angle.
    const double want = t_start + 6.0 * width + delay;
    if (std::abs(t_end - want) > 1e-9 * std::max(1.0, std::abs(want)))
      throw ValidationError(
          "stage-2 params: with the pulse-derived mixing angle the window must "
          "satisfy t_end = t_start + 6*width + delay");
  }
  if (!(beta_peak > 0.0 && beta_peak < kPi))
    throw ValidationError("stage-2 params: beta_peak must lie in (0, pi)");
  if (epsilon < 0.0)
    throw ValidationError("stage-2 params: epsilon must be non-negative");
  if (beta_family == BetaFamily::CosLike && !(epsilon > 0.0))
    throw ValidationError("stage-2 params: cos-like beta requires epsilon > 0");
  if (beta_width < 0.0)
    throw ValidationError("stage-2 params: beta_width must be non-negative");
}

std::pair<double, double> stirap_pulses(double t, const StageTwoParams& p) {
  if (t < p.t_start || t > p.t_end) return {0.0, 0.0};
  const double x = t - p.t_start;
  const double c1 = 0.5 * (p.duration() - p.delay);
  const double c2 = 0.5 * (p.duration() + p.delay);
  const double g1 = std::exp(-((x - c1) / p.width) * ((x - c1) / p.width));
  const double g2 = std::exp(-((x - c2) / p.width) * ((x - c2) / p.width));
  return {p.peak * (g1 + g2), p.peak * g1};
}

std::pair<double, double> stirap_pulse_derivatives(double t,
                                                   const StageTwoParams& p) {
  if (t < p.t_start || t > p.t_end) return {0.0, 0.0};
  const double x = t - p.t_start;
  const double c1 = 0.5 * (p.duration() - p.delay);
  const double c2 = 0.5 * (p.duration() + p.delay);
  const double w2 = p.width * p.width;
  const double g1 = std::exp(-((x - c1) / p.width) * ((x - c1) / p.width));
  const double g2 = std::exp(-((x - c2) / p.width) * ((x - c2) / p.width));
  const double dg1 = -2.0 * (x - c1) / w2 * g1;
  const double dg2 = -2.0 * (x - c2) / w2 * g2;
  return {p.peak * (dg1 + dg2), p.peak * dg1};
}

SchedulePoint theta_of(double t, const StageTwoParams& p) {
  SchedulePoint s;
  s.t = t;
  if (p.theta_family == ThetaFamily::PolynomialSine) {
    const double dur = p.duration();
    const double u = (t - p.t_start) / dur;
    s.theta = kPi / 4.0 +
              0.5 * (kPi * u / 2.0 - std::sin(2.0 * kPi * u) / 3.0 +
                     std::sin(4.0 * kPi * u) / 24.0);
    s.theta_dot = 0.5 *
                  (kPi / 2.0 - (2.0 * kPi / 3.0) * std::cos(2.0 * kPi * u) +
                   (kPi / 6.0) * std::cos(4.0 * kPi * u)) /
                  dur;
    return s;
  }
  const auto [op, os] = stirap_pulses(t, p);
  const double mag2 = op * op + os * os;
  if (mag2 == 0.0)
    throw ScheduleError(SimError::Kind::ScheduleUndefined,
                        "mixing angle undefined: both pulses vanish at t = " +
                            std::to_string(t),
                        t);
  const auto [dop, dos] = stirap_pulse_derivatives(t, p);
  s.theta = std::atan2(op, os);
  s.theta_dot = (dop * os - op * dos) / mag2;
  return s;
}

SchedulePoint beta_of(double t, const StageTwoParams& p) {
  SchedulePoint s;
  s.t = t;
  if (p.beta_family == BetaFamily::Gaussian) {
    const double tb = p.effective_beta_width();
    const double x = (t - p.t_start) - 0.5 * p.duration();
    s.beta = p.beta_peak * std::exp(-(x / tb) * (x / tb));
    s.beta_dot = s.beta * (-2.0 * x / (tb * tb));
    return s;
  }
  // Single-period cos-like ramp, offset by epsilon inside the window only.
  if (t < p.t_start || t > p.t_end) {
    s.beta = 0.0;
    s.beta_dot = 0.0;
    return s;
  }
  const double w = 2.0 * kPi / p.duration();
  s.beta = 0.5 * p.beta_peak * (1.0 - std::cos(w * (t - p.t_start))) + p.epsilon;
  s.beta_dot = 0.5 * p.beta_peak * w * std::sin(w * (t - p.t_start));
  return s;
}

SchedulePoint schedule_at(double t, const StageTwoParams& p) {
  SchedulePoint s = theta_of(t, p);
  const SchedulePoint b = beta_of(t, p);
  s.beta = b.beta;
  s.beta_dot = b.beta_dot;
  return s;
}

std::pair<double, double> cp_pulses(double t, const StageTwoParams& p) {
  if (t <= p.t_start || t >= p.t_end) return {0.0, 0.0};
  const SchedulePoint s = schedule_at(t, p);
  const double sb = std::sin(s.beta);
  const double cb = std::cos(s.beta);
  if (sb == 0.0)
    throw ScheduleError(SimError::Kind::SingularSchedule,
                        "cot(beta) singular at t = " + std::to_string(t), t);
  const double cot = cb / sb;
  const double cp = 2.0 * (s.beta_dot * std::cos(s.theta) +
                           s.theta_dot * cot * std::sin(s.theta));
  const double cs = -2.0 * (s.beta_dot * std::sin(s.theta) -
                            s.theta_dot * cot * std::cos(s.theta));
  const double ceiling = p.effective_ceiling();
  if (!(std::abs(cp) <= ceiling) || !(std::abs(cs) <= ceiling))
    throw ScheduleError(SimError::Kind::SingularSchedule,
                        "counterdiabatic amplitude exceeds ceiling " +
                            std::to_string(ceiling) + " at t = " +
                            std::to_string(t),
                        t);
  return {cp, cs};
}

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

ControlField make_q_field(const StageOneParams& p, double carrier,
                          double phase) {
  p.validate();
  ControlField f;
  f.label = FieldLabel::Q;
  f.envelope = [p](double t) { return gaussian_q(t, p); };
  f.carrier = carrier;
  f.phase = wrap_phase(phase);
  f.support_start = 0.0;
  f.support_end = p.t_end;
  return f;
}

ControlField make_cp_field(FieldLabel label, const StageTwoParams& p,
                           double carrier, double phase) {
  p.validate();
  ControlField f;
  f.label = label;
  if (label == FieldLabel::P)
    f.envelope = [p](double t) { return cp_pulses(t, p).first; };
  else
    f.envelope = [p](double t) { return cp_pulses(t, p).second; };
  f.carrier = carrier;
  f.phase = wrap_phase(phase);
  f.support_start = p.t_start;
  f.support_end = p.t_end;
  return f;
}

ControlField make_stirap_field(FieldLabel label, const StageTwoParams& p,
                               double carrier, double phase) {
  p.validate();
  ControlField f;
  f.label = label;
  if (label == FieldLabel::P)
    f.envelope = [p](double t) { return stirap_pulses(t, p).first; };
  else
    f.envelope = [p](double t) { return stirap_pulses(t, p).second; };
  f.carrier = carrier;
  f.phase = wrap_phase(phase);
  f.support_start = p.t_start;
  f.support_end = p.t_end;
  return f;
}

// ---------------------------------------------------------------------------
// Discretization and noise
// ---------------------------------------------------------------------------

double DiscretizedPulse::value(double t) const {
  if (t < start || t > end || samples.empty()) return 0.0;
  auto k = static_cast<std::size_t>((t - start) / dt);
  if (k >= samples.size()) k = samples.size() - 1;
  return samples[k];
}

std::vector<double> DiscretizedPulse::segment_edges() const {
  std::vector<double> edges;
  edges.reserve(samples.size() + 1);
  for (std::size_t k = 0; k < samples.size(); ++k)
    edges.push_back(start + static_cast<double>(k) * dt);
  edges.push_back(end);
  return edges;
}

DiscretizedPulse discretize(const ControlField& field, double dt) {
  if (!(dt > 0.0)) throw ValidationError("discretize: dt must be positive");
  DiscretizedPulse out;
  out.dt = dt;
  out.start = field.support_start;
  out.end = field.support_end;
  const double span = out.end - out.start;
  const auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(span / dt - 1e-12)));
  out.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.samples[k] = field(out.start + static_cast<double>(k) * dt);
  return out;
}

ControlField field_from_discretized(const DiscretizedPulse& pulse,
                                    FieldLabel label, double carrier,
                                    double phase) {
  ControlField f;
  f.label = label;
  f.envelope = [pulse](double t) { return pulse.value(t); };
  f.carrier = carrier;
  f.phase = wrap_phase(phase);
  f.support_start = pulse.start;
  f.support_end = pulse.end;
  f.breakpoints = pulse.segment_edges();
  return f;
}

void NoiseSpec::validate() const {
  // +inf snr is the zero-noise limit and is accepted.
  if (kind == NoiseKind::Awgn && (std::isnan(snr_db) || snr_db == -INFINITY))
    throw ValidationError("noise spec: snr_db must not be NaN or -inf");
  if (kind == NoiseKind::UniformFluctuation && bound < 0.0)
    throw ValidationError("noise spec: fluctuation bound must be >= 0");
}

DiscretizedPulse add_awgn(const DiscretizedPulse& pulse, const NoiseSpec& spec) {
  spec.validate();
  if (spec.kind != NoiseKind::Awgn)
    throw ValidationError("add_awgn: spec kind is not awgn");
  double power = 0.0;
  for (double v : pulse.samples) power += v * v;
  power /= static_cast<double>(pulse.samples.size());
  const double sigma = std::sqrt(power / std::pow(10.0, spec.snr_db / 10.0));
  DiscretizedPulse out = pulse;
  if (sigma == 0.0) return out;
  Rng rng(spec.seed);
  for (double& v : out.samples) v += sigma * rng.gaussian();
  return out;
}

DiscretizedPulse add_uniform_fluctuation(const DiscretizedPulse& pulse,
                                         const NoiseSpec& spec) {
  spec.validate();
  if (spec.kind != NoiseKind::UniformFluctuation)
    throw ValidationError("add_uniform_fluctuation: spec kind is not uniform");
  DiscretizedPulse out = pulse;
  Rng rng(spec.seed);
  for (double& v : out.samples) v *= 1.0 + rng.uniform(-spec.bound, spec.bound);
  return out;
}

// ---------------------------------------------------------------------------
// Drift
// ---------------------------------------------------------------------------

bool DriftSpec::any() const {
  for (double v : amplitude_rel)
    if (v != 0.0) return true;
  for (double v : carrier_shift)
    if (v != 0.0) return true;
  return false;
}

std::array<ControlField, 3> apply_drift(const std::array<ControlField, 3>& fields,
                                        const DriftSpec& spec) {
  std::array<ControlField, 3> out = fields;
  for (auto& f : out) {
    const auto idx = static_cast<std::size_t>(f.label);
    const double scale = 1.0 + spec.amplitude_rel[idx];
    if (scale != 1.0) {
      auto base = f.envelope;
      f.envelope = [base, scale](double t) { return scale * base(t); };
    }
    f.carrier += spec.carrier_shift[idx];
  }
  return out;
}

}  // namespace chiral_sta
