#include "chiral_sta/frames.hpp"

#include <cmath>
#include <string>

namespace chiral_sta {

namespace {

const Complex kI{0.0, 1.0};

double driving_magnitude(double t, const StageTwoParams& p) {
  if (p.theta_family == ThetaFamily::FromStirapPulses) {
    const auto [op, os] = stirap_pulses(t, p);
    return std::hypot(op, os);
  }
  const auto [cp, cs] = cp_pulses(t, p);
  return std::hypot(cp, cs);
}

}  // namespace

FrameVectors adiabatic_frame(const SchedulePoint& sp, double phase_p,
                             double phase_s, double omega) {
  const Complex eps = std::exp(kI * (phase_p + phase_s));
  const Complex es = std::exp(kI * phase_s);
  const double st = std::sin(sp.theta);
  const double ct = std::cos(sp.theta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  FrameVectors f;
  f.omega = omega;
  f.plus = inv_sqrt2 * Vec3(eps * st, es, Complex(ct, 0.0));
  f.minus = inv_sqrt2 * Vec3(eps * st, -es, Complex(ct, 0.0));
  f.zero = Vec3(eps * ct, Complex(0.0, 0.0), Complex(-st, 0.0));
  return f;
}

FrameVectors adiabatic_frame(double t, const StageTwoParams& p, double phase_p,
                             double phase_s) {
  const double omega = driving_magnitude(t, p);
  if (omega == 0.0)
    throw FrameError("adiabatic frame undefined: zero driving amplitude at t = " +
                         std::to_string(t),
                     t);
  return adiabatic_frame(theta_of(t, p), phase_p, phase_s, omega);
}

FrameVectors chosen_paths_frame(const SchedulePoint& sp) {
  const double st = std::sin(sp.theta);
  const double ct = std::cos(sp.theta);
  const double sb = std::sin(sp.beta);
  const double cb = std::cos(sp.beta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  FrameVectors f;
  f.zero = Vec3(Complex(cb * ct, 0.0), -kI * sb, Complex(-cb * st, 0.0));
  f.plus = inv_sqrt2 * Vec3(Complex(st, 0.0) - kI * (sb * ct), Complex(cb, 0.0),
                            Complex(ct, 0.0) + kI * (sb * st));
  f.minus = inv_sqrt2 * Vec3(Complex(st, 0.0) + kI * (sb * ct), Complex(-cb, 0.0),
                             Complex(ct, 0.0) - kI * (sb * st));
  return f;
}

FrameVectors chosen_paths_frame(double t, const StageTwoParams& p) {
  FrameVectors f = chosen_paths_frame(schedule_at(t, p));
  const auto [cp, cs] = cp_pulses(t, p);
  f.omega = std::hypot(cp, cs);
  const DecouplingResidual r = decoupling_residual(t, p, cp, cs);
  f.xi = r.xi;
  f.xi_plus = r.xi_plus;
  f.xi_minus = r.xi_minus;
  return f;
}

DecouplingResidual decoupling_residual(double t, const StageTwoParams& p,
                                       double omega_p, double omega_s) {
  const SchedulePoint s = schedule_at(t, p);
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const double sb = std::sin(s.beta);
  const double cb = std::cos(s.beta);
  const double g = omega_p * st + omega_s * ct;
  const double f = omega_p * ct - omega_s * st;

  DecouplingResidual r;
  r.xi = g * cb + 2.0 * s.theta_dot * sb;
  const Complex common = kI * (g * sb - 2.0 * s.theta_dot * cb);
  r.xi_plus = common + (f - 2.0 * s.beta_dot);
  r.xi_minus = common - (f - 2.0 * s.beta_dot);
  return r;
}

DecouplingResidual decoupling_residual(double t, const StageTwoParams& p) {
  const auto [cp, cs] = cp_pulses(t, p);
  return decoupling_residual(t, p, cp, cs);
}

namespace {

template <class Fn>
double simpson(Fn&& fn, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double acc = fn(a) + fn(b);
  for (int k = 1; k < panels; ++k)
    acc += fn(a + k * h) * ((k % 2 == 1) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

double stirap_area(const StageTwoParams& p, int panels) {
  auto mag = [&p](double t) {
    const auto [op, os] = stirap_pulses(t, p);
    return std::hypot(op, os);
  };
  return 0.5 * simpson(mag, p.t_start, p.t_end, panels);
}

double chosen_path_area(const StageTwoParams& p, int panels) {
  // Stay strictly inside the window; the counterdiabatic pair is defined on
  // the open interval.
  const double margin = 1e-9 * p.duration();
  auto xi = [&p](double t) { return decoupling_residual(t, p).xi; };
  return 0.5 * simpson(xi, p.t_start + margin, p.t_end - margin, panels);
}

}  // namespace chiral_sta
