#include "chiral_sta/verify.hpp"

#include <cmath>

#include "chiral_sta/experiments.hpp"
#include "chiral_sta/frames.hpp"
#include "chiral_sta/rng.hpp"

namespace chiral_sta {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <class Fn>
double simpson(Fn&& fn, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double acc = fn(a) + fn(b);
  for (int k = 1; k < panels; ++k)
    acc += fn(a + k * h) * ((k % 2 == 1) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

VerifyCheck make_check(const std::string& name, double value, double threshold,
                       const std::string& detail = "") {
  VerifyCheck c;
  c.name = name;
  c.value = value;
  c.threshold = threshold;
  c.pass = value < threshold;
  c.detail = detail;
  return c;
}

const std::vector<std::string> kScheduleNames = {"fig4a", "fig4c", "fig4e"};

}  // namespace

VerifyReport run_verification(VerifyMutation mutation) {
  VerifyReport report;
  const double mutate_sign =
      mutation == VerifyMutation::FlipCounterdiabaticSign ? -1.0 : 1.0;

  // Pulse area of the one-photon Gaussian against its closed form.
  {
    const StageOneParams p = StageOneParams::pi_half(0.3545);
    const double area =
        simpson([&p](double t) { return gaussian_q(t, p); }, 0.0, p.t_end, 4000);
    report.checks.push_back(make_check(
        "q-pulse-area", std::abs(area - kPi / 2.0) / (kPi / 2.0), 1e-3,
        "quadrature vs pi/2"));
  }

  for (const auto& name : kScheduleNames) {
    const StageTwoParams p = canonical_scenario(name).stage2;
    const double dur = p.duration();

    // Boundary conditions of the mixing and dressing angles.
    {
      const SchedulePoint si = schedule_at(p.t_start, p);
      const SchedulePoint sf = schedule_at(p.t_end, p);
      const double theta_tol =
          p.theta_family == ThetaFamily::PolynomialSine ? 1e-6 : 1e-4;
      const double dev =
          std::max(std::abs(si.theta - kPi / 4.0), std::abs(sf.theta - kPi / 2.0));
      report.checks.push_back(
          make_check(name + "-theta-boundaries", dev, theta_tol));
      const double beta_bound =
          std::max(p.epsilon, p.beta_peak * std::exp(-9.0)) + 1e-12;
      const double beta_dev = std::max(si.beta, sf.beta);
      report.checks.push_back(make_check(name + "-beta-boundaries",
                                         beta_dev / beta_bound, 1.0 + 1e-9));
    }

    // Analytic schedule rates vs central finite differences.
    {
      const double h = 1e-4 * dur;
      double worst = 0.0;
      for (int k = 1; k < 40; ++k) {
        const double t = p.t_start + dur * k / 40.0;
        const SchedulePoint s = schedule_at(t, p);
        const SchedulePoint sp = schedule_at(t + h, p);
        const SchedulePoint sm = schedule_at(t - h, p);
        const double fd_theta = (sp.theta - sm.theta) / (2.0 * h);
        const double fd_beta = (sp.beta - sm.beta) / (2.0 * h);
        const double scale_t = std::max(std::abs(s.theta_dot), 1e-3 / dur);
        const double scale_b = std::max(std::abs(s.beta_dot), 1e-3 / dur);
        worst = std::max(worst, std::abs(fd_theta - s.theta_dot) / scale_t);
        worst = std::max(worst, std::abs(fd_beta - s.beta_dot) / scale_b);
      }
      report.checks.push_back(
          make_check(name + "-schedule-derivatives", worst, 1e-5,
                     "analytic vs central differences"));
    }

    // Chosen-path orthonormality and completeness.
    {
      Rng rng(12345);
      double worst = 0.0;
      for (int k = 0; k < 300; ++k) {
        const double t = p.t_start + (1e-6 + (1.0 - 2e-6) * rng.uniform01()) * dur;
        const FrameVectors f = chosen_paths_frame(t, p);
        Eigen::Matrix3cd v;
        v.col(0) = f.plus;
        v.col(1) = f.zero;
        v.col(2) = f.minus;
        const Eigen::Matrix3cd gram = v.adjoint() * v;
        const Eigen::Matrix3cd comp = v * v.adjoint();
        worst = std::max(worst,
                         (gram - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         (comp - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
      }
      report.checks.push_back(
          make_check(name + "-frame-orthonormality", worst, 1e-12));
    }

    // Decoupling residual of the counterdiabatic pair: the +/- couplings must
    // vanish relative to the diagonal scale.
    {
      double max_off = 0.0;
      double max_xi = 0.0;
      const double margin = 1e-3 * dur;
      for (int k = 0; k <= 4000; ++k) {
        const double t = p.t_start + margin + (dur - 2.0 * margin) * k / 4000.0;
        auto [cp, cs] = cp_pulses(t, p);
        const DecouplingResidual r =
            decoupling_residual(t, p, cp, mutate_sign * cs);
        max_off = std::max(max_off,
                           std::max(std::abs(r.xi_plus), std::abs(r.xi_minus)));
        max_xi = std::max(max_xi, std::abs(r.xi));
      }
      report.checks.push_back(make_check(name + "-decoupling-residual",
                                         max_off / max_xi, 1e-8,
                                         "max|xi_pm| / max|xi|"));
    }

    // Path/eigenstate coincidence at the window edges.
    {
      const double eps_t = 1e-9 * dur;
      double worst = 0.0;
      for (double t : {p.t_start + eps_t, p.t_end - eps_t}) {
        const FrameVectors cp = chosen_paths_frame(t, p);
        const FrameVectors ad = adiabatic_frame(t, p, 0.0, 0.0);
        worst = std::max(worst, 1.0 - std::abs(ad.plus.dot(cp.plus.conjugate())));
        worst = std::max(worst, 1.0 - std::abs(ad.zero.dot(cp.zero.conjugate())));
        worst = std::max(worst, 1.0 - std::abs(ad.minus.dot(cp.minus.conjugate())));
      }
      report.checks.push_back(
          make_check(name + "-frame-boundary-coincidence", worst, 1e-6,
                     "1 - |<psi_n|lambda_n>| at the edges"));
    }
  }

  // Adiabatic eigen-identity on the pulse-derived schedule.
  {
    const StageTwoParams p = canonical_scenario("fig4a").stage2;
    Rng rng(777);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double t =
          p.t_start + (0.01 + 0.98 * rng.uniform01()) * p.duration();
      const auto [op, os] = stirap_pulses(t, p);
      const Mat3 h = build_stage2_h(op, os, 0.0, 0.0);
      const FrameVectors f = adiabatic_frame(t, p, 0.0, 0.0);
      worst = std::max(worst, (h * f.plus - 0.5 * f.omega * f.plus).norm());
      worst = std::max(worst, (h * f.minus + 0.5 * f.omega * f.minus).norm());
      worst = std::max(worst, (h * f.zero).norm());
    }
    report.checks.push_back(make_check("eigen-identity", worst, 1e-10,
                                       "H lambda_pm = +/-(Omega/2) lambda_pm"));
  }

  return report;
}

}  // namespace chiral_sta
