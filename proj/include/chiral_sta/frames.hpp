#pragma once

#include "chiral_sta/dynamics.hpp"
#include "chiral_sta/pulses.hpp"

namespace chiral_sta {

// Instantaneous basis triple: either the adiabatic eigenstates
// (lambda_+, lambda_0, lambda_-) of the two-photon Hamiltonian or the
// engineered chosen paths (psi_+, psi_0, psi_-), plus the frame scalars.
struct FrameVectors {
  Vec3 plus = Vec3::Zero();
  Vec3 zero = Vec3::Zero();
  Vec3 minus = Vec3::Zero();
  double omega = 0.0;  // magnitude of the driving pulse pair, rad/us
  double xi = 0.0;     // +/- path phase rate (chosen-paths frame)
  Complex xi_plus{0.0, 0.0};
  Complex xi_minus{0.0, 0.0};
};

// Adiabatic eigenbasis with eigenvalues (+omega/2, 0, -omega/2). Throws
// FrameError when the driving amplitude vanishes.
FrameVectors adiabatic_frame(double t, const StageTwoParams& p, double phase_p,
                             double phase_s);

// Same basis from an explicit schedule sample (vectors only).
FrameVectors adiabatic_frame(const SchedulePoint& sp, double phase_p,
                             double phase_s, double omega = 0.0);

// Chosen-path basis; also carries the decoupling scalars evaluated for the
// counterdiabatic pulse pair.
FrameVectors chosen_paths_frame(double t, const StageTwoParams& p);

// Same basis from an explicit schedule sample (vectors only).
FrameVectors chosen_paths_frame(const SchedulePoint& sp);

struct DecouplingResidual {
  double xi = 0.0;
  Complex xi_plus{0.0, 0.0};
  Complex xi_minus{0.0, 0.0};
};

// Frame-transformed couplings for arbitrary total driving amplitudes
// (omega_p, omega_s) against the schedule of `p`:
//   G  = omega_p sin(theta) + omega_s cos(theta)
//   F  = omega_p cos(theta) - omega_s sin(theta)
//   xi    = G cos(beta) + 2 theta_dot sin(beta)
//   xi_+- = i (G sin(beta) - 2 theta_dot cos(beta)) +/- (F - 2 beta_dot)
// The chosen paths are exactly decoupled iff xi_+- = 0.
DecouplingResidual decoupling_residual(double t, const StageTwoParams& p,
                                       double omega_p, double omega_s);

// Same, with the counterdiabatic pulse pair as the driving fields (the
// residual couplings vanish identically for them).
DecouplingResidual decoupling_residual(double t, const StageTwoParams& p);

// Accumulated dynamical areas over [t_start, t_end] (composite Simpson):
// bright adiabatic paths pick up +/- the pulse area, chosen paths +/- the
// xi area.
double stirap_area(const StageTwoParams& p, int panels = 20000);
double chosen_path_area(const StageTwoParams& p, int panels = 20000);

}  // namespace chiral_sta
