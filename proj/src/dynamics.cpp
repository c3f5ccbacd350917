#include "chiral_sta/dynamics.hpp"

#include <cmath>

namespace chiral_sta {

void LevelStructure::validate() const {
  if (!(omega12 > 0.0 && omega13 > 0.0))
    throw ValidationError("level structure: transition frequencies must be positive");
  if (!(omega13 > omega12))
    throw ValidationError("level structure: omega13 must exceed omega12");
  if (omega4 && !(*omega4 > 0.0))
    throw ValidationError("level structure: omega4 must be positive");
}

LevelStructure LevelStructure::propanediol() {
  LevelStructure s;
  s.omega12 = 11363.0;
  s.omega13 = 12212.0;
  s.omega4 = 19192.0;
  return s;
}

RelaxationRates RelaxationRates::from_lifetimes(double tau2, double tau3) {
  RelaxationRates r;
  r.gamma12 = std::isinf(tau2) ? 0.0 : 1.0 / tau2;
  r.gamma13 = std::isinf(tau3) ? 0.0 : 0.5 / tau3;
  r.gamma23 = r.gamma13;
  return r;
}

void RelaxationRates::validate() const {
  if (gamma12 < 0.0 || gamma13 < 0.0 || gamma23 < 0.0)
    throw ValidationError("relaxation rates must be non-negative");
}

Mat3 build_stage1_h(double omega_q, double phase_q, Chirality chirality) {
  Mat3 h = Mat3::Zero();
  const Complex c = chirality_sign(chirality) * 0.5 * omega_q *
                    std::exp(Complex(0.0, phase_q));
  h(0, 2) = c;
  h(2, 0) = std::conj(c);
  return h;
}

Mat3 build_stage2_h(double omega_p, double omega_s, double phase_p,
                    double phase_s) {
  Mat3 h = Mat3::Zero();
  h(0, 1) = 0.5 * omega_p * std::exp(Complex(0.0, phase_p));
  h(1, 0) = std::conj(h(0, 1));
  h(1, 2) = 0.5 * omega_s * std::exp(Complex(0.0, phase_s));
  h(2, 1) = std::conj(h(1, 2));
  return h;
}

Mat3 combined_stage_h(double t, const std::array<ControlField, 3>& fields,
                      const std::array<double, 3>& detunings,
                      Chirality chirality) {
  const auto& fp = fields[static_cast<int>(FieldLabel::P)];
  const auto& fs = fields[static_cast<int>(FieldLabel::S)];
  const auto& fq = fields[static_cast<int>(FieldLabel::Q)];
  Mat3 h = Mat3::Zero();
  const double op = fp(t);
  if (op != 0.0) {
    const double phi = fp.phase + detunings[static_cast<int>(FieldLabel::P)] * t;
    h(0, 1) = 0.5 * op * std::exp(Complex(0.0, phi));
    h(1, 0) = std::conj(h(0, 1));
  }
  const double os = fs(t);
  if (os != 0.0) {
    const double phi = fs.phase + detunings[static_cast<int>(FieldLabel::S)] * t;
    h(1, 2) = 0.5 * os * std::exp(Complex(0.0, phi));
    h(2, 1) = std::conj(h(1, 2));
  }
  const double oq = fq(t);
  if (oq != 0.0) {
    const double phi = fq.phase + detunings[static_cast<int>(FieldLabel::Q)] * t;
    h(0, 2) = chirality_sign(chirality) * 0.5 * oq * std::exp(Complex(0.0, phi));
    h(2, 0) = std::conj(h(0, 2));
  }
  return h;
}

Mat4 build_lab_h(double t, const std::array<ControlField, 3>& fields,
                 const LevelStructure& levels, Chirality chirality) {
  levels.validate();
  if (!levels.has_level4())
    throw ValidationError("lab-frame Hamiltonian requires level-4 data");
  const auto& fp = fields[static_cast<int>(FieldLabel::P)];
  const auto& fs = fields[static_cast<int>(FieldLabel::S)];
  const auto& fq = fields[static_cast<int>(FieldLabel::Q)];

  const double sign = chirality_sign(chirality);
  const double cp = fp(t) * std::cos(fp.carrier * t + fp.phase);
  const double cs = fs(t) * std::cos(fs.carrier * t + fs.phase);
  const double cq = sign * fq(t) * std::cos(fq.carrier * t + fq.phase);

  Mat4 h = Mat4::Zero();
  h(1, 1) = levels.omega12;
  h(2, 2) = levels.omega13;
  h(3, 3) = *levels.omega4;
  h(0, 1) = cp;
  h(1, 0) = cp;
  h(0, 2) = cq;
  h(2, 0) = cq;
  h(1, 2) = cs;
  h(2, 1) = cs;
  if (levels.p_drives_24) {
    h(1, 3) = cp;
    h(3, 1) = cp;
  }
  if (levels.q_drives_34) {
    h(2, 3) = cq;
    h(3, 2) = cq;
  }
  return h;
}

double lab_frame_max_frequency(const std::array<ControlField, 3>& fields,
                               const LevelStructure& levels) {
  double max_carrier = 0.0;
  for (const auto& f : fields) max_carrier = std::max(max_carrier, f.carrier);
  double max_level = std::max(levels.omega12, levels.omega13);
  if (levels.omega4) max_level = std::max(max_level, *levels.omega4);
  // Coherences rotate at up to the largest level splitting, with drive
  // sidebands one carrier away.
  return max_level + max_carrier;
}

}  // namespace chiral_sta
