#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral_sta/dynamics.hpp"
#include "chiral_sta/frames.hpp"
#include "chiral_sta/pulses.hpp"

namespace chiral_sta {

enum class ModelKind { Rwa3, Lab4 };
enum class StageTwoKind { ChosenPaths, Stirap };
enum class InitialKind { Ket1, IdealSuperposition, Ket, Density };

// A complete, serializable experiment description. Evolving both handedness
// signs from the same scenario and comparing final |3> populations is the
// basic measurement everywhere below.
struct Scenario {
  std::string name = "custom";
  LevelStructure levels = LevelStructure::propanediol();
  std::optional<StageOneParams> stage1;
  StageTwoParams stage2;
  StageTwoKind stage2_kind = StageTwoKind::ChosenPaths;
  ModelKind model = ModelKind::Rwa3;
  double phase_p = 0.0;
  double phase_s = 0.0;
  double phase_q = 1.5707963267948966;  // pi/2
  InitialKind initial_kind = InitialKind::Ket1;
  std::vector<Complex> initial_ket;      // for InitialKind::Ket
  std::vector<double> initial_diagonal;  // for InitialKind::Density
  RelaxationRates relaxation;
  DriftSpec drift;
  std::optional<NoiseSpec> noise;
  double time_resolution = 0.0;  // dt [us]; 0 keeps waveforms continuous
  double t_end = 0.0;            // simulation end [us]; 0 derives from stages
  IntegratorSettings integrator;
  std::uint64_t seed = 1;

  void validate() const;
  bool uses_master() const;
  double start_time() const;  // earliest pulse activity (may be negative)
  double end_time() const;    // resolved simulation end
};

// Stable 64-bit content hash of the canonical serialized form
// (implemented with the serializer in scenario_io).
std::uint64_t scenario_hash(const Scenario& s);

// ---------------------------------------------------------------------------
// Single runs
// ---------------------------------------------------------------------------

// |P3(L) - P3(R)|; arguments are population vectors (P1..P4).
double discrimination(const std::array<double, 4>& final_left,
                      const std::array<double, 4>& final_right);

struct RunResult {
  std::vector<double> times;
  std::vector<std::array<double, 4>> pops_left;
  std::vector<std::array<double, 4>> pops_right;
  std::array<double, 4> final_left{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> final_right{0.0, 0.0, 0.0, 0.0};
  double discrimination = 0.0;
  int dim = 3;
  double step_used = 0.0;        // resolved integrator step, us
  std::uint64_t scenario_hash = 0;
};

// Evolves both enantiomers through stage 1 and stage 2 (honoring overlap
// timing) and returns trajectories sampled at `sample_times` plus the final
// discrimination. Deterministic for a fixed scenario (seed included).
RunResult run_scenario(const Scenario& s,
                       const std::vector<double>& sample_times = {});

// Convenience: evenly spaced sample grid across the scenario's span.
std::vector<double> default_sample_times(const Scenario& s, int count = 801);

// Exports of the scenario's waveforms (post discretization/noise/drift).
struct WaveformTable {
  std::vector<double> t;
  std::vector<double> omega_p, omega_s, omega_q;
};
WaveformTable sample_waveforms(const Scenario& s, double sample_step = 0.0);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class Reducer { Mean, Min, All };

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  int trials = 1;                // per grid point (stochastic axes)
  Reducer reducer = Reducer::All;
  std::uint64_t base_seed = 0;   // 0 falls back to the scenario seed
  void validate() const;
};

struct SweepRow {
  std::vector<double> axis_values;
  int trial = 0;
  std::uint64_t seed = 0;
  double d = 0.0, p3l = 0.0, p3r = 0.0, p1r = 0.0, p2r = 0.0;
  std::string status = "ok";    // "ok" or an error kind marker
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;     // grid-major, trial-minor; fixed order
  std::vector<SweepRow> reduced;  // one row per grid point (mean/min reducers)
  Reducer reducer = Reducer::All;
  int trials = 1;
  std::uint64_t scenario_hash = 0;
};

// Applies one swept parameter to a scenario; throws LookupError for unknown
// names. `drift_field` is sweep-local state selecting the target of the
// unsuffixed drift axes.
struct SweepContext {
  Scenario scenario;
  int drift_field = 0;
};
void apply_axis(SweepContext& ctx, const std::string& parameter, double value);
std::vector<std::string> known_axis_parameters();

// Grid evaluation; points are independent and may run on `threads` workers,
// rows are assembled in grid order regardless of completion order. Errors at
// grid points are recorded in the row status, not dropped.
SweepResult run_sweep(const Scenario& base, const SweepSpec& spec,
                      int threads = 1);

// Named drivers mirroring the robustness studies.
SweepResult sweep_tau_beta(const Scenario& base,
                           const std::vector<double>& delay_over_width,
                           const std::vector<double>& beta_peaks,
                           int threads = 1);
SweepResult sweep_overlap(const Scenario& base,
                          const std::vector<double>& overlap_times,
                          int threads = 1);
SweepResult phase_scan(const Scenario& base, FieldLabel which,
                       const std::vector<double>& phases, int threads = 1);
SweepResult sweep_drift(const Scenario& base, const SweepSpec& spec,
                        int threads = 1);
SweepResult sweep_noise(const Scenario& base, const std::string& axis,
                        const std::vector<double>& values, int trials,
                        Reducer reducer, int threads = 1);
SweepResult sweep_relaxation(const Scenario& base,
                             const std::vector<double>& tau2_values,
                             const std::vector<double>& tau3_values,
                             int threads = 1);

// ---------------------------------------------------------------------------
// Canonical registry
// ---------------------------------------------------------------------------

// Named benchmark scenarios with parameters pinned to the published study.
Scenario canonical_scenario(const std::string& name);
std::vector<std::string> canonical_scenario_names();

struct CanonicalSweep {
  Scenario base;
  SweepSpec spec;
};
CanonicalSweep canonical_sweep(const std::string& name);
std::vector<std::string> canonical_sweep_names();

}  // namespace chiral_sta
