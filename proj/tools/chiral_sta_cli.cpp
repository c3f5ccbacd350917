// Command-line front end: run named or file-defined scenarios, evaluate
// parameter sweeps, persist CSV results with a manifest, and run the fast
// analytic verification suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiral_sta/experiments.hpp"
#include "chiral_sta/scenario_io.hpp"
#include "chiral_sta/verify.hpp"
#include "chiral_sta/version.hpp"

namespace fs = std::filesystem;
using namespace chiral_sta;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIntegration = 3;

int parallel_from_env() {
  if (const char* env = std::getenv("CHIRAL_STA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

struct ScenarioArgs {
  std::string file;
  std::string figure;
  std::string out_dir = "out";
  int parallel = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double dt_ns = -1.0;
};

Scenario resolve_scenario(const ScenarioArgs& a) {
  Scenario s;
  if (!a.file.empty())
    s = load_scenario_file(a.file);
  else if (!a.figure.empty())
    s = canonical_scenario(a.figure);
  else
    throw ParseError("no scenario given: pass a scenario file or --figure");
  if (a.seed_set) {
    s.seed = a.seed;
    if (s.noise) s.noise->seed = a.seed;
  }
  if (a.dt_ns >= 0.0) s.time_resolution = a.dt_ns * 1e-3;  // ns -> us
  s.validate();
  return s;
}

int cmd_simulate(const ScenarioArgs& args, int samples) {
  const auto t_begin = std::chrono::steady_clock::now();
  const Scenario s = resolve_scenario(args);

  fs::create_directories(args.out_dir);
  const RunResult r = run_scenario(s, default_sample_times(s, samples));
  const WaveformTable w = sample_waveforms(s);

  const fs::path out(args.out_dir);
  write_trajectory_csv(out / "trajectory_L.csv", r, Chirality::Left);
  write_trajectory_meta(out / "trajectory_L.meta.json", r, Chirality::Left, s.seed);
  write_trajectory_csv(out / "trajectory_R.csv", r, Chirality::Right);
  write_trajectory_meta(out / "trajectory_R.meta.json", r, Chirality::Right, s.seed);
  write_waveforms_csv(out / "waveforms.csv", w);

  nlohmann::json summary;
  summary["name"] = s.name;
  summary["scenario_hash"] = hex64(r.scenario_hash);
  summary["D"] = r.discrimination;
  summary["final_L"] = {r.final_left[0], r.final_left[1], r.final_left[2],
                        r.final_left[3]};
  summary["final_R"] = {r.final_right[0], r.final_right[1], r.final_right[2],
                        r.final_right[3]};
  summary["dim"] = r.dim;
  summary["integrator_step_us"] = r.step_used;
  {
    std::ofstream f(out / "summary.json");
    f << summary.dump(2) << "\n";
  }

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.out_dir = args.out_dir;
  manifest.scenario_hash = r.scenario_hash;
  manifest.seed = s.seed;
  for (const char* name :
       {"trajectory_L.csv", "trajectory_L.meta.json", "trajectory_R.csv",
        "trajectory_R.meta.json", "waveforms.csv", "summary.json"})
    manifest.add_file(out, out / name);
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  manifest.write(out / "manifest.json");

  std::printf("%s: D = %s  (P3L = %s, P3R = %s)\n", s.name.c_str(),
              format_number(r.discrimination).c_str(),
              format_number(r.final_left[2]).c_str(),
              format_number(r.final_right[2]).c_str());
  return 0;
}

int cmd_sweep(const ScenarioArgs& args, const std::string& spec_file) {
  const auto t_begin = std::chrono::steady_clock::now();

  Scenario base;
  SweepSpec spec;
  if (!spec_file.empty()) {
    base = resolve_scenario(args);
    spec = load_sweep_spec_file(spec_file);
  } else if (!args.figure.empty() && args.file.empty()) {
    CanonicalSweep cs = canonical_sweep(args.figure);
    base = cs.base;
    spec = cs.spec;
    if (args.seed_set) {
      base.seed = args.seed;
      if (base.noise) base.noise->seed = args.seed;
    }
    if (args.dt_ns >= 0.0) base.time_resolution = args.dt_ns * 1e-3;
    base.validate();
  } else {
    throw ParseError("sweep needs --spec <file> or a canonical --figure name");
  }

  const int threads = args.parallel > 0 ? args.parallel : parallel_from_env();
  const SweepResult r = run_sweep(base, spec, threads);

  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  write_sweep_csv(out / "sweep.csv", r, false);
  const bool has_reduced = r.reducer != Reducer::All;
  if (has_reduced) write_sweep_csv(out / "sweep_reduced.csv", r, true);

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.out_dir = args.out_dir;
  manifest.scenario_hash = r.scenario_hash;
  manifest.seed = base.seed;
  manifest.add_file(out, out / "sweep.csv");
  if (has_reduced) manifest.add_file(out, out / "sweep_reduced.csv");
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  manifest.write(out / "manifest.json");

  std::size_t errors = 0;
  for (const auto& row : r.rows)
    if (row.status != "ok") ++errors;
  std::printf("sweep: %zu rows (%zu marked), written to %s\n", r.rows.size(),
              errors, (out / "sweep.csv").string().c_str());
  return errors == r.rows.size() && !r.rows.empty() ? kExitIntegration : 0;
}

int cmd_verify(bool corrupt_cp_sign) {
  const VerifyReport report = run_verification(
      corrupt_cp_sign ? VerifyMutation::FlipCounterdiabaticSign
                      : VerifyMutation::None);
  for (const auto& c : report.checks) {
    std::printf("[%s] %-34s %.3e < %.3e%s%s\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.threshold,
                c.detail.empty() ? "" : "  ", c.detail.c_str());
  }
  std::printf("%s\n", report.all_pass() ? "all checks passed"
                                        : "verification FAILED");
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiral-molecule discrimination simulator (two-stage protocol "
               "with shortcut-to-adiabaticity pulses)"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ScenarioArgs args;
  int samples = 801;
  std::string spec_file;
  bool corrupt = false;

  auto add_common = [&](CLI::App* cmd, bool with_file) {
    if (with_file)
      cmd->add_option("scenario", args.file, "scenario JSON file");
    cmd->add_option("--figure", args.figure, "canonical scenario name");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--parallel", args.parallel, "worker threads");
    cmd->add_option("--seed", args.seed, "seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--dt", args.dt_ns, "time resolution override [ns]");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario, write CSVs");
  add_common(sim, true);
  sim->add_option("--samples", samples, "trajectory sample count");

  CLI::App* swp = app.add_subcommand("sweep", "evaluate a parameter sweep");
  add_common(swp, true);
  swp->add_option("--spec", spec_file, "sweep spec JSON file");

  CLI::App* ver = app.add_subcommand("verify", "run the analytic identity suite");
  ver->add_flag("--corrupt-cp-sign", corrupt,
                "test hook: corrupt the counterdiabatic pair (must fail)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(args, samples);
    if (swp->parsed()) return cmd_sweep(args, spec_file);
    return cmd_verify(corrupt);
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "integration error: %s\n", e.what());
    return kExitIntegration;
  } catch (const SimError& e) {
    std::fprintf(stderr, "%s error: %s\n", e.kind_name(), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
