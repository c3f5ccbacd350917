#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chiral_sta/experiments.hpp"

namespace chiral_sta {

// 64-bit FNV-1a; used for scenario hashes and output-file digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Fixed 12-significant-digit formatting for every numeric CSV cell, so sweep
// output is byte-stable across runs and parallelism levels.
std::string format_number(double value);

// ---------------------------------------------------------------------------
// Scenario and sweep-spec files (flat JSON, unit-annotated keys)
// ---------------------------------------------------------------------------

// Canonical serialized form; hashing and round-trip equality are defined on
// this string.
std::string scenario_to_json(const Scenario& s);

// Parses and validates. A `figure` key loads the named canonical scenario and
// deep-merges the remaining keys as overrides. Unknown keys are rejected with
// a ParseError naming the key; syntax errors carry the line number.
Scenario scenario_from_json(const std::string& text);

Scenario load_scenario_file(const std::filesystem::path& path);
void save_scenario_file(const Scenario& s, const std::filesystem::path& path);

std::string sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const std::string& text);
SweepSpec load_sweep_spec_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

void write_trajectory_csv(const std::filesystem::path& path, const RunResult& r,
                          Chirality chirality);
// Sidecar metadata record accompanying a trajectory CSV.
void write_trajectory_meta(const std::filesystem::path& path, const RunResult& r,
                           Chirality chirality, std::uint64_t seed);
void write_waveforms_csv(const std::filesystem::path& path,
                         const WaveformTable& w);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& r,
                     bool reduced = false);

// ---------------------------------------------------------------------------
// Run manifest
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string path;    // relative to the output directory
  std::string digest;  // fnv1a64 of the file bytes
};

struct RunManifest {
  std::string command;
  std::string out_dir;
  std::vector<ManifestEntry> outputs;
  double duration_seconds = 0.0;
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;

  void add_file(const std::filesystem::path& out_root,
                const std::filesystem::path& file);
  void write(const std::filesystem::path& path) const;
};

std::string file_digest(const std::filesystem::path& path);

}  // namespace chiral_sta
