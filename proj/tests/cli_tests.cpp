// Black-box checks of the command-line tool: exit codes, output files,
// digests, and parallel determinism.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chiral_sta/scenario_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " 2>&1";
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
    r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("chiral_sta_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate: canonical scenario produces the advertised outputs") {
  const fs::path out = fresh_dir("sim");
  const CommandResult r =
      run_cli("simulate --figure fig4a --out " + out.string());
  CHECK(r.exit_code == 0);

  for (const char* f : {"trajectory_L.csv", "trajectory_R.csv", "waveforms.csv",
                        "summary.json", "manifest.json"})
    CHECK(fs::exists(out / f));

  const json summary = json::parse(slurp(out / "summary.json"));
  CHECK(std::abs(summary.at("D").get<double>() - 1.0) < 1e-3);

  // Manifest digests are recomputable from the files on disk.
  const json manifest = json::parse(slurp(out / "manifest.json"));
  for (const auto& item : manifest.at("outputs"))
    CHECK(item.at("fnv1a64").get<std::string>() ==
          chiral_sta::file_digest(out / item.at("path").get<std::string>()));

  // Trajectory header matches the declared interface.
  const std::string traj = slurp(out / "trajectory_L.csv");
  CHECK(traj.rfind("t_us,P1,P2,P3\n", 0) == 0);
  const std::string wave = slurp(out / "waveforms.csv");
  CHECK(wave.rfind("t_us,omega_P,omega_S,omega_Q\n", 0) == 0);
}

TEST_CASE("simulate: empty scenario file exits 2 naming the missing key") {
  const fs::path out = fresh_dir("empty");
  const fs::path file = out / "empty.json";
  std::ofstream(file) << "";
  const CommandResult r =
      run_cli("simulate " + file.string() + " --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("stage2") != std::string::npos);
}

TEST_CASE("simulate: unknown figure exits 2 listing valid names") {
  const fs::path out = fresh_dir("badfig");
  const CommandResult r =
      run_cli("simulate --figure fig99 --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("fig8") != std::string::npos);
}

TEST_CASE("scenario files accepted by the CLI match programmatic construction") {
  const fs::path out = fresh_dir("file");
  const fs::path file = out / "scenario.json";
  chiral_sta::save_scenario_file(chiral_sta::canonical_scenario("fig4c"), file);
  const CommandResult r =
      run_cli("simulate " + file.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json summary = json::parse(slurp(out / "summary.json"));
  CHECK(std::abs(summary.at("D").get<double>() - 1.0) < 1e-3);
  CHECK(summary.at("scenario_hash").get<std::string>() ==
        chiral_sta::hex64(
            chiral_sta::scenario_hash(chiral_sta::canonical_scenario("fig4c"))));
}

TEST_CASE("sweep: worker count does not change the CSV bytes") {
  const fs::path out1 = fresh_dir("sweep1");
  const fs::path out8 = fresh_dir("sweep8");
  const fs::path spec = out1 / "spec.json";
  std::ofstream(spec) << R"({
    "axes": [{"parameter": "overlap_time", "values": [0.0, 1.0, 2.0, 3.0]}],
    "trials": 1, "reducer": "all", "base_seed": 11
  })";

  const CommandResult r1 = run_cli("sweep --figure fig5 --spec " + spec.string() +
                                   " --parallel 1 --out " + out1.string());
  const CommandResult r8 = run_cli("sweep --figure fig5 --spec " + spec.string() +
                                   " --parallel 8 --out " + out8.string());
  CHECK(r1.exit_code == 0);
  CHECK(r8.exit_code == 0);
  CHECK(slurp(out1 / "sweep.csv") == slurp(out8 / "sweep.csv"));

  // Header carries axes then the fixed result columns.
  const std::string csv = slurp(out1 / "sweep.csv");
  CHECK(csv.find("overlap_time,D,P3L,P3R,P1R,P2R,status,seed\n") !=
        std::string::npos);
  CHECK(csv.rfind("# scenario_hash=0x", 0) == 0);
}

TEST_CASE("sweep: canonical figure sweeps are self-contained") {
  const fs::path out = fresh_dir("fig6");
  const CommandResult r =
      run_cli("sweep --figure fig6 --out " + out.string() + " --parallel 2");
  CHECK(r.exit_code == 0);
  // 25 phase samples; the quadrature points reach full contrast, zero kills it.
  std::ifstream in(out / "sweep.csv");
  std::string line;
  std::getline(in, line);  // metadata
  std::getline(in, line);  // header
  int rows = 0;
  double best = 0.0, at_zero = 1.0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    const double phase = std::stod(cell);
    std::getline(ss, cell, ',');
    const double d = std::stod(cell);
    best = std::max(best, d);
    if (std::abs(phase) < 1e-12) at_zero = d;
  }
  CHECK(rows == 25);
  CHECK(best > 0.999);
  CHECK(at_zero < 1e-2);
}

TEST_CASE("verify: passes pristine, fails under the corrupted-pulse fixture") {
  const CommandResult ok = run_cli("verify");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("decoupling-residual") != std::string::npos);
  CHECK(ok.output.find("FAIL") == std::string::npos);

  const CommandResult bad = run_cli("verify --corrupt-cp-sign");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("FAIL") != std::string::npos);
  CHECK(bad.output.find("decoupling-residual") != std::string::npos);
}
