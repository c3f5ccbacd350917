#include <doctest.h>

#include <cmath>

#include "chiral_sta/experiments.hpp"
#include "chiral_sta/scenario_io.hpp"

using namespace chiral_sta;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("discrimination metric basics") {
  const std::array<double, 4> a{0.2, 0.3, 0.5, 0.0};
  CHECK(discrimination(a, a) == 0.0);
  CHECK(discrimination({0.0, 0.0, 1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}) == 1.0);
  CHECK_THROWS_AS(discrimination({0.2, 0.2, 0.2, 0.0}, a), ValidationError);
  CHECK_THROWS_AS(discrimination({-0.5, 1.0, 0.5, 0.0}, a), ValidationError);
}

TEST_CASE("ideal chosen-path scenario reaches full contrast") {
  const RunResult r = run_scenario(canonical_scenario("fig4a"));
  CHECK(r.discrimination == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.final_left[2] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.final_right[2] < 1e-3);
}

TEST_CASE("zero-amplitude scenario leaves both molecules in place") {
  Scenario s = canonical_scenario("stirap-baseline");
  s.stage2.peak = 0.0;
  const RunResult r = run_scenario(s);
  CHECK(r.discrimination == 0.0);
  // Ideal-superposition start: half the population in each of |1>, |3>.
  CHECK(r.final_left[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.final_left[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("deep-adiabatic two-photon baseline discriminates") {
  const RunResult r = run_scenario(canonical_scenario("stirap-baseline"));
  CHECK(r.discrimination > 0.99);
  CHECK(r.final_left[2] > 0.99);
}

TEST_CASE("fully sequential stages give full contrast") {
  Scenario s = canonical_scenario("fig5");
  SweepContext ctx{s};
  apply_axis(ctx, "overlap_time", 0.0);
  const RunResult r = run_scenario(ctx.scenario);
  CHECK(r.discrimination == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("phase assignments move the contrast between enantiomers") {
  Scenario base = canonical_scenario("fig5");

  SUBCASE("quadrature one-photon phase gives full contrast") {
    const RunResult r = run_scenario(base);  // phase_q = pi/2
    CHECK(r.discrimination > 0.999);
  }
  SUBCASE("all-zero phases erase the contrast") {
    base.phase_q = 0.0;
    const RunResult r = run_scenario(base);
    CHECK(r.discrimination < 1e-2);
  }
  SUBCASE("opposite two-photon phase swaps the excited enantiomer") {
    base.phase_q = 0.0;
    base.phase_p = 0.5 * kPi;
    const RunResult plus = run_scenario(base);
    base.phase_p = -0.5 * kPi;
    const RunResult minus = run_scenario(base);
    CHECK(plus.discrimination > 0.999);
    CHECK(minus.discrimination > 0.999);
    CHECK(plus.final_left[2] == doctest::Approx(minus.final_right[2]).epsilon(1e-6));
    CHECK(std::abs(plus.final_left[2] - minus.final_left[2]) > 0.99);
  }
}

TEST_CASE("scenario runs are deterministic") {
  Scenario s = canonical_scenario("fig10rand");
  const RunResult a = run_scenario(s);
  const RunResult b = run_scenario(s);
  CHECK(a.discrimination == b.discrimination);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.final_left[i] == b.final_left[i]);
    CHECK(a.final_right[i] == b.final_right[i]);
  }
  CHECK(a.scenario_hash == b.scenario_hash);
}

TEST_CASE("canonical registry: headline parameters and unknown-name handling") {
  const Scenario fig8 = canonical_scenario("fig8");
  REQUIRE(fig8.stage1.has_value());
  CHECK(fig8.stage1->peak == 2.5);
  CHECK(fig8.stage1->width == 0.3545);
  CHECK(fig8.stage1->t_end == 1.418);
  CHECK(fig8.stage2.width == 0.15);
  CHECK(fig8.stage2.delay == 0.30);
  CHECK(fig8.stage2.t_start == 0.618);
  CHECK(fig8.stage2.t_end == doctest::Approx(1.818).epsilon(1e-12));
  CHECK(fig8.stage2.beta_peak == doctest::Approx(0.25 * kPi));
  CHECK(fig8.time_resolution == 0.010);
  CHECK(fig8.t_end == 2.5);
  CHECK(fig8.model == ModelKind::Lab4);
  REQUIRE(fig8.initial_diagonal.size() == 3);
  CHECK(fig8.initial_diagonal[0] == 0.998);
  CHECK(fig8.initial_diagonal[1] == 0.001);
  CHECK(fig8.initial_diagonal[2] == 0.001);

  const Scenario fig4a = canonical_scenario("fig4a");
  CHECK(fig4a.stage2.delay == doctest::Approx(2.0 * fig4a.stage2.width));
  CHECK(fig4a.stage2.t_end ==
        doctest::Approx(fig4a.stage2.t_start + 6.0 * fig4a.stage2.width +
                        fig4a.stage2.delay));
  CHECK(fig4a.stage2.effective_beta_width() ==
        doctest::Approx(fig4a.stage2.duration() / 6.0));

  const Scenario fig4e = canonical_scenario("fig4e");
  CHECK(fig4e.stage2.theta_family == ThetaFamily::PolynomialSine);
  CHECK(fig4e.stage2.beta_family == BetaFamily::CosLike);
  CHECK(fig4e.stage2.epsilon == 0.001);

  try {
    canonical_scenario("fig99");
    FAIL("expected a lookup error");
  } catch (const LookupError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("fig8") != std::string::npos);
    CHECK(msg.find("stirap-baseline") != std::string::npos);
  }
}

TEST_CASE("sweep grids are order-stable and mark singular points") {
  Scenario base = canonical_scenario("fig3");
  SweepSpec spec;
  spec.axes = {{"stage2.delay_over_width", {2.0}},
               {"stage2.beta_peak", {0.25 * kPi, kPi - 1e-4}}};
  const SweepResult r = run_sweep(base, spec, 1);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].status == "ok");
  CHECK(r.rows[0].d > 0.999);
  CHECK(r.rows[1].status == "singular-schedule");
  CHECK(std::isnan(r.rows[1].d));
}

TEST_CASE("sweeps are independent of the worker count") {
  Scenario base = canonical_scenario("fig5");
  SweepSpec spec;
  spec.axes = {{"overlap_time", {0.0, 1.0, 2.0, 3.0}}};
  const SweepResult serial = run_sweep(base, spec, 1);
  const SweepResult parallel = run_sweep(base, spec, 4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].d == parallel.rows[i].d);
    CHECK(serial.rows[i].seed == parallel.rows[i].seed);
    CHECK(serial.rows[i].axis_values == parallel.rows[i].axis_values);
  }
}

TEST_CASE("reducers match an independent recomputation over the trial rows") {
  Scenario base = canonical_scenario("fig10rand");
  base.integrator.interaction_steps = 2000;  // keep this unit test quick
  SweepSpec spec;
  spec.axes = {{"noise.bound", {0.3, 0.5}}};
  spec.trials = 5;
  spec.reducer = Reducer::Mean;
  const SweepResult mean_result = run_sweep(base, spec, 2);
  REQUIRE(mean_result.rows.size() == 10);
  REQUIRE(mean_result.reduced.size() == 2);
  for (std::size_t g = 0; g < 2; ++g) {
    double acc = 0.0;
    for (int t = 0; t < 5; ++t) acc += mean_result.rows[g * 5 + t].d;
    CHECK(mean_result.reduced[g].d == doctest::Approx(acc / 5.0).epsilon(1e-15));
  }

  spec.reducer = Reducer::Min;
  const SweepResult min_result = run_sweep(base, spec, 2);
  for (std::size_t g = 0; g < 2; ++g) {
    double lo = 2.0;
    for (int t = 0; t < 5; ++t)
      lo = std::min(lo, min_result.rows[g * 5 + t].d);
    CHECK(min_result.reduced[g].d == lo);
  }

  // Distinct trials actually sample distinct noise.
  CHECK(mean_result.rows[0].d != mean_result.rows[1].d);
}

TEST_CASE("unknown sweep parameters are rejected with the known list") {
  Scenario base = canonical_scenario("fig4a");
  SweepSpec spec;
  spec.axes = {{"stage2.bogus", {1.0}}};
  try {
    run_sweep(base, spec, 1);
    FAIL("expected a lookup error");
  } catch (const LookupError& e) {
    CHECK(std::string(e.what()).find("stage2.beta_peak") != std::string::npos);
  }
}

TEST_CASE("named sweep drivers enforce their preconditions") {
  const Scenario cp = canonical_scenario("fig4a");
  CHECK_THROWS_AS(sweep_overlap(cp, {1.0}, 1), ValidationError);

  Scenario poly = canonical_scenario("fig4c");
  CHECK_THROWS_AS(sweep_tau_beta(poly, {2.0}, {0.25 * kPi}, 1), ValidationError);

  CHECK_THROWS_AS(sweep_relaxation(cp, {100.0}, {100.0}, 1), ValidationError);
  CHECK_THROWS_AS(sweep_noise(cp, "noise.bound", {0.1}, 3, Reducer::Mean, 1),
                  ValidationError);
}

TEST_CASE("scenario validation rejects inconsistent combinations") {
  Scenario s = canonical_scenario("fig4a");
  s.stage1 = StageOneParams::pi_half(1.0);
  CHECK_THROWS_AS(s.validate(), ValidationError);  // superposition + stage 1

  Scenario lab = canonical_scenario("fig8");
  lab.levels.omega4.reset();
  CHECK_THROWS_AS(lab.validate(), ValidationError);  // lab model needs level 4

  Scenario noisy = canonical_scenario("fig10awgn");
  noisy.time_resolution = 0.0;
  CHECK_THROWS_AS(noisy.validate(), ValidationError);  // noise needs a hold grid

  Scenario short_end = canonical_scenario("fig8");
  short_end.t_end = 1.0;  // inside the pulse window
  CHECK_THROWS_AS(short_end.validate(), ValidationError);
}

TEST_CASE("trajectory sampling covers requested times") {
  Scenario s = canonical_scenario("fig4a");
  const auto times = default_sample_times(s, 101);
  const RunResult r = run_scenario(s, times);
  REQUIRE(r.times.size() == 101);
  REQUIRE(r.pops_left.size() == 101);
  REQUIRE(r.pops_right.size() == 101);
  // Population conservation along the whole trajectory.
  for (const auto& p : r.pops_left)
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
  // The left molecule's |3> population ends high, having started at 1/2.
  CHECK(r.pops_left.front()[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.pops_left.back()[2] > 0.99);
}

TEST_CASE("waveform sampling reflects discretization and drift") {
  Scenario s = canonical_scenario("fig8");
  const WaveformTable w = sample_waveforms(s);
  REQUIRE(!w.t.empty());
  double peak_p = 0.0, peak_q = 0.0;
  for (std::size_t i = 0; i < w.t.size(); ++i) {
    peak_p = std::max(peak_p, std::abs(w.omega_p[i]));
    peak_q = std::max(peak_q, std::abs(w.omega_q[i]));
  }
  // Counterdiabatic peak is about 9.9 rad/us, one-photon peak 2.5 rad/us.
  CHECK(peak_p == doctest::Approx(9.9).epsilon(0.02));
  CHECK(peak_q == doctest::Approx(2.5).epsilon(0.01));
}
