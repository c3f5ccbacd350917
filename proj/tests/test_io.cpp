#include <doctest.h>

#include <cmath>

#include "chiral_sta/scenario_io.hpp"

using namespace chiral_sta;

TEST_CASE("scenario files round-trip exactly for every canonical scenario") {
  for (const auto& name : canonical_scenario_names()) {
    const Scenario original = canonical_scenario(name);
    const std::string text = scenario_to_json(original);
    const Scenario loaded = scenario_from_json(text);
    CHECK(scenario_to_json(loaded) == text);
    CHECK(scenario_hash(loaded) == scenario_hash(original));
  }
}

TEST_CASE("figure shortcut loads a canonical scenario and applies overrides") {
  const Scenario s =
      scenario_from_json(R"({"figure": "fig8", "model": "rwa3"})");
  CHECK(s.model == ModelKind::Rwa3);
  CHECK(s.stage1->peak == 2.5);
  CHECK(s.t_end == 2.5);

  const Scenario nested = scenario_from_json(
      R"({"figure": "fig8", "stage2": {"beta_peak_rad": 1.0}, "dt_us": 0.001})");
  CHECK(nested.stage2.beta_peak == 1.0);
  CHECK(nested.stage2.width == 0.15);  // untouched sibling keys survive
  CHECK(nested.time_resolution == 0.001);

  // Removing the stage-1 block via a null override.
  const Scenario bare = scenario_from_json(
      R"({"figure": "fig8", "stage1": null,
          "initial": {"kind": "ideal-superposition", "diagonal": null}})");
  CHECK(!bare.stage1.has_value());
  CHECK(bare.initial_kind == InitialKind::IdealSuperposition);
}

TEST_CASE("unknown keys are rejected with the offending name") {
  try {
    scenario_from_json(R"({"figure": "fig4a", "bogus_knob": 3})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bogus_knob") != std::string::npos);
  }
}

TEST_CASE("empty and malformed scenario files produce line-aware diagnostics") {
  try {
    scenario_from_json("   \n  ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("stage2") != std::string::npos);
  }
  try {
    scenario_from_json("{\n  \"name\": \"x\",\n  broken\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(scenario_from_json(R"({"initial": {"kind": "ket1"}})"),
                  ParseError);  // missing stage2
}

TEST_CASE("custom kets parse and validate") {
  const std::string text = R"({
    "stage2": {"width_us": 1.0, "delay_us": 2.0, "start_us": 0.0,
               "end_us": 8.0, "beta_peak_rad": 0.785398163397448},
    "initial": {"kind": "ket", "ket_re": [0.7071067811865476, 0.0, 0.0],
                "ket_im": [0.0, 0.0, -0.7071067811865476]}
  })";
  const Scenario s = scenario_from_json(text);
  CHECK(s.initial_kind == InitialKind::Ket);
  REQUIRE(s.initial_ket.size() == 3);
  CHECK(s.initial_ket[2].imag() == doctest::Approx(-0.7071067811865476));

  const std::string bad = R"({
    "stage2": {"width_us": 1.0, "delay_us": 2.0, "start_us": 0.0,
               "end_us": 8.0, "beta_peak_rad": 0.785398163397448},
    "initial": {"kind": "ket", "ket_re": [1.0, 1.0, 0.0]}
  })";
  CHECK_THROWS_AS(scenario_from_json(bad), ValidationError);
}

TEST_CASE("sweep specs round-trip") {
  SweepSpec spec;
  spec.axes = {{"stage2.delay_over_width", {0.5, 1.0, 2.0}},
               {"stage2.beta_peak", {0.3, 0.6}}};
  spec.trials = 7;
  spec.reducer = Reducer::Min;
  spec.base_seed = 99;
  const SweepSpec loaded = sweep_spec_from_json(sweep_spec_to_json(spec));
  CHECK(loaded.axes.size() == 2);
  CHECK(loaded.axes[0].parameter == "stage2.delay_over_width");
  CHECK(loaded.axes[1].values == std::vector<double>{0.3, 0.6});
  CHECK(loaded.trials == 7);
  CHECK(loaded.reducer == Reducer::Min);
  CHECK(loaded.base_seed == 99);

  CHECK_THROWS_AS(sweep_spec_from_json(R"({"axes": []})"), ValidationError);
  CHECK_THROWS_AS(sweep_spec_from_json(R"({"trials": 3})"), ParseError);
}

TEST_CASE("numeric formatting is fixed at 12 significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.994612345678901) == "0.994612345679");
  CHECK(format_number(-2.5e-7) == "-2.5e-07");
  CHECK(format_number(11363.0) == "11363");
}

TEST_CASE("hashes are stable and content-sensitive") {
  const Scenario a = canonical_scenario("fig8");
  Scenario b = a;
  CHECK(scenario_hash(a) == scenario_hash(b));
  b.seed = a.seed + 1;
  CHECK(scenario_hash(a) != scenario_hash(b));
  CHECK(hex64(fnv1a64("")) == "0xcbf29ce484222325");
}
