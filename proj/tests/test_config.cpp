#include <cmath>
#include <string>

#include "doctest.h"
#include "vbqc/config.hpp"

using namespace vbqc;

namespace {

// message of the std::invalid_argument thrown by f, or "" if it didn't throw
template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("shipped configs load and validate") {
  const std::filesystem::path dir = VBQC_CONFIG_DIR;

  const RunConfig run1 = load_config(dir / "si-run-1.cfg");
  CHECK(run1.rounds == 27441);
  CHECK(run1.seed == 20260814);
  CHECK(run1.thresholds.omega == 0.18);
  CHECK(run1.thresholds.nu == 0.14);
  CHECK_FALSE(run1.noise_ideal);
  CHECK(run1.adversary_name == "honest");
  CHECK(run1.blindness_enabled);
  CHECK(run1.blindness_delta1 == Angle8(5));
  CHECK(run1.algorithm.x1 == 0);

  const RunConfig run2 = load_config(dir / "si-run-2.cfg");
  CHECK(run2.rounds == 24072);
  CHECK(run2.algorithm.x1 == 1);

  const RunConfig ideal = load_config(dir / "ideal-noiseless.cfg");
  CHECK(ideal.noise_ideal);
  CHECK(ideal.devices().ideal_devices);

  const RunConfig adv = load_config(dir / "adversary-suite.cfg");
  CHECK(adv.adversary_name == "fixed-outcome");
  const auto* fixed = std::get_if<FixedOutcome>(&adv.adversary);
  REQUIRE(fixed != nullptr);
  CHECK_FALSE(fixed->m1.has_value());
  REQUIRE(fixed->m2.has_value());
  CHECK(*fixed->m2 == 0);
}

TEST_CASE("a minimal config takes the documented defaults") {
  const RunConfig cfg = parse_config("rounds = 5\ntest_fraction = 0.5\n");
  CHECK(cfg.rounds == 5);
  CHECK(cfg.seed == 1);
  CHECK(cfg.algorithm.phi1 == Angle8(2));
  CHECK(cfg.thresholds.omega == 0.18);
  CHECK_FALSE(cfg.noise_ideal);
  CHECK(cfg.noise.v == 0.935);
  CHECK(cfg.adversary_name == "honest");
  CHECK(cfg.ff_mode == FFMode::Table);
  CHECK_FALSE(cfg.blindness_enabled);
  CHECK(cfg.output_dir == std::filesystem::path("out"));
}

TEST_CASE("syntax errors are named") {
  CHECK(contains(error_of([] { parse_config("bogus = 1\n"); }), "unknown key 'bogus'"));
  CHECK(contains(error_of([] { parse_config("seed = 1\nseed = 2\n"); }), "duplicate key 'seed'"));
  CHECK(contains(error_of([] { parse_config("just words\n"); }), "expected key=value"));
  CHECK(contains(error_of([] { parse_config("seed =\n"); }), "empty value"));
  CHECK(contains(error_of([] { parse_config("= 4\n"); }), "empty key"));
  CHECK(contains(error_of([] { parse_config("rounds = abc\n"); }), "expected a non-negative"));
  CHECK(contains(error_of([] { parse_config("test_fraction = lots\n"); }), "expected a number"));

  // comments and blank lines are fine
  CHECK_NOTHROW(parse_config("# full-line comment\n\nseed = 3  # trailing comment\n"));
}

TEST_CASE("field constraints are enforced") {
  CHECK(contains(error_of([] { parse_config("rounds = 0\n"); }), "rounds"));
  CHECK(contains(error_of([] { parse_config("test_fraction = 1.0\n"); }), "strictly between"));
  CHECK(contains(error_of([] { parse_config("test_fraction = 0\n"); }), "strictly between"));
  CHECK(contains(error_of([] { parse_config("algorithm.phi1 = 9\n"); }), "angle code"));
  CHECK(contains(error_of([] { parse_config("algorithm.x1 = 2\n"); }), "expected 0 or 1"));
  CHECK(contains(error_of([] { parse_config("noise.v = 1.5\n"); }), "probability"));
  CHECK(contains(error_of([] { parse_config("noise.pc_random = maybe\n"); }), "true or false"));
  CHECK(contains(error_of([] { parse_config("thresholds.k = 0\n"); }), "at least 1"));

  // omega must stay strictly below sigma (0.25 at the default k and p)
  CHECK(contains(error_of([] { parse_config("thresholds.omega = 0.25\n"); }), "sigma"));
  CHECK_NOTHROW(parse_config("thresholds.omega = 0.249\n"));
  CHECK(contains(error_of([] { parse_config("thresholds.nu = 0.2\n"); }), "sigma"));
}

TEST_CASE("noise presets") {
  const RunConfig lit = parse_config("noise.preset = si-literal\n");
  CHECK(lit.noise.lc_err_halfwidth == doctest::Approx(M_PI / 8).epsilon(1e-15));
  CHECK(lit.noise.hwp_err_halfwidth_deg == 1.0);

  const RunConfig custom = parse_config("noise.preset = custom\nnoise.v = 0.9\nnoise.lambda = 0\n");
  CHECK(custom.noise.v == 0.9);
  CHECK(custom.noise.lambda == 0.0);

  // overrides are rejected when there is nothing to override
  CHECK(contains(error_of([] { parse_config("noise.preset = ideal\nnoise.v = 0.9\n"); }),
                 "non-ideal"));
  // ... in either file order
  CHECK(contains(error_of([] { parse_config("noise.v = 0.9\nnoise.preset = ideal\n"); }),
                 "non-ideal"));
  CHECK(contains(error_of([] { parse_config("noise.preset = white\n"); }), "noise.preset"));
}

TEST_CASE("adversary selection and its dependent keys") {
  const RunConfig flip = parse_config("adversary = outcome-flip\nadversary.flip_p2 = 0.25\n");
  const auto* of = std::get_if<OutcomeFlip>(&flip.adversary);
  REQUIRE(of != nullptr);
  CHECK(of->p1 == 0.5);  // named default
  CHECK(of->p2 == 0.25);

  const RunConfig tamper = parse_config("adversary = angle-tamper\nadversary.offset2 = 4\n");
  const auto* at = std::get_if<AngleTamper>(&tamper.adversary);
  REQUIRE(at != nullptr);
  CHECK(at->offset2 == Angle8(4));

  const RunConfig rep = parse_config("adversary = state-replace\nadversary.state = zero\n");
  const auto* sr = std::get_if<StateReplace>(&rep.adversary);
  REQUIRE(sr != nullptr);
  CHECK(sr->rho(0, 0).real() == doctest::Approx(1.0));

  CHECK(contains(error_of([] { parse_config("adversary = nobody\n"); }), "unknown adversary"));
  CHECK(contains(error_of([] { parse_config("adversary.m2 = 0\n"); }),
                 "requires adversary = fixed-outcome"));
  CHECK(contains(
      error_of([] { parse_config("adversary = angle-tamper\nadversary.flip_p1 = 0.5\n"); }),
      "requires adversary = outcome-flip"));
  CHECK(contains(
      error_of([] { parse_config("adversary = state-replace\nadversary.state = junk\n"); }),
      "maximally-mixed or zero"));

  // dependent keys may precede the selector
  CHECK_NOTHROW(parse_config("adversary.m2 = 1\nadversary = fixed-outcome\n"));
}

TEST_CASE("remaining enums and flags") {
  CHECK(parse_config("ff_mode = direct\n").ff_mode == FFMode::Direct);
  CHECK(contains(error_of([] { parse_config("ff_mode = sideways\n"); }), "table or direct"));

  const RunConfig b = parse_config("blindness = true\nblindness.delta1 = 3\n");
  CHECK(b.blindness_enabled);
  CHECK(b.blindness_delta1 == Angle8(3));
  CHECK_FALSE(b.blindness_condition_on.has_value());

  const RunConfig c = parse_config("blindness.condition_on = 1\n");
  REQUIRE(c.blindness_condition_on.has_value());
  CHECK(*c.blindness_condition_on == 1);
  CHECK_FALSE(parse_config("blindness.condition_on = none\n").blindness_condition_on.has_value());
}

TEST_CASE("missing files are a distinct error") {
  CHECK(contains(error_of([] { (void)load_config("/no/such/file.cfg"); }), "not found"));
}
