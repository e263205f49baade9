#include <doctest.h>

#include <cmath>
#include <sstream>

#include "patchcontact/errors.hpp"
#include "patchcontact/pipeline.hpp"

using namespace patchcontact;

namespace {

Model glue_model(double P = 1.0) {
  auto cfg = load_config(PATCHCONTACT_SOURCE_DIR "/cases/glue_only.cfg");
  cfg.P = P;
  return build_model(cfg);
}

bool check_passed(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass;
  FAIL("missing check " << name);
  return false;
}

}  // namespace

TEST_CASE("stress CSV is deterministic") {
  const auto m = glue_model();
  std::ostringstream a, b;
  write_csv(a, run_stress(m, 120));
  write_csv(b, run_stress(m, 120));
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# config_hash fnv1a64:" + hash_hex(config_hash(m.cfg))) != std::string::npos);
  CHECK(a.str().find("x,tau,psi") != std::string::npos);
}

TEST_CASE("stress of the glue-only problem") {
  const auto r = run_stress(glue_model(), 120);
  CHECK(r.roots.zero.tau0 == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r.profile.equilibrium == doctest::Approx(1.0).epsilon(1e-6));
  for (size_t j = 0; j < r.profile.x.size(); ++j)
    CHECK(r.profile.tau[j] == doctest::Approx(2.5 * std::pow(r.profile.x[j], 1.5)).epsilon(1e-7));

  const auto zero = run_stress(glue_model(0.0), 120);
  for (double v : zero.profile.tau) CHECK(v == 0.0);
}

TEST_CASE("verify passes and detects an injected fault") {
  CHECK(run_verify(glue_model()).hard_pass());
  const auto m = build_model(load_config(PATCHCONTACT_SOURCE_DIR "/cases/demo.cfg"));
  const auto bad = run_verify(m, true);
  CHECK_FALSE(bad.hard_pass());
  CHECK_FALSE(check_passed(bad, "Plemelj jump X+/X- = G0"));
}

TEST_CASE("reproduction rows carry a residual certificate") {
  const auto rows = run_reproduce(1);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.zero.found);
    CHECK(r.zero.residual <= 1e-10);
    CHECK(r.zero.strip1_empty);
    CHECK(std::isfinite(r.tau_rel));
  }
  CHECK(rows[0].zero.tau0 == rows[1].zero.tau0);
}

TEST_CASE("model rejects invalid materials") {
  auto cfg = builtin_case(1);
  cfg.hp1.nu = 0.6;
  CHECK_THROWS_AS(build_model(cfg), Error);
}
