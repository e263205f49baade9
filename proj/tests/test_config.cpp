#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "patchcontact/config.hpp"
#include "patchcontact/errors.hpp"

using namespace patchcontact;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ErrorCode parse_error(const std::string& text, std::string* what = nullptr) {
  try {
    parse_config(text, "t.cfg");
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  return ErrorCode::NonRealRoots;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto p = s.find(from);
  REQUIRE(p != std::string::npos);
  return s.replace(p, from.size(), to);
}

}  // namespace

TEST_CASE("shipped case files") {
  for (int id : {1, 2, 3}) {
    const std::string path = std::string(PATCHCONTACT_SOURCE_DIR "/cases/case") + std::to_string(id) + ".cfg";
    const auto from_file = load_config(path);
    CHECK(serialize(from_file) == serialize(builtin_case(id)));
    CHECK(builtin_case_text(id) == read_file(path));
    CHECK(validate_config(from_file).empty());
  }
  const auto c1 = builtin_case(1);
  CHECK(c1.hp1.E == 55.917e9);
  CHECK(c1.h == 0.1);
  CHECK(c1.k0() == doctest::Approx(5e-4 / 0.117e9).epsilon(1e-15));
  CHECK(builtin_case(1, 3).h0 == doctest::Approx(5e-3).epsilon(1e-15));
  CHECK(builtin_case(2, 2).h0 == doctest::Approx(5e-2).epsilon(1e-15));
  CHECK_THROWS_AS(builtin_case(4), Error);
  CHECK_THROWS_AS(builtin_case(1, 5), Error);
}

TEST_CASE("round trip") {
  for (int id : {1, 2, 3}) {
    const auto c = builtin_case(id, 3);
    const auto back = parse_config(serialize(c));
    CHECK(serialize(back) == serialize(c));
    CHECK(config_hash(back) == config_hash(c));
  }
  CHECK(config_hash(builtin_case(1, 4)) != config_hash(builtin_case(1, 3)));
  CHECK(hash_hex(0x1234abcdULL).size() == 16);
}

TEST_CASE("optional lambda0") {
  const std::string base = builtin_case_text(1);
  CHECK_FALSE(parse_config(base).m0().has_value());
  const auto c = parse_config(replace(base, "mu0 = 0.117e9", "mu0 = 0.117e9\nlambda0 = 2e9"));
  REQUIRE(c.m0().has_value());
  CHECK(*c.m0() == doctest::Approx(5e-4 / (2e9 + 2 * 0.117e9)).epsilon(1e-15));
}

TEST_CASE("parse errors") {
  CHECK(parse_error("") == ErrorCode::ParseError);
  CHECK(parse_error("# only a comment\n") == ErrorCode::ParseError);
  const std::string base = builtin_case_text(1);
  CHECK(parse_error(replace(base, "[glue]", "[glu]")) == ErrorCode::ParseError);
  CHECK(parse_error(replace(base, "nu = 0.32", "nu = 0.32\npoisson = 0.3")) == ErrorCode::ParseError);
  CHECK(parse_error(replace(base, "G = 5.592e9", "G = five")) == ErrorCode::ParseError);

  std::string what;
  CHECK(parse_error(replace(base, "[patch]", "[patch")) == ErrorCode::ParseError);
  parse_error(replace(base, "[patch]", "[patch"), &what);
  // the broken header sits on line 17 of the shipped file
  CHECK(what.find("t.cfg:17") != std::string::npos);
}

TEST_CASE("validation errors") {
  const std::string base = builtin_case_text(1);
  CHECK(parse_error(replace(base, "nu = 0.32", "nu = 0.6")) == ErrorCode::ValidationError);
  CHECK(parse_error(replace(base, "G = 5.592e9", "G = 0")) == ErrorCode::ValidationError);
  CHECK(parse_error(replace(base, "h = 0.1", "h = -0.1")) == ErrorCode::ValidationError);
  CHECK(parse_error(replace(base, "modulus_unit = Pa", "modulus_unit = GPa")) == ErrorCode::ValidationError);

  std::string what;
  parse_error(replace(replace(base, "nu = 0.32", "nu = 0.6"), "h = 0.1", "h = -0.1"), &what);
  CHECK(what.find("nu") != std::string::npos);
  CHECK(what.find("h") != std::string::npos);
}
