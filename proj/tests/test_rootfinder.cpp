#include <doctest.h>

#include <cmath>
#include <complex>

#include "patchcontact/errors.hpp"
#include "patchcontact/pipeline.hpp"
#include "patchcontact/rootfinder.hpp"

using namespace patchcontact;
using C = std::complex<double>;

namespace {

SymbolParams glue_only(double h, double k0) {
  SymbolParams p;
  p.h = h;
  p.k0 = k0;
  p.mu_log = 1.0;
  return p;
}

ErrorCode refine_error(const SymbolParams& p, C guess) {
  try {
    refine_zero(p, guess);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("glue-only zero") {
  const auto p = glue_only(1.0, 0.01);
  const auto z = minimal_zero(p, 12.0);
  REQUIRE(z.found);
  CHECK(z.tau0 == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(z.omega0) < 1e-12);
  CHECK(z.strip1_empty);

  const auto q = glue_only(1.0, 0.16);  // zero at 2.5 i
  CHECK(count_zeros(q, {-1.0, 1.0, 2.2, 2.8}) == 1);
  CHECK(count_zeros(q, {-1.0, 1.0, 0.2, 0.8}) == 0);
  CHECK(count_zeros_H(q, {-1.0, 1.0, 1.5, 2.8}).count == 2);  // sinh zero at 2i and the glue zero
  CHECK(count_zeros(q, {-1.0, 1.0, 1.5, 2.8}) == 1);
}

TEST_CASE("contour counts are additive") {
  const auto p = build_model(builtin_case(1)).symbol;
  const Rect whole{-20.0, 20.0, 7.5, 8.5};
  const Rect left{-20.0, 0.3, 7.5, 8.5}, right{0.3, 20.0, 7.5, 8.5};
  const auto w = count_zeros_H(p, whole), l = count_zeros_H(p, left), r = count_zeros_H(p, right);
  CHECK(w.count == l.count + r.count);
  CHECK(std::abs(w.raw - l.raw - r.raw) < 0.05);
  CHECK(std::abs(w.imag) < 0.05);
  const Rect lower{-20.0, 20.0, 7.5, 8.0 - 0.3}, upper{-20.0, 20.0, 8.0 - 0.3, 8.5};
  CHECK(w.count == count_zeros_H(p, lower).count + count_zeros_H(p, upper).count);
}

TEST_CASE("Newton refinement") {
  const auto p = glue_only(1.0, 0.16);
  const auto z = refine_zero(p, C(0.0, 2.45));
  CHECK(std::abs(C(double(z.re), double(z.im)) - C(0.0, 2.5)) < 1e-12);
  CHECK(z.residual < 1e-12);

  // the sinh zero at i is not a zero of G when k0 h != 1
  const ErrorCode e = refine_error(p, C(0.0, 1.0));
  CHECK((e == ErrorCode::GuardedPole || e == ErrorCode::DerivativeVanished));

  // the tabulated case 3 point is not a zero of this symbol; Newton from it lands on a pole pair
  const auto q = build_model(builtin_case(3)).symbol;
  CHECK(std::abs(eval_G(C(0.427105973827816, 9.275927911785338), q)) > 0.5);
  CHECK(refine_error(q, C(0.43, 9.28)) == ErrorCode::GuardedPole);
  const auto r = refine_zero(q, C(0.43, 9.9));
  CHECK(std::abs(double(r.im) - 10.0) < 1e-7);
  CHECK(r.residual < 1e-10);
}

TEST_CASE("case 1 minimal zero") {
  const auto p = build_model(builtin_case(1)).symbol;
  const auto z = minimal_zero(p, 12.0);
  REQUIRE(z.found);
  CHECK(z.strip1_empty);
  CHECK(z.tau0 > 1.0);
  CHECK(z.residual < 1e-10);
  CHECK(z.pair_residual < 1e-10);
  CHECK(z.max_count_error < 0.25);
  for (const auto& s : z.strip_counts) {
    CHECK(s.count >= 0);
    if (s.n < std::ceil(z.tau0)) CHECK(s.count == 0);
  }
  const C z0(z.omega0, z.tau0);
  // double evaluation 2e-8 away from the pole at 8i loses digits to cancellation
  CHECK(std::abs(eval_G(z0, p)) < 1e-6);
  CHECK(std::abs(eval_G(-std::conj(z0), p)) < 1e-6);
}

TEST_CASE("a complex pair is found with its mirror") {
  SymbolParams p;
  p.h = 1.0;
  p.k0 = 0.14;
  p.weights = {-0.7, -2.4, -1.7, -2.9};
  p.mu_log = 2.1;
  const auto z = minimal_zero(p, 6.0);
  REQUIRE(z.found);
  CHECK(std::abs(z.omega0) > 0.5);
  CHECK(z.residual < 1e-10);
  CHECK(z.pair_residual < 1e-10);
  CHECK(z.zeros_in_strip.size() == 2);
  const auto mirror = refine_zero(p, C(-z.omega0 + 0.01, z.tau0 - 0.01));
  CHECK(std::abs(double(mirror.re) + z.omega0) < 1e-12);
  CHECK(std::abs(double(mirror.im) - z.tau0) < 1e-12);
}

TEST_CASE("no zero below the cap") {
  const auto p = glue_only(1.0, 0.01);
  const auto z = minimal_zero(p, 5.0);
  CHECK_FALSE(z.found);
  CHECK(z.strip_counts.size() == 5);
}
