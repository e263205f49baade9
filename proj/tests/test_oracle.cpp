#include <doctest.h>

#include <cmath>
#include <random>

#include "patchcontact/errors.hpp"
#include "patchcontact/oracle.hpp"
#include "patchcontact/pipeline.hpp"
#include "patchcontact/quadrature.hpp"

using namespace patchcontact;

namespace {

KernelInputs glue_only() {
  KernelInputs k;
  k.h = 1.0;
  k.k0 = 0.16;
  return k;
}

KernelInputs demo_kernel() {
  const auto m = build_model(load_config(PATCHCONTACT_SOURCE_DIR "/cases/demo.cfg"));
  return kernel_inputs(m.coupling, m.cfg.h, m.k0);
}

}  // namespace

TEST_CASE("graded mesh") {
  const MeshSpec spec{300, 1.08, 1e-6};
  const auto x = graded_mesh(spec);
  REQUIRE(x.size() == 301);
  CHECK(x.front() == 0.0);
  CHECK(x.back() == 1.0);
  CHECK(x[1] == doctest::Approx(1e-6).epsilon(1e-12));
  for (size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
  for (size_t i = 2; i + 1 < x.size(); ++i) CHECK((x[i + 1] - x[i]) / (x[i] - x[i - 1]) <= 1.08 + 1e-9);
}

TEST_CASE("element integrals against adaptive quadrature") {
  KernelInputs k;
  k.lambda = {0.7, -0.3, 0.25, 0.4};
  k.beta1 = 3.0;
  k.gamma1 = 0.4;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int n = 0; n < 100; ++n) {
    const double xl = 0.9 * U(rng), xr = xl + 0.001 + 0.1 * U(rng);
    const bool inside = n % 2 == 0;
    const double m = inside ? xl + (0.1 + 0.8 * U(rng)) * (xr - xl) : (U(rng) < 0.5 ? 0.5 * xl : xr + U(rng));
    if (m <= 0.0) continue;
    auto smooth = [&](double t) {
      return k.lambda[1] / (t + m) + k.lambda[2] / (k.beta1 * t + k.gamma1 * m) +
             k.lambda[3] / (k.gamma1 * t + k.beta1 * m);
    };
    double ref = integrate_adaptive_real(smooth, xl, xr, 1e-14, 1e-13);
    if (inside) {
      // principal value over the symmetric part vanishes
      const double d = std::min(m - xl, xr - m);
      const double a = m - xl > xr - m ? xl : m + d, b = m - xl > xr - m ? m - d : xr;
      ref += integrate_adaptive_real([&](double t) { return k.lambda[0] / (t - m); }, a, b, 1e-14, 1e-13);
    } else {
      ref += integrate_adaptive_real([&](double t) { return k.lambda[0] / (t - m); }, xl, xr, 1e-14, 1e-13);
    }
    CHECK(std::abs(element_Q_integral(xl, xr, m, k) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("patch test") {
  for (const auto& k : {glue_only(), demo_kernel()}) {
    const auto sys = assemble(k, 1.0, MeshSpec{200, 1.08, 1e-6});
    CHECK(patch_test_residual(sys, 0.0, 1.0) <= 1e-12);
    CHECK(patch_test_residual(sys, 1.0, 2.0) <= 1e-12);
  }
}

TEST_CASE("zero load") {
  const auto sol = solve(assemble(demo_kernel(), 0.0, MeshSpec{200, 1.08, 1e-6}));
  for (double v : sol.psi_nodes) CHECK(v == 0.0);
  for (double v : sol.profile.tau) CHECK(v == 0.0);
}

TEST_CASE("glue-only collocation against the exact profile") {
  const auto sol = solve(assemble(glue_only(), 1.0, MeshSpec{400, 1.08, 1e-6}));
  CHECK(sol.rcond > 0.0);
  std::vector<double> exact;
  for (double x : sol.profile.x) exact.push_back(2.5 * std::pow(x, 1.5));
  CHECK(compare(sol.profile.x, sol.profile.tau, sol.profile.x, exact, 0.05, 0.95) < 1e-2);
  // an odd-even component of size O(1/N) hides x^1.5 below about 1e-2, so fit further out
  const auto f = fit_endpoint_exponent(sol.profile, 0.05, 0.3);
  CHECK(f.slope == doctest::Approx(1.5).epsilon(0.1));
}

TEST_CASE("glue-only collocation converges at first order") {
  double prev = 0.0;
  for (int n : {200, 400, 800, 1600}) {
    const auto sol = solve(assemble(glue_only(), 1.0, MeshSpec{n, 1.08, 1e-6}));
    std::vector<double> exact;
    for (double x : sol.profile.x) exact.push_back(2.5 * std::pow(x, 1.5));
    const double err = compare(sol.profile.x, sol.profile.tau, sol.profile.x, exact, 0.05, 0.95);
    if (prev > 0.0) CHECK(std::log2(prev / err) >= 0.9);
    prev = err;
  }
}

TEST_CASE("mesh refinement on the demo") {
  const auto k = demo_kernel();
  const auto coarse = solve(assemble(k, 1.0, MeshSpec{400, 1.08, 1e-6}));
  const auto fine = solve(assemble(k, 1.0, MeshSpec{800, 1.08, 1e-6}));
  CHECK(coarse.checkerboard < 0.5);
  CHECK(compare(coarse.profile.x, coarse.profile.tau, fine.profile.x, fine.profile.tau, 0.05, 0.95) < 2e-2);
}

TEST_CASE("profile comparison") {
  std::vector<double> x, t;
  for (int i = 0; i <= 100; ++i) {
    x.push_back(i / 100.0);
    t.push_back(1.0 + x.back() * x.back());
  }
  CHECK(compare(x, t, x, t, 0.1, 0.9) == 0.0);
  std::vector<double> xs, ts;
  for (int i = 0; i <= 37; ++i) {
    xs.push_back(i / 37.0);
    ts.push_back(1.0 + xs.back() * xs.back());
  }
  CHECK(compare(xs, ts, x, t, 0.1, 0.9) < 1e-4);
  CHECK_THROWS_AS(compare(x, t, x, t, 2.0, 3.0), Error);
}

TEST_CASE("case 1 system is assembled and solved") {
  const auto m = build_model(builtin_case(1));
  const auto sys = assemble(kernel_inputs(m.coupling, m.cfg.h, m.k0), 1.0, MeshSpec{400, 1.08, 1e-6});
  CHECK(sys.matrix.allFinite());
  const auto sol = solve(sys);
  CHECK(std::isfinite(sol.rcond));
  CHECK(sol.rcond > 0.0);
  CHECK(sol.psi_nodes.back() == 1.0);
}
