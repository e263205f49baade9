#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "patchcontact/config.hpp"
#include "patchcontact/errors.hpp"
#include "patchcontact/pipeline.hpp"

using namespace patchcontact;

namespace {

struct Source {
  std::string config;
  int case_id = 0;
  int n = 4;
  double tau_max = 0.0;
  int grid = 0;
};

void add_source(CLI::App* app, Source& s) {
  auto* cfg = app->add_option("--config", s.config, "case file")->check(CLI::ExistingFile);
  auto* cs = app->add_option("--case", s.case_id, "built-in case")->check(CLI::IsMember({1, 2, 3}));
  cfg->excludes(cs);
  app->add_option("--n", s.n, "glue thickness exponent, h0 = 5e-n (built-in cases)")
      ->check(CLI::IsMember({2, 3, 4}));
  app->add_option("--tau-max", s.tau_max, "upper bound of the zero search")->check(CLI::PositiveNumber);
  app->add_option("--grid", s.grid, "number of x samples of the stress profile")->check(CLI::Range(16, 1000000));
}

CaseConfig resolve(const Source& s) {
  CaseConfig c;
  if (!s.config.empty()) {
    c = load_config(s.config);
  } else if (s.case_id != 0) {
    c = builtin_case(s.case_id, s.n);
  } else {
    throw Error(ErrorCode::ValidationError, "one of --config or --case is required");
  }
  if (s.tau_max > 0.0) c.numerics.tau_max = s.tau_max;
  if (s.grid > 0) c.numerics.grid_points = s.grid;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact stress under a patch on a bimaterial orthotropic plane"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Source src;
  std::string out;
  bool fault = false, arbitrate = false;

  auto* params = app.add_subcommand("params", "derived elastic and coupling constants");
  auto* roots = app.add_subcommand("roots", "index certificate and minimal zero of G");
  auto* stress = app.add_subcommand("stress", "contact stress profile as CSV");
  auto* verify = app.add_subcommand("verify", "invariant suite and collocation cross-check");
  auto* repro = app.add_subcommand("reproduce", "zero table of a built-in case for n = 4, 3, 2");
  for (auto* s : {params, roots, stress, verify}) add_source(s, src);
  stress->add_option("--out", out, "output file (default stdout)");
  verify->add_flag("--inject-fault", fault, "factor a sign-flipped kernel and check it against the true symbol");
  verify->add_flag("--arbitrate", arbitrate, "compare the literal kernel form for each lambda_hat");
  repro->add_option("--case", src.case_id, "built-in case")->required()->check(CLI::IsMember({1, 2, 3}));
  repro->add_option("--tau-max", src.tau_max, "upper bound of the zero search")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*repro) {
      const auto rows = run_reproduce(src.case_id, src.tau_max);
      const Model m = build_model(builtin_case(src.case_id, 4));
      print_reproduce(std::cout, src.case_id, rows, m.cfg.h * m.symbol.weights[3]);
      return 0;
    }
    const Model m = build_model(resolve(src));
    if (*params) {
      print_params(std::cout, m);
    } else if (*roots) {
      print_roots(std::cout, run_roots(m));
    } else if (*stress) {
      const auto r = run_stress(m, m.cfg.numerics.grid_points);
      if (out.empty()) {
        write_csv(std::cout, r);
      } else {
        std::ofstream f(out);
        if (!f) throw Error(ErrorCode::ValidationError, "cannot write " + out);
        write_csv(f, r);
      }
      std::cerr << "tau0 = " << r.roots.zero.tau0 << "  psi(1) = " << r.profile.equilibrium;
      if (r.near_zero_ok) std::cerr << "  slope near 0 = " << r.near_zero.slope << " +- " << r.near_zero.stderr_;
      if (r.near_one_ok) std::cerr << "  exponent at 1 = " << r.near_one.slope << " +- " << r.near_one.stderr_;
      std::cerr << "\n";
    } else if (*verify) {
      const auto rep = run_verify(m, fault);
      print_verify(std::cout, rep);
      if (arbitrate) {
        const auto roots_r = run_roots(m);
        const auto g = build_grid(m.symbol);
        const auto a = arbitrate_constants(m, roots_r, g);
        std::cout << "closed form vs collocation L2 = " << a.closed_form_l2 << "\n";
        for (const auto& [name, e] : a.l2) std::cout << "literal form, lambda_hat = " << name << ": L2 = " << e << "\n";
        std::cout << "best literal choice: " << a.best << " (the constant term only changes the delta at x = 1)\n";
      }
      if (!rep.hard_pass()) return 3;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
