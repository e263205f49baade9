// One PASS/FAIL line per acceptance criterion, followed by indented detail lines.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "patchcontact/pipeline.hpp"

using namespace patchcontact;
using C = std::complex<double>;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int n, bool pass, const std::string& summary) {
  std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class... A>
void detail(const char* fmt, A... a) {
  std::printf("    ");
  std::printf(fmt, a...);
  std::printf("\n");
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

const double kPaperTau[] = {7.718681569000190, 6.715298333139011, 9.275927911785338};
const double kPaperOmega[] = {0.000000001107485, -0.000000000273508, 0.427105973827816};

struct CaseRun {
  Model model;
  RootsReport roots;
  FactorizationGrid grid;
};

CaseRun run_case(const CaseConfig& cfg) {
  CaseRun r{build_model(cfg), {}, {}};
  r.roots = run_roots(r.model);
  r.grid = build_grid(r.model.symbol);
  return r;
}

void criterion1(const std::vector<std::vector<ReproduceRow>>& rows) {
  bool cert = true, digits = true;
  for (int c = 0; c < 3; ++c) {
    const auto& r = rows[c][0];  // n = 4
    const bool in_time = r.seconds <= 10.0;
    const bool ok = r.zero.found && r.zero.residual <= 1e-10 && in_time;
    const bool tau_hit = std::abs(r.zero.tau0 - kPaperTau[c]) <= 1e-3 * kPaperTau[c];
    const bool omega_hit = c == 2 ? std::abs(r.zero.omega0 - kPaperOmega[c]) <= 1e-3 : std::abs(r.zero.omega0) <= 1e-6;
    cert = cert && ok;
    digits = digits && tau_hit && omega_hit;
    detail("case %d: z0 = %.15g + %.15gi  |G(z0)| = %.2e  paper %.15g + %.15gi  rel d tau = %+.3e  |G(paper)| = %.3f  %.2fs",
           c + 1, r.zero.omega0, r.zero.tau0, r.zero.residual, kPaperOmega[c], kPaperTau[c],
           (r.zero.tau0 - kPaperTau[c]) / kPaperTau[c], r.paper_residual, r.seconds);
    detail("case %d: h w4 that would place a zero at the paper's point = %.6e%+.3ei", c + 1, r.implied_w4h.real(),
           r.implied_w4h.imag());
  }
  verdict(1, cert,
          std::string("residual certificate |G(z0)| <= 1e-10 ") + (cert ? "holds" : "fails") +
              " for cases 1-3; digit target " + (digits ? "met" : "missed (systematic offset, see details)"));
}

void criterion2(const std::vector<std::vector<ReproduceRow>>& rows) {
  bool pass = true;
  for (int c = 0; c < 3; ++c) {
    const double t4 = rows[c][0].zero.tau0, t3 = rows[c][1].zero.tau0, t2 = rows[c][2].zero.tau0;
    const double spread = (std::max({t2, t3, t4}) - std::min({t2, t3, t4})) / t4;
    const bool ok = t4 >= t3 && t3 >= t2 && spread <= 1e-6;
    pass = pass && ok;
    detail("case %d: tau0(n=4,3,2) = %.15g, %.15g, %.15g  spread %.2e", c + 1, t4, t3, t2, spread);
  }
  verdict(2, pass, "tau0 non-decreasing in n with relative spread <= 1e-6");
}

void criterion3(const std::vector<std::vector<ReproduceRow>>& rows) {
  bool pass = true;
  for (int c = 0; c < 3; ++c) {
    const auto& z = rows[c][0].zero;
    const bool ok = z.strip1_empty && z.max_count_error < 0.25 && rows[c][0].seconds <= 2.0;
    pass = pass && ok;
    detail("case %d: strip 0 < Im z <= 1 count %d, max quadrature error %.2e, scan %.2fs", c + 1,
           z.strip_counts.empty() ? -1 : z.strip_counts[0].count, z.max_count_error, rows[c][0].seconds);
  }
  verdict(3, pass, "no zeros in 0 < Im z <= 1 with count error < 0.25");
}

void criterion4(const std::vector<CaseRun>& runs) {
  bool pass = true;
  for (int c = 0; c < 3; ++c) {
    const auto& s = runs[c].roots.scan;
    pass = pass && s.index == 0 && s.min_re > 0.0;
    detail("case %d: index %d (winding %.2e), min Re G0 = %.6g over %d samples", c + 1, s.index, s.winding, s.min_re,
           s.samples);
  }
  verdict(4, pass, "index of G0 is 0 and Re G0 > 0 on the axis");
}

void criterion5(const std::vector<CaseRun>& runs) {
  bool pass = true;
  for (int c = 0; c < 3; ++c) {
    const double e = plemelj_error(runs[c].model.symbol, runs[c].grid);
    pass = pass && e <= 1e-6;
    detail("case %d: max |X+/X- / G0 - 1| = %.2e on 100 points", c + 1, e);
  }
  const C i(0, 1);
  auto xp = [&](C z) { return (z + 2.0 * i) / (z + i); };
  auto xm = [&](C z) { return (z - i) / (z - 3.0 * i); };
  const auto g = build_grid([&](double t) { return xp(t) / xm(t) - 1.0; }, 0.0);
  double err = 0.0;
  for (double t : {-30.0, -2.0, -0.4, 0.0, 0.3, 1.0, 7.5, 50.0}) {
    err = std::max(err, std::abs(boundary_X1(t, Side::above, g) - xp(t)));
    err = std::max(err, std::abs(boundary_X1(t, Side::below, g) - xm(t)));
    err = std::max(err, std::abs(factor_X1(C(t, 0.5), g) - xp(C(t, 0.5))));
    err = std::max(err, std::abs(factor_X1(C(t, -0.5), g) - xm(C(t, -0.5))));
  }
  pass = pass && err <= 1e-8;
  detail("rational symbol (t + 2i)(t - 3i)/(t^2 + 1): max factor error %.2e", err);
  verdict(5, pass, "Plemelj jump <= 1e-6 per case and rational oracle <= 1e-8");
}

struct StressCheck {
  bool pass;
  double eq, eq_refined, exp_rel, slope1, slope1_err;
};

StressCheck stress_check(const Model& m) {
  const auto s = run_stress(m, m.cfg.numerics.grid_points);
  CaseConfig fine = m.cfg;
  fine.numerics.grid_points *= 2;
  fine.numerics.t_max *= 2;
  const auto sf = run_stress(build_model(fine), fine.numerics.grid_points);
  StressCheck r{};
  r.eq = std::abs(s.profile.equilibrium - m.cfg.P) / std::abs(m.cfg.P);
  r.eq_refined = std::abs(sf.profile.equilibrium - m.cfg.P) / std::abs(m.cfg.P);
  r.exp_rel = s.near_zero_ok ? std::abs(s.near_zero.slope - (s.roots.zero.tau0 - 1.0)) / (s.roots.zero.tau0 - 1.0) : INFINITY;
  r.slope1 = s.near_one_ok ? s.near_one.slope : INFINITY;
  r.slope1_err = s.near_one.stderr_;
  r.pass = r.eq <= 1e-2 && r.eq_refined <= 1e-3 && r.exp_rel <= 0.05 && std::abs(r.slope1) + r.slope1_err <= 0.1;
  return r;
}

void criterion6(const std::vector<CaseRun>& runs, const Model& demo) {
  bool pass = true;
  for (int c = 0; c < 3; ++c) {
    const auto r = stress_check(runs[c].model);
    pass = pass && r.pass;
    detail("case %d: |psi(1) - P| = %.2e (refined %.2e), exponent at 0 off by %.2e, exponent at 1 = %.4f +- %.4f", c + 1,
           r.eq, r.eq_refined, r.exp_rel, r.slope1, r.slope1_err);
  }
  const auto d = stress_check(demo);
  detail("demo (not graded): |psi(1) - P| = %.2e (refined %.2e), exponent at 0 off by %.2e, exponent at 1 = %.4f +- %.4f",
         d.eq, d.eq_refined, d.exp_rel, d.slope1, d.slope1_err);
  verdict(6, pass, "equilibrium 1% / 0.1% refined, exponent at 0 within 5%, |exponent at 1| <= 0.1");
}

void criterion7(const std::vector<CaseRun>& runs, const Model& demo) {
  bool pass = false;
  for (int c = 0; c < 3; ++c) {
    const auto cmp = compare_with_oracle(runs[c].model, runs[c].roots, runs[c].grid);
    pass = pass || cmp.l2 <= 0.02;
    const auto arb = arbitrate_constants(runs[c].model, runs[c].roots, runs[c].grid);
    double best = INFINITY;
    for (const auto& [name, e] : arb.l2) best = std::min(best, e);
    detail("case %d: L2 = %.3e, collocation rcond %.2e, odd-even share %.2f; best literal choice %s (L2 %.3e), gap %.3e",
           c + 1, cmp.l2, cmp.rcond, cmp.checkerboard, arb.best.c_str(), best, std::min(cmp.l2, best) - 0.02);
  }
  const auto dr = run_roots(demo);
  const auto dg = build_grid(demo.symbol);
  const auto dc = compare_with_oracle(demo, dr, dg);
  const auto da = arbitrate_constants(demo, dr, dg);
  std::string lit;
  for (const auto& [name, e] : da.l2) lit += " " + name + " " + std::to_string(e);
  detail("demo (not graded): L2 = %.3e, odd-even share %.2f; literal form L2:%s; best %s", dc.l2, dc.checkerboard,
         lit.c_str(), da.best.c_str());
  verdict(7, pass, "transform vs collocation L2 <= 2% on [0.05, 0.95] for at least one of cases 1-3");
}

void criterion8() {
  const auto t0 = clock_type::now();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  double roots_err = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double g = 0.2 + 1.5 * U(rng), b = g * (1.05 + 3.0 * U(rng)), nu = 0.45 * U(rng), E = std::pow(10.0, 8 + 4 * U(rng));
    const double A = b * b + g * g, B = b * b * g * g;
    const auto hp = make_half_plane({E, E / B, E / (A + 2 * nu), nu});
    const double a = hp.raw.E / hp.raw.G - 2 * hp.raw.nu, bb = hp.raw.E / hp.raw.E_star;
    roots_err = std::max({roots_err, std::abs(hp.beta * hp.beta + hp.gamma * hp.gamma - a) / a,
                          std::abs(hp.beta * hp.beta * hp.gamma * hp.gamma - bb) / bb});
  }

  const auto m = build_model(builtin_case(1));
  double homog = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double c = 0.1 + 9.9 * U(rng), t = 0.01 + U(rng), x = 0.01 + U(rng);
    if (std::abs(t - x) < 1e-3) continue;
    const double q = kernel_Q(t, x, m.coupling), r = kernel_R(t, x, m.coupling);
    homog = std::max({homog, std::abs(c * kernel_Q(c * t, c * x, m.coupling) - q) / std::abs(q),
                      std::abs(c * kernel_R(c * t, c * x, m.coupling) - r) / std::abs(r)});
  }

  double hg = 0.0, fd = 0.0, schwarz = 0.0;
  const double d = 1e-6;
  for (int k = 0; k < 500; ++k) {
    const C z(6 * U(rng) - 3, 8 * U(rng) + 0.2);
    hg = std::max(hg, std::abs(eval_H(z, m.symbol) / std::sinh(M_PI * z) - eval_G(z, m.symbol)) / std::abs(eval_G(z, m.symbol)));
    schwarz = std::max(schwarz, std::abs(eval_G(-std::conj(z), m.symbol) - std::conj(eval_G(z, m.symbol))) /
                                    std::abs(eval_G(z, m.symbol)));
    const C hp = eval_H_prime(z, m.symbol);
    fd = std::max(fd, std::abs(hp - (eval_H(z + d, m.symbol) - eval_H(z - d, m.symbol)) / (2 * d)) / std::abs(hp));
  }

  // zero pairing on a symbol with an off-axis zero
  SymbolParams off;
  off.h = 1.0;
  off.k0 = 0.14;
  off.weights = {-0.7, -2.4, -1.7, -2.9};
  off.mu_log = 2.1;
  const auto zo = minimal_zero(off, 6.0);
  const double pair = zo.found ? zo.pair_residual : INFINITY;

  SymbolParams glue = m.symbol;
  glue.weights = {0, 0, 0, 0};
  glue.h = 1.0;
  glue.k0 = 0.01;
  const auto zg = minimal_zero(glue, 12.0);
  const double glue_err = std::abs(static_cast<double>(zg.tau0_ext - 10.0L));

  const double secs = seconds_since(t0);
  detail("root identities %.2e, kernel homogeneity %.2e, H/sinh vs G %.2e, Schwarz %.2e, H' vs central difference %.2e",
         roots_err, homog, hg, schwarz, fd);
  detail("off-axis zero %.6g + %.6gi with mirror residual %.2e; glue-only zero error %.2e; %.2fs", zo.omega0, zo.tau0, pair,
         glue_err, secs);
  const bool pass = roots_err <= 1e-12 && homog <= 1e-12 && hg <= 1e-12 && schwarz <= 1e-12 && fd <= 1e-6 &&
                    pair <= 1e-10 && std::abs(zo.omega0) > 1e-6 && glue_err <= 1e-10 && secs <= 60.0;
  verdict(8, pass, "property suites within tolerance and under 60 s");
}

}  // namespace

int main() {
  std::vector<std::vector<ReproduceRow>> rows;
  for (int c = 1; c <= 3; ++c) rows.push_back(run_reproduce(c));
  std::vector<CaseRun> runs;
  for (int c = 1; c <= 3; ++c) runs.push_back(run_case(builtin_case(c)));
  const Model demo = build_model(load_config(PATCHCONTACT_SOURCE_DIR "/cases/demo.cfg"));

  criterion1(rows);
  criterion2(rows);
  criterion3(rows);
  criterion4(runs);
  criterion5(runs);
  criterion6(runs, demo);
  criterion7(runs, demo);
  criterion8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
