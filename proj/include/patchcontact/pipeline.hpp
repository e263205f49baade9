#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "patchcontact/config.hpp"
#include "patchcontact/coupling.hpp"
#include "patchcontact/factorization.hpp"
#include "patchcontact/oracle.hpp"
#include "patchcontact/rootfinder.hpp"
#include "patchcontact/symbol.hpp"

namespace patchcontact {

extern const char* const kVersion;

struct Model {
  CaseConfig cfg;
  OrthotropicHalfPlane hp1, hp2;
  CouplingCoefficients coupling;  // kernel coefficients after kernel_scale
  SymbolParams symbol;
  double k0 = 0.0;
};

Model build_model(const CaseConfig& cfg);

void print_params(std::ostream& os, const Model& m);

struct RootsReport {
  AxisScan scan;
  ZeroLocation zero;
  double seconds = 0.0;
};

RootsReport run_roots(const Model& m);
void print_roots(std::ostream& os, const RootsReport& r);

// Stress abscissae reaching into the glue boundary layer at x = 1 (width 1/a, a = 1/sqrt(k0 h)).
std::vector<double> stress_grid(const Model& m, int grid_points);

// 1 - x window for the exponent at x = 1, two decades inside the boundary layer.
std::pair<double, double> layer_window(const Model& m);

struct StressReport {
  RootsReport roots;
  StressProfile profile;
  ExponentFit near_zero;
  ExponentFit near_one;           // ln|tau| against ln(1 - x) inside the boundary layer
  ExponentFit near_one_interior;  // ln|tau| against ln x on [0.95, 0.999]
  bool near_zero_ok = false, near_one_ok = false, near_one_interior_ok = false;
  std::string hash;
};

StressReport run_stress(const Model& m, int grid_points);
void write_csv(std::ostream& os, const StressReport& r);

// Collocation versus transform on [0.05, 0.95].
struct Comparison {
  double l2 = 0.0;
  double rcond = 0.0;
  double patch = 0.0;
  double oracle_equilibrium = 0.0;
  double checkerboard = 0.0;
};
Comparison compare_with_oracle(const Model& m, const RootsReport& roots, const FactorizationGrid& g);

// Literal kernel form against the collocation solution, for each lambda_hat candidate.
struct Arbitration {
  std::vector<std::pair<std::string, double>> l2;  // candidate -> relative L2
  std::string best;
  double closed_form_l2 = 0.0;
};
Arbitration arbitrate_constants(const Model& m, const RootsReport& roots, const FactorizationGrid& g);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool hard = true;
  std::string note;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool hard_pass() const;
};

// Max relative |X+/X- / G0 - 1| on a 100-point axis grid, G0 taken from truth.
double plemelj_error(const SymbolParams& truth, const FactorizationGrid& g);

// Same with X taken just above and below the axis from the Cauchy integral.
double offaxis_jump_error(const SymbolParams& truth, const FactorizationGrid& g);

// inject_fault builds the factorization from a symbol with the kernel sign-flipped and checks it
// against the true symbol.
VerifyReport run_verify(const Model& m, bool inject_fault = false);
void print_verify(std::ostream& os, const VerifyReport& r);

struct PaperRow {
  int n;
  double omega0, tau0;
};
std::vector<PaperRow> paper_rows(int case_id);

struct ReproduceRow {
  int n = 0;
  double k0 = 0.0;
  ZeroLocation zero;
  PaperRow paper{};
  double tau_rel = 0.0;      // (tau0 - paper) / paper
  double omega_abs = 0.0;    // |omega0 - paper|
  double paper_residual = 0.0;      // |G| of the implemented symbol at the paper's zero
  std::complex<double> implied_w4h;  // h w4 that would put a zero at the paper's point
  double seconds = 0.0;
};

std::vector<ReproduceRow> run_reproduce(int case_id, double tau_max = 0.0);
void print_reproduce(std::ostream& os, int case_id, const std::vector<ReproduceRow>& rows, double w4h);

}  // namespace patchcontact
