#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "patchcontact/quadrature.hpp"
#include "patchcontact/symbol.hpp"

namespace patchcontact {

struct GridOptions {
  int panel_nodes = 24;
  double first_break = 0.02;    // smallest nonzero panel breakpoint
  int panels_per_decade = 4;
  double cutoff = 0.0;          // S; 0 selects max(1e4, 1e3 a)
  double tail_tolerance = 2e-2; // max relative misfit of the c/t tail on [S/2, S]
};

// ln G1 on a symmetric composite Gauss-Legendre grid, G0 = R(s) G1(s) with
// R = (s^2 + a^2)/(s^2 + 1) factored in closed form when a > 0.
struct FactorizationGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> breaks;       // panel breakpoints, ascending
  std::vector<cplx> log_symbol;     // unwrapped ln G1 at nodes
  cplx tail_plus = 0.0;             // ln G1 ~ tail_plus / t for t > S
  cplx tail_minus = 0.0;            // ln G1 ~ tail_minus / t for t < -S
  double tail_fit_residual = 0.0;
  double cutoff = 0.0;
  double glue_a = 0.0;              // 0: no rational factor
  double winding = 0.0;
  std::function<cplx(double)> g_minus_one;  // G1 - 1 on the real line
};

FactorizationGrid build_grid(std::function<cplx(double)> g_minus_one, double glue_a,
                             const GridOptions& opt = {});
FactorizationGrid build_grid(const SymbolParams& p, const GridOptions& opt = {});

// ln G1 at an arbitrary real t on the branch of the grid.
cplx log_symbol_at(const FactorizationGrid& g, double t);

// (1/2 pi i) int ln G1(t) / (t - z) dt with closed-form tails, Im z != 0.
cplx cauchy_integral(const FactorizationGrid& g, cplx z);

// Canonical factor of G0 off the axis: X+(z) for Im z > 0, X-(z) for Im z < 0.
cplx factor_X(cplx z, const FactorizationGrid& g);

enum class Side { above, below };

// Plemelj boundary values X+(t), X-(t).
cplx boundary_X(double t, Side side, const FactorizationGrid& g);

// Numerical part only (no rational factor).
cplx boundary_X1(double t, Side side, const FactorizationGrid& g);
cplx factor_X1(cplx z, const FactorizationGrid& g);

struct StressProfile {
  std::vector<double> x;
  std::vector<double> tau;
  std::vector<double> psi;
  double exponent_fit = 0.0;
  double exponent_stderr = 0.0;
  double equilibrium = 0.0;
};

struct ExponentFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  int points = 0;
  int negative = 0;  // points with tau < 0 (fit uses |tau|)
};

ExponentFit fit_endpoint_exponent(const std::vector<double>& x, const std::vector<double>& tau,
                                  double lo, double hi);
ExponentFit fit_endpoint_exponent(const StressProfile& prof, double lo, double hi);

// Slope of ln|tau| against ln(1 - x) for 1 - x in [lo, hi]; zero for a finite nonzero limit at x = 1.
ExponentFit fit_exponent_at_one(const StressProfile& prof, double lo, double hi);

// Stress transform from the Wiener-Hopf solution:
//   K(z) = P X-(z) / (sqrt(2 pi) X-(0) (1 + i z)),  Im z <= 0.
cplx assemble_M(cplx z, const FactorizationGrid& g, double P);

enum class ConstantTerm { sqrt_two_pi, two_pi, none };

// Literal kernel form: M = P c + K1 + K2 - P/(2 sqrt(2 pi)), Im z < 0.
cplx assemble_M_printed(cplx z, const FactorizationGrid& g, double P, double lambda_hat, double k0,
                        ConstantTerm constant = ConstantTerm::sqrt_two_pi);

struct InversionOptions {
  double dt = 0.05;       // uniform t spacing
  double t_max = 1000.0;  // truncation of the t integral
  double shift = -1.0;    // contour height c; negative selects from tau0
  double tau0 = 0.0;      // minimal zero, used to choose the shift
  bool taper = true;      // Lanczos sigma factors against truncation ripple
};

// Default x grid: log-spaced toward 0 and 1 - log-spaced toward 1.
std::vector<double> default_x_grid(int n, double x_min = 1e-5, double one_minus_max = 1e-7);

StressProfile invert_tau(const std::vector<double>& xs, const SymbolParams& p,
                         const FactorizationGrid& g, double P, const InversionOptions& opt = {});

// Inversion of the literal kernel form on (0, 1) from its lower boundary values.
std::vector<double> invert_tau_printed(const std::vector<double>& xs, const FactorizationGrid& g,
                                       double P, double lambda_hat, double k0,
                                       double dt = 0.05, double t_max = 200.0);

}  // namespace patchcontact
