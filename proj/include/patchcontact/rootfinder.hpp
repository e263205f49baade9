#pragma once

#include <complex>
#include <vector>

#include "patchcontact/symbol.hpp"

namespace patchcontact {

struct Rect {
  double x0, x1, y0, y1;
};

struct ContourCount {
  int count = 0;          // rounded winding of H
  double raw = 0.0;       // (1/2 pi i) contour integral, real part
  double imag = 0.0;      // imaginary part, should vanish
  double error = 0.0;     // quadrature error estimate in units of zeros
  int evaluations = 0;
};

// Zeros of H inside rect by the argument principle.
ContourCount count_zeros_H(const SymbolParams& p, const Rect& rect);

// Zeros of G: H-zeros minus the pole-paired ones (within kPoleGuard of i n).
int count_zeros(const SymbolParams& p, const Rect& rect);

struct RefinedZero {
  long double re = 0, im = 0;
  double residual = 0.0;     // |G(z0)| in extended precision
  double h_residual = 0.0;   // |H(z0)|
  double h_prime = 0.0;      // |H'(z0)|
  double last_step = 0.0;
  int iterations = 0;
};

// Newton on H. Throws NewtonDiverged, DerivativeVanished, GuardedPole.
RefinedZero refine_zero(const SymbolParams& p, std::complex<double> guess);

struct StripCount {
  int n = 0;
  int count = 0;    // G-zeros with n-1 < Im z <= n
  int paired = 0;   // H-zeros discarded as pole-zero pairs
  double error = 0.0;
};

struct ZeroLocation {
  bool found = false;
  double omega0 = 0.0, tau0 = 0.0;
  long double omega0_ext = 0, tau0_ext = 0;
  double residual = 0.0;
  double h_prime = 0.0;
  double last_step = 0.0;
  double pair_residual = 0.0;  // residual at the refined mirror -conj(z0)
  bool multiple = false;
  bool strip1_empty = false;
  double exclusion_radius = 0.0;
  double max_count_error = 0.0;
  std::vector<StripCount> strip_counts;
  std::vector<std::complex<double>> zeros_in_strip;  // all zeros of the first nonempty strip
};

// Half-width beyond which H has no zeros for y0 <= Im z <= y1 (dominance of the sinh term).
double exclusion_radius(const SymbolParams& p, double y0, double y1);

ZeroLocation minimal_zero(const SymbolParams& p, double tau_max);

}  // namespace patchcontact
