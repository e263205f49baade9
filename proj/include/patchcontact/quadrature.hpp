#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace patchcontact {

using cplx = std::complex<double>;

struct GaussRule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

struct QuadResult {
  cplx value;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] for complex integrands.
QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals = 4000);

// Real convenience wrapper.
double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, double rel_tol, int max_intervals = 4000);

}  // namespace patchcontact
