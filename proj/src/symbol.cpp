#include "patchcontact/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace patchcontact {

SymbolParams make_symbol_params(const CouplingCoefficients& c, double h, double k0,
                                SymbolConvention conv) {
  SymbolParams p;
  p.h = h;
  p.k0 = k0;
  p.mu_log = c.mu_log;
  p.weights = c.lambda;
  if (conv == SymbolConvention::kernel) {
    p.weights[2] = c.lambda[2] / c.gamma1;
    p.weights[3] = c.lambda[3] / c.beta1;
  }
  return p;
}

std::complex<double> eval_G0(double s, const SymbolParams& p) {
  return eval_G(std::complex<double>(s, 0.0), p) / (p.k0 * p.h * (1.0 + s * s));
}

std::complex<double> eval_G1_minus_one(std::complex<double> z, const SymbolParams& p) {
  return detail::kernel_part<double>(z, p) / (1.0 + p.k0 * p.h * z * z);
}

double g_at_zero(const SymbolParams& p) {
  const auto& w = p.weights;
  return 1.0 + p.h * (w[0] - w[1] - w[2] - w[3]) / (2.0 * std::numbers::pi);
}

double choose_axis_cutoff(const SymbolParams& p) {
  double S = std::max(10.0, 10.0 / std::sqrt(p.k0 * p.h));
  for (int k = 0; k < 60; ++k) {
    if (std::abs(eval_G0(S, p) - 1.0) < 0.1 && std::abs(eval_G0(-S, p) - 1.0) < 0.1) return S;
    S *= 2.0;
  }
  throw Error(ErrorCode::UnresolvedWinding, "no cutoff with |G0 - 1| < 0.1 found");
}

AxisScan scan_symbol(const std::function<std::complex<double>(double)>& g, const AxisScanSpec& spec) {
  const double S = spec.cutoff;
  std::vector<double> s;
  const int m = spec.base_points;
  const double l0 = std::log(spec.t_min), l1 = std::log(S);
  for (int k = m - 1; k >= 0; --k) s.push_back(-std::exp(l0 + (l1 - l0) * k / (m - 1)));
  s.push_back(0.0);
  for (int k = 0; k < m; ++k) s.push_back(std::exp(l0 + (l1 - l0) * k / (m - 1)));

  AxisScan out;
  out.cutoff = S;
  out.min_re = std::numeric_limits<double>::infinity();
  auto note = [&](double t, std::complex<double> v) {
    ++out.samples;
    if (v.real() < out.min_re) {
      out.min_re = v.real();
      out.argmin_re = t;
    }
  };

  double total = 0.0;
  int budget = spec.refine_budget;
  // Recursive bisection until each arg step is below pi/4.
  std::function<void(double, std::complex<double>, double, std::complex<double>, int)> walk =
      [&](double a, std::complex<double> ga, double b, std::complex<double> gb, int depth) {
        double d = std::arg(gb / ga);
        if (std::abs(d) <= std::numbers::pi / 4 || depth > 60) {
          if (std::abs(d) > std::numbers::pi / 4)
            throw Error(ErrorCode::UnresolvedWinding, "arg step not resolved by bisection");
          total += d;
          return;
        }
        if (--budget < 0) throw Error(ErrorCode::UnresolvedWinding, "refinement budget exhausted");
        double c = 0.5 * (a + b);
        auto gc = g(c);
        note(c, gc);
        walk(a, ga, c, gc, depth + 1);
        walk(c, gc, b, gb, depth + 1);
      };

  auto prev = g(s[0]);
  note(s[0], prev);
  for (size_t k = 1; k < s.size(); ++k) {
    auto cur = g(s[k]);
    note(s[k], cur);
    walk(s[k - 1], prev, s[k], cur, 0);
    prev = cur;
  }
  out.winding = total / (2.0 * std::numbers::pi);
  out.index = static_cast<int>(std::lround(out.winding));
  return out;
}

AxisScan scan_G0(const SymbolParams& p, const AxisScanSpec& spec) {
  AxisScanSpec sp = spec;
  if (sp.cutoff <= 0.0) sp.cutoff = choose_axis_cutoff(p);
  return scan_symbol([&](double s) { return eval_G0(s, p); }, sp);
}

int winding_index(const SymbolParams& p, const AxisScanSpec& spec) { return scan_G0(p, spec).index; }

double re_positivity_scan(const SymbolParams& p, const AxisScanSpec& spec) {
  return scan_G0(p, spec).min_re;
}

}  // namespace patchcontact
