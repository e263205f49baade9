#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "patchcontact/coupling.hpp"
#include "patchcontact/errors.hpp"

namespace patchcontact {

// Weights of the coth, 1/sinh, e^{i mu z}/sinh and e^{-i mu z}/sinh terms.
//   kernel:  (lambda1, lambda2, lambda3/gamma1, lambda4/beta1), from transforming Q term by term
//   printed: (lambda1, lambda2, lambda3, lambda4)
enum class SymbolConvention { kernel, printed };

struct SymbolParams {
  double h = 0.0;
  double k0 = 0.0;
  std::array<double, 4> weights{};
  double mu_log = 1.0;
};

SymbolParams make_symbol_params(const CouplingCoefficients& c, double h, double k0,
                                SymbolConvention conv = SymbolConvention::kernel);

inline constexpr double kPoleGuard = 1e-8;

namespace detail {

template <class T>
std::complex<T> expm1c(std::complex<T> w) {
  const T x = w.real(), y = w.imag();
  const T s = std::sin(y / 2);
  return {std::expm1(x) * std::cos(y) - 2 * s * s, std::exp(x) * std::sin(y)};
}

// z = zr + i n with n the nearest integer to Im z; the shift is exact.
template <class T>
struct Reduced {
  std::complex<T> zr;
  long n;
  T parity;  // (-1)^n
};

template <class T>
Reduced<T> reduce(std::complex<T> z) {
  const T n = std::nearbyint(z.imag());
  const long ni = static_cast<long>(n);
  return {{z.real(), z.imag() - n}, ni, (ni % 2 == 0) ? T(1) : T(-1)};
}

template <class T>
std::complex<T> sinh_pi(std::complex<T> z) {
  auto r = reduce(z);
  return r.parity * std::sinh(std::numbers::pi_v<T> * r.zr);
}

template <class T>
std::complex<T> cosh_pi(std::complex<T> z) {
  auto r = reduce(z);
  return r.parity * std::cosh(std::numbers::pi_v<T> * r.zr);
}

// t1 = z coth(pi z), t2 = z/sinh(pi z), t3 = z e^{i mu z}/sinh(pi z), t4 = z e^{-i mu z}/sinh(pi z)
template <class T>
std::array<std::complex<T>, 4> symbol_terms(std::complex<T> z, T mu) {
  using C = std::complex<T>;
  const T pi = std::numbers::pi_v<T>;
  const C i(0, 1);
  if (std::abs(z) < T(1e-4)) {
    const C w = pi * z, w2 = w * w;
    const C zc = (T(1) + w2 / T(3) - w2 * w2 / T(45)) / pi;
    const C zs = (T(1) - w2 / T(6) + T(7) * w2 * w2 / T(360)) / pi;
    return {zc, zs, zs * std::exp(i * mu * z), zs * std::exp(-i * mu * z)};
  }
  auto r = reduce(z);
  const T sg = r.zr.real() >= 0 ? T(1) : T(-1);
  const C D = -expm1c(C(-2 * sg * pi) * r.zr);  // 1 - e^{-2 sg pi zr}
  if (D == C(0)) throw Error(ErrorCode::PoleAtEvaluation, "symbol evaluated at a pole of coth");
  const C e1 = std::exp(-sg * pi * r.zr);
  const C coth = sg * (T(2) - D) / D;
  const C base = r.parity * sg * T(2) * z / D;  // z / sinh(pi z) = base * e^{-sg pi zr}
  return {z * coth, base * e1, base * std::exp(i * mu * z - sg * pi * r.zr),
          base * std::exp(-i * mu * z - sg * pi * r.zr)};
}

template <class T>
std::complex<T> kernel_part(std::complex<T> z, const SymbolParams& p) {
  auto t = symbol_terms<T>(z, T(p.mu_log));
  const auto& w = p.weights;
  return T(p.h) / T(2) *
         (T(w[0]) * t[0] - T(w[1]) * t[1] - T(w[2]) * t[2] - T(w[3]) * t[3]);
}

}  // namespace detail

template <class T>
std::complex<T> eval_H_t(std::complex<T> z, const SymbolParams& p) {
  using C = std::complex<T>;
  const C i(0, 1);
  const T mu = p.mu_log, h = p.h, kh = T(p.k0) * T(p.h);
  const auto& w = p.weights;
  return detail::sinh_pi(z) * (T(1) + kh * z * z) +
         h / T(2) * (T(w[0]) * z * detail::cosh_pi(z) -
                     z * (T(w[1]) + T(w[2]) * std::exp(i * mu * z) + T(w[3]) * std::exp(-i * mu * z)));
}

template <class T>
std::complex<T> eval_H_prime_t(std::complex<T> z, const SymbolParams& p) {
  using C = std::complex<T>;
  const C i(0, 1);
  const T pi = std::numbers::pi_v<T>;
  const T mu = p.mu_log, h = p.h, kh = T(p.k0) * T(p.h);
  const auto& w = p.weights;
  const C s = detail::sinh_pi(z), c = detail::cosh_pi(z);
  const C ep = std::exp(i * mu * z), em = std::exp(-i * mu * z);
  return pi * c * (T(1) + kh * z * z) + T(2) * kh * z * s +
         h / T(2) * (T(w[0]) * (c + pi * z * s) - T(w[1]) - T(w[2]) * (T(1) + i * mu * z) * ep -
                     T(w[3]) * (T(1) - i * mu * z) * em);
}

template <class T>
std::complex<T> eval_G_t(std::complex<T> z, const SymbolParams& p) {
  auto r = detail::reduce(z);
  if (r.n != 0 && std::abs(r.zr) < T(kPoleGuard)) {
    if (r.zr == std::complex<T>(0))
      throw Error(ErrorCode::PoleAtEvaluation, "G evaluated exactly at a pole i n");
    return eval_H_t(z, p) / detail::sinh_pi(z);
  }
  const T kh = T(p.k0) * T(p.h);
  return T(1) + detail::kernel_part(z, p) + kh * z * z;
}

inline std::complex<double> eval_G(std::complex<double> z, const SymbolParams& p) {
  return eval_G_t(z, p);
}
inline std::complex<double> eval_H(std::complex<double> z, const SymbolParams& p) {
  return eval_H_t(z, p);
}
inline std::complex<double> eval_H_prime(std::complex<double> z, const SymbolParams& p) {
  return eval_H_prime_t(z, p);
}

// G0(s) = G(s) / (k0 h (1 + s^2)) on the real axis.
std::complex<double> eval_G0(double s, const SymbolParams& p);

// G1 - 1 where G0 = (s^2 + a^2)/(s^2 + 1) G1, a^2 = 1/(k0 h); valid for complex z.
std::complex<double> eval_G1_minus_one(std::complex<double> z, const SymbolParams& p);

// Removable value G(0).
double g_at_zero(const SymbolParams& p);

struct AxisScanSpec {
  double cutoff = 0.0;      // S; 0 selects automatically so that |G0 - 1| < 0.1 beyond
  int base_points = 4000;   // log-spaced per half-axis
  double t_min = 1e-6;      // smallest |s| of the log grid (0 is always included)
  int refine_budget = 200000;
};

struct AxisScan {
  int index = 0;
  double winding = 0.0;  // total arg increment / 2 pi, before rounding
  double min_re = 0.0;
  double argmin_re = 0.0;
  double cutoff = 0.0;
  int samples = 0;
};

// Winding of an arbitrary real-line symbol over [-S, S] by unwrapped arg increments.
AxisScan scan_symbol(const std::function<std::complex<double>(double)>& g, const AxisScanSpec& spec);

double choose_axis_cutoff(const SymbolParams& p);

int winding_index(const SymbolParams& p, const AxisScanSpec& spec = {});
double re_positivity_scan(const SymbolParams& p, const AxisScanSpec& spec = {});
AxisScan scan_G0(const SymbolParams& p, const AxisScanSpec& spec = {});

}  // namespace patchcontact
