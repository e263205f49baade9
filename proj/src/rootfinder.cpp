#include "patchcontact/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "patchcontact/quadrature.hpp"

namespace patchcontact {

namespace {

using ld = long double;
using cld = std::complex<ld>;

constexpr double kStripEta = 1e-3;

cplx log_derivative(const SymbolParams& p, cplx z) {
  cplx h = eval_H(z, p);
  if (h == cplx(0.0)) throw Error(ErrorCode::ContourThroughZero, "H vanishes on the contour");
  return eval_H_prime(z, p) / h;
}

// Nearest H-zero to i n by a few Newton steps; H(i n) is tiny when the kernel is weak.
bool paired_zero(const SymbolParams& p, long n, cld* where) {
  cld z(0, static_cast<ld>(n));
  if (eval_H_t(z, p) == cld(0)) {
    if (where) *where = z;
    return true;
  }
  for (int it = 0; it < 8; ++it) {
    cld d = eval_H_prime_t(z, p);
    if (d == cld(0)) return false;
    cld step = eval_H_t(z, p) / d;
    z -= step;
    if (std::abs(step) < 1e-20L) break;
  }
  if (where) *where = z;
  return std::abs(eval_H_t(z, p)) <= 1e-12L * std::abs(eval_H_prime_t(z, p)) + 1e-300L &&
         std::abs(z - cld(0, static_cast<ld>(n))) < static_cast<ld>(kPoleGuard);
}

bool inside(const Rect& r, cplx z) {
  return z.real() > r.x0 && z.real() < r.x1 && z.imag() > r.y0 && z.imag() < r.y1;
}

}  // namespace

ContourCount count_zeros_H(const SymbolParams& p, const Rect& r) {
  const cplx c[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
  cplx total = 0.0;
  double err = 0.0;
  int evals = 0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = c[e], b = c[(e + 1) % 4];
    const cplx d = b - a;
    auto f = [&](double s) { return log_derivative(p, a + s * d) * d; };
    auto q = integrate_adaptive(f, 0.0, 1.0, 1e-4, 1e-10, 20000);
    if (!q.converged) throw Error(ErrorCode::QuadratureNotConverged, "edge integral of H'/H");
    total += q.value;
    err += q.error;
    evals += q.evaluations;
  }
  const cplx w = total / cplx(0.0, 2.0 * std::numbers::pi);
  ContourCount out;
  out.raw = w.real();
  out.imag = w.imag();
  out.error = err / (2.0 * std::numbers::pi);
  out.evaluations = evals;
  out.count = static_cast<int>(std::lround(out.raw));
  if (out.error >= 0.25 || std::abs(out.raw - out.count) >= 0.25)
    throw Error(ErrorCode::QuadratureNotConverged, "winding not within 0.25 of an integer");
  return out;
}

int count_zeros(const SymbolParams& p, const Rect& r) {
  int n = count_zeros_H(p, r).count;
  for (long k = static_cast<long>(std::ceil(r.y0)); k <= static_cast<long>(std::floor(r.y1)); ++k) {
    if (!(r.x0 < 0.0 && r.x1 > 0.0)) break;
    cld z;
    if (paired_zero(p, k, &z) && inside(r, cplx(0.0, static_cast<double>(k)))) --n;
  }
  return n;
}

RefinedZero refine_zero(const SymbolParams& p, std::complex<double> guess) {
  cld z(guess.real(), guess.imag());
  RefinedZero out;
  const ld start = std::abs(z);
  for (int it = 0; it < 60; ++it) {
    cld d = eval_H_prime_t(z, p);
    cld h = eval_H_t(z, p);
    if (!(std::abs(d) > 0.0L) || !std::isfinite(static_cast<double>(std::abs(d))))
      throw Error(ErrorCode::DerivativeVanished, "H' vanishes at the Newton iterate");
    cld step = h / d;
    z -= step;
    out.iterations = it + 1;
    out.last_step = static_cast<double>(std::abs(step));
    if (!std::isfinite(static_cast<double>(std::abs(z))) || std::abs(z) > 1e3L * (1.0L + start))
      throw Error(ErrorCode::NewtonDiverged, "Newton iterate left the search region");
    if (std::abs(step) <= 1e-13L * (1.0L + std::abs(z))) {
      // two more steps to settle in extended precision
      for (int k = 0; k < 2; ++k) {
        cld dd = eval_H_prime_t(z, p);
        if (std::abs(dd) > 0.0L) z -= eval_H_t(z, p) / dd;
      }
      break;
    }
    if (it == 59) throw Error(ErrorCode::NewtonDiverged, "no convergence in 60 iterations");
  }
  out.re = z.real();
  out.im = z.imag();
  out.h_residual = static_cast<double>(std::abs(eval_H_t(z, p)));
  out.h_prime = static_cast<double>(std::abs(eval_H_prime_t(z, p)));
  const ld n = std::nearbyint(z.imag());
  if (std::abs(z - cld(0, n)) < static_cast<ld>(kPoleGuard)) {
    // limit of G = H / sinh at i n
    const cld in(0, n);
    const ld g_lim = std::abs(eval_H_prime_t(in, p) / (std::numbers::pi_v<ld> * detail::cosh_pi(in)));
    if (g_lim > 1e-10L) {
      std::ostringstream os;
      os << "Newton converged to within the pole guard of " << static_cast<double>(n) << "i";
      throw Error(ErrorCode::GuardedPole, os.str());
    }
    out.residual = static_cast<double>(g_lim);
  } else {
    out.residual = static_cast<double>(std::abs(eval_G_t(z, p)));
  }
  return out;
}

double exclusion_radius(const SymbolParams& p, double y0, double y1) {
  const double kh = p.k0 * p.h;
  const auto& w = p.weights;
  auto dominated = [&](double x) {
    for (int j = 0; j <= 40; ++j) {
      const double y = y0 + (y1 - y0) * j / 40.0;
      const cplx z(x, y);
      const double lhs = std::sinh(std::numbers::pi * std::abs(x)) * std::abs(1.0 + kh * z * z);
      const double rhs = 0.5 * p.h * std::abs(z) *
                         (std::abs(w[0]) * std::cosh(std::numbers::pi * x) + std::abs(w[1]) +
                          std::abs(w[2]) * std::exp(-p.mu_log * y) + std::abs(w[3]) * std::exp(p.mu_log * y));
      if (!(lhs > 2.0 * rhs)) return false;
    }
    return true;
  };
  double R = 2.0;
  for (int k = 0; k < 40; ++k, R *= 1.5) {
    bool ok = true;
    for (int j = 0; j <= 12 && ok; ++j) ok = dominated(R * (1.0 + 0.25 * j));
    if (ok) return R;
  }
  throw Error(ErrorCode::QuadratureNotConverged, "no exclusion radius found for the strip");
}

namespace {

struct Located {
  cplx z;
  int multiplicity;
};

struct Locator {
  const SymbolParams& p;
  std::vector<Located> zeros;
  bool multiple = false;
  double max_error = 0.0;

  int count(const Rect& r) {
    ContourCount c = count_zeros_H(p, r);
    max_error = std::max(max_error, c.error);
    return c.count;
  }

  bool newton(const Rect& r, cplx seed) {
    cld z(seed.real(), seed.imag());
    for (int it = 0; it < 80; ++it) {
      cld d = eval_H_prime_t(z, p);
      if (!(std::abs(d) > 0.0L)) return false;
      cld step = eval_H_t(z, p) / d;
      z -= step;
      if (!std::isfinite(static_cast<double>(std::abs(z)))) return false;
      if (std::abs(step) <= 1e-15L * (1.0L + std::abs(z))) {
        const cplx zd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        if (!inside(r, zd)) return false;
        zeros.push_back({zd, 1});
        return true;
      }
    }
    return false;
  }

  void locate(const Rect& r) { locate(r, count(r), 0); }

  void locate(const Rect& r, int k, int depth) {
    if (k <= 0) return;
    const double w = r.x1 - r.x0, hgt = r.y1 - r.y0;
    const cplx centre(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
    if (k == 1) {
      // zeros of weakly coupled symbols sit next to i n
      const double n = std::nearbyint(centre.imag());
      if (r.x0 < 0.0 && r.x1 > 0.0 && r.y0 < n && r.y1 > n && newton(r, cplx(0.0, n))) return;
      if (w <= 0.5 && newton(r, centre)) return;
      if (w < 1e-9 && hgt < 1e-9) {
        zeros.push_back({centre, 1});
        return;
      }
    } else if (w < 1e-6 && hgt < 1e-6) {
      zeros.push_back({centre, k});
      return;
    }
    if (depth > 80) throw Error(ErrorCode::QuadratureNotConverged, "zero isolation did not terminate");
    // Split the longer side off-centre; retry at another position if the children
    // do not add up, which happens when a cut passes very close to a zero.
    static constexpr double fractions[] = {0.5123456789, 0.3719, 0.6283, 0.4441, 0.5807};
    for (double f : fractions) {
      Rect a = r, b = r;
      if (w >= hgt) {
        a.x1 = b.x0 = r.x0 + f * w;
      } else {
        a.y1 = b.y0 = r.y0 + f * hgt;
      }
      int ka = 0, kb = 0;
      try {
        ka = count(a);
        kb = count(b);
      } catch (const Error&) {
        continue;
      }
      if (ka + kb != k) continue;
      locate(a, ka, depth + 1);
      locate(b, kb, depth + 1);
      return;
    }
    throw Error(ErrorCode::ContourThroughZero, "subdivision counts inconsistent after nudging");
  }
};

}  // namespace

ZeroLocation minimal_zero(const SymbolParams& p, double tau_max) {
  ZeroLocation out;
  const int nmax = static_cast<int>(std::ceil(tau_max));
  const double R = exclusion_radius(p, -kStripEta, nmax + kStripEta);
  out.exclusion_radius = R;
  const double eta = kStripEta;

  // Zeros near the lines Im z = n, found once and shared between strips n and n+1.
  // One H-zero next to each i n belongs to sinh and is dropped.
  std::vector<std::vector<Located>> slab_zeros(nmax + 1);
  std::vector<int> paired(nmax + 1, 0);
  Locator loc{p, {}, false, 0.0};
  for (int n = 0; n <= nmax; ++n) {
    loc.zeros.clear();
    loc.locate({-R, R, n - eta, n + eta});
    auto zs = loc.zeros;
    cld pz;
    if (paired_zero(p, n, &pz)) {
      size_t best = zs.size();
      double dmin = 1e300;
      for (size_t j = 0; j < zs.size(); ++j) {
        const double d = std::abs(zs[j].z - cplx(0.0, n));
        if (d < dmin) {
          dmin = d;
          best = j;
        }
      }
      if (best < zs.size() && dmin < 1e-6) {
        paired[n] = 1;
        if (--zs[best].multiplicity == 0) zs.erase(zs.begin() + best);
      }
    }
    slab_zeros[n] = zs;
  }

  for (int n = 1; n <= nmax; ++n) {
    StripCount sc;
    sc.n = n;
    loc.zeros.clear();
    loc.locate({-R, R, n - 1 + eta, n - eta});
    std::vector<Located> found = loc.zeros;
    for (const auto& z : slab_zeros[n - 1])
      if (z.z.imag() > n - 1) found.push_back(z);
    for (const auto& z : slab_zeros[n])
      if (z.z.imag() <= n) found.push_back(z);
    sc.paired = paired[n];
    for (const auto& z : found) {
      sc.count += z.multiplicity;
      if (z.multiplicity > 1) loc.multiple = true;
    }
    sc.error = loc.max_error;
    out.strip_counts.push_back(sc);
    if (!out.found && !found.empty()) {
      out.found = true;
      for (const auto& z : found) out.zeros_in_strip.push_back(z.z);
    }
  }
  out.max_count_error = loc.max_error;
  out.multiple = loc.multiple;
  out.strip1_empty = !out.strip_counts.empty() && out.strip_counts[0].count == 0;
  if (!out.found) return out;

  // Minimal Im; ties broken toward the nonnegative real part.
  cplx best = out.zeros_in_strip[0];
  for (cplx z : out.zeros_in_strip)
    if (z.imag() < best.imag() - 1e-12 || (std::abs(z.imag() - best.imag()) <= 1e-12 && z.real() > best.real()))
      best = z;
  RefinedZero rz = refine_zero(p, best);
  out.omega0_ext = rz.re;
  out.tau0_ext = rz.im;
  out.omega0 = static_cast<double>(rz.re);
  out.tau0 = static_cast<double>(rz.im);
  out.residual = rz.residual;
  out.h_prime = rz.h_prime;
  out.last_step = rz.last_step;
  out.pair_residual = rz.residual;
  if (std::abs(out.omega0) > 1e-10) {
    RefinedZero mz = refine_zero(p, cplx(-out.omega0, out.tau0));
    out.pair_residual = mz.residual;
  }
  return out;
}

}  // namespace patchcontact
