#include "patchcontact/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace patchcontact {

GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<cplx(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  cplx fc = f(c);
  cplx k = fc * kWgk[7];
  cplx g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = hl * kXgk[j];
    cplx s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * hl, std::abs((k - g) * hl)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  heap.push(s0);
  cplx total = s0.value;
  double err = s0.error;
  out.evaluations = 15;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= max_intervals) {
      out.converged = false;
      break;
    }
    Segment s = heap.top();
    heap.pop();
    double m = 0.5 * (s.a + s.b);
    if (m <= s.a || m >= s.b) {
      out.converged = false;
      heap.push(s);
      break;
    }
    Segment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
    out.evaluations += 30;
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
  }
  // resum to limit drift from incremental updates
  cplx v = 0.0;
  double e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  out.value = v;
  out.error = e;
  return out;
}

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, double rel_tol, int max_intervals) {
  auto r = integrate_adaptive([&](double x) { return cplx(f(x), 0.0); }, a, b, abs_tol, rel_tol,
                              max_intervals);
  return r.value.real();
}

}  // namespace patchcontact
