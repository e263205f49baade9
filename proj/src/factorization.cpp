#include "patchcontact/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "patchcontact/errors.hpp"

namespace patchcontact {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx log1pc(cplx w) {
  if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
  return std::log(1.0 + w);
}

// -ln(1 - w)/w and ln(1 + w)/w, both -> 1 as w -> 0
cplx neg_log1m_over(cplx w) {
  if (std::abs(w) < 1e-4) return 1.0 + w * (0.5 + w * (1.0 / 3.0 + 0.25 * w));
  return -log1pc(-w) / w;
}
cplx log1p_over(cplx w) {
  if (std::abs(w) < 1e-4) return 1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w));
  return log1pc(w) / w;
}

// int_{|t|>S} f/(t - z) for f = c_plus/t (t > S) and c_minus/t (t < -S)
cplx tail_integral(const FactorizationGrid& g, cplx z) {
  const double S = g.cutoff;
  const cplx w = z / S;
  return (g.tail_plus * neg_log1m_over(w) + g.tail_minus * log1p_over(w)) / S;
}

const GaussRule& rule24() {
  static const GaussRule r = gauss_legendre(24);
  return r;
}

// int_a^b h(t)/(t - z) dt, bisecting panels that come closer to z than their width
cplx near_panel(const std::function<cplx(double)>& h, double a, double b, cplx z, int depth) {
  const double w = b - a;
  const double dx = std::max({a - z.real(), z.real() - b, 0.0});
  const double d = std::hypot(dx, z.imag());
  if (d < w && depth < 60) {
    const double m = 0.5 * (a + b);
    return near_panel(h, a, m, z, depth + 1) + near_panel(h, m, b, z, depth + 1);
  }
  const auto& r = rule24();
  cplx s = 0.0;
  const double c = 0.5 * (a + b), hl = 0.5 * w;
  for (size_t j = 0; j < r.x.size(); ++j) {
    const double t = c + hl * r.x[j];
    s += r.w[j] * h(t) / (t - z);
  }
  return s * hl;
}

}  // namespace

FactorizationGrid build_grid(std::function<cplx(double)> g_minus_one, double glue_a, const GridOptions& opt) {
  FactorizationGrid g;
  g.glue_a = glue_a;
  g.g_minus_one = std::move(g_minus_one);
  g.cutoff = opt.cutoff > 0.0 ? opt.cutoff : std::max(1e4, 1e3 * glue_a);
  const double S = g.cutoff;

  std::vector<double> pos = {0.0};
  for (int k = 0;; ++k) {
    const double b = opt.first_break * std::pow(10.0, static_cast<double>(k) / opt.panels_per_decade);
    if (b >= S) break;
    pos.push_back(b);
  }
  pos.push_back(S);
  for (size_t k = pos.size(); k-- > 1;) g.breaks.push_back(-pos[k]);
  for (double b : pos) g.breaks.push_back(b);

  const GaussRule r = gauss_legendre(opt.panel_nodes);
  for (size_t k = 0; k + 1 < g.breaks.size(); ++k) {
    const double c = 0.5 * (g.breaks[k] + g.breaks[k + 1]), hl = 0.5 * (g.breaks[k + 1] - g.breaks[k]);
    for (size_t j = 0; j < r.x.size(); ++j) {
      g.nodes.push_back(c + hl * r.x[j]);
      g.weights.push_back(hl * r.w[j]);
    }
  }

  g.log_symbol.resize(g.nodes.size());
  double prev = 0.0;
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    cplx f = log1pc(g.g_minus_one(g.nodes[j]));
    if (j > 0) {
      const double k = std::round((prev - f.imag()) / (2.0 * kPi));
      f += cplx(0.0, 2.0 * kPi * k);
    }
    prev = f.imag();
    g.log_symbol[j] = f;
  }
  g.winding = (g.log_symbol.back().imag() - g.log_symbol.front().imag()) / (2.0 * kPi);
  if (std::abs(g.winding) >= 0.5) {
    std::ostringstream os;
    os << "winding " << g.winding << " over [-S, S]";
    throw Error(ErrorCode::IndexNonzero, os.str());
  }

  // Least-squares c/t fit on S/2 <= |t| <= S for each side.
  auto fit = [&](int sign, double* resid) {
    cplx num = 0.0;
    double den = 0.0, fmax = 0.0;
    for (size_t j = 0; j < g.nodes.size(); ++j) {
      const double t = g.nodes[j];
      if (sign * t < 0.5 * S) continue;
      num += g.log_symbol[j] / t;
      den += 1.0 / (t * t);
      fmax = std::max(fmax, std::abs(g.log_symbol[j]));
    }
    const cplx c = num / den;
    double r = 0.0;
    for (size_t j = 0; j < g.nodes.size(); ++j) {
      const double t = g.nodes[j];
      if (sign * t < 0.5 * S) continue;
      r = std::max(r, std::abs(g.log_symbol[j] - c / t));
    }
    *resid = fmax > 0.0 ? r / fmax : 0.0;
    return c;
  };
  double rp = 0.0, rm = 0.0;
  g.tail_plus = fit(1, &rp);
  g.tail_minus = fit(-1, &rm);
  g.tail_fit_residual = std::max(rp, rm);
  if (g.tail_fit_residual > opt.tail_tolerance) {
    std::ostringstream os;
    os << "c/t tail misfit " << g.tail_fit_residual << " on [S/2, S], S = " << S;
    throw Error(ErrorCode::TailUnresolved, os.str());
  }
  return g;
}

FactorizationGrid build_grid(const SymbolParams& p, const GridOptions& opt) {
  SymbolParams q = p;
  return build_grid([q](double t) { return eval_G1_minus_one(cplx(t, 0.0), q); },
                    1.0 / std::sqrt(p.k0 * p.h), opt);
}

cplx log_symbol_at(const FactorizationGrid& g, double t) {
  cplx f = log1pc(g.g_minus_one(t));
  auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), t);
  size_t j = static_cast<size_t>(it - g.nodes.begin());
  if (j == g.nodes.size()) j = g.nodes.size() - 1;
  if (j > 0 && std::abs(g.nodes[j - 1] - t) < std::abs(g.nodes[j] - t)) --j;
  const double k = std::round((g.log_symbol[j].imag() - f.imag()) / (2.0 * kPi));
  return f + cplx(0.0, 2.0 * kPi * k);
}

cplx cauchy_integral(const FactorizationGrid& g, cplx z) {
  const double S = g.cutoff;
  const double x0 = z.real();
  const bool subtract = std::abs(x0) < S;
  const cplx f0 = subtract ? log_symbol_at(g, x0) : cplx(0.0);
  auto h = [&](double t) { return log_symbol_at(g, t) - f0; };

  cplx sum = 0.0;
  const size_t per = rule24().x.size();
  const bool stored = g.nodes.size() == (g.breaks.size() - 1) * per;
  for (size_t k = 0; k + 1 < g.breaks.size(); ++k) {
    const double a = g.breaks[k], b = g.breaks[k + 1];
    const double dx = std::max({a - x0, x0 - b, 0.0});
    if (stored && std::hypot(dx, z.imag()) >= b - a) {
      for (size_t j = k * per; j < (k + 1) * per; ++j)
        sum += g.weights[j] * (g.log_symbol[j] - f0) / (g.nodes[j] - z);
    } else {
      sum += near_panel(h, a, b, z, 0);
    }
  }
  if (subtract) sum += f0 * (std::log(S - z) - std::log(-S - z));
  sum += tail_integral(g, z);
  return sum / (2.0 * kPi * kI);
}

cplx factor_X1(cplx z, const FactorizationGrid& g) { return std::exp(cauchy_integral(g, z)); }

cplx factor_X(cplx z, const FactorizationGrid& g) {
  cplx x = factor_X1(z, g);
  if (g.glue_a > 0.0) {
    const double a = g.glue_a;
    x *= z.imag() > 0.0 ? (z + kI * a) / (z + kI) : (z - kI) / (z - kI * a);
  }
  return x;
}

namespace {

// PV int_{-S}^{S} f(tau)/(tau - t) dtau + tails, for real |t| < S.
cplx principal_value(const FactorizationGrid& g, double t, cplx ft) {
  const double S = g.cutoff;
  cplx sum = 0.0;
  const double tol = 1e-9 * (1.0 + std::abs(t));
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    const double d = g.nodes[j] - t;
    if (std::abs(d) < tol) {
      // node collision: use the derivative limit of the difference quotient
      const double hstep = 1e-5 * (1.0 + std::abs(t));
      sum += g.weights[j] * (log_symbol_at(g, t + hstep) - log_symbol_at(g, t - hstep)) / (2.0 * hstep);
      continue;
    }
    sum += g.weights[j] * (g.log_symbol[j] - ft) / d;
  }
  sum += ft * std::log((S - t) / (S + t));
  sum += tail_integral(g, cplx(t, 0.0));
  return sum;
}

}  // namespace

cplx boundary_X1(double t, Side side, const FactorizationGrid& g) {
  if (std::abs(t) >= g.cutoff) throw Error(ErrorCode::NodeCollision, "boundary value requested beyond the grid cutoff");
  const cplx ft = log_symbol_at(g, t);
  const cplx pv = principal_value(g, t, ft) / (2.0 * kPi * kI);
  return std::exp((side == Side::above ? 0.5 : -0.5) * ft + pv);
}

cplx boundary_X(double t, Side side, const FactorizationGrid& g) {
  cplx x = boundary_X1(t, side, g);
  if (g.glue_a > 0.0) {
    const double a = g.glue_a;
    x *= side == Side::above ? (t + kI * a) / (t + kI) : (t - kI) / (t - kI * a);
  }
  return x;
}

ExponentFit fit_endpoint_exponent(const std::vector<double>& x, const std::vector<double>& tau, double lo,
                                  double hi) {
  std::vector<double> lx, ly;
  ExponentFit out;
  for (size_t k = 0; k < x.size(); ++k) {
    if (x[k] < lo || x[k] > hi) continue;
    if (tau[k] < 0.0) ++out.negative;
    if (tau[k] == 0.0) continue;
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(std::abs(tau[k])));
  }
  out.points = static_cast<int>(lx.size());
  if (out.points < 8) throw Error(ErrorCode::NonPositiveTau, "fewer than 8 usable points in the fit window");
  const double n = out.points;
  double mx = 0, my = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  out.slope = sxy / sxx;
  double ss = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    const double e = ly[k] - my - out.slope * (lx[k] - mx);
    ss += e * e;
  }
  out.stderr_ = std::sqrt(ss / std::max(1.0, n - 2.0) / sxx);
  return out;
}

ExponentFit fit_endpoint_exponent(const StressProfile& prof, double lo, double hi) {
  return fit_endpoint_exponent(prof.x, prof.tau, lo, hi);
}

ExponentFit fit_exponent_at_one(const StressProfile& prof, double lo, double hi) {
  std::vector<double> u, tau;
  for (size_t k = prof.x.size(); k-- > 0;) {
    u.push_back(1.0 - prof.x[k]);
    tau.push_back(prof.tau[k]);
  }
  return fit_endpoint_exponent(u, tau, lo, hi);
}

cplx assemble_M(cplx z, const FactorizationGrid& g, double P) {
  if (z.imag() > 0.0) throw Error(ErrorCode::ValidationError, "assemble_M requires Im z <= 0");
  const cplx xm0 = boundary_X(0.0, Side::below, g);
  const cplx xz = z.imag() == 0.0 ? boundary_X(z.real(), Side::below, g) : factor_X(z, g);
  return P * xz / (std::sqrt(2.0 * kPi) * xm0 * (1.0 + kI * z));
}

namespace {

double constant_value(ConstantTerm c) {
  switch (c) {
    case ConstantTerm::sqrt_two_pi: return 1.0 / std::sqrt(2.0 * kPi);
    case ConstantTerm::two_pi: return 1.0 / (2.0 * kPi);
    case ConstantTerm::none: return 0.0;
  }
  return 0.0;
}

// coth(pi t) - 1/(pi t), smooth through 0
double coth_reg(double t) {
  const double w = kPi * t;
  if (std::abs(w) < 1e-3) return w / 3.0 - w * w * w / 45.0;
  return 1.0 / std::tanh(w) - 1.0 / w;
}

struct PrintedData {
  std::vector<cplx> h0;  // 1/(X+(t)(t+i)) at nodes
  cplx h0_zero;          // value at t = 0
  cplx pv_h0_over_t;     // PV int h0(t)/t dt
};

PrintedData printed_data(const FactorizationGrid& g) {
  PrintedData d;
  d.h0.resize(g.nodes.size());
  for (size_t j = 0; j < g.nodes.size(); ++j)
    d.h0[j] = 1.0 / (boundary_X(g.nodes[j], Side::above, g) * (g.nodes[j] + kI));
  d.h0_zero = 1.0 / (boundary_X(0.0, Side::above, g) * kI);
  cplx s = 0.0;
  for (size_t j = 0; j < g.nodes.size(); ++j) s += g.weights[j] * (d.h0[j] - d.h0_zero) / g.nodes[j];
  s += 2.0 / g.cutoff;  // h0 ~ 1/t beyond the grid
  d.pv_h0_over_t = s;
  return d;
}

// J(z) = int coth(pi t) / (X+(t)(t+i)(t-z)) dt for Im z < 0 (PV at t = 0).
cplx printed_J(const FactorizationGrid& g, const PrintedData& d, cplx z) {
  const double S = g.cutoff;
  cplx a0 = 0.0, a1 = 0.0;
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    const double t = g.nodes[j];
    a0 += g.weights[j] * d.h0[j] / (t - z);
    a1 += g.weights[j] * coth_reg(t) * d.h0[j] / (t - z);
  }
  const cplx w = z / S;
  a0 += (neg_log1m_over(w) + log1p_over(w)) / S;
  a1 += (neg_log1m_over(w) - log1p_over(w)) / S;
  return a1 + (a0 - d.pv_h0_over_t) / (kPi * z);
}

// Boundary value of J from below: PV - i pi h(t).
cplx printed_J_minus(const FactorizationGrid& g, const PrintedData& d, double t) {
  const double S = g.cutoff;
  const cplx h0t = 1.0 / (boundary_X(t, Side::above, g) * (t + kI));
  const cplx h1t = coth_reg(t) * h0t;
  cplx a0 = 0.0, a1 = 0.0;
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    const double dt = g.nodes[j] - t;
    if (std::abs(dt) < 1e-12 * (1.0 + std::abs(t))) continue;
    a0 += g.weights[j] * (d.h0[j] - h0t) / dt;
    a1 += g.weights[j] * (coth_reg(g.nodes[j]) * d.h0[j] - h1t) / dt;
  }
  const double L = std::log((S - t) / (S + t));
  const cplx w(t / S, 0.0);
  a0 += h0t * L + (neg_log1m_over(w) + log1p_over(w)) / S - kI * kPi * h0t;
  a1 += h1t * L + (neg_log1m_over(w) - log1p_over(w)) / S - kI * kPi * h1t;
  return a1 + (a0 - d.pv_h0_over_t) / (kPi * t);
}

cplx printed_M_from(cplx z, cplx xz, cplx J, double P, double lambda_hat, double k0, ConstantTerm constant) {
  const double r2p = std::sqrt(2.0 * kPi);
  const cplx K2 = P * z * xz / (2.0 * r2p * (z - kI));
  const cplx K1 = -(lambda_hat * P * kI * z * xz) / (2.0 * kPi * r2p * k0 * (z - kI)) * J;
  return P * constant_value(constant) + K1 + K2 - P / (2.0 * r2p);
}

}  // namespace

cplx assemble_M_printed(cplx z, const FactorizationGrid& g, double P, double lambda_hat, double k0,
                        ConstantTerm constant) {
  if (!(z.imag() < 0.0)) throw Error(ErrorCode::ValidationError, "assemble_M_printed requires Im z < 0");
  if (P == 0.0) return 0.0;
  const PrintedData d = printed_data(g);
  return printed_M_from(z, factor_X(z, g), printed_J(g, d, z), P, lambda_hat, k0, constant);
}

std::vector<double> default_x_grid(int n, double x_min, double one_minus_max) {
  // half the points log-spaced toward 0, half toward 1, meeting at 0.5
  std::vector<double> xs;
  const int h = n / 2;
  for (int k = 0; k < h; ++k) xs.push_back(std::exp(std::log(x_min) + (std::log(0.5) - std::log(x_min)) * k / h));
  for (int k = 0; k < n - h; ++k) {
    const double e = std::exp(std::log(0.5) + (std::log(one_minus_max) - std::log(0.5)) * k / (n - h - 1));
    xs.push_back(1.0 - e);
  }
  return xs;
}

namespace {

std::vector<double> uniform_t(double dt, double t_max) {
  const long K = std::lround(t_max / dt);
  std::vector<double> t;
  t.reserve(2 * K);
  for (long k = -K; k < K; ++k) t.push_back((k + 0.5) * dt);
  return t;
}

// sum_k F_k e^{-i t_k xi} dt, phases by recurrence in blocks to bound drift
cplx oscillatory_sum(const std::vector<double>& t, const std::vector<cplx>& F, double dt, double xi) {
  const cplx step = std::exp(-kI * dt * xi);
  cplx s = 0.0, ph = 0.0;
  for (size_t k = 0; k < t.size(); ++k) {
    if (k % 256 == 0) ph = std::exp(-kI * t[k] * xi);
    s += F[k] * ph;
    ph *= step;
  }
  return s * dt;
}

void check_nyquist(const std::vector<double>& xs, double dt) {
  double xi_max = 0.0;
  for (double x : xs) xi_max = std::max(xi_max, std::abs(std::log(x)));
  if (dt * xi_max >= kPi / 2.0) {
    std::ostringstream os;
    os << "t spacing " << dt << " too coarse for |ln x| up to " << xi_max;
    throw Error(ErrorCode::OscillationUnderResolved, os.str());
  }
}

}  // namespace

StressProfile invert_tau(const std::vector<double>& xs, const SymbolParams& p, const FactorizationGrid& g,
                         double P, const InversionOptions& opt) {
  for (double x : xs)
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::ValidationError, "x must lie in (0, 1)");
  check_nyquist(xs, opt.dt);
  StressProfile prof;
  prof.x = xs;
  prof.tau.assign(xs.size(), 0.0);
  prof.psi.assign(xs.size(), 0.0);
  if (P == 0.0) return prof;

  const double a = g.glue_a;
  const cplx xm0 = boundary_X1(0.0, Side::below, g) / a;  // X-(0) with X_R-(0) = 1/a

  double c = opt.shift;
  if (c < 0.0) {
    c = std::max(0.0, std::min(opt.tau0 > 0.0 ? opt.tau0 : 0.0, a) - 0.35);
    if (c > 0.5 && std::abs(c - std::round(c)) < 0.1) c -= 0.15;
  }

  const auto t = uniform_t(opt.dt, opt.t_max);
  std::vector<cplx> F(t.size());
  for (size_t k = 0; k < t.size(); ++k) {
    const cplx z(t[k], c);
    cplx xm1;  // X1-(z) - 1
    if (c == 0.0) {
      const cplx ft = log_symbol_at(g, t[k]);
      xm1 = std::exp(-0.5 * ft + principal_value(g, t[k], ft) / (2.0 * kPi * kI)) - 1.0;
    } else {
      const cplx u = eval_G1_minus_one(z, p);
      const cplx C = cauchy_integral(g, z);
      const cplx em1 = std::abs(C) < 1e-5 ? C * (1.0 + 0.5 * C) : std::exp(C) - 1.0;
      xm1 = (em1 - u) / (1.0 + u);
    }
    F[k] = xm1 / (kI * (z - kI * a));
    if (opt.taper) {
      const double w = kPi * t[k] / opt.t_max;
      F[k] *= std::sin(w) / w;
    }
  }

  std::vector<double> tau_r(xs.size());
  for (size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    const cplx I = oscillatory_sum(t, F, opt.dt, std::log(x));
    tau_r[j] = (P / (2.0 * kPi * xm0) * std::pow(x, c - 1.0) * I).real();
    const double bl = (P / xm0).real() * std::exp((a - 1.0) * std::log(x));
    prof.tau[j] = bl + tau_r[j];
  }

  // psi: boundary layer in closed form, remainder by trapezoid with a power-law start
  const double bl_scale = (P / (a * xm0)).real();
  double acc = 0.0;
  if (!xs.empty()) {
    const double s0 = xs.size() > 1 && tau_r[0] != 0.0 && tau_r[1] != 0.0 && tau_r[0] * tau_r[1] > 0.0
                          ? std::log(tau_r[1] / tau_r[0]) / std::log(xs[1] / xs[0])
                          : 0.0;
    acc = tau_r[0] * xs[0] / std::max(s0 + 1.0, 1e-3);
  }
  for (size_t j = 0; j < xs.size(); ++j) {
    if (j > 0) acc += 0.5 * (tau_r[j] + tau_r[j - 1]) * (xs[j] - xs[j - 1]);
    prof.psi[j] = bl_scale * std::pow(xs[j], a) + acc;
  }
  prof.equilibrium = bl_scale + acc + (xs.empty() ? 0.0 : tau_r.back() * (1.0 - xs.back()));

  try {
    auto f = fit_endpoint_exponent(prof, 1e-4, 1e-2);
    prof.exponent_fit = f.slope;
    prof.exponent_stderr = f.stderr_;
  } catch (const Error&) {
    prof.exponent_fit = std::nan("");
  }
  return prof;
}

std::vector<double> invert_tau_printed(const std::vector<double>& xs, const FactorizationGrid& g, double P,
                                       double lambda_hat, double k0, double dt, double t_max) {
  check_nyquist(xs, dt);
  std::vector<double> out(xs.size(), 0.0);
  if (P == 0.0) return out;
  const PrintedData d = printed_data(g);
  const auto t = uniform_t(dt, t_max);
  std::vector<cplx> M(t.size());
  for (size_t k = 0; k < t.size(); ++k) {
    const cplx xm = boundary_X(t[k], Side::below, g);
    M[k] = printed_M_from(cplx(t[k], 0.0), xm, printed_J_minus(g, d, t[k]), P, lambda_hat, k0,
                          ConstantTerm::none);
  }
  // remove the limit at infinity, which only carries a delta at x = 1
  const cplx m_inf = 0.5 * (M.front() + M.back());
  for (auto& m : M) m -= m_inf;
  for (size_t j = 0; j < xs.size(); ++j) {
    const cplx I = oscillatory_sum(t, M, dt, std::log(xs[j]));
    out[j] = (I / (std::sqrt(2.0 * kPi) * xs[j])).real();
  }
  return out;
}

}  // namespace patchcontact
