#include "patchcontact/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "patchcontact/errors.hpp"

namespace patchcontact {

namespace {

std::vector<double> mesh_with_step(const MeshSpec& s, double du) {
  std::vector<double> x = {0.0, s.first};
  double d = s.first;
  for (;;) {
    d *= s.ratio;
    if (d >= du || x.back() + d >= 1.0) break;
    x.push_back(x.back() + d);
  }
  const double start = x.back();
  const int n = static_cast<int>(std::ceil((1.0 - start) / du));
  for (int k = 1; k <= n; ++k) x.push_back(k == n ? 1.0 : start + (1.0 - start) * k / n);
  return x;
}

}  // namespace

std::vector<double> graded_mesh(const MeshSpec& spec) {
  if (spec.elements < 4 || !(spec.ratio >= 1.0) || !(spec.first > 0.0 && spec.first < 0.5))
    throw Error(ErrorCode::ValidationError, "mesh needs >= 4 elements, ratio >= 1 and 0 < x1 < 0.5");
  // bisect the uniform step so that the element count hits the target
  double lo = spec.first, hi = 1.0;
  std::vector<double> best = mesh_with_step(spec, hi);
  for (int it = 0; it < 200; ++it) {
    const double du = std::sqrt(lo * hi);
    auto m = mesh_with_step(spec, du);
    const int n = static_cast<int>(m.size()) - 1;
    if (n == spec.elements) return m;
    if (n > spec.elements) {
      lo = du;
    } else {
      hi = du;
      best = std::move(m);
    }
  }
  // fall back to the closest coarser mesh, padded by splitting its largest elements
  while (static_cast<int>(best.size()) - 1 < spec.elements) {
    size_t k = 0;
    for (size_t j = 1; j + 1 < best.size(); ++j)
      if (best[j + 1] - best[j] > best[k + 1] - best[k]) k = j;
    best.insert(best.begin() + static_cast<long>(k) + 1, 0.5 * (best[k] + best[k + 1]));
  }
  return best;
}

KernelInputs kernel_inputs(const CouplingCoefficients& c, double h, double k0) {
  return {c.lambda, c.beta1, c.gamma1, h, k0};
}

double element_Q_integral(double xl, double xr, double m, const KernelInputs& k) {
  const double b = k.beta1, g = k.gamma1;
  double s = k.lambda[0] * std::log(std::abs((xr - m) / (xl - m)));
  s += k.lambda[1] * std::log((xr + m) / (xl + m));
  s += k.lambda[2] / b * std::log((b * xr + g * m) / (b * xl + g * m));
  s += k.lambda[3] / g * std::log((g * xr + b * m) / (g * xl + b * m));
  return s;
}

CollocationSystem assemble(const KernelInputs& k, double P, const MeshSpec& spec) {
  CollocationSystem sys;
  sys.spec = spec;
  sys.kernel = k;
  sys.P = P;
  sys.mesh = graded_mesh(spec);
  const auto& x = sys.mesh;
  const int n = static_cast<int>(x.size()) - 1;
  sys.matrix = Eigen::MatrixXd::Zero(n + 1, n + 1);
  sys.rhs = Eigen::VectorXd::Zero(n + 1);
  sys.matrix(0, 0) = 1.0;
  sys.matrix(n, n) = 1.0;
  sys.rhs(n) = P;

  std::vector<double> dx(n);
  for (int e = 0; e < n; ++e) dx[e] = x[e + 1] - x[e];

  // flux F_i = k0 x_i tau(x_i): average of adjacent elements inside, one-sided at x = 1, zero at 0
  auto add_flux = [&](Eigen::Ref<Eigen::RowVectorXd> row, int i, double sign) {
    if (i == 0) return;
    if (i == n) {
      row(n) += sign * k.k0 / dx[n - 1];
      row(n - 1) -= sign * k.k0 / dx[n - 1];
      return;
    }
    for (int e : {i - 1, i}) {
      const double c = 0.5 * k.k0 * x[i] / dx[e];
      row(e + 1) += sign * c;
      row(e) -= sign * c;
    }
  };

  for (int j = 1; j < n; ++j) {
    const double m = 0.5 * (x[j] + x[j + 1]);
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1);
    row(j) += 0.5 / (k.h * m);
    row(j + 1) += 0.5 / (k.h * m);
    for (int e = 0; e < n; ++e) {
      const double c = element_Q_integral(x[e], x[e + 1], m, k) / (2.0 * std::numbers::pi * dx[e]);
      row(e + 1) -= c;
      row(e) += c;
    }
    add_flux(row, j + 1, -1.0 / dx[j]);
    add_flux(row, j, 1.0 / dx[j]);
    sys.matrix.row(j) = row;
  }
  return sys;
}

double patch_test_residual(const CollocationSystem& sys, double c0, double c1) {
  const auto& x = sys.mesh;
  const int n = static_cast<int>(x.size()) - 1;
  Eigen::VectorXd psi(n + 1);
  for (int i = 0; i <= n; ++i) psi(i) = c0 + c1 * x[i];
  const Eigen::VectorXd r = sys.matrix * psi;
  const auto& k = sys.kernel;
  double worst = 0.0;
  for (int j = 1; j < n; ++j) {
    const double m = 0.5 * (x[j] + x[j + 1]);
    // exact operator on the linear function: (c0 + c1 m)/(h m) - c1/(2 pi) int_0^1 Q dt - c1 k0
    const double q = element_Q_integral(0.0, 1.0, m, k);
    const double exact = (c0 + c1 * m) / (k.h * m) - c1 * q / (2.0 * std::numbers::pi) - c1 * k.k0;
    const double scale = std::abs(c0 + c1 * m) / (k.h * m) + std::abs(c1 * q) + std::abs(c1 * k.k0);
    worst = std::max(worst, std::abs(r(j) - exact) / std::max(scale, 1e-300));
  }
  return worst;
}

CollocationSolution solve(const CollocationSystem& sys) {
  const auto& x = sys.mesh;
  const int n = static_cast<int>(x.size()) - 1;
  const double patch = patch_test_residual(sys, 0.0, 1.0);
  if (patch > 1e-9) {
    std::ostringstream os;
    os << "linear patch test residual " << patch;
    throw Error(ErrorCode::MeshTooCoarse, os.str());
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  CollocationSolution out;
  out.rcond = lu.rcond();
  if (!(out.rcond > 1e-16)) {
    std::ostringstream os;
    os << "reciprocal condition estimate " << out.rcond;
    throw Error(ErrorCode::SingularSystem, os.str());
  }
  const Eigen::VectorXd psi = lu.solve(sys.rhs);
  out.psi_nodes.assign(psi.data(), psi.data() + psi.size());
  double alt = 0.0, tot = 0.0;
  for (int i = 0; i <= n; ++i) {
    alt += (i % 2 ? -1.0 : 1.0) * psi(i);
    tot += std::abs(psi(i));
  }
  out.checkerboard = tot > 0.0 ? std::abs(alt) / tot : 0.0;
  auto& p = out.profile;
  for (int e = 0; e < n; ++e) {
    p.x.push_back(0.5 * (x[e] + x[e + 1]));
    p.tau.push_back((psi(e + 1) - psi(e)) / (x[e + 1] - x[e]));
    p.psi.push_back(0.5 * (psi(e) + psi(e + 1)));
  }
  p.equilibrium = psi(n);
  try {
    const auto f = fit_endpoint_exponent(p, 1e-4, 1e-2);
    p.exponent_fit = f.slope;
    p.exponent_stderr = f.stderr_;
  } catch (const Error&) {
    p.exponent_fit = std::nan("");
  }
  return out;
}

double compare(const std::vector<double>& xa, const std::vector<double>& ta, const std::vector<double>& xb,
               const std::vector<double>& tb, double lo, double hi) {
  if (xb.size() < 2 || xb.size() != tb.size() || xa.size() != ta.size())
    throw Error(ErrorCode::EmptyOverlap, "profiles need matching sizes and at least two points");
  const double l = std::max({lo, xb.front()}), r = std::min({hi, xb.back()});
  double num = 0.0, den = 0.0;
  int used = 0;
  for (size_t k = 0; k < xa.size(); ++k) {
    if (xa[k] < l || xa[k] > r) continue;
    auto it = std::upper_bound(xb.begin(), xb.end(), xa[k]);
    size_t j = std::min<size_t>(static_cast<size_t>(it - xb.begin()), xb.size() - 1);
    if (j == 0) j = 1;
    const double w = (xa[k] - xb[j - 1]) / (xb[j] - xb[j - 1]);
    const double vb = (1.0 - w) * tb[j - 1] + w * tb[j];
    num += (ta[k] - vb) * (ta[k] - vb);
    den += vb * vb;
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::EmptyOverlap, "no sample of the first profile lies in the region");
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

}  // namespace patchcontact
