#include "patchcontact/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patchcontact/errors.hpp"

namespace patchcontact {

namespace {

double det3(const Mat4& a, int skip_row, int skip_col) {
  int r[3], c[3];
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) r[k++] = i;
  for (int j = 0, k = 0; j < 4; ++j)
    if (j != skip_col) c[k++] = j;
  auto m = [&](int i, int j) { return a[r[i]][c[j]]; };
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double det_elimination(Mat4 a) {
  double det = 1.0;
  for (int k = 0; k < 4; ++k) {
    int p = k;
    for (int i = k + 1; i < 4; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (a[p][k] == 0.0) return 0.0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < 4; ++i) {
      double f = a[i][k] / a[k][k];
      for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Scaling degree of cofactor (i, j) in the compliance unit: rows 3, 4 carry one power each.
int cofactor_degree(int i) { return i < 2 ? 2 : 1; }

}  // namespace

Mat4 delta_matrix(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2, double s) {
  const double b1 = hp1.beta, g1 = hp1.gamma, b2 = hp2.beta, g2 = hp2.gamma;
  const double p1 = s * hp1.rho, q1 = s * hp1.r, p2 = s * hp2.rho, q2 = s * hp2.r;
  return {{{b1 * b1, g1 * g1, -b2 * b2, -g2 * g2},
           {b1, g1, b2, g2},
           {p1 * b1, q1 * g1, p2 * b2, q2 * g2},
           {b1 * b1 * q1, g1 * g1 * p1, -b2 * b2 * q2, -g2 * g2 * p2}}};
}

DeltaResult cofactor_expansion(const Mat4& a) {
  DeltaResult out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.cof[i][j] = ((i + j) % 2 ? -1.0 : 1.0) * det3(a, i, j);
  for (int j = 0; j < 4; ++j) out.delta += a[0][j] * out.cof[0][j];
  out.delta_elimination = det_elimination(a);

  double scale = 1.0;
  for (const auto& row : a) {
    double n = 0.0;
    for (double v : row) n += v * v;
    scale *= std::sqrt(n);
  }
  if (!(std::abs(out.delta) >= 1e-14 * scale)) {
    std::ostringstream os;
    os << "|Delta| = " << std::abs(out.delta) << " below 1e-14 x row-norm product " << scale;
    throw Error(ErrorCode::SingularCoupling, os.str());
  }
  return out;
}

double compliance_unit(const OrthotropicHalfPlane& hp1) {
  int e = 0;
  std::frexp(std::abs(hp1.rho), &e);
  return std::ldexp(1.0, -e);
}

DeltaResult build_delta(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2) {
  const double s = compliance_unit(hp1);
  DeltaResult d = cofactor_expansion(delta_matrix(hp1, hp2, s));
  d.delta /= s * s;
  d.delta_elimination /= s * s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.cof[i][j] /= std::pow(s, cofactor_degree(i));
  return d;
}

ICoefficients i_coefficients(const Mat4& D, const OrthotropicHalfPlane& hp1) {
  const double b = hp1.beta, g = hp1.gamma, p = hp1.rho, q = hp1.r;
  // column j of the cofactor matrix against the two generating vectors
  auto first = [&](int j) {
    return -D[0][j] * q * b * b + D[1][j] * q * b + D[2][j] * q * p * b - D[3][j] * b * b * q * q;
  };
  auto second = [&](int j) {
    return D[0][j] * p * g * g - D[1][j] * p * g - D[2][j] * p * q * g + D[3][j] * p * p * g * g;
  };
  ICoefficients I;
  I.I1 = first(0);
  I.I2 = second(0);
  I.I1s = first(1);
  I.I2s = second(1);
  I.I3 = first(2);
  I.I4 = second(2);
  I.I3s = first(3);
  I.I4s = second(3);
  return I;
}

std::array<double, 4> lambda_coefficients(const ICoefficients& I, const OrthotropicHalfPlane& hp1,
                                          double delta) {
  const double b = hp1.beta, g = hp1.gamma, p = hp1.rho, q = hp1.r;
  if (p == 0.0 || q == 0.0 || p == q)
    throw Error(ErrorCode::DegenerateCompliance, "rho1, r1 must be nonzero and distinct");
  const double pq = p - q;
  return {(p * p * g - q * q * b) / (pq * b * g),
          (p * p * g * I.I1 + q * q * b * I.I2s) / (delta * b * g * pq),
          -I.I2 * p * p / (delta * q * pq),
          -I.I1s * q * q / (delta * p * pq)};
}

std::array<double, 4> kappa_coefficients(const ICoefficients& I, const OrthotropicHalfPlane& hp1,
                                         double delta) {
  const double b = hp1.beta, g = hp1.gamma, p = hp1.rho, q = hp1.r;
  if (p == 0.0 || q == 0.0 || p == q)
    throw Error(ErrorCode::DegenerateCompliance, "rho1, r1 must be nonzero and distinct");
  const double pq = p - q;
  return {(b * q * q + g * p * p) / pq,
          (b * q * I.I1 + g * p * I.I2s) / (delta * pq),
          b * b * q * I.I2 / (delta * pq),
          g * g * p * I.I1s / (delta * pq)};
}

CouplingCoefficients build_coupling(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2) {
  const double s = compliance_unit(hp1);
  OrthotropicHalfPlane h1 = hp1;
  h1.rho *= s;
  h1.r *= s;
  DeltaResult d = cofactor_expansion(delta_matrix(hp1, hp2, s));
  ICoefficients I = i_coefficients(d.cof, h1);
  auto lam = lambda_coefficients(I, h1, d.delta);
  auto kap = kappa_coefficients(I, h1, d.delta);

  CouplingCoefficients c;
  const double s2 = s * s, s3 = s2 * s;
  c.delta = d.delta / s2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.cof[i][j] = d.cof[i][j] / std::pow(s, cofactor_degree(i));
  c.I = {I.I1 / s3, I.I2 / s3, I.I3 / s3, I.I4 / s3, I.I1s / s3, I.I2s / s3, I.I3s / s3, I.I4s / s3};
  c.lambda = {lam[0] / s, lam[1] / s2, lam[2] / s, lam[3] / s};
  c.kappa = {kap[0] / s, kap[1] / s, kap[2] / s, kap[3] / s};
  c.mu_log = std::log(hp1.beta / hp1.gamma);
  c.beta1 = hp1.beta;
  c.gamma1 = hp1.gamma;
  return c;
}

double kernel_form(double t, double x, const std::array<double, 4>& k, double b, double g) {
  const double d1 = t - x, d2 = t + x, d3 = b * t + g * x, d4 = g * t + b * x;
  const double tol = 1e-15 * std::max(std::abs(t), std::abs(x));
  if (std::abs(d1) <= tol || (t == 0.0 && x == 0.0) || d2 == 0.0 || d3 == 0.0 || d4 == 0.0) {
    std::ostringstream os;
    os << "kernel evaluated on a pole at (t, x) = (" << t << ", " << x << ")";
    throw Error(ErrorCode::PoleAtEvaluation, os.str());
  }
  return k[0] / d1 + k[1] / d2 + k[2] / d3 + k[3] / d4;
}

double kernel_Q(double t, double x, const CouplingCoefficients& c) {
  return kernel_form(t, x, c.lambda, c.beta1, c.gamma1);
}

double kernel_R(double t, double x, const CouplingCoefficients& c) {
  return kernel_form(t, x, c.kappa, c.beta1, c.gamma1);
}

}  // namespace patchcontact
