#pragma once

#include <array>

#include "patchcontact/elastic_params.hpp"

namespace patchcontact {

using Mat4 = std::array<std::array<double, 4>, 4>;

struct DeltaResult {
  double delta = 0.0;              // Laplace expansion along row 1
  double delta_elimination = 0.0;  // partial-pivoting elimination, cross-check
  Mat4 cof{};                      // signed cofactors, cof[i][j] = (-1)^(i+j) M_ij
};

struct ICoefficients {
  double I1 = 0, I2 = 0, I3 = 0, I4 = 0;
  double I1s = 0, I2s = 0, I3s = 0, I4s = 0;  // starred
};

struct CouplingCoefficients {
  double delta = 0.0;
  Mat4 cof{};
  ICoefficients I;
  std::array<double, 4> lambda{};  // Pa^-1 (lambda2 as printed: Pa^-2)
  std::array<double, 4> kappa{};   // Pa^-1
  double mu_log = 0.0;
  double beta1 = 0.0, gamma1 = 0.0;
};

// Interface matrix in the given compliance units (rows 3 and 4 scale with the unit).
Mat4 delta_matrix(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2,
                  double compliance_scale = 1.0);

// Determinant and cofactors of an arbitrary 4x4 matrix. Throws SingularCoupling.
DeltaResult cofactor_expansion(const Mat4& a);

// Unscaled Delta and cofactors for the bimaterial pair.
DeltaResult build_delta(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2);

ICoefficients i_coefficients(const Mat4& cof, const OrthotropicHalfPlane& hp1);

std::array<double, 4> lambda_coefficients(const ICoefficients& I, const OrthotropicHalfPlane& hp1,
                                          double delta);
std::array<double, 4> kappa_coefficients(const ICoefficients& I, const OrthotropicHalfPlane& hp1,
                                         double delta);

// Full chain, assembled in internally rescaled compliance units.
CouplingCoefficients build_coupling(const OrthotropicHalfPlane& hp1, const OrthotropicHalfPlane& hp2);

// Power of two used to bring compliances of hp1 to order one.
double compliance_unit(const OrthotropicHalfPlane& hp1);

double kernel_Q(double t, double x, const CouplingCoefficients& c);
double kernel_R(double t, double x, const CouplingCoefficients& c);

// Same kernel form for arbitrary coefficients.
double kernel_form(double t, double x, const std::array<double, 4>& coef, double beta1,
                   double gamma1);

}  // namespace patchcontact
