#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "patchcontact/coupling.hpp"
#include "patchcontact/factorization.hpp"

namespace patchcontact {

struct MeshSpec {
  int elements = 800;
  double ratio = 1.08;    // geometric growth from x1 until the uniform step is reached
  double first = 1e-6;    // x1
};

// 0 = x0 < x1 < ... < xN = 1, geometric near 0 then uniform, exactly N elements.
std::vector<double> graded_mesh(const MeshSpec& spec);

struct KernelInputs {
  std::array<double, 4> lambda{};
  double beta1 = 1.0, gamma1 = 1.0;
  double h = 1.0, k0 = 0.0;
};
KernelInputs kernel_inputs(const CouplingCoefficients& c, double h, double k0);

// int_{xl}^{xr} Q(t, m) dt in closed form (PV when m lies inside).
double element_Q_integral(double xl, double xr, double m, const KernelInputs& k);

struct CollocationSystem {
  MeshSpec spec;
  std::vector<double> mesh;
  Eigen::MatrixXd matrix;  // unknowns: psi at all nodes; rows 0 and N carry psi(0) = 0, psi(1) = P
  Eigen::VectorXd rhs;
  KernelInputs kernel;
  double P = 0.0;
};

CollocationSystem assemble(const KernelInputs& k, double P, const MeshSpec& spec);

// Max over interior rows of |A psi_lin - r_exact| for psi = c0 + c1 x, relative to the row scale.
double patch_test_residual(const CollocationSystem& sys, double c0, double c1);

struct CollocationSolution {
  StressProfile profile;    // x: element midpoints, tau per element, psi at midpoints
  std::vector<double> psi_nodes;
  double rcond = 0.0;
  double checkerboard = 0.0;  // |sum (-1)^i psi_i| / sum |psi_i|, near 1 for an odd-even mode
};

CollocationSolution solve(const CollocationSystem& sys);

// ||a - b||_2 / ||b||_2 over the region, sampled at a's abscissae with b linearly interpolated.
double compare(const std::vector<double>& xa, const std::vector<double>& ta, const std::vector<double>& xb,
               const std::vector<double>& tb, double lo, double hi);

}  // namespace patchcontact
