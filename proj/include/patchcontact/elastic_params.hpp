#pragma once

#include <string>
#include <vector>

namespace patchcontact {

struct RawMaterial {
  double E = 0.0;       // Young's modulus along OX, Pa
  double E_star = 0.0;  // Young's modulus along OY, Pa
  double G = 0.0;       // shear modulus, Pa
  double nu = 0.0;      // Poisson ratio
};

struct CharacteristicRoots {
  double beta = 0.0;
  double gamma = 0.0;
};

struct DerivedModuli {
  double rho = 0.0;  // Pa^-1
  double r = 0.0;    // Pa^-1
};

struct OrthotropicHalfPlane {
  RawMaterial raw;
  double beta = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  double r = 0.0;
};

inline constexpr double kDegeneracyTol = 1e-10;

// Roots of mu^4 + a mu^2 + b = 0 as mu = i beta, i gamma.
CharacteristicRoots characteristic_roots(const RawMaterial& m);

DerivedModuli derived_moduli(const RawMaterial& m, double beta, double gamma);

// Empty list means the material is valid.
std::vector<std::string> validate_material(const RawMaterial& m);

// Validates, then builds roots and moduli. Throws ValidationError on invalid input.
OrthotropicHalfPlane make_half_plane(const RawMaterial& m);

}  // namespace patchcontact
