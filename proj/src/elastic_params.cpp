#include "patchcontact/elastic_params.hpp"

#include <cmath>
#include <sstream>

#include "patchcontact/errors.hpp"

namespace patchcontact {

CharacteristicRoots characteristic_roots(const RawMaterial& m) {
  const double a = m.E / m.G - 2.0 * m.nu;
  const double b = m.E / m.E_star;
  const double disc = a * a - 4.0 * b;
  if (std::abs(disc) < kDegeneracyTol * a * a) {
    std::ostringstream os;
    os << "a^2 - 4b = " << disc << " (a = " << a << ", b = " << b << ")";
    throw Error(ErrorCode::DegenerateRoots, os.str());
  }
  if (disc < 0.0) {
    std::ostringstream os;
    os << "a^2 - 4b = " << disc << " < 0";
    throw Error(ErrorCode::NonRealRoots, os.str());
  }
  if (a <= 0.0) throw Error(ErrorCode::NonRealRoots, "a = E/G - 2 nu must be positive");
  // larger root directly, smaller one from the product to avoid cancellation
  const double beta2 = 0.5 * (a + std::sqrt(disc));
  const double gamma2 = b / beta2;
  return {std::sqrt(beta2), std::sqrt(gamma2)};
}

DerivedModuli derived_moduli(const RawMaterial& m, double beta, double gamma) {
  return {-(beta * beta + m.nu) / m.E, -(gamma * gamma + m.nu) / m.E};
}

std::vector<std::string> validate_material(const RawMaterial& m) {
  std::vector<std::string> out;
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(m.E) || !(m.E > 0.0)) out.push_back("E must be positive");
  if (!finite(m.E_star) || !(m.E_star > 0.0)) out.push_back("E_star must be positive");
  if (!finite(m.G) || !(m.G > 0.0)) out.push_back("G must be positive");
  if (!finite(m.nu) || !(m.nu >= 0.0 && m.nu < 0.5)) out.push_back("nu must lie in [0, 0.5)");
  return out;
}

OrthotropicHalfPlane make_half_plane(const RawMaterial& m) {
  auto problems = validate_material(m);
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::ValidationError, msg);
  }
  auto roots = characteristic_roots(m);
  auto mod = derived_moduli(m, roots.beta, roots.gamma);
  return {m, roots.beta, roots.gamma, mod.rho, mod.r};
}

}  // namespace patchcontact
