#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "patchcontact/elastic_params.hpp"

namespace patchcontact {

struct NumericsConfig {
  double tau_max = 12.0;
  int mesh_n = 800;
  double mesh_ratio = 1.08;
  double mesh_first = 1e-6;
  double axis_cutoff = 0.0;  // 0: automatic
  int grid_points = 400;     // x samples of the stress profile
  double dt = 0.05;          // transform-variable spacing
  double t_max = 200.0;
  std::string convention = "kernel";  // symbol weights: kernel | printed
};

struct CaseConfig {
  std::string modulus_unit = "Pa";
  std::string length_unit = "m";
  RawMaterial hp1{}, hp2{};
  double h = 0.0;
  double h0 = 0.0, mu0 = 0.0;
  std::optional<double> lambda0;
  double kernel_scale = 1.0;  // multiplies the coupling kernel; 0 leaves the glue-only problem
  double P = 1.0;
  NumericsConfig numerics;

  double k0() const { return h0 / mu0; }
  std::optional<double> m0() const;
};

// Parse sectioned key = value text. ParseError carries the line number, ValidationError lists
// every violated invariant.
CaseConfig parse_config(const std::string& text, const std::string& source = "<string>");
CaseConfig load_config(const std::string& path);

std::vector<std::string> validate_config(const CaseConfig& c);

// Shipped cases 1..3 with h0 = 5 * 10^-n.
CaseConfig builtin_case(int id, int n = 4);
std::string builtin_case_text(int id);

// Canonical text form; parse_config(serialize(c)) reproduces c exactly.
std::string serialize(const CaseConfig& c);
std::uint64_t config_hash(const CaseConfig& c);
std::string hash_hex(std::uint64_t h);

}  // namespace patchcontact
