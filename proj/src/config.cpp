#include "patchcontact/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "builtin_cases.hpp"
#include "patchcontact/errors.hpp"

namespace patchcontact {

namespace pt = boost::property_tree;

std::optional<double> CaseConfig::m0() const {
  if (!lambda0) return std::nullopt;
  return h0 / (*lambda0 + 2.0 * mu0);
}

namespace {

// strtod round-trips the %.17g text written by serialize
double to_double(const std::string& key, const std::string& v, const std::string& source) {
  const char* b = v.c_str();
  char* e = nullptr;
  const double x = std::strtod(b, &e);
  while (e && (*e == ' ' || *e == '\t')) ++e;
  if (e == b || *e != '\0' || !std::isfinite(x))
    throw Error(ErrorCode::ParseError, source + ": key '" + key + "' expects a finite number, got '" + v + "'");
  return x;
}

struct Reader {
  const pt::ptree& root;
  std::string source;
  std::set<std::string> seen;

  const pt::ptree* section(const std::string& name, bool required) {
    auto it = root.find(name);
    if (it == root.not_found()) {
      if (required) throw Error(ErrorCode::ParseError, source + ": missing section [" + name + "]");
      return nullptr;
    }
    seen.insert(name);
    return &it->second;
  }
  std::optional<std::string> raw(const pt::ptree* s, const std::string& sec, const std::string& key, bool required) {
    if (s) {
      auto it = s->find(key);
      if (it != s->not_found()) {
        seen.insert(sec + "." + key);
        return it->second.data();
      }
    }
    if (required) throw Error(ErrorCode::ParseError, source + ": missing key '" + key + "' in [" + sec + "]");
    return std::nullopt;
  }
  double num(const pt::ptree* s, const std::string& sec, const std::string& key) {
    return to_double(key, *raw(s, sec, key, true), source);
  }
  void opt_num(const pt::ptree* s, const std::string& sec, const std::string& key, double& out) {
    if (auto v = raw(s, sec, key, false)) out = to_double(key, *v, source);
  }
  void opt_int(const pt::ptree* s, const std::string& sec, const std::string& key, int& out) {
    if (auto v = raw(s, sec, key, false)) {
      const double x = to_double(key, *v, source);
      if (x != std::floor(x)) throw Error(ErrorCode::ParseError, source + ": key '" + key + "' expects an integer");
      out = static_cast<int>(x);
    }
  }
};

RawMaterial read_material(Reader& r, const std::string& name) {
  const pt::ptree* s = r.section(name, true);
  return {r.num(s, name, "E"), r.num(s, name, "E_star"), r.num(s, name, "G"), r.num(s, name, "nu")};
}

}  // namespace

CaseConfig parse_config(const std::string& text, const std::string& source) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << source << ":" << e.line() << ": " << e.message();
    throw Error(ErrorCode::ParseError, os.str());
  }
  if (tree.empty()) throw Error(ErrorCode::ParseError, source + ": empty configuration");

  Reader r{tree, source, {}};
  CaseConfig c;
  for (const auto& [k, v] : tree) {
    if (!v.empty()) continue;  // sections
    if (k == "modulus_unit") {
      c.modulus_unit = v.data();
    } else if (k == "length_unit") {
      c.length_unit = v.data();
    } else {
      throw Error(ErrorCode::ParseError, source + ": unknown header key '" + k + "'");
    }
    r.seen.insert(k);
  }
  c.hp1 = read_material(r, "halfplane1");
  c.hp2 = read_material(r, "halfplane2");
  const pt::ptree* patch = r.section("patch", true);
  c.h = r.num(patch, "patch", "h");
  const pt::ptree* glue = r.section("glue", true);
  c.h0 = r.num(glue, "glue", "h0");
  c.mu0 = r.num(glue, "glue", "mu0");
  if (auto v = r.raw(glue, "glue", "lambda0", false)) c.lambda0 = to_double("lambda0", *v, source);
  const pt::ptree* load = r.section("load", true);
  c.P = r.num(load, "load", "P");
  if (const pt::ptree* model = r.section("model", false)) r.opt_num(model, "model", "kernel_scale", c.kernel_scale);
  if (const pt::ptree* n = r.section("numerics", false)) {
    auto& q = c.numerics;
    r.opt_num(n, "numerics", "tau_max", q.tau_max);
    r.opt_int(n, "numerics", "mesh_n", q.mesh_n);
    r.opt_num(n, "numerics", "mesh_ratio", q.mesh_ratio);
    r.opt_num(n, "numerics", "mesh_first", q.mesh_first);
    r.opt_num(n, "numerics", "axis_cutoff", q.axis_cutoff);
    r.opt_int(n, "numerics", "grid_points", q.grid_points);
    r.opt_num(n, "numerics", "dt", q.dt);
    r.opt_num(n, "numerics", "t_max", q.t_max);
    if (auto v = r.raw(n, "numerics", "convention", false)) q.convention = *v;
  }
  for (const auto& [sec, body] : tree) {
    if (body.empty()) continue;
    if (!r.seen.count(sec)) throw Error(ErrorCode::ParseError, source + ": unknown section [" + sec + "]");
    for (const auto& [k, v] : body)
      if (!r.seen.count(sec + "." + k))
        throw Error(ErrorCode::ParseError, source + ": unknown key '" + k + "' in [" + sec + "]");
  }

  const auto problems = validate_config(c);
  if (!problems.empty()) {
    std::string msg = source + ":";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::ValidationError, msg);
  }
  return c;
}

CaseConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::vector<std::string> validate_config(const CaseConfig& c) {
  std::vector<std::string> out;
  const bool dimensional = c.modulus_unit == "Pa" && c.length_unit == "m";
  const bool scaled = c.modulus_unit == "nondimensional" && c.length_unit == "nondimensional";
  if (!dimensional && !scaled)
    out.push_back("units must be modulus_unit = Pa with length_unit = m, or both nondimensional");
  for (const auto& s : validate_material(c.hp1)) out.push_back("halfplane1: " + s);
  for (const auto& s : validate_material(c.hp2)) out.push_back("halfplane2: " + s);
  if (!(c.h > 0.0)) out.push_back("patch: h must be positive");
  if (!(c.h0 > 0.0)) out.push_back("glue: h0 must be positive");
  if (!(c.mu0 > 0.0)) out.push_back("glue: mu0 must be positive");
  if (c.lambda0 && !(*c.lambda0 + 2.0 * c.mu0 > 0.0)) out.push_back("glue: lambda0 + 2 mu0 must be positive");
  const auto& n = c.numerics;
  if (!(n.tau_max > 0.0)) out.push_back("numerics: tau_max must be positive");
  if (n.mesh_n < 4) out.push_back("numerics: mesh_n must be at least 4");
  if (!(n.mesh_ratio >= 1.0)) out.push_back("numerics: mesh_ratio must be >= 1");
  if (!(n.mesh_first > 0.0 && n.mesh_first < 0.5)) out.push_back("numerics: mesh_first must lie in (0, 0.5)");
  if (!(n.axis_cutoff >= 0.0)) out.push_back("numerics: axis_cutoff must be >= 0");
  if (n.grid_points < 16) out.push_back("numerics: grid_points must be at least 16");
  if (!(n.dt > 0.0) || !(n.t_max > n.dt)) out.push_back("numerics: need 0 < dt < t_max");
  if (n.convention != "kernel" && n.convention != "printed")
    out.push_back("numerics: convention must be kernel or printed");
  return out;
}

std::string builtin_case_text(int id) {
  switch (id) {
    case 1: return std::string(kBuiltinCase1);
    case 2: return std::string(kBuiltinCase2);
    case 3: return std::string(kBuiltinCase3);
    default: throw Error(ErrorCode::ValidationError, "built-in cases are 1, 2 and 3");
  }
}

CaseConfig builtin_case(int id, int n) {
  if (n < 2 || n > 4) throw Error(ErrorCode::ValidationError, "n must be 2, 3 or 4");
  CaseConfig c = parse_config(builtin_case_text(id), "case" + std::to_string(id) + ".cfg");
  c.h0 = 5.0 * std::pow(10.0, -n);
  return c;
}

namespace {
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

std::string serialize(const CaseConfig& c) {
  std::ostringstream os;
  os << "modulus_unit = " << c.modulus_unit << "\nlength_unit = " << c.length_unit << "\n";
  auto mat = [&](const char* name, const RawMaterial& m) {
    os << "\n[" << name << "]\nE = " << fmt(m.E) << "\nE_star = " << fmt(m.E_star) << "\nG = " << fmt(m.G)
       << "\nnu = " << fmt(m.nu) << "\n";
  };
  mat("halfplane1", c.hp1);
  mat("halfplane2", c.hp2);
  os << "\n[patch]\nh = " << fmt(c.h) << "\n";
  os << "\n[glue]\nh0 = " << fmt(c.h0) << "\nmu0 = " << fmt(c.mu0) << "\n";
  if (c.lambda0) os << "lambda0 = " << fmt(*c.lambda0) << "\n";
  os << "\n[load]\nP = " << fmt(c.P) << "\n";
  os << "\n[model]\nkernel_scale = " << fmt(c.kernel_scale) << "\n";
  const auto& n = c.numerics;
  os << "\n[numerics]\ntau_max = " << fmt(n.tau_max) << "\nmesh_n = " << n.mesh_n << "\nmesh_ratio = "
     << fmt(n.mesh_ratio) << "\nmesh_first = " << fmt(n.mesh_first) << "\naxis_cutoff = " << fmt(n.axis_cutoff)
     << "\ngrid_points = " << n.grid_points << "\ndt = " << fmt(n.dt) << "\nt_max = " << fmt(n.t_max)
     << "\nconvention = " << n.convention << "\n";
  return os.str();
}

std::uint64_t config_hash(const CaseConfig& c) {
  // FNV-1a over the canonical text
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace patchcontact
