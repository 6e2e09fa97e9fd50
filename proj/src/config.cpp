#include "fracbou/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracbou {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

double as_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    bad(key + " expects a number, got '" + v + "'");
  }
  if (used != v.size()) bad(key + " expects a number, got '" + v + "'");
  return x;
}

int as_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    bad(key + " expects an integer, got '" + v + "'");
  }
  if (used != v.size()) bad(key + " expects an integer, got '" + v + "'");
  return static_cast<int>(x);
}

std::uint64_t as_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    bad(key + " expects a nonnegative integer, got '" + v + "'");
  }
  if (used != v.size()) bad(key + " expects a nonnegative integer, got '" + v + "'");
  return x;
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad(key + " expects true/false/1/0, got '" + v + "'");
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
  const std::string full = section + "." + key;
  if (section == "grid") {
    if (key == "n") cfg.solver.n = as_int(full, value);
    else if (key == "length") cfg.solver.length = as_double(full, value);
    else bad("unknown key '" + full + "'");
  } else if (section == "physics") {
    if (key == "alpha") cfg.solver.alpha = as_double(full, value);
    else if (key == "beta") cfg.solver.beta = as_double(full, value);
    else if (key == "nu") cfg.solver.nu = as_double(full, value);
    else if (key == "kappa") cfg.solver.kappa = as_double(full, value);
    else if (key == "require_critical") cfg.solver.require_critical = as_bool(full, value);
    else if (key == "nonlinear") cfg.solver.nonlinear = as_bool(full, value);
    else bad("unknown key '" + full + "'");
  } else if (section == "time") {
    if (key == "dt") cfg.solver.dt = as_double(full, value);
    else if (key == "t_end") cfg.solver.t_end = as_double(full, value);
    else if (key == "scheme") cfg.solver.scheme = scheme_from_name(value);
    else bad("unknown key '" + full + "'");
  } else if (section == "init") {
    if (key == "kind") cfg.init.kind = value;
    else if (key == "seed") cfg.init.seed = as_u64(full, value);
    else if (key == "band_lo") cfg.init.band_lo = as_double(full, value);
    else if (key == "band_hi") cfg.init.band_hi = as_double(full, value);
    else if (key == "amp_omega") cfg.init.amp_omega = as_double(full, value);
    else if (key == "amp_theta") cfg.init.amp_theta = as_double(full, value);
    else if (key == "omega_file") cfg.init.omega_file = value;
    else if (key == "theta_file") cfg.init.theta_file = value;
    else bad("unknown key '" + full + "'");
  } else if (section == "output") {
    if (key == "dir") cfg.output.dir = value;
    else if (key == "cadence") cfg.output.cadence = as_int(full, value);
    else if (key == "format") {
      if (value != "csv" && value != "json") bad("output.format must be csv or json");
      cfg.output.format = value;
    } else if (key == "snapshots") cfg.output.snapshots = as_bool(full, value);
    else bad("unknown key '" + full + "'");
  } else {
    bad("unknown section '" + section + "'");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of(";#");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) bad("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) bad("line " + std::to_string(lineno) + ": key before any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) bad("line " + std::to_string(lineno) + ": empty key");
    set_key(cfg, section, key, value);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) bad("override '" + assignment + "' needs section.key=value");
  const std::string lhs = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == lhs.size())
    bad("override '" + assignment + "' needs section.key=value");
  set_key(cfg, lhs.substr(0, dot), lhs.substr(dot + 1), value);
}

std::string render_config(const RunConfig& cfg) {
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "[grid]\n"
      << "n = " << cfg.solver.n << "\n"
      << "length = " << num(cfg.solver.length) << "\n\n"
      << "[physics]\n"
      << "alpha = " << num(cfg.solver.alpha) << "\n"
      << "beta = " << num(cfg.solver.beta) << "\n"
      << "nu = " << num(cfg.solver.nu) << "\n"
      << "kappa = " << num(cfg.solver.kappa) << "\n"
      << "require_critical = " << (cfg.solver.require_critical ? "true" : "false") << "\n"
      << "nonlinear = " << (cfg.solver.nonlinear ? "true" : "false") << "\n\n"
      << "[time]\n"
      << "dt = " << num(cfg.solver.dt) << "\n"
      << "t_end = " << num(cfg.solver.t_end) << "\n"
      << "scheme = " << scheme_name(cfg.solver.scheme) << "\n\n"
      << "[init]\n"
      << "kind = " << cfg.init.kind << "\n"
      << "seed = " << cfg.init.seed << "\n"
      << "band_lo = " << num(cfg.init.band_lo) << "\n"
      << "band_hi = " << num(cfg.init.band_hi) << "\n"
      << "amp_omega = " << num(cfg.init.amp_omega) << "\n"
      << "amp_theta = " << num(cfg.init.amp_theta) << "\n";
  if (!cfg.init.omega_file.empty()) out << "omega_file = " << cfg.init.omega_file << "\n";
  if (!cfg.init.theta_file.empty()) out << "theta_file = " << cfg.init.theta_file << "\n";
  out << "\n[output]\n"
      << "dir = " << cfg.output.dir << "\n"
      << "cadence = " << cfg.output.cadence << "\n"
      << "format = " << cfg.output.format << "\n"
      << "snapshots = " << (cfg.output.snapshots ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace fracbou
