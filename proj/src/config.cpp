#include "oldroyd/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oldroyd/expr.hpp"

namespace oldroyd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(int line, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    fail_line(line, key + ": not a number: \"" + v + "\"");
  }
  if (used != v.size()) fail_line(line, key + ": trailing characters in \"" + v + "\"");
  return out;
}

long parse_int(int line, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    fail_line(line, key + ": not an integer: \"" + v + "\"");
  }
  if (used != v.size()) fail_line(line, key + ": trailing characters in \"" + v + "\"");
  return out;
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail_line(line, key + ": expected true or false, got \"" + v + "\"");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Forcing RunConfig::make_forcing() const {
  Forcing f;
  if (!forcing_fx.empty() || !forcing_fy.empty()) {
    const std::string fx = forcing_fx.empty() ? "0" : forcing_fx;
    const std::string fy = forcing_fy.empty() ? "0" : forcing_fy;
    f.field = parse_vector_field(fx, fy);
    f.description = "expr: (" + fx + ", " + fy + ")";
    return f;
  }
  if (forcing_preset == "zero") return f;  // empty field = exact zero
  if (forcing_preset == "vortex") {
    f.field = [](double x, double y) { return Vec2{y - 0.5, 0.5 - x}; };
    f.description = "vortex";
    return f;
  }
  if (forcing_preset == "constant-x") {
    f.field = [](double, double) { return Vec2{1.0, 0.0}; };
    f.description = "constant-x";
    return f;
  }
  throw std::invalid_argument("config: unknown forcing preset \"" + forcing_preset + "\"");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(lineno, "empty key");

    if (key == "params.re") c.params.re = parse_double(lineno, key, val);
    else if (key == "params.we") c.params.we = parse_double(lineno, key, val);
    else if (key == "params.r") c.params.r = parse_double(lineno, key, val);
    else if (key == "params.a") c.params.a = parse_double(lineno, key, val);
    else if (key == "params.diff") c.params.diff = parse_double(lineno, key, val);
    else if (key == "forcing.preset") c.forcing_preset = val;
    else if (key == "forcing.fx") c.forcing_fx = val;
    else if (key == "forcing.fy") c.forcing_fy = val;
    else if (key == "forcing.scale_to") c.forcing_scale_to = parse_double(lineno, key, val);
    else if (key == "mesh.n") c.mesh_n = static_cast<int>(parse_int(lineno, key, val));
    else if (key == "mesh.file") c.mesh_file = val;
    else if (key == "solver.tol") c.solver.tol = parse_double(lineno, key, val);
    else if (key == "solver.max_iter") c.solver.max_iter = static_cast<int>(parse_int(lineno, key, val));
    else if (key == "solver.relaxation") c.solver.relaxation = parse_double(lineno, key, val);
    else if (key == "solver.smallness_hint") c.solver.smallness_hint = parse_double(lineno, key, val);
    else if (key == "solver.divergence_radius") c.solver.divergence_radius = parse_double(lineno, key, val);
    else if (key == "output.dir") c.output_dir = val;
    else if (key == "output.csv") c.write_csv = parse_bool(lineno, key, val);
    else if (key == "output.vtk") c.write_vtk = parse_bool(lineno, key, val);
    else if (key == "seed") c.seed = static_cast<unsigned>(parse_int(lineno, key, val));
    else if (key == "mms.levels") c.mms_levels = static_cast<int>(parse_int(lineno, key, val));
    else if (key == "mms.base_n") c.mms_base_n = static_cast<int>(parse_int(lineno, key, val));
    else if (key == "probe.starts") c.probe_starts = static_cast<int>(parse_int(lineno, key, val));
    else fail_line(lineno, "unknown key \"" + key + "\"");
  }

  c.params.validate();  // rethrows range violations with their own messages
  if (c.mesh_n < 1) throw std::invalid_argument("config: mesh.n must be >= 1");
  if (!(c.solver.tol > 0.0)) throw std::invalid_argument("config: solver.tol must be > 0");
  if (c.solver.max_iter < 1) throw std::invalid_argument("config: solver.max_iter must be >= 1");
  if (c.mms_levels < 2) throw std::invalid_argument("config: mms.levels must be >= 2");
  if (c.mms_base_n < 1) throw std::invalid_argument("config: mms.base_n must be >= 1");
  if (c.probe_starts < 2) throw std::invalid_argument("config: probe.starts must be >= 2");
  (void)c.make_forcing();  // validates preset names and expression syntax
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig c = parse_config_text(buf.str());
  if (!c.mesh_file.empty() && !std::filesystem::exists(c.mesh_file))
    throw std::invalid_argument("config: mesh.file does not exist: " + c.mesh_file);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "params.re = " << fmt(c.params.re) << "\n"
      << "params.we = " << fmt(c.params.we) << "\n"
      << "params.r = " << fmt(c.params.r) << "\n"
      << "params.a = " << fmt(c.params.a) << "\n"
      << "params.diff = " << fmt(c.params.diff) << "\n"
      << "forcing.preset = " << c.forcing_preset << "\n";
  if (!c.forcing_fx.empty()) out << "forcing.fx = " << c.forcing_fx << "\n";
  if (!c.forcing_fy.empty()) out << "forcing.fy = " << c.forcing_fy << "\n";
  out << "forcing.scale_to = " << fmt(c.forcing_scale_to) << "\n"
      << "mesh.n = " << c.mesh_n << "\n";
  if (!c.mesh_file.empty()) out << "mesh.file = " << c.mesh_file << "\n";
  out << "solver.tol = " << fmt(c.solver.tol) << "\n"
      << "solver.max_iter = " << c.solver.max_iter << "\n"
      << "solver.relaxation = " << fmt(c.solver.relaxation) << "\n"
      << "solver.smallness_hint = " << fmt(c.solver.smallness_hint) << "\n"
      << "solver.divergence_radius = " << fmt(c.solver.divergence_radius) << "\n"
      << "output.dir = " << c.output_dir << "\n"
      << "output.csv = " << (c.write_csv ? "true" : "false") << "\n"
      << "output.vtk = " << (c.write_vtk ? "true" : "false") << "\n"
      << "seed = " << c.seed << "\n"
      << "mms.levels = " << c.mms_levels << "\n"
      << "mms.base_n = " << c.mms_base_n << "\n"
      << "probe.starts = " << c.probe_starts << "\n";
  return out.str();
}

}  // namespace oldroyd
