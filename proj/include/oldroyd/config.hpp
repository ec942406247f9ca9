#pragma once

// Run configuration: a flat text format with one dotted key per line,
//
//   # comment
//   params.we = 0.05
//   forcing.preset = vortex
//   mesh.n = 16
//
// Unknown keys are rejected (typos should not silently pick defaults);
// repeated keys keep the last value.  Parsing validates everything it can
// without a mesh: parameter ranges, expression syntax, preset names, and the
// existence of referenced files.

#include <filesystem>
#include <string>

#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/solver.hpp"

namespace oldroyd {

struct RunConfig {
  FluidParams params;

  // Forcing: a named preset, or a pair of component expressions in x and y
  // (setting either expression overrides the preset).
  std::string forcing_preset = "zero";  // zero | vortex | constant-x
  std::string forcing_fx, forcing_fy;
  // If positive, the driver rescales the forcing so its discrete dual norm
  // on the run mesh equals this value.
  double forcing_scale_to = -1.0;

  int mesh_n = 16;        // builtin unit-square triangulation
  std::string mesh_file;  // nonempty selects a mesh file instead

  SolverOptions solver;

  std::string output_dir = "runs";
  bool write_csv = true;
  bool write_vtk = false;
  unsigned seed = 12345;

  int mms_levels = 3;
  int mms_base_n = 8;
  int probe_starts = 5;

  // Unscaled forcing closure (dual-norm rescaling needs a mesh and is the
  // driver's job).
  Forcing make_forcing() const;
};

// Throws std::invalid_argument with line diagnostics.
RunConfig parse_config_text(const std::string& text);
// Reads, parses, and checks that referenced files exist.
RunConfig load_config(const std::filesystem::path& path);
// Full-precision dump; parse_config_text(serialize_config(c)) reproduces c
// field by field.
std::string serialize_config(const RunConfig& c);

}  // namespace oldroyd
