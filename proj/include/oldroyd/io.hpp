#pragma once

// Result persistence: CSV field tables at the quadratic dof points, legacy
// VTK unstructured-grid text for external viewers, JSON report fragments,
// and timestamped run directories that echo back the exact configuration.

#include <json.hpp>

#include <filesystem>
#include <string>

#include "oldroyd/certificates.hpp"
#include "oldroyd/mms.hpp"
#include "oldroyd/probe.hpp"
#include "oldroyd/solver.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

// Table "x,y,u1,u2,p,s11,s12,s22", one row per quadratic node (vertices
// first, then edge midpoints); the linear pressure is interpolated at the
// midpoints.  Values are written in full precision.
void write_fields_csv(const FunctionSpaces& sp, const State& xi,
                      const std::filesystem::path& path);

// Legacy VTK text.  Each quadratic element is split into its four midpoint
// subtriangles, so every dof becomes a mesh point of the export and the
// piecewise-linear rendering passes through the exact nodal values.
void write_fields_vtk(const FunctionSpaces& sp, const State& xi,
                      const std::filesystem::path& path);

// Report fragments; callers compose these into one document per run.
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const ConstantSet& c);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const ConvergenceStudy& s);
nlohmann::json to_json(const ProbeReport& r);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);

// Create <base>/<UTC stamp>-<label>/ (a counter suffix resolves same-second
// collisions) and write the exact config text into config.txt inside it.
std::filesystem::path make_run_dir(const std::filesystem::path& base,
                                   const std::string& label,
                                   const std::string& config_text);

}  // namespace oldroyd
