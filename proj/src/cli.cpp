#include "oldroyd/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oldroyd/certificates.hpp"
#include "oldroyd/config.hpp"
#include "oldroyd/constants.hpp"
#include "oldroyd/io.hpp"
#include "oldroyd/mms.hpp"
#include "oldroyd/norms.hpp"
#include "oldroyd/probe.hpp"
#include "oldroyd/solver.hpp"

namespace oldroyd {

namespace {

namespace fs = std::filesystem;

constexpr int kExitConfig = 2;       // bad flags, config text, or referenced files
constexpr int kExitSolve = 3;        // an iteration failed to converge
constexpr int kExitCertificate = 4;  // a converged solution violated its bound

FunctionSpaces build_spaces(const RunConfig& cfg) {
  Mesh mesh =
      cfg.mesh_file.empty() ? unit_square_mesh(cfg.mesh_n) : load_mesh(cfg.mesh_file);
  return FunctionSpaces(std::move(mesh));
}

// Forcing closure plus its discrete dual norm, rescaled to the configured
// target when one is set.
struct ScaledForcing {
  Forcing forcing;
  double dual_norm = 0.0;
};

ScaledForcing prepare_forcing(const FunctionSpaces& sp, const RunConfig& cfg) {
  ScaledForcing out;
  out.forcing = cfg.make_forcing();
  if (out.forcing.zero()) {
    if (cfg.forcing_scale_to > 0.0)
      throw std::invalid_argument("forcing.scale_to: cannot rescale the zero forcing");
    return out;
  }
  out.dual_norm = h_minus1_norm_field(sp, out.forcing.field);
  if (cfg.forcing_scale_to > 0.0) {
    if (out.dual_norm == 0.0)
      throw std::invalid_argument(
          "forcing.scale_to: forcing has zero dual norm, cannot rescale");
    const double s = cfg.forcing_scale_to / out.dual_norm;
    out.forcing.field = [inner = out.forcing.field, s](double x, double y) {
      const Vec2 v = inner(x, y);
      return Vec2{s * v.x, s * v.y};
    };
    out.forcing.description += " (rescaled)";
    out.dual_norm = cfg.forcing_scale_to;
  }
  return out;
}

COmegaEstimate measure_c_omega(const FunctionSpaces& sp, unsigned seed) {
  COmegaOptions om;
  om.seed = seed;
  return estimate_c_omega(sp, om);
}

nlohmann::json meta_json(const RunConfig& cfg, const char* command) {
  nlohmann::json j = {{"command", command},
                      {"params",
                       {{"re", cfg.params.re},
                        {"we", cfg.params.we},
                        {"r", cfg.params.r},
                        {"a", cfg.params.a},
                        {"diff", cfg.params.diff}}},
                      {"seed", cfg.seed}};
  if (cfg.mesh_file.empty())
    j["mesh_n"] = cfg.mesh_n;
  else
    j["mesh_file"] = cfg.mesh_file;
  return j;
}

// One sweep axis "name=lo:hi:count", linearly spaced, endpoints validated
// before anything expensive runs.
struct SweepAxis {
  std::string name;
  double lo = 0.0, hi = 0.0;
  int count = 0;
  double at(int i) const { return lo + (hi - lo) * i / (count - 1); }
};

SweepAxis parse_sweep_axis(const std::string& spec) {
  SweepAxis ax;
  const auto eq = spec.find('=');
  if (eq != std::string::npos) {
    ax.name = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    char tail = 0;
    if (std::sscanf(rest.c_str(), "%lf:%lf:%d%c", &ax.lo, &ax.hi, &ax.count, &tail) == 3) {
      if (ax.count < 2)
        throw std::invalid_argument("sweep: count must be >= 2 in \"" + spec + "\"");
      for (const char* known : {"re", "we", "a", "r", "diff", "fnorm"})
        if (ax.name == known) return ax;
      throw std::invalid_argument("sweep: unknown parameter \"" + ax.name +
                                  "\" (re, we, a, r, diff, fnorm)");
    }
  }
  throw std::invalid_argument("sweep: expected name=lo:hi:count, got \"" + spec + "\"");
}

void apply_axis(FluidParams& p, double& f_norm, const SweepAxis& ax, double v) {
  if (ax.name == "re") p.re = v;
  else if (ax.name == "we") p.we = v;
  else if (ax.name == "a") p.a = v;
  else if (ax.name == "r") p.r = v;
  else if (ax.name == "diff") p.diff = v;
  else f_norm = v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_solve(const RunConfig& cfg) {
  const FunctionSpaces sp = build_spaces(cfg);
  const ScaledForcing sf = prepare_forcing(sp, cfg);
  const COmegaEstimate com = measure_c_omega(sp, cfg.seed);
  const ConstantSet pre = build_constants(cfg.params, com.value, sf.dual_norm);

  SolverOptions sopts = cfg.solver;
  if (sopts.smallness_hint <= 0.0 && pre.existence_ok)
    sopts.smallness_hint = pre.radius.value;
  State xi = sp.zero_state();
  const SolveReport rep = solve_picard(sp, cfg.params, sf.forcing, sopts, xi);
  fix_pressure_mean(sp, xi);
  const Certificate cert = energy_certificate(sp, cfg.params, com.value, sf.dual_norm, xi);

  const fs::path dir = make_run_dir(cfg.output_dir, "solve", serialize_config(cfg));
  if (cfg.write_csv) write_fields_csv(sp, xi, dir / "fields.csv");
  if (cfg.write_vtk) write_fields_vtk(sp, xi, dir / "fields.vtk");
  nlohmann::json report = meta_json(cfg, "solve");
  report["forcing"] = sf.forcing.description;
  report["solve"] = to_json(rep);
  report["certificate"] = to_json(cert);
  write_json(report, dir / "report.json");

  std::cout << "solve: " << to_string(rep.status) << " after " << rep.iterations
            << " iterations, residuals " << rep.momentum_residual << " / "
            << rep.stress_residual << "\n"
            << "certificate: c1 = " << cert.constants.c1 << ", existence "
            << (cert.existence_ok ? "ok" : "not certified") << ", bound "
            << (!cert.existence_ok ? "n/a" : cert.bound_ok ? "ok" : "violated")
            << ", uniqueness " << (cert.uniqueness_ok ? "ok" : "not certified") << "\n"
            << "artifacts: " << dir.string() << "\n";

  if (!rep.converged()) return kExitSolve;
  if (cert.existence_ok && !cert.bound_ok) return kExitCertificate;
  return 0;
}

int cmd_certify(const RunConfig& cfg, const std::vector<std::string>& sweep_specs) {
  std::vector<SweepAxis> axes;
  for (const std::string& spec : sweep_specs) axes.push_back(parse_sweep_axis(spec));
  for (const SweepAxis& ax : axes)
    for (const double v : {ax.lo, ax.hi}) {
      FluidParams q = cfg.params;
      double fn = 0.0;
      apply_axis(q, fn, ax, v);
      q.validate();
      if (ax.name == "fnorm" && v < 0.0)
        throw std::invalid_argument("sweep: fnorm must be >= 0");
    }

  const FunctionSpaces sp = build_spaces(cfg);
  const ScaledForcing sf = prepare_forcing(sp, cfg);
  const COmegaEstimate com = measure_c_omega(sp, cfg.seed);
  const ConstantSet cs = build_constants(cfg.params, com.value, sf.dual_norm);

  const fs::path dir = make_run_dir(cfg.output_dir, "certify", serialize_config(cfg));
  nlohmann::json report = meta_json(cfg, "certify");
  report["forcing"] = sf.forcing.description;
  report["c_omega"] = {{"value", com.value},
                       {"iterations", com.iterations},
                       {"audited_raise", com.audited_raise}};
  report["constants"] = to_json(cs);

  if (!axes.empty()) {
    std::ofstream csv(dir / "sweep.csv");
    if (!csv) throw std::runtime_error("io: cannot open " + (dir / "sweep.csv").string());
    for (const SweepAxis& ax : axes) csv << ax.name << ',';
    csv << "c1,existence_ok,radius,a_coef,b_coef,uniqueness_ok\n";
    long rows = 0;
    std::vector<int> idx(axes.size(), 0);
    for (;;) {
      FluidParams q = cfg.params;
      double fn = sf.dual_norm;
      for (std::size_t k = 0; k < axes.size(); ++k)
        apply_axis(q, fn, axes[k], axes[k].at(idx[k]));
      const ConstantSet row = build_constants(q, com.value, fn);
      for (std::size_t k = 0; k < axes.size(); ++k) csv << fmt(axes[k].at(idx[k])) << ',';
      csv << fmt(row.c1) << ',' << (row.existence_ok ? 1 : 0) << ','
          << fmt(row.radius.value) << ',' << fmt(row.uniqueness.a_coef) << ','
          << fmt(row.uniqueness.b_coef) << ',' << (row.uniqueness.ok() ? 1 : 0) << '\n';
      ++rows;
      int k = static_cast<int>(axes.size()) - 1;
      while (k >= 0 && ++idx[k] == axes[k].count) idx[k--] = 0;
      if (k < 0) break;
    }
    csv.flush();
    if (!csv) throw std::runtime_error("io: write failed: " + (dir / "sweep.csv").string());
    report["sweep_rows"] = rows;
    report["sweep_csv"] = "sweep.csv";
  }
  write_json(report, dir / "report.json");

  std::cout << "certify: c_omega = " << com.value << ", f_norm = " << sf.dual_norm
            << ", c1 = " << cs.c1 << "\n"
            << "verdicts: existence " << (cs.existence_ok ? "ok" : "not certified");
  if (cs.existence_ok)
    std::cout << ", radius " << cs.radius.value << ", uniqueness "
              << (cs.uniqueness.ok() ? "ok" : "not certified");
  std::cout << "\nartifacts: " << dir.string() << "\n";
  return 0;
}

int cmd_mms(const RunConfig& cfg) {
  const ConvergenceStudy study = convergence_study(default_benchmark(), cfg.params,
                                                   cfg.mms_levels, cfg.mms_base_n, cfg.solver);
  const fs::path dir = make_run_dir(cfg.output_dir, "mms", serialize_config(cfg));
  nlohmann::json report = meta_json(cfg, "mms");
  report["study"] = to_json(study);
  write_json(report, dir / "report.json");

  std::printf("    n  velocity_h1  pressure_l2     stress_w\n");
  for (const ConvergenceLevel& l : study.levels)
    std::printf("%5d  %11.4e  %11.4e  %11.4e\n", l.n, l.errors.velocity_h1,
                l.errors.pressure_l2, l.errors.stress_w);
  std::printf("order");
  for (std::size_t i = 0; i < study.velocity_order.size(); ++i)
    std::printf("  u %.2f  p %.2f  s %.2f", study.velocity_order[i],
                study.pressure_order[i], study.stress_order[i]);
  std::printf("%s\n", study.saturated ? "  (saturated)" : "");
  std::cout << "artifacts: " << dir.string() << "\n";
  return 0;
}

int cmd_probe(const RunConfig& cfg) {
  const FunctionSpaces sp = build_spaces(cfg);
  const ScaledForcing sf = prepare_forcing(sp, cfg);
  const COmegaEstimate com = measure_c_omega(sp, cfg.seed);
  const ConstantSet cs = build_constants(cfg.params, com.value, sf.dual_norm);

  ProbeOptions po;
  po.n_starts = cfg.probe_starts;
  po.seed = cfg.seed;
  po.solver = cfg.solver;
  if (cs.existence_ok && cs.radius.value > 0.0) po.ball_radius = cs.radius.value;
  const ProbeReport rep = multistart_uniqueness_probe(sp, cfg.params, sf.forcing, po);

  const fs::path dir = make_run_dir(cfg.output_dir, "probe", serialize_config(cfg));
  nlohmann::json report = meta_json(cfg, "probe");
  report["forcing"] = sf.forcing.description;
  report["constants"] = to_json(cs);
  report["probe"] = to_json(rep);
  write_json(report, dir / "report.json");

  std::cout << "probe: " << rep.n_converged << "/" << rep.starts.size()
            << " starts converged, max pairwise distance " << rep.max_pairwise_distance
            << (rep.escaped_ball ? " (escaped sampling ball)" : "") << "\n"
            << "artifacts: " << dir.string() << "\n";
  return rep.any_failed ? kExitSolve : 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Stationary viscoelastic flow: solver and well-posedness certificates"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  unsigned seed = 0;
  int mesh_n = 0, levels = 0;
  std::vector<std::string> sweep_specs;

  CLI::Option* o_config = app.add_option("--config", config_path, "configuration file");
  CLI::Option* o_out =
      app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  CLI::Option* o_seed = app.add_option("--seed", seed, "random seed (overrides seed)");
  CLI::Option* o_mesh =
      app.add_option("--mesh-n", mesh_n, "unit-square resolution (overrides mesh.n)");
  CLI::Option* o_levels =
      app.add_option("--levels", levels, "study levels (overrides mms.levels)");

  CLI::App* c_solve =
      app.add_subcommand("solve", "solve the coupled system and certify the result");
  CLI::App* c_certify =
      app.add_subcommand("certify", "evaluate certificate constants without solving");
  c_certify->add_option("--sweep", sweep_specs,
                        "sweep axis name=lo:hi:count (repeatable, grid product)");
  CLI::App* c_mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  CLI::App* c_probe = app.add_subcommand("probe", "multistart uniqueness probe");
  for (CLI::App* sub : {c_solve, c_certify, c_mms, c_probe}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (o_out->count() > 0) cfg.output_dir = out_dir;
    if (o_seed->count() > 0) cfg.seed = seed;
    if (o_mesh->count() > 0) {
      cfg.mesh_n = mesh_n;
      cfg.mesh_file.clear();
    }
    if (o_levels->count() > 0) cfg.mms_levels = levels;
    // Overridden values go through the same validation as the file contents.
    cfg = parse_config_text(serialize_config(cfg));
    (void)o_config;

    if (c_solve->parsed()) return cmd_solve(cfg);
    if (c_certify->parsed()) return cmd_certify(cfg, sweep_specs);
    if (c_mms->parsed()) return cmd_mms(cfg);
    return cmd_probe(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolve;
  }
}

}  // namespace oldroyd
