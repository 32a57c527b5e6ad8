// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hystfem/errors.hpp"

namespace hystfem
{

namespace
{

double Since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EngineResult run_timestep_engine(const ScenarioConfig &config, const Problem &problem)
{
  const auto t0 = std::chrono::steady_clock::now();
  EngineResult out;
  out.engine = "timestep";
  Trajectory traj = run_transient(problem, config.n_steps, config.newton);
  for (std::size_t i = 0; i < traj.reports.size(); i++)
  {
    out.solves.push_back({"step " + std::to_string(i + 1), std::move(traj.reports[i])});
  }
  for (const Vec2 &p : config.probes)
  {
    out.probes.push_back(probe_series(traj, problem, p));
  }
  out.seconds = Since(t0);
  return out;
}

EngineResult run_spacetime_engine(const ScenarioConfig &config, const Problem &problem)
{
  const auto t0 = std::chrono::steady_clock::now();
  EngineResult out;
  out.engine = "spacetime";
  const SpaceTimeMesh st = extrude_spacetime(problem.mesh, config.n_steps, config.T);
  SpaceTimeSolution sol = solve_spacetime(st, problem, config.newton);
  out.converged = sol.report.converged;
  for (const Vec2 &p : config.probes)
  {
    out.probes.push_back(probe_series(sol, st, problem, p));
  }
  out.solves.push_back({"global", std::move(sol.report)});
  out.seconds = Since(t0);
  return out;
}

void write_run_report(const RunResult &result, const ScenarioConfig &config, std::ostream &os)
{
  os << "# scenario " << config.name << ", T " << config.T << ", n_steps " << config.n_steps
     << (result.approximate ? ", approximate excitation" : "") << '\n';
  char buf[256];
  for (const auto &eng : result.engines)
  {
    for (const auto &rec : eng.solves)
    {
      const auto &r = rec.report;
      const int n = static_cast<int>(r.step_sizes.size());
      const double a1 = n >= 2 ? r.step_sizes[n - 2] : (n == 1 ? 1.0 : 0.0);
      const double a2 = n >= 1 ? r.step_sizes[n - 1] : 0.0;
      std::snprintf(buf, sizeof buf,
                    "%s %s iterations %d final_residual %.6e relative %.6e last_steps %g %g %s\n",
                    eng.engine.c_str(), rec.id.c_str(), r.iterations, r.FinalResidual(),
                    r.RelativeResidual(), a1, a2, r.converged ? "converged" : "NOT_CONVERGED");
      os << buf;
    }
  }
}

RunResult run_scenario(const ScenarioConfig &config, Method method,
                       const std::filesystem::path &out_dir)
{
  const Problem problem = make_problem(config);
  RunResult result;
  result.approximate = config.Approximate();
  if (method == Method::TimeStep || method == Method::Both)
  {
    result.engines.push_back(run_timestep_engine(config, problem));
  }
  if (method == Method::SpaceTime || method == Method::Both)
  {
    result.engines.push_back(run_spacetime_engine(config, problem));
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
  {
    throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  }
  for (const auto &eng : result.engines)
  {
    for (std::size_t k = 0; k < eng.probes.size(); k++)
    {
      const std::string stem = eng.engine + "_probe" + std::to_string(k);
      const auto series_path = out_dir / (stem + ".csv");
      export_csv(eng.probes[k], series_path);
      result.files.push_back(series_path);
      for (char c : config.bh_components)
      {
        const auto bh_path = out_dir / (stem + "_bh_" + c + ".csv");
        export_bh_csv(eng.probes[k], c, bh_path);
        result.files.push_back(bh_path);
      }
    }
  }
  const auto report_path = out_dir / "run_report.txt";
  {
    std::ofstream os(report_path);
    if (!os)
    {
      throw IoError("cannot write " + report_path.string());
    }
    write_run_report(result, config, os);
  }
  result.files.push_back(report_path);

  for (const auto &eng : result.engines)
  {
    if (!eng.converged)
    {
      const auto &r = eng.solves.back().report;
      throw SolverError(eng.engine + " Newton solve did not converge after " +
                        std::to_string(r.iterations) + " iterations (relative residual " +
                        std::to_string(r.RelativeResidual()) + ")");
    }
  }
  return result;
}

MeshInfo mesh_info(const ScenarioConfig &config)
{
  const Mesh2D mesh = build_geometry(config);
  MeshInfo info;
  info.nodes = mesh.NumNodes();
  info.triangles = mesh.NumTriangles();
  info.boundary_nodes = static_cast<int>(mesh.BoundaryNodes().size());
  info.slices = config.n_steps;
  const SpaceTimeMesh st = extrude_spacetime(mesh, config.n_steps, config.T);
  info.st_nodes = st.NumNodes();
  info.st_tets = st.NumTets();
  const StDofMaps maps = StDofMaps::Build(st);
  info.u_dofs = maps.NumU();
  info.p_dofs = maps.NumP();
  return info;
}

}  // namespace hystfem
