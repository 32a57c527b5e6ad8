// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_RUNNER_HPP
#define HYSTFEM_RUNNER_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hystfem/postprocess.hpp"
#include "hystfem/scenario.hpp"

namespace hystfem
{

struct NewtonRecord
{
  std::string id;  // "step 7" or "global"
  SolveReport report;
};

struct EngineResult
{
  std::string engine;  // "timestep" or "spacetime"
  std::vector<ProbeSeries> probes;
  std::vector<NewtonRecord> solves;
  bool converged = true;
  double seconds = 0.0;
};

// Engine runs on a prepared problem; probes come from config.probes. A space-time
// solve that misses the tolerance is returned with converged = false.
EngineResult run_timestep_engine(const ScenarioConfig &config, const Problem &problem);
EngineResult run_spacetime_engine(const ScenarioConfig &config, const Problem &problem);

struct RunResult
{
  std::vector<EngineResult> engines;
  std::vector<std::filesystem::path> files;  // CSVs and the run report
  bool approximate = false;
};

// Runs the requested engine(s), writes <engine>_probe<k>.csv,
// <engine>_probe<k>_bh_<c>.csv and run_report.txt under out_dir. Throws SolverError
// after writing the report when any solve failed to converge.
RunResult run_scenario(const ScenarioConfig &config, Method method,
                       const std::filesystem::path &out_dir);

void write_run_report(const RunResult &result, const ScenarioConfig &config, std::ostream &os);

struct MeshInfo
{
  int nodes = 0;
  int triangles = 0;
  int boundary_nodes = 0;
  int slices = 0;
  long long st_nodes = 0;
  long long st_tets = 0;
  long long u_dofs = 0;
  long long p_dofs = 0;
};

MeshInfo mesh_info(const ScenarioConfig &config);

}  // namespace hystfem

#endif  // HYSTFEM_RUNNER_HPP
