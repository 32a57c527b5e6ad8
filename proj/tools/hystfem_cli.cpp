// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C interface.
//
//   hystfem solve --config square.json --method both --out run1
//   hystfem compare --a run1/timestep_probe0.csv --b run1/spacetime_probe0.csv
//   hystfem mesh-info --config coil530.json

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "hystfem/hystfem.h"

namespace
{

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSolver = 2;

int ExitCode(hyst_status s)
{
  switch (s)
  {
    case HYST_OK:
      return kOk;
    case HYST_ERR_SOLVER:
    case HYST_ERR_SINGULAR:
    case HYST_ERR_INTERNAL:
      return kSolver;
    default:
      return kUsage;
  }
}

int Report(hyst_status s, const char *during)
{
  std::fprintf(stderr, "hystfem: %s failed: %s: %s\n", during, hyst_status_string(s),
               hyst_last_error());
  return ExitCode(s);
}

struct Source
{
  std::string config;
  std::string builtin;
};

void AddSource(CLI::App *cmd, Source &src)
{
  auto *c = cmd->add_option("--config", src.config, "scenario file (JSON)");
  auto *b = cmd->add_option("--builtin", src.builtin, "square_hysteresis or team32");
  c->excludes(b);
  b->excludes(c);
}

hyst_status Load(const Source &src, hyst_scenario **sc)
{
  if (!src.builtin.empty())
  {
    return hyst_scenario_builtin(src.builtin.c_str(), sc);
  }
  return hyst_scenario_load_file(src.config.c_str(), sc);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"hystfem: 2D eddy-current solver with hysteresis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hyst_version()));

  Source solve_src;
  std::string method_name, out_dir;
  auto *solve = app.add_subcommand("solve", "run one or both engines and write probe CSVs");
  AddSource(solve, solve_src);
  solve->add_option("--method", method_name, "timestep, spacetime or both")
      ->check(CLI::IsMember({"timestep", "spacetime", "both"}));
  solve->add_option("--out", out_dir, "output directory (default from config)");

  std::string path_a, path_b;
  auto *compare = app.add_subcommand("compare", "compare two probe CSVs");
  compare->add_option("--a", path_a, "first probe CSV")->required();
  compare->add_option("--b", path_b, "second probe CSV")->required();

  Source info_src;
  std::string dump_path, dump_st_path;
  auto *info = app.add_subcommand("mesh-info", "print planar and space-time mesh counts");
  AddSource(info, info_src);
  info->add_option("--dump", dump_path, "write the planar mesh listing");
  info->add_option("--dump-spacetime", dump_st_path, "write the space-time mesh listing");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*compare)
  {
    hyst_comparison c;
    const hyst_status s = hyst_compare_csv(path_a.c_str(), path_b.c_str(), &c);
    if (s != HYST_OK)
    {
      return Report(s, "compare");
    }
    const char *names[4] = {"Bx", "By", "Hx", "Hy"};
    for (int k = 0; k < 4; k++)
    {
      std::printf("%s max_abs_diff %.6e rel_l2_diff %.6e\n", names[k], c.max_abs[k], c.rel_l2[k]);
    }
    return kOk;
  }

  const Source &src = *solve ? solve_src : info_src;
  if (src.config.empty() && src.builtin.empty())
  {
    std::fprintf(stderr, "hystfem: one of --config or --builtin is required\n");
    return kUsage;
  }
  hyst_scenario *sc = nullptr;
  if (const hyst_status s = Load(src, &sc); s != HYST_OK)
  {
    return Report(s, "loading scenario");
  }

  int rc = kOk;
  if (*info)
  {
    hyst_mesh_info m;
    hyst_status s = hyst_mesh_info_get(sc, &m);
    if (s == HYST_OK)
    {
      std::printf("nodes %d\ntriangles %d\nboundary_nodes %d\nslices %d\n", m.nodes, m.triangles,
                  m.boundary_nodes, m.slices);
      std::printf("spacetime_nodes %lld\nspacetime_elements %lld\n", m.st_nodes, m.st_tets);
      std::printf("u_unknowns %lld\np_unknowns %lld\n", m.u_dofs, m.p_dofs);
    }
    if (s == HYST_OK && !dump_path.empty())
    {
      s = hyst_mesh_dump(sc, dump_path.c_str(), 0);
    }
    if (s == HYST_OK && !dump_st_path.empty())
    {
      s = hyst_mesh_dump(sc, dump_st_path.c_str(), 1);
    }
    rc = s == HYST_OK ? kOk : Report(s, "mesh-info");
  }
  else
  {
    hyst_method method = HYST_METHOD_CONFIG;
    if (method_name == "timestep")
    {
      method = HYST_METHOD_TIMESTEP;
    }
    else if (method_name == "spacetime")
    {
      method = HYST_METHOD_SPACETIME;
    }
    else if (method_name == "both")
    {
      method = HYST_METHOD_BOTH;
    }
    hyst_solve_summary sum;
    const hyst_status s = hyst_solve(sc, method, out_dir.empty() ? nullptr : out_dir.c_str(), &sum);
    if (s == HYST_OK)
    {
      std::printf("engines %d\nfiles %d\nnewton_solves %d\nmax_iterations %d\n"
                  "max_relative_residual %.3e\n",
                  sum.engines, sum.files, sum.newton_solves, sum.max_iterations,
                  sum.max_relative_residual);
      if (sum.approximate)
      {
        std::printf("note: approximate run (fallback excitation)\n");
      }
    }
    rc = s == HYST_OK ? kOk : Report(s, "solve");
  }
  hyst_scenario_free(sc);
  return rc;
}
