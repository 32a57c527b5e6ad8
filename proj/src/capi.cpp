// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/hystfem.h"

#include <algorithm>
#include <fstream>
#include <new>
#include <string>

#include "hystfem/errors.hpp"
#include "hystfem/runner.hpp"

struct hyst_scenario
{
  hystfem::ScenarioConfig config;
};

namespace
{

thread_local std::string g_last_error;

hyst_status Fail(hyst_status code, const char *what)
{
  g_last_error = what;
  return code;
}

// Maps every library exception onto a status code.
template <typename F>
hyst_status Guard(F &&body)
{
  try
  {
    body();
    g_last_error.clear();
    return HYST_OK;
  }
  catch (const hystfem::ParseError &e)
  {
    return Fail(HYST_ERR_PARSE, e.what());
  }
  catch (const hystfem::ValidationError &e)
  {
    return Fail(HYST_ERR_VALIDATION, e.what());
  }
  catch (const hystfem::IoError &e)
  {
    return Fail(HYST_ERR_IO, e.what());
  }
  catch (const hystfem::SingularMatrix &e)
  {
    return Fail(HYST_ERR_SINGULAR, e.what());
  }
  catch (const hystfem::SolverError &e)
  {
    return Fail(HYST_ERR_SOLVER, e.what());
  }
  catch (const hystfem::PointOutsideDomain &e)
  {
    return Fail(HYST_ERR_OUTSIDE_DOMAIN, e.what());
  }
  catch (const hystfem::InvalidArgument &e)
  {
    return Fail(HYST_ERR_INVALID_ARGUMENT, e.what());
  }
  catch (const std::bad_alloc &)
  {
    return Fail(HYST_ERR_INTERNAL, "out of memory");
  }
  catch (const std::exception &e)
  {
    return Fail(HYST_ERR_INTERNAL, e.what());
  }
  catch (...)
  {
    return Fail(HYST_ERR_INTERNAL, "unknown error");
  }
}

hyst_status NullArg(const char *name)
{
  return Fail(HYST_ERR_INVALID_ARGUMENT, (std::string(name) + " must not be NULL").c_str());
}

hyst_status Wrap(hystfem::ScenarioConfig cfg, hyst_scenario **out)
{
  *out = new hyst_scenario{std::move(cfg)};
  return HYST_OK;
}

}  // namespace

extern "C" {

const char *hyst_version(void)
{
  return "0.1.0";
}

const char *hyst_status_string(hyst_status status)
{
  switch (status)
  {
    case HYST_OK:
      return "ok";
    case HYST_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case HYST_ERR_PARSE:
      return "parse error";
    case HYST_ERR_VALIDATION:
      return "validation error";
    case HYST_ERR_IO:
      return "i/o error";
    case HYST_ERR_SOLVER:
      return "solver did not converge";
    case HYST_ERR_SINGULAR:
      return "singular matrix";
    case HYST_ERR_OUTSIDE_DOMAIN:
      return "point outside domain";
    case HYST_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char *hyst_last_error(void)
{
  return g_last_error.c_str();
}

hyst_status hyst_scenario_load_file(const char *path, hyst_scenario **out)
{
  if (!path)
  {
    return NullArg("path");
  }
  if (!out)
  {
    return NullArg("out");
  }
  *out = nullptr;
  return Guard([&] { Wrap(hystfem::load_config_file(path), out); });
}

hyst_status hyst_scenario_load_string(const char *text, const char *base_dir, hyst_scenario **out)
{
  if (!text)
  {
    return NullArg("text");
  }
  if (!out)
  {
    return NullArg("out");
  }
  *out = nullptr;
  return Guard([&] { Wrap(hystfem::load_config(text, base_dir ? base_dir : ""), out); });
}

hyst_status hyst_scenario_builtin(const char *name, hyst_scenario **out)
{
  if (!name)
  {
    return NullArg("name");
  }
  if (!out)
  {
    return NullArg("out");
  }
  *out = nullptr;
  return Guard([&] { Wrap(hystfem::builtin_scenario(name), out); });
}

void hyst_scenario_free(hyst_scenario *scenario)
{
  delete scenario;
}

hyst_status hyst_scenario_final_time(const hyst_scenario *scenario, double *T)
{
  if (!scenario || !T)
  {
    return NullArg(!scenario ? "scenario" : "T");
  }
  *T = scenario->config.T;
  return HYST_OK;
}

hyst_status hyst_scenario_steps(const hyst_scenario *scenario, int *n_steps)
{
  if (!scenario || !n_steps)
  {
    return NullArg(!scenario ? "scenario" : "n_steps");
  }
  *n_steps = scenario->config.n_steps;
  return HYST_OK;
}

hyst_status hyst_mesh_info_get(const hyst_scenario *scenario, hyst_mesh_info *info)
{
  if (!scenario || !info)
  {
    return NullArg(!scenario ? "scenario" : "info");
  }
  return Guard([&] {
    const hystfem::MeshInfo m = hystfem::mesh_info(scenario->config);
    *info = {m.nodes, m.triangles, m.boundary_nodes, m.slices,
             m.st_nodes, m.st_tets, m.u_dofs, m.p_dofs};
  });
}

hyst_status hyst_mesh_dump(const hyst_scenario *scenario, const char *path, int spacetime)
{
  if (!scenario || !path)
  {
    return NullArg(!scenario ? "scenario" : "path");
  }
  return Guard([&] {
    const hystfem::Mesh2D mesh = hystfem::build_geometry(scenario->config);
    std::ofstream os(path);
    if (!os)
    {
      throw hystfem::IoError(std::string("cannot write ") + path);
    }
    if (spacetime)
    {
      hystfem::write_mesh_dump(
          hystfem::extrude_spacetime(mesh, scenario->config.n_steps, scenario->config.T), os);
    }
    else
    {
      hystfem::write_mesh_dump(mesh, os);
    }
    if (!os)
    {
      throw hystfem::IoError(std::string("write failed for ") + path);
    }
  });
}

hyst_status hyst_solve(const hyst_scenario *scenario, hyst_method method, const char *out_dir,
                       hyst_solve_summary *summary)
{
  if (!scenario)
  {
    return NullArg("scenario");
  }
  const hystfem::ScenarioConfig &cfg = scenario->config;
  hystfem::Method m = cfg.method;
  switch (method)
  {
    case HYST_METHOD_CONFIG:
      break;
    case HYST_METHOD_TIMESTEP:
      m = hystfem::Method::TimeStep;
      break;
    case HYST_METHOD_SPACETIME:
      m = hystfem::Method::SpaceTime;
      break;
    case HYST_METHOD_BOTH:
      m = hystfem::Method::Both;
      break;
    default:
      return Fail(HYST_ERR_INVALID_ARGUMENT, "unknown method");
  }
  return Guard([&] {
    const hystfem::RunResult run =
        hystfem::run_scenario(cfg, m, out_dir ? std::filesystem::path(out_dir) : cfg.output_dir);
    if (summary)
    {
      hyst_solve_summary s{};
      s.engines = static_cast<int>(run.engines.size());
      s.files = static_cast<int>(run.files.size());
      for (const auto &eng : run.engines)
      {
        for (const auto &rec : eng.solves)
        {
          s.newton_solves++;
          s.max_iterations = std::max(s.max_iterations, rec.report.iterations);
          s.max_relative_residual =
              std::max(s.max_relative_residual, rec.report.RelativeResidual());
        }
      }
      s.approximate = run.approximate ? 1 : 0;
      *summary = s;
    }
  });
}

hyst_status hyst_compare_csv(const char *path_a, const char *path_b, hyst_comparison *result)
{
  if (!path_a || !path_b || !result)
  {
    return NullArg(!path_a ? "path_a" : (!path_b ? "path_b" : "result"));
  }
  return Guard([&] {
    const auto c = hystfem::compare_series(hystfem::read_probe_csv(path_a),
                                           hystfem::read_probe_csv(path_b));
    const hystfem::ChannelDiff *ch[4] = {&c.Bx, &c.By, &c.Hx, &c.Hy};
    for (int k = 0; k < 4; k++)
    {
      result->max_abs[k] = ch[k]->max_abs;
      result->rel_l2[k] = ch[k]->rel_l2;
    }
  });
}

hyst_status hyst_pam_eval_h(const double p[6], const double B[2], const double Bdot[2],
                            const double M[2], double H[2])
{
  if (!p || !B || !Bdot || !M || !H)
  {
    return NullArg("pointer argument");
  }
  return Guard([&] {
    const hystfem::PamParams params{p[0], p[1], p[2], p[3], p[4], p[5]};
    params.Validate();
    const hystfem::Vec2 h =
        hystfem::eval_h_field({{B[0], B[1]}, {Bdot[0], Bdot[1]}, {M[0], M[1]}}, params);
    H[0] = h[0];
    H[1] = h[1];
  });
}

}  // extern "C"
