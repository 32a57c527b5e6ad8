/* Copyright 2026 The hystfem Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the hystfem solver library. Every call returns a status code;
 * failures leave a message in hyst_last_error() for the calling thread.
 */

#ifndef HYSTFEM_H
#define HYSTFEM_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HYST_API __declspec(dllexport)
#else
#define HYST_API __attribute__((visibility("default")))
#endif

typedef struct hyst_scenario hyst_scenario;

typedef enum hyst_status
{
  HYST_OK = 0,
  HYST_ERR_INVALID_ARGUMENT = 1,
  HYST_ERR_PARSE = 2,
  HYST_ERR_VALIDATION = 3,
  HYST_ERR_IO = 4,
  HYST_ERR_SOLVER = 5,
  HYST_ERR_SINGULAR = 6,
  HYST_ERR_OUTSIDE_DOMAIN = 7,
  HYST_ERR_INTERNAL = 99
} hyst_status;

typedef enum hyst_method
{
  HYST_METHOD_CONFIG = -1, /* use the scenario's own method */
  HYST_METHOD_TIMESTEP = 0,
  HYST_METHOD_SPACETIME = 1,
  HYST_METHOD_BOTH = 2
} hyst_method;

typedef struct hyst_mesh_info
{
  int nodes;
  int triangles;
  int boundary_nodes;
  int slices;
  long long st_nodes;
  long long st_tets;
  long long u_dofs;
  long long p_dofs;
} hyst_mesh_info;

typedef struct hyst_solve_summary
{
  int engines;
  int files;
  int newton_solves;
  int max_iterations;
  double max_relative_residual;
  int approximate; /* fallback excitation in use */
} hyst_solve_summary;

/* Channel order: Bx, By, Hx, Hy. */
typedef struct hyst_comparison
{
  double max_abs[4];
  double rel_l2[4];
} hyst_comparison;

HYST_API const char *hyst_version(void);
HYST_API const char *hyst_status_string(hyst_status status);
HYST_API const char *hyst_last_error(void);

HYST_API hyst_status hyst_scenario_load_file(const char *path, hyst_scenario **out);
/* base_dir resolves relative paths inside the document; may be NULL. */
HYST_API hyst_status hyst_scenario_load_string(const char *text, const char *base_dir,
                                               hyst_scenario **out);
HYST_API hyst_status hyst_scenario_builtin(const char *name, hyst_scenario **out);
HYST_API void hyst_scenario_free(hyst_scenario *scenario);

HYST_API hyst_status hyst_scenario_final_time(const hyst_scenario *scenario, double *T);
HYST_API hyst_status hyst_scenario_steps(const hyst_scenario *scenario, int *n_steps);

HYST_API hyst_status hyst_mesh_info_get(const hyst_scenario *scenario, hyst_mesh_info *info);
/* Writes the planar mesh, or its space-time extrusion when spacetime != 0. */
HYST_API hyst_status hyst_mesh_dump(const hyst_scenario *scenario, const char *path,
                                    int spacetime);

/* out_dir NULL uses the scenario's output_dir. summary may be NULL. */
HYST_API hyst_status hyst_solve(const hyst_scenario *scenario, hyst_method method,
                                const char *out_dir, hyst_solve_summary *summary);

HYST_API hyst_status hyst_compare_csv(const char *path_a, const char *path_b,
                                      hyst_comparison *result);

/* p[6] material parameters; returns H for the given B, dB/dt and magnetization. */
HYST_API hyst_status hyst_pam_eval_h(const double p[6], const double B[2], const double Bdot[2],
                                     const double M[2], double H[2]);

#ifdef __cplusplus
}
#endif

#endif /* HYSTFEM_H */
