// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_TIMESTEP_HPP
#define HYSTFEM_TIMESTEP_HPP

#include <span>
#include <vector>

#include "hystfem/assembly2d.hpp"
#include "hystfem/problem.hpp"
#include "hystfem/sparse.hpp"

namespace hystfem
{

//
// Spatial operators shared by every backward Euler step of one problem.
//
class TimeSteppingSystem
{
public:
  explicit TimeSteppingSystem(const Problem &problem);

  const Problem &GetProblem() const { return problem_; }
  const DofMap2D &Dofs() const { return dofs_; }
  const CsrMatrix &Mass() const { return mass_; }
  std::span<const PamParams> Params() const { return params_; }
  std::span<const Vec2> Magnetizations() const { return m_perp_; }

private:
  const Problem &problem_;
  DofMap2D dofs_;
  CsrMatrix mass_;
  std::vector<PamParams> params_;
  std::vector<Vec2> m_perp_;
};

struct Trajectory
{
  std::vector<double> times;          // t_i = i h_t
  std::vector<Vector> states;         // full nodal vectors, states[0] = 0
  std::vector<SolveReport> reports;   // reports[i - 1] belongs to step i
};

// R(u) = (1/h) [M + A(w)] (u - u_prev) + K(u) u - F(t_i),  w = (u - u_prev) / h,
// with u, u_prev on the free dofs.
Vector step_residual(const TimeSteppingSystem &sys, std::span<const double> u,
                     std::span<const double> u_prev, double h_t, double t_i);

// J = M / h + T_g(w) / h + T_f(u).
CsrMatrix step_jacobian(const TimeSteppingSystem &sys, std::span<const double> u,
                        std::span<const double> u_prev, double h_t);

// Newton solve for one step, warm-started from u_prev.
NewtonResult advance_step(const TimeSteppingSystem &sys, std::span<const double> u_prev,
                          double t_i, double h_t, const NewtonSettings &settings);

// Uniform steps h_t = T / n_steps from u = 0; throws SolverError naming the failed step.
Trajectory run_transient(const Problem &problem, int n_steps, const NewtonSettings &settings);

}  // namespace hystfem

#endif  // HYSTFEM_TIMESTEP_HPP
