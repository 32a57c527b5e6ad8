// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/timestep.hpp"

#include <sstream>

#include "hystfem/errors.hpp"

namespace hystfem
{

TimeSteppingSystem::TimeSteppingSystem(const Problem &problem)
  : problem_(problem), dofs_(DofMap2D::Interior(problem.mesh)),
    params_(problem.Params()), m_perp_(problem.Magnetizations())
{
  problem_.Validate();
  const auto sigma = problem.Conductivities();
  mass_ = assemble_mass(problem.mesh, sigma, dofs_);
}

Vector step_residual(const TimeSteppingSystem &sys, std::span<const double> u,
                     std::span<const double> u_prev, double h_t, double t_i)
{
  const Mesh2D &mesh = sys.GetProblem().mesh;
  const DofMap2D &dofs = sys.Dofs();
  const int n = dofs.Size();
  Vector du(n), w(n);
  for (int i = 0; i < n; i++)
  {
    du[i] = u[i] - u_prev[i];
    w[i] = du[i] / h_t;
  }
  // A(w)(u - u_prev)/h is the g-weighted flux of w.
  const Vector Mdu = spmv(sys.Mass(), du);
  const Vector dyn = assemble_flux(mesh, dofs.Expand(w), TangentKind::Dynamic, sys.Params(), dofs);
  const Vector stat =
      assemble_flux(mesh, dofs.Expand(u), TangentKind::Anhysteretic, sys.Params(), dofs);
  const Vector F =
      assemble_load(mesh, t_i, sys.GetProblem().source, sys.Magnetizations(), dofs);
  Vector R(n);
  for (int i = 0; i < n; i++)
  {
    R[i] = Mdu[i] / h_t + dyn[i] + stat[i] - F[i];
  }
  return R;
}

CsrMatrix step_jacobian(const TimeSteppingSystem &sys, std::span<const double> u,
                        std::span<const double> u_prev, double h_t)
{
  const Mesh2D &mesh = sys.GetProblem().mesh;
  const DofMap2D &dofs = sys.Dofs();
  const int n = dofs.Size();
  Vector w(n);
  for (int i = 0; i < n; i++)
  {
    w[i] = (u[i] - u_prev[i]) / h_t;
  }
  const CsrMatrix Tg =
      assemble_tangent(mesh, dofs.Expand(w), TangentKind::Dynamic, sys.Params(), dofs);
  const CsrMatrix Tf =
      assemble_tangent(mesh, dofs.Expand(u), TangentKind::Anhysteretic, sys.Params(), dofs);

  std::vector<Triplet> triplets;
  triplets.reserve(sys.Mass().NonZeros() + Tg.NonZeros() + Tf.NonZeros());
  auto append = [&triplets](const CsrMatrix &A, double scale) {
    for (int i = 0; i < A.Rows(); i++)
    {
      for (int k = A.RowPtr()[i]; k < A.RowPtr()[i + 1]; k++)
      {
        triplets.push_back({i, A.ColIdx()[k], scale * A.Values()[k]});
      }
    }
  };
  append(sys.Mass(), 1.0 / h_t);
  append(Tg, 1.0 / h_t);
  append(Tf, 1.0);
  return csr_from_triplets(n, n, triplets);
}

NewtonResult advance_step(const TimeSteppingSystem &sys, std::span<const double> u_prev,
                          double t_i, double h_t, const NewtonSettings &settings)
{
  if (!(h_t > 0.0))
  {
    throw InvalidArgument("time step must be positive");
  }
  const Vector prev(u_prev.begin(), u_prev.end());
  auto residual = [&](const Vector &u) { return step_residual(sys, u, prev, h_t, t_i); };
  auto jacobian = [&](const Vector &u) { return step_jacobian(sys, u, prev, h_t); };
  return newton_solve(residual, jacobian, prev, settings);
}

Trajectory run_transient(const Problem &problem, int n_steps, const NewtonSettings &settings)
{
  if (n_steps < 1)
  {
    throw InvalidArgument("transient run needs at least one step");
  }
  const TimeSteppingSystem sys(problem);
  const double h_t = problem.final_time / n_steps;

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.emplace_back(problem.mesh.NumNodes(), 0.0);

  Vector u(sys.Dofs().Size(), 0.0);
  for (int i = 1; i <= n_steps; i++)
  {
    const double t_i = problem.final_time * i / n_steps;
    NewtonResult step = advance_step(sys, u, t_i, h_t, settings);
    if (!step.report.converged)
    {
      std::ostringstream msg;
      msg << "time step " << i << " (t = " << t_i << ") did not converge after "
          << step.report.iterations << " Newton iterations, residual "
          << step.report.FinalResidual();
      throw SolverError(msg.str());
    }
    u = std::move(step.u);
    traj.times.push_back(t_i);
    traj.states.push_back(sys.Dofs().Expand(u));
    traj.reports.push_back(std::move(step.report));
  }
  return traj;
}

}  // namespace hystfem
