// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hystfem/errors.hpp"
#include "hystfem/timestep.hpp"
#include "support/meshes.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"

using namespace hystfem;

namespace
{

double MinEigen(const oracle::Dense &D)
{
  Eigen::MatrixXd E(D.size(), D.size());
  for (std::size_t i = 0; i < D.size(); i++)
  {
    for (std::size_t j = 0; j < D.size(); j++)
    {
      E(i, j) = 0.5 * (D[i][j] + D[j][i]);
    }
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(E).eigenvalues().minCoeff();
}

}  // namespace

TEST(StepResidual, ZeroAtRestWithoutSource)
{
  const Problem pb = testproblem::Square(build_structured_square(6, testmesh::CuSquare), 1.0, 0.0);
  const TimeSteppingSystem sys(pb);
  const Vector z(sys.Dofs().Size(), 0.0);
  for (double v : step_residual(sys, z, z, 0.1, 0.3))
  {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(StepResidual, SourceOnlyAtRestIsMinusLoad)
{
  const Problem pb = testproblem::Square(build_structured_square(4, testmesh::CuSquare), 1.0, 2000.0);
  const TimeSteppingSystem sys(pb);
  const Vector z(sys.Dofs().Size(), 0.0);
  const Vector R = step_residual(sys, z, z, 0.1, 0.25);
  const Vector F = assemble_load(pb.mesh, 0.25, pb.source, sys.Magnetizations(), sys.Dofs());
  for (int i = 0; i < sys.Dofs().Size(); i++)
  {
    EXPECT_EQ(R[i], -F[i]);
  }
}

TEST(StepResidual, MatchesDenseOracleOnTwoTriangles)
{
  Problem pb = testproblem::Square(testmesh::TwoTrianglesOneFixed(), 2.0, 0.0);
  pb.materials[0].m_perp = {0.4, -0.9};
  pb.source = [](int, const Vec2 &, double t) { return 5.0 * t; };
  const TimeSteppingSystem sys(pb);
  ASSERT_EQ(sys.Dofs().Size(), 3);
  const Vector u{0.3, -0.2, 0.5}, up{0.1, 0.05, -0.1};
  const double h = 0.05, t = 0.7;
  const Vector R = step_residual(sys, u, up, h, t);
  const auto ref = testproblem::DenseStepResidual(pb, sys.Dofs().Expand(u), sys.Dofs().Expand(up), h, t);
  const Vector ref_free = sys.Dofs().Restrict(ref);
  for (int i = 0; i < 3; i++)
  {
    EXPECT_NEAR(R[i], ref_free[i], 1e-12 * (1 + std::abs(ref_free[i])));
  }
}

TEST(StepResidual, MatchesDenseOracleOnJitteredMesh)
{
  const Problem pb = testproblem::Square(testmesh::Jittered(6, 17), 0.5, 2000.0);
  const TimeSteppingSystem sys(pb);
  std::mt19937_64 rng(3);
  const Vector u = oracle::random_vector(rng, sys.Dofs().Size(), -0.05, 0.05);
  const Vector up = oracle::random_vector(rng, sys.Dofs().Size(), -0.05, 0.05);
  const Vector R = step_residual(sys, u, up, 0.03, 0.4);
  const Vector ref = sys.Dofs().Restrict(
      testproblem::DenseStepResidual(pb, sys.Dofs().Expand(u), sys.Dofs().Expand(up), 0.03, 0.4));
  EXPECT_LE(oracle::max_abs_diff(R, ref), 1e-12 * oracle::l2(ref));
}

TEST(StepJacobian, MatchesFiniteDifferences)
{
  const Problem pb = testproblem::Square(testmesh::Jittered(8, 29), 0.01, 2000.0);
  const TimeSteppingSystem sys(pb);
  std::mt19937_64 rng(41);
  const double h = 1.25 / 40;
  for (int trial = 0; trial < 5; trial++)
  {
    const Vector up = oracle::random_vector(rng, sys.Dofs().Size(), -0.1, 0.1);
    const Vector u = oracle::random_vector(rng, sys.Dofs().Size(), -0.1, 0.1);
    auto R = [&](const Vector &x) { return step_residual(sys, x, up, h, 0.5); };
    const auto fd = oracle::fd_jacobian(R, u);
    const auto J = oracle::to_dense(step_jacobian(sys, u, up, h));
    EXPECT_LE(oracle::rel_frob_diff(fd, J), 1e-5) << "trial " << trial;
  }
}

TEST(StepJacobian, LinearMaterialClosedForm)
{
  // J = M/h + (p3/h + p0) K1 for a static linear law with constant g.
  const PamParams lin{3.0, 0.0, 1.0, 0.5, 0.0, 1.0};
  Problem pb = testproblem::Square(build_structured_square(5, testmesh::AllFe), 2.0, 0.0, lin);
  const TimeSteppingSystem sys(pb);
  const double h = 0.1;
  std::mt19937_64 rng(8);
  const Vector u = oracle::random_vector(rng, sys.Dofs().Size(), -1, 1);
  const Vector up = oracle::random_vector(rng, sys.Dofs().Size(), -1, 1);
  const auto J = oracle::to_dense(step_jacobian(sys, u, up, h));
  const auto M = oracle::to_dense(sys.Mass());
  const auto K = oracle::to_dense(
      assemble_weighted_stiffness(pb.mesh, std::vector<double>(pb.mesh.NumTriangles(), 1.0), sys.Dofs()));
  auto ref = M;
  for (std::size_t i = 0; i < ref.size(); i++)
  {
    for (std::size_t j = 0; j < ref.size(); j++)
    {
      ref[i][j] = M[i][j] / h + (0.5 / h + 3.0) * K[i][j];
    }
  }
  EXPECT_LE(oracle::rel_frob_diff(ref, J), 1e-14);
}

TEST(StepJacobian, PositiveDefiniteAtRandomStates)
{
  const Problem pb = testproblem::Square(testmesh::Jittered(7, 4), 0.01, 2000.0);
  const TimeSteppingSystem sys(pb);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; trial++)
  {
    const Vector up = oracle::random_vector(rng, sys.Dofs().Size(), -0.2, 0.2);
    const Vector u = oracle::random_vector(rng, sys.Dofs().Size(), -0.2, 0.2);
    const auto J = oracle::to_dense(step_jacobian(sys, u, up, 0.05));
    EXPECT_GT(MinEigen(J), 0.0);
    double asym = 0.0;
    for (std::size_t i = 0; i < J.size(); i++)
    {
      for (std::size_t j = 0; j < J.size(); j++)
      {
        asym = std::max(asym, std::abs(J[i][j] - J[j][i]));
      }
    }
    EXPECT_LE(asym, 1e-12 * oracle::frob(J));
  }
}

TEST(AdvanceStep, LinearProblemTakesOneIteration)
{
  const PamParams lin{3.0, 0.0, 1.0, 0.5, 0.0, 1.0};
  const Problem pb =
      testproblem::Square(build_structured_square(6, testmesh::CuSquare), 1.0, 100.0, lin);
  const TimeSteppingSystem sys(pb);
  const Vector z(sys.Dofs().Size(), 0.0);
  const NewtonResult r = advance_step(sys, z, 0.25, 0.25, NewtonSettings{});
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 1);
  // dense oracle: (M/h + (p3/h + p0) K1 in fe, nu K1 in cu) u = F
  const auto J = oracle::to_dense(step_jacobian(sys, z, z, 0.25));
  const Vector F = assemble_load(pb.mesh, 0.25, pb.source, sys.Magnetizations(), sys.Dofs());
  const Vector ref = oracle::dense_solve(J, F);
  EXPECT_LE(oracle::max_abs_diff(r.u, ref), 1e-10 * oracle::l2(ref));
}

TEST(RunTransient, ZeroSourceStaysAtRest)
{
  const Problem pb = testproblem::Square(build_structured_square(5, testmesh::CuSquare), 0.01, 0.0);
  const Trajectory tr = run_transient(pb, 6, NewtonSettings{});
  ASSERT_EQ(tr.states.size(), 7u);
  ASSERT_EQ(tr.reports.size(), 6u);
  for (const auto &s : tr.states)
  {
    for (double v : s)
    {
      EXPECT_EQ(v, 0.0);
    }
  }
  for (const auto &r : tr.reports)
  {
    EXPECT_EQ(r.iterations, 0);
    EXPECT_TRUE(r.converged);
  }
  EXPECT_DOUBLE_EQ(tr.times.back(), 1.0);
}

TEST(RunTransient, NonlinearStepsConvergeWithFullSteps)
{
  const Problem pb = testproblem::Square(build_structured_square(8, testmesh::CuSquare), 0.01, 2000.0,
                                         testproblem::kFe, 1.25, 20);
  const Trajectory tr = run_transient(pb, 20, NewtonSettings{});
  for (const auto &r : tr.reports)
  {
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 25);
    EXPECT_LE(r.FinalResidual(), std::max(1e-12, 1e-8 * r.InitialResidual()));
    const std::size_t n = r.step_sizes.size();
    if (n >= 2)
    {
      EXPECT_EQ(r.step_sizes[n - 1], 1.0);
      EXPECT_EQ(r.step_sizes[n - 2], 1.0);
    }
  }
  for (int i = 0; i < pb.mesh.NumNodes(); i++)
  {
    if (pb.mesh.IsBoundary(i))
    {
      EXPECT_EQ(tr.states.back()[i], 0.0);
    }
  }
}

TEST(RunTransient, NonConvergenceNamesTheStep)
{
  const Problem pb = testproblem::Square(build_structured_square(6, testmesh::CuSquare), 0.01, 2000.0);
  NewtonSettings s;
  s.max_iter = 1;
  try
  {
    run_transient(pb, 4, s);
    FAIL() << "expected SolverError";
  }
  catch (const SolverError &e)
  {
    EXPECT_NE(std::string(e.what()).find("time step 1"), std::string::npos) << e.what();
  }
}

TEST(RunTransient, Deterministic)
{
  const Problem pb = testproblem::Square(build_structured_square(6, testmesh::CuSquare), 0.01, 2000.0);
  const Trajectory a = run_transient(pb, 5, NewtonSettings{});
  const Trajectory b = run_transient(pb, 5, NewtonSettings{});
  EXPECT_EQ(a.states, b.states);
}
