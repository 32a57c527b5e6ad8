// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hystfem/errors.hpp"
#include "hystfem/postprocess.hpp"
#include "support/meshes.hpp"
#include "support/problems.hpp"

using namespace hystfem;
namespace fs = std::filesystem;

namespace
{

const PamParams kLinear{2.0, 0.0, 1.0, 0.5, 0.0, 1.0};

fs::path Scratch(const std::string &name)
{
  const fs::path d = fs::temp_directory_path() / ("hystfem_pp_" + name);
  fs::create_directories(d);
  return d;
}

std::vector<std::string> Lines(const fs::path &p)
{
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);)
  {
    out.push_back(l);
  }
  return out;
}

ProbeSeries Ramp(int n)
{
  ProbeSeries s;
  for (int i = 0; i < n; i++)
  {
    const double t = 0.1 * i;
    s.Push(t, {std::sin(t), -t}, {3 * std::cos(t), 1.0 / (1 + t)});
  }
  return s;
}

// u = x1 t on a mesh without Dirichlet nodes.
Problem RampProblem()
{
  Mesh2D m = testmesh::Jittered(4, 3, testmesh::AllFe);
  m.SetBoundary({});
  return testproblem::Square(m, 1.0, 0.0, kLinear, 1.0, 4);
}

}  // namespace

TEST(ProbeSeries, ZeroTrajectoryPrintsZeros)
{
  const Problem pb = testproblem::Square(build_structured_square(4, testmesh::CuSquare), 0.01, 0.0);
  const Trajectory tr = run_transient(pb, 3, NewtonSettings{});
  const ProbeSeries s = probe_series(tr, pb, {0.5, 0.13});
  ASSERT_EQ(s.Size(), 4);
  const fs::path d = Scratch("zero");
  export_csv(s, d / "p.csv");
  const auto lines = Lines(d / "p.csv");
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "t,Bx,By,Hx,Hy");
  EXPECT_EQ(lines[1], "0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00,"
                      "0.0000000000000000e+00,0.0000000000000000e+00");
  fs::remove_all(d);
}

TEST(ProbeSeries, TimeSteppingRampField)
{
  const Problem pb = RampProblem();
  Trajectory tr;
  for (int i = 0; i <= 4; i++)
  {
    const double t = 0.25 * i;
    tr.times.push_back(t);
    Vector u(pb.mesh.NumNodes());
    for (int k = 0; k < pb.mesh.NumNodes(); k++)
    {
      u[k] = pb.mesh.nodes[k][0] * t;
    }
    tr.states.push_back(u);
  }
  const ProbeSeries s = probe_series(tr, pb, {0.37, 0.61});
  for (int i = 0; i < s.Size(); i++)
  {
    const double t = s.times[i];
    EXPECT_NEAR(s.Bx[i], 0.0, 1e-13);
    EXPECT_NEAR(s.By[i], -t, 1e-13);
    // H = p0 B + p3 Bdot; the first sample has no rate
    EXPECT_NEAR(s.Hy[i], -2.0 * t - (i > 0 ? 0.5 : 0.0), 1e-12);
    EXPECT_NEAR(s.Hx[i], 0.0, 1e-12);
  }
}

TEST(ProbeSeries, SpaceTimeRampField)
{
  const Problem pb = RampProblem();
  const SpaceTimeMesh st = extrude_spacetime(pb.mesh, 4, 1.0);
  const StDofMaps maps = StDofMaps::Build(st);
  SpaceTimeSolution sol;
  for (int n : maps.u_dofs)
  {
    sol.u.push_back(st.nodes[n][0] * st.nodes[n][2]);
  }
  for (int n : maps.p_dofs)
  {
    sol.p.push_back(st.nodes[n][0]);
  }
  const ProbeSeries s = probe_series(sol, st, pb, {0.37, 0.61});
  ASSERT_EQ(s.Size(), 5);
  for (int i = 0; i < s.Size(); i++)
  {
    const double t = s.times[i];
    EXPECT_NEAR(s.By[i], -t, 1e-13);
    EXPECT_NEAR(s.Hy[i], -2.0 * t - 0.5, 1e-12);
    EXPECT_NEAR(s.Hx[i], 0.0, 1e-12);
  }
}

TEST(ProbeSeries, LinearRegionGivesClassicalH)
{
  const Problem pb = testproblem::Square(build_structured_square(8, testmesh::CuSquare), 0.01, 2000.0);
  const Trajectory tr = run_transient(pb, 4, NewtonSettings{});
  const ProbeSeries s = probe_series(tr, pb, {0.5, 0.5});
  const double nu = pb.materials[pb.mesh.FindRegion("cu")].params.p0;
  for (int i = 0; i < s.Size(); i++)
  {
    EXPECT_NEAR(s.Hx[i], nu * s.Bx[i], 1e-12 * nu * (std::abs(s.Bx[i]) + 1e-12));
    EXPECT_NEAR(s.Hy[i], nu * s.By[i], 1e-12 * nu * (std::abs(s.By[i]) + 1e-12));
  }
  EXPECT_THROW(probe_series(tr, pb, {1.5, 0.5}), PointOutsideDomain);
}

TEST(Csv, TwoSamplesGiveThreeLinesAndRoundTrip)
{
  const fs::path d = Scratch("csv");
  const ProbeSeries two = Ramp(2);
  export_csv(two, d / "two.csv");
  EXPECT_EQ(Lines(d / "two.csv").size(), 3u);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  ProbeSeries s;
  for (int i = 0; i < 50; i++)
  {
    s.Push(1e-3 * i, {u(rng), u(rng) * 1e-9}, {u(rng), 1.0 / 3.0});
  }
  export_csv(s, d / "s.csv");
  const ProbeSeries r = read_probe_csv(d / "s.csv");
  EXPECT_EQ(r.times, s.times);
  EXPECT_EQ(r.Bx, s.Bx);
  EXPECT_EQ(r.By, s.By);
  EXPECT_EQ(r.Hx, s.Hx);
  EXPECT_EQ(r.Hy, s.Hy);
  fs::remove_all(d);
}

TEST(Csv, BhPairsPerComponent)
{
  const fs::path d = Scratch("bh");
  const ProbeSeries s = Ramp(3);
  export_bh_csv(s, 'y', d / "y.csv");
  const auto lines = Lines(d / "y.csv");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "H,B");
  double H = 0, B = 0;
  ASSERT_EQ(std::sscanf(lines[2].c_str(), "%lf,%lf", &H, &B), 2);
  EXPECT_EQ(H, s.Hy[1]);
  EXPECT_EQ(B, s.By[1]);
  EXPECT_THROW(export_bh_csv(s, 'z', d / "z.csv"), InvalidArgument);
  EXPECT_THROW(read_probe_csv(d / "missing.csv"), IoError);
  fs::remove_all(d);
}

TEST(Compare, IdenticalAndScaled)
{
  const ProbeSeries a = Ramp(6);
  const SeriesComparison same = compare_series(a, a);
  for (const ChannelDiff &c : {same.Bx, same.By, same.Hx, same.Hy})
  {
    EXPECT_EQ(c.max_abs, 0.0);
    EXPECT_EQ(c.rel_l2, 0.0);
  }
  ProbeSeries b = a;
  for (double &v : b.Hx)
  {
    v *= 2.0;
  }
  const SeriesComparison c = compare_series(a, b);
  EXPECT_NEAR(c.Hx.rel_l2, 1.0, 1e-15);
  EXPECT_EQ(c.Hx.max_abs, 3.0);
  EXPECT_EQ(c.Bx.rel_l2, 0.0);

  ProbeSeries z;
  z.Push(0.0, {0, 0}, {0, 0});
  ProbeSeries z1;
  z1.Push(0.0, {1e-20, 0}, {0, 0});
  EXPECT_NEAR(compare_series(z, z1).Bx.rel_l2, 1e-6, 1e-18);

  EXPECT_THROW(compare_series(a, Ramp(5)), InvalidArgument);
}

TEST(LoopArea, ShoelaceSignConvention)
{
  const std::vector<double> H{0, 1, 1, 0}, B{0, 0, 1, 1};
  EXPECT_EQ(loop_area(H, B), 1.0);
  const std::vector<double> Hr{0, 0, 1, 1}, Br{0, 1, 1, 0};
  EXPECT_EQ(loop_area(Hr, Br), -1.0);
  const std::vector<double> line{0, 1, 2};
  EXPECT_EQ(loop_area(line, line), 0.0);
}

TEST(TimeWindow, InclusiveBounds)
{
  const ProbeSeries s = Ramp(11);
  const ProbeSeries w = time_window(s, 0.3, 0.7);
  ASSERT_EQ(w.Size(), 5);
  EXPECT_NEAR(w.times.front(), 0.3, 1e-15);
  EXPECT_NEAR(w.times.back(), 0.7, 1e-15);
  EXPECT_EQ(w.Bx[0], s.Bx[3]);
}
