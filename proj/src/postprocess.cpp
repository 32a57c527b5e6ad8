// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hystfem/assembly2d.hpp"
#include "hystfem/errors.hpp"

namespace hystfem
{

void ProbeSeries::Push(double t, const Vec2 &B, const Vec2 &H)
{
  // + 0.0 folds negative zeros so zero states print as plain zeros.
  times.push_back(t + 0.0);
  Bx.push_back(B[0] + 0.0);
  By.push_back(B[1] + 0.0);
  Hx.push_back(H[0] + 0.0);
  Hy.push_back(H[1] + 0.0);
}

namespace
{

// Rotated gradient of a nodal field restricted to one triangle.
Vec2 CurlOn(const P1Triangle &el, const Triangle &tri, std::span<const double> nodal)
{
  Vec2 g{0.0, 0.0};
  for (int a = 0; a < 3; a++)
  {
    g[0] += nodal[tri.v[a]] * el.grad[a][0];
    g[1] += nodal[tri.v[a]] * el.grad[a][1];
  }
  return {g[1], -g[0]};
}

struct ProbeSite
{
  int tri;
  P1Triangle el;
  PamParams params;
  Vec2 m_perp;
};

ProbeSite Locate(const Problem &problem, const Vec2 &probe)
{
  const int t = locate_point(problem.mesh, probe);
  const auto &mat = problem.materials[problem.mesh.triangles[t].region];
  return {t, p1_triangle(problem.mesh, t), mat.params, mat.m_perp};
}

}  // namespace

ProbeSeries probe_series(const Trajectory &traj, const Problem &problem, const Vec2 &probe)
{
  const ProbeSite site = Locate(problem, probe);
  const Triangle &tri = problem.mesh.triangles[site.tri];
  ProbeSeries out;
  Vec2 B_prev{0.0, 0.0};
  for (std::size_t i = 0; i < traj.times.size(); i++)
  {
    const Vec2 B = CurlOn(site.el, tri, traj.states[i]);
    Vec2 Bdot{0.0, 0.0};
    if (i > 0)
    {
      const double h = traj.times[i] - traj.times[i - 1];
      Bdot = {(B[0] - B_prev[0]) / h, (B[1] - B_prev[1]) / h};
    }
    out.Push(traj.times[i], B, eval_h_field({B, Bdot, site.m_perp}, site.params));
    B_prev = B;
  }
  return out;
}

ProbeSeries probe_series(const SpaceTimeSolution &sol, const SpaceTimeMesh &st_mesh,
                         const Problem &problem, const Vec2 &probe)
{
  const ProbeSite site = Locate(problem, probe);
  const Triangle &tri = problem.mesh.triangles[site.tri];
  ProbeSeries out;
  for (int s = 0; s <= st_mesh.n_slices; s++)
  {
    const Vec2 B = CurlOn(site.el, tri, extract_slice(sol, st_mesh, s));
    const Vec2 Bdot = CurlOn(site.el, tri, extract_rate_slice(sol, st_mesh, s));
    out.Push(st_mesh.SliceTime(s), B, eval_h_field({B, Bdot, site.m_perp}, site.params));
  }
  return out;
}

namespace
{

std::ofstream OpenOut(const std::filesystem::path &path)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
  {
    throw IoError("cannot write " + path.string());
  }
  return os;
}

void PutRow(std::ostream &os, std::initializer_list<double> values)
{
  char buf[32];
  bool first = true;
  for (double v : values)
  {
    std::snprintf(buf, sizeof buf, "%.16e", v);
    if (!first)
    {
      os << ',';
    }
    os << buf;
    first = false;
  }
  os << '\n';
}

void CloseOut(std::ofstream &os, const std::filesystem::path &path)
{
  os.close();
  if (!os)
  {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace

void export_csv(const ProbeSeries &series, const std::filesystem::path &path)
{
  std::ofstream os = OpenOut(path);
  os << "t,Bx,By,Hx,Hy\n";
  for (int i = 0; i < series.Size(); i++)
  {
    PutRow(os, {series.times[i], series.Bx[i], series.By[i], series.Hx[i], series.Hy[i]});
  }
  CloseOut(os, path);
}

void export_bh_csv(const ProbeSeries &series, char component, const std::filesystem::path &path)
{
  if (component != 'x' && component != 'y')
  {
    throw InvalidArgument("B-H component must be 'x' or 'y'");
  }
  const auto &H = component == 'x' ? series.Hx : series.Hy;
  const auto &B = component == 'x' ? series.Bx : series.By;
  std::ofstream os = OpenOut(path);
  os << "H,B\n";
  for (int i = 0; i < series.Size(); i++)
  {
    PutRow(os, {H[i], B[i]});
  }
  CloseOut(os, path);
}

ProbeSeries read_probe_csv(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "t,Bx,By,Hx,Hy")
  {
    throw ParseError(path.string() + " line 1: expected header \"t,Bx,By,Hx,Hy\"");
  }
  ProbeSeries out;
  int line_no = 1;
  while (std::getline(in, line))
  {
    line_no++;
    if (line.empty())
    {
      continue;
    }
    double v[5];
    const char *p = line.c_str();
    for (int k = 0; k < 5; k++)
    {
      char *end;
      v[k] = std::strtod(p, &end);
      if (end == p || (k < 4 && *end != ',') || (k == 4 && *end != '\0'))
      {
        throw ParseError(path.string() + " line " + std::to_string(line_no) +
                         ": expected five comma-separated numbers");
      }
      p = end + 1;
    }
    out.Push(v[0], {v[1], v[2]}, {v[3], v[4]});
  }
  return out;
}

SeriesComparison compare_series(const ProbeSeries &a, const ProbeSeries &b)
{
  if (a.Size() != b.Size())
  {
    throw InvalidArgument("series lengths differ (" + std::to_string(a.Size()) + " vs " +
                          std::to_string(b.Size()) + ")");
  }
  for (int i = 0; i < a.Size(); i++)
  {
    const double scale = std::max({1.0, std::abs(a.times[i]), std::abs(b.times[i])});
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * scale)
    {
      throw InvalidArgument("time grids differ at sample " + std::to_string(i));
    }
  }
  auto channel = [](const std::vector<double> &x, const std::vector<double> &y) {
    ChannelDiff d;
    Vector diff(x.size());
    for (std::size_t i = 0; i < x.size(); i++)
    {
      diff[i] = x[i] - y[i];
      d.max_abs = std::max(d.max_abs, std::abs(diff[i]));
    }
    d.rel_l2 = norm2(diff) / std::max(norm2(x), 1e-14);
    return d;
  };
  return {channel(a.Bx, b.Bx), channel(a.By, b.By), channel(a.Hx, b.Hx), channel(a.Hy, b.Hy)};
}

double loop_area(std::span<const double> H, std::span<const double> B)
{
  if (H.size() != B.size())
  {
    throw InvalidArgument("loop_area needs matching H and B lengths");
  }
  const std::size_t n = H.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    const std::size_t j = (i + 1) % n;
    twice += H[i] * B[j] - H[j] * B[i];
  }
  return 0.5 * twice;
}

ProbeSeries time_window(const ProbeSeries &series, double t0, double t1)
{
  const double slack = 1e-9 * std::max({1.0, std::abs(t0), std::abs(t1)});
  ProbeSeries out;
  for (int i = 0; i < series.Size(); i++)
  {
    const double t = series.times[i];
    if (t >= t0 - slack && t <= t1 + slack)
    {
      out.Push(t, {series.Bx[i], series.By[i]}, {series.Hx[i], series.Hy[i]});
    }
  }
  return out;
}

}  // namespace hystfem
