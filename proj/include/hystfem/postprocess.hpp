// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_POSTPROCESS_HPP
#define HYSTFEM_POSTPROCESS_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "hystfem/mesh.hpp"
#include "hystfem/problem.hpp"
#include "hystfem/spacetime.hpp"
#include "hystfem/timestep.hpp"

namespace hystfem
{

// B and H sampled at one point, one row per time level including t = 0.
struct ProbeSeries
{
  std::vector<double> times;
  std::vector<double> Bx, By, Hx, Hy;

  int Size() const { return static_cast<int>(times.size()); }
  void Push(double t, const Vec2 &B, const Vec2 &H);
};

// Bdot is the backward difference of B, zero at the first sample.
ProbeSeries probe_series(const Trajectory &traj, const Problem &problem, const Vec2 &probe);

// Bdot is the rotated spatial gradient of p.
ProbeSeries probe_series(const SpaceTimeSolution &sol, const SpaceTimeMesh &st_mesh,
                         const Problem &problem, const Vec2 &probe);

// Header "t,Bx,By,Hx,Hy", values in %.16e.
void export_csv(const ProbeSeries &series, const std::filesystem::path &path);
ProbeSeries read_probe_csv(const std::filesystem::path &path);

// Header "H,B" with the (Hx, Bx) or (Hy, By) pairs.
void export_bh_csv(const ProbeSeries &series, char component, const std::filesystem::path &path);

struct ChannelDiff
{
  double max_abs = 0.0;
  double rel_l2 = 0.0;
};

struct SeriesComparison
{
  ChannelDiff Bx, By, Hx, Hy;
};

// rel_l2 = |a - b| / max(|a|, 1e-14) per channel. The time grids must agree.
SeriesComparison compare_series(const ProbeSeries &a, const ProbeSeries &b);

// Signed shoelace area of the polygon (H_i, B_i), closed from the last sample back
// to the first. Counterclockwise loops are positive.
double loop_area(std::span<const double> H, std::span<const double> B);

// Samples with t0 <= t <= t1 (up to a relative 1e-9 slack on the bounds).
ProbeSeries time_window(const ProbeSeries &series, double t0, double t1);

}  // namespace hystfem

#endif  // HYSTFEM_POSTPROCESS_HPP
