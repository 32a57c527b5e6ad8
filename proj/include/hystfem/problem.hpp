// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_PROBLEM_HPP
#define HYSTFEM_PROBLEM_HPP

#include <functional>
#include <vector>

#include "hystfem/mesh.hpp"
#include "hystfem/pam_material.hpp"

namespace hystfem
{

// Piecewise-constant data attached to one mesh region.
struct RegionMaterial
{
  double sigma = 0.0;
  PamParams params;
  Vec2 m_perp{0.0, 0.0};
};

// Source current density j_s(x, t) inside a given region.
using SourceFn = std::function<double(int region, const Vec2 &x, double t)>;

//
// Transient eddy-current problem on a planar mesh with homogeneous Dirichlet data on
// the mesh boundary set and zero initial state. Both solution engines consume this.
//
struct Problem
{
  Mesh2D mesh;
  std::vector<RegionMaterial> materials;  // indexed by mesh region id
  SourceFn source;                        // empty means j_s = 0
  double final_time = 1.0;
  int n_steps = 1;

  double Source(int region, const Vec2 &x, double t) const
  {
    return source ? source(region, x, t) : 0.0;
  }

  // Per-region views used by the assembly routines.
  std::vector<double> Conductivities() const;
  std::vector<PamParams> Params() const;
  std::vector<Vec2> Magnetizations() const;

  void Validate() const;
};

}  // namespace hystfem

#endif  // HYSTFEM_PROBLEM_HPP
