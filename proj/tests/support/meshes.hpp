// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_TESTS_MESHES_HPP
#define HYSTFEM_TESTS_MESHES_HPP

#include <random>
#include <string>

#include "hystfem/mesh.hpp"

namespace testmesh
{

inline std::string AllFe(double, double)
{
  return "fe";
}

inline std::string CuSquare(double x, double y)
{
  return (x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75) ? "cu" : "fe";
}

// Unit right triangle (0,0), (1,0), (0,1) with no Dirichlet nodes.
inline hystfem::Mesh2D UnitTriangle()
{
  hystfem::Mesh2D m;
  m.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  m.region_names = {"fe"};
  m.triangles = {{{0, 1, 2}, 0}};
  m.SetBoundary({});
  return m;
}

// Structured square with interior nodes moved by up to 0.2 h in each direction.
inline hystfem::Mesh2D Jittered(int n, unsigned seed,
                                const hystfem::RegionClassifier &cls = CuSquare)
{
  hystfem::Mesh2D m = hystfem::build_structured_square(n, cls);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-0.2 / n, 0.2 / n);
  for (int i = 0; i < m.NumNodes(); i++)
  {
    if (!m.IsBoundary(i))
    {
      m.nodes[i][0] += d(rng);
      m.nodes[i][1] += d(rng);
    }
  }
  return m;
}

// The unit square as two triangles with only node 0 held at zero, so both
// triangles carry unknowns.
inline hystfem::Mesh2D TwoTrianglesOneFixed()
{
  hystfem::Mesh2D m = hystfem::build_structured_square(1, AllFe);
  m.SetBoundary({0});
  return m;
}

}  // namespace testmesh

#endif  // HYSTFEM_TESTS_MESHES_HPP
