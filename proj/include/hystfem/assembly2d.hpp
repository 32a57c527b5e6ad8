// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_ASSEMBLY2D_HPP
#define HYSTFEM_ASSEMBLY2D_HPP

#include <array>
#include <span>
#include <vector>

#include "hystfem/mesh.hpp"
#include "hystfem/pam_material.hpp"
#include "hystfem/problem.hpp"
#include "hystfem/sparse.hpp"

namespace hystfem
{

//
// Numbering of the unknowns of the P1 space that vanishes on the Dirichlet set.
//
struct DofMap2D
{
  std::vector<int> free_dofs;    // dof -> node
  std::vector<int> node_to_dof;  // node -> dof, or -1 on the Dirichlet set

  static DofMap2D Interior(const Mesh2D &mesh);
  static DofMap2D AllNodes(const Mesh2D &mesh);

  int Size() const { return static_cast<int>(free_dofs.size()); }
  Vector Restrict(std::span<const double> nodal) const;
  Vector Expand(std::span<const double> dofs) const;
};

// Area and constant basis gradients of one P1 triangle.
struct P1Triangle
{
  double area;
  std::array<Vec2, 3> grad;
};

P1Triangle p1_triangle(const Mesh2D &mesh, int t);

// Constant gradient of a nodal field on every triangle.
struct ElementFields
{
  std::vector<Vec2> grad;

  // Planar flux density of a potential, B = (d2 u, -d1 u).
  Vec2 B(int t) const { return {grad[t][1], -grad[t][0]}; }
};

ElementFields element_gradients(const Mesh2D &mesh, std::span<const double> u);

// sigma per region.
CsrMatrix assemble_mass(const Mesh2D &mesh, std::span<const double> sigma, const DofMap2D &dofs);

// sum_t w_t |t| grad phi_k . grad phi_j, one weight per triangle.
CsrMatrix assemble_weighted_stiffness(const Mesh2D &mesh, std::span<const double> weights,
                                      const DofMap2D &dofs);

// Per-triangle f(|grad v|) or g(|grad v|) with the triangle's region parameters.
std::vector<double> coefficient_weights(const Mesh2D &mesh, const ElementFields &fields,
                                        TangentKind kind, std::span<const PamParams> params);

// sum_t |t| c(|grad v|) grad v . grad phi_j; equals the weighted stiffness times v.
Vector assemble_flux(const Mesh2D &mesh, std::span<const double> v, TangentKind kind,
                     std::span<const PamParams> params, const DofMap2D &dofs);

// Derivative of assemble_flux with respect to the nodal values of v.
CsrMatrix assemble_tangent(const Mesh2D &mesh, std::span<const double> v, TangentKind kind,
                           std::span<const PamParams> params, const DofMap2D &dofs);

// Centroid quadrature of j_s (exact for region-constant sources) plus the
// magnetization term |t| M_perp . grad phi_j.
Vector assemble_load(const Mesh2D &mesh, double t, const SourceFn &source,
                     std::span<const Vec2> m_perp, const DofMap2D &dofs);

}  // namespace hystfem

#endif  // HYSTFEM_ASSEMBLY2D_HPP
