// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_SPACETIME_HPP
#define HYSTFEM_SPACETIME_HPP

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "hystfem/mesh.hpp"
#include "hystfem/problem.hpp"
#include "hystfem/sparse.hpp"

namespace hystfem
{

//
// Unknown numbering for the coupled space-time system. The potential u vanishes on
// the lateral boundary and at t = 0; its time derivative p only on the lateral
// boundary, so p carries the extra initial-time unknowns.
//
struct StDofMaps
{
  std::vector<int> u_dofs;     // dof -> node
  std::vector<int> p_dofs;
  std::vector<int> node_to_u;  // node -> dof or -1
  std::vector<int> node_to_p;

  static StDofMaps Build(const SpaceTimeMesh &mesh);

  int NumU() const { return static_cast<int>(u_dofs.size()); }
  int NumP() const { return static_cast<int>(p_dofs.size()); }

  Vector ExpandU(std::span<const double> u) const;
  Vector ExpandP(std::span<const double> p) const;
};

// Volume and constant basis gradients (d1, d2, dt) of one P1 tetrahedron.
struct P1Tetra
{
  double volume;
  std::array<Vec3, 4> grad;
};

P1Tetra p1_tetra(const SpaceTimeMesh &mesh, int q);

// Solution-independent blocks. Rows of B and F live on the u test space, rows of M
// and Bt on the p test space.
struct StFixedBlocks
{
  CsrMatrix B;   // sigma dt(phi_k) phi_l           (u x u)
  CsrMatrix M;   // phi_i phi_j                      (p x p)
  CsrMatrix Bt;  // dt(phi_k) phi_j                 (p x u)
  Vector F;      // j_s phi_l + M_perp . grad_x phi_l
};

StFixedBlocks assemble_st_fixed(const SpaceTimeMesh &mesh, const StDofMaps &maps,
                                const Problem &problem);

// Blocks depending on the current iterate.
struct StNonlinearBlocks
{
  CsrMatrix K;   // f(|grad_x u|) grad_x phi_k . grad_x phi_l   (u x u)
  CsrMatrix A;   // g(|grad_x p|) grad_x phi_i . grad_x phi_l   (u x p)
  CsrMatrix Tf;  // derivative of K(u) u with respect to u
  CsrMatrix Tg;  // derivative of A(p) p with respect to p
};

// u_full and p_full are nodal vectors on the space-time mesh. Tf and Tg carry no
// entries when with_tangents is false.
StNonlinearBlocks assemble_st_nonlinear(const SpaceTimeMesh &mesh, const StDofMaps &maps,
                                        std::span<const double> u_full,
                                        std::span<const double> p_full,
                                        std::span<const PamParams> params,
                                        bool with_tangents = true);

// R1 = B u + K(u) u + A(p) p - F,  R2 = M p - Bt u.
std::pair<Vector, Vector> st_residual(std::span<const double> u, std::span<const double> p,
                                      const StFixedBlocks &fixed,
                                      const StNonlinearBlocks &nonlinear);

// [[B + Tf, Tg], [-Bt, M]] acting on the stacked unknown (u, p).
CsrMatrix st_block_jacobian(const StFixedBlocks &fixed, const StNonlinearBlocks &nonlinear);

struct SpaceTimeSolution
{
  Vector u;  // on u dofs
  Vector p;  // on p dofs
  SolveReport report;
};

// Coupled Newton-Armijo solve from (u, p) = (0, 0). Non-convergence is reported
// through report.converged.
SpaceTimeSolution solve_spacetime(const SpaceTimeMesh &mesh, const Problem &problem,
                                  const NewtonSettings &settings);

// Spatial nodal values of u (or of p) at one time slice.
Vector extract_slice(const SpaceTimeSolution &sol, const SpaceTimeMesh &mesh, int slice);
Vector extract_rate_slice(const SpaceTimeSolution &sol, const SpaceTimeMesh &mesh, int slice);

}  // namespace hystfem

#endif  // HYSTFEM_SPACETIME_HPP
