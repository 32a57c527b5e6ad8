// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/assembly2d.hpp"

#include <string>

#include "hystfem/errors.hpp"

namespace hystfem
{

DofMap2D DofMap2D::Interior(const Mesh2D &mesh)
{
  DofMap2D map;
  map.node_to_dof.assign(mesh.NumNodes(), -1);
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (!mesh.IsBoundary(i))
    {
      map.node_to_dof[i] = map.Size();
      map.free_dofs.push_back(i);
    }
  }
  return map;
}

DofMap2D DofMap2D::AllNodes(const Mesh2D &mesh)
{
  DofMap2D map;
  map.node_to_dof.resize(mesh.NumNodes());
  map.free_dofs.resize(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    map.node_to_dof[i] = i;
    map.free_dofs[i] = i;
  }
  return map;
}

Vector DofMap2D::Restrict(std::span<const double> nodal) const
{
  Vector out(free_dofs.size());
  for (std::size_t k = 0; k < free_dofs.size(); k++)
  {
    out[k] = nodal[free_dofs[k]];
  }
  return out;
}

Vector DofMap2D::Expand(std::span<const double> dofs) const
{
  Vector out(node_to_dof.size(), 0.0);
  for (std::size_t k = 0; k < free_dofs.size(); k++)
  {
    out[free_dofs[k]] = dofs[k];
  }
  return out;
}

P1Triangle p1_triangle(const Mesh2D &mesh, int t)
{
  const auto &v = mesh.triangles[t].v;
  const Vec2 &a = mesh.nodes[v[0]];
  const Vec2 &b = mesh.nodes[v[1]];
  const Vec2 &c = mesh.nodes[v[2]];
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  P1Triangle e;
  e.area = 0.5 * det;
  // grad(lambda_k) = rotated opposite edge / (2 area)
  e.grad[0] = {(b[1] - c[1]) / det, (c[0] - b[0]) / det};
  e.grad[1] = {(c[1] - a[1]) / det, (a[0] - c[0]) / det};
  e.grad[2] = {(a[1] - b[1]) / det, (b[0] - a[0]) / det};
  return e;
}

ElementFields element_gradients(const Mesh2D &mesh, std::span<const double> u)
{
  if (static_cast<int>(u.size()) != mesh.NumNodes())
  {
    throw InvalidArgument("nodal field size does not match the mesh");
  }
  ElementFields fields;
  fields.grad.resize(mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const P1Triangle e = p1_triangle(mesh, t);
    Vec2 g{0.0, 0.0};
    for (int k = 0; k < 3; k++)
    {
      const double uk = u[mesh.triangles[t].v[k]];
      g[0] += uk * e.grad[k][0];
      g[1] += uk * e.grad[k][1];
    }
    fields.grad[t] = g;
  }
  return fields;
}

namespace
{

// Scatter a 3x3 element matrix into triplets over free dofs.
void Scatter(const Triangle &tri, const double (&Ke)[3][3], const DofMap2D &dofs,
             std::vector<Triplet> &triplets)
{
  for (int a = 0; a < 3; a++)
  {
    const int i = dofs.node_to_dof[tri.v[a]];
    if (i < 0)
    {
      continue;
    }
    for (int b = 0; b < 3; b++)
    {
      const int j = dofs.node_to_dof[tri.v[b]];
      if (j >= 0)
      {
        triplets.push_back({i, j, Ke[a][b]});
      }
    }
  }
}

}  // namespace

CsrMatrix assemble_mass(const Mesh2D &mesh, std::span<const double> sigma, const DofMap2D &dofs)
{
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(9) * mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.triangles[t];
    const double scale = sigma[tri.region] * mesh.Area(t) / 12.0;
    double Me[3][3];
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        Me[a][b] = scale * (a == b ? 2.0 : 1.0);
      }
    }
    Scatter(tri, Me, dofs, triplets);
  }
  return csr_from_triplets(dofs.Size(), dofs.Size(), triplets);
}

CsrMatrix assemble_weighted_stiffness(const Mesh2D &mesh, std::span<const double> weights,
                                      const DofMap2D &dofs)
{
  if (static_cast<int>(weights.size()) != mesh.NumTriangles())
  {
    throw InvalidArgument("stiffness needs one weight per triangle");
  }
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(9) * mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const P1Triangle e = p1_triangle(mesh, t);
    const double scale = weights[t] * e.area;
    double Ke[3][3];
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        Ke[a][b] = scale * dot(e.grad[a], e.grad[b]);
      }
    }
    Scatter(mesh.triangles[t], Ke, dofs, triplets);
  }
  return csr_from_triplets(dofs.Size(), dofs.Size(), triplets);
}

std::vector<double> coefficient_weights(const Mesh2D &mesh, const ElementFields &fields,
                                        TangentKind kind, std::span<const PamParams> params)
{
  std::vector<double> w(mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const PamParams &p = params[mesh.triangles[t].region];
    const double s = norm(fields.grad[t]);
    w[t] = (kind == TangentKind::Anhysteretic) ? eval_f(s, p) : eval_g(s, p);
  }
  return w;
}

Vector assemble_flux(const Mesh2D &mesh, std::span<const double> v, TangentKind kind,
                     std::span<const PamParams> params, const DofMap2D &dofs)
{
  const ElementFields fields = element_gradients(mesh, v);
  Vector out(dofs.Size(), 0.0);
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.triangles[t];
    const P1Triangle e = p1_triangle(mesh, t);
    const Vec2 flux = eval_flux(kind, fields.grad[t], params[tri.region]);
    for (int a = 0; a < 3; a++)
    {
      const int i = dofs.node_to_dof[tri.v[a]];
      if (i >= 0)
      {
        out[i] += e.area * dot(flux, e.grad[a]);
      }
    }
  }
  return out;
}

CsrMatrix assemble_tangent(const Mesh2D &mesh, std::span<const double> v, TangentKind kind,
                           std::span<const PamParams> params, const DofMap2D &dofs)
{
  const ElementFields fields = element_gradients(mesh, v);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(9) * mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.triangles[t];
    const P1Triangle e = p1_triangle(mesh, t);
    const Mat2 T = eval_tangent(kind, fields.grad[t], params[tri.region]);
    double Ke[3][3];
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        Ke[a][b] = e.area * dot(e.grad[a], T.apply(e.grad[b]));
      }
    }
    Scatter(tri, Ke, dofs, triplets);
  }
  return csr_from_triplets(dofs.Size(), dofs.Size(), triplets);
}

Vector assemble_load(const Mesh2D &mesh, double t, const SourceFn &source,
                     std::span<const Vec2> m_perp, const DofMap2D &dofs)
{
  Vector F(dofs.Size(), 0.0);
  for (int e = 0; e < mesh.NumTriangles(); e++)
  {
    const auto &tri = mesh.triangles[e];
    const P1Triangle geo = p1_triangle(mesh, e);
    const double js = source ? source(tri.region, mesh.Centroid(e), t) : 0.0;
    const Vec2 &m = m_perp[tri.region];
    for (int a = 0; a < 3; a++)
    {
      const int i = dofs.node_to_dof[tri.v[a]];
      if (i >= 0)
      {
        F[i] += js * geo.area / 3.0 + geo.area * dot(m, geo.grad[a]);
      }
    }
  }
  return F;
}

}  // namespace hystfem
