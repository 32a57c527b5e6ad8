// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/spacetime.hpp"

#include <cmath>
#include <string>

#include "hystfem/errors.hpp"

namespace hystfem
{

StDofMaps StDofMaps::Build(const SpaceTimeMesh &mesh)
{
  StDofMaps maps;
  maps.node_to_u.assign(mesh.NumNodes(), -1);
  maps.node_to_p.assign(mesh.NumNodes(), -1);
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (mesh.lateral[i])
    {
      continue;
    }
    maps.node_to_p[i] = maps.NumP();
    maps.p_dofs.push_back(i);
    if (!mesh.initial[i])
    {
      maps.node_to_u[i] = maps.NumU();
      maps.u_dofs.push_back(i);
    }
  }
  return maps;
}

Vector StDofMaps::ExpandU(std::span<const double> u) const
{
  Vector out(node_to_u.size(), 0.0);
  for (std::size_t k = 0; k < u_dofs.size(); k++)
  {
    out[u_dofs[k]] = u[k];
  }
  return out;
}

Vector StDofMaps::ExpandP(std::span<const double> p) const
{
  Vector out(node_to_p.size(), 0.0);
  for (std::size_t k = 0; k < p_dofs.size(); k++)
  {
    out[p_dofs[k]] = p[k];
  }
  return out;
}

P1Tetra p1_tetra(const SpaceTimeMesh &mesh, int q)
{
  const auto &v = mesh.tets[q].v;
  const Vec3 &x0 = mesh.nodes[v[0]];
  double J[3][3];  // columns are the edge vectors from vertex 0
  for (int c = 0; c < 3; c++)
  {
    for (int r = 0; r < 3; r++)
    {
      J[r][c] = mesh.nodes[v[c + 1]][r] - x0[r];
    }
  }
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  // Rows of J^{-1} are the gradients of the barycentric coordinates 1..3.
  double inv[3][3];
  inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) / det;
  inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) / det;
  inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) / det;
  inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) / det;
  inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) / det;
  inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) / det;
  inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) / det;
  inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) / det;
  inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) / det;

  P1Tetra e;
  e.volume = std::abs(det) / 6.0;
  for (int k = 1; k < 4; k++)
  {
    e.grad[k] = {inv[k - 1][0], inv[k - 1][1], inv[k - 1][2]};
  }
  for (int r = 0; r < 3; r++)
  {
    e.grad[0][r] = -(e.grad[1][r] + e.grad[2][r] + e.grad[3][r]);
  }
  return e;
}

namespace
{

inline Vec2 SpatialPart(const Vec3 &a)
{
  return {a[0], a[1]};
}

Vec3 TetGradient(const Tetra &tet, const P1Tetra &e, std::span<const double> nodal)
{
  Vec3 g{0.0, 0.0, 0.0};
  for (int k = 0; k < 4; k++)
  {
    const double vk = nodal[tet.v[k]];
    for (int r = 0; r < 3; r++)
    {
      g[r] += vk * e.grad[k][r];
    }
  }
  return g;
}

void Scatter(const Tetra &tet, const double (&Ke)[4][4], const std::vector<int> &rows,
             const std::vector<int> &cols, std::vector<Triplet> &triplets)
{
  for (int a = 0; a < 4; a++)
  {
    const int i = rows[tet.v[a]];
    if (i < 0)
    {
      continue;
    }
    for (int b = 0; b < 4; b++)
    {
      const int j = cols[tet.v[b]];
      if (j >= 0)
      {
        triplets.push_back({i, j, Ke[a][b]});
      }
    }
  }
}

void AppendBlock(const CsrMatrix &A, int row_offset, int col_offset, double scale,
                 std::vector<Triplet> &triplets)
{
  for (int i = 0; i < A.Rows(); i++)
  {
    for (int k = A.RowPtr()[i]; k < A.RowPtr()[i + 1]; k++)
    {
      triplets.push_back({row_offset + i, col_offset + A.ColIdx()[k], scale * A.Values()[k]});
    }
  }
}

}  // namespace

StFixedBlocks assemble_st_fixed(const SpaceTimeMesh &mesh, const StDofMaps &maps,
                                const Problem &problem)
{
  const auto sigma = problem.Conductivities();
  const auto m_perp = problem.Magnetizations();
  std::vector<Triplet> tB, tM, tBt;
  const std::size_t reserve = static_cast<std::size_t>(16) * mesh.NumTets();
  tB.reserve(reserve);
  tM.reserve(reserve);
  tBt.reserve(reserve);
  StFixedBlocks blocks;
  blocks.F.assign(maps.NumU(), 0.0);

  for (int q = 0; q < mesh.NumTets(); q++)
  {
    const Tetra &tet = mesh.tets[q];
    const P1Tetra e = p1_tetra(mesh, q);
    const double s = sigma[tet.region];
    double Be[4][4], Me[4][4], Bte[4][4];
    for (int a = 0; a < 4; a++)
    {
      for (int b = 0; b < 4; b++)
      {
        // int phi_a = |q| / 4 and d_t phi_b is constant on the element.
        Bte[a][b] = e.volume / 4.0 * e.grad[b][2];
        Be[a][b] = s * Bte[a][b];
        Me[a][b] = e.volume / 20.0 * (a == b ? 2.0 : 1.0);
      }
    }
    Scatter(tet, Be, maps.node_to_u, maps.node_to_u, tB);
    Scatter(tet, Me, maps.node_to_p, maps.node_to_p, tM);
    Scatter(tet, Bte, maps.node_to_p, maps.node_to_u, tBt);

    Vec3 xc{0.0, 0.0, 0.0};
    for (int a = 0; a < 4; a++)
    {
      for (int r = 0; r < 3; r++)
      {
        xc[r] += 0.25 * mesh.nodes[tet.v[a]][r];
      }
    }
    const double js = problem.Source(tet.region, {xc[0], xc[1]}, xc[2]);
    const Vec2 &m = m_perp[tet.region];
    for (int a = 0; a < 4; a++)
    {
      const int l = maps.node_to_u[tet.v[a]];
      if (l >= 0)
      {
        blocks.F[l] += js * e.volume / 4.0 + e.volume * dot(m, SpatialPart(e.grad[a]));
      }
    }
  }
  blocks.B = csr_from_triplets(maps.NumU(), maps.NumU(), tB);
  blocks.M = csr_from_triplets(maps.NumP(), maps.NumP(), tM);
  blocks.Bt = csr_from_triplets(maps.NumP(), maps.NumU(), tBt);
  return blocks;
}

StNonlinearBlocks assemble_st_nonlinear(const SpaceTimeMesh &mesh, const StDofMaps &maps,
                                        std::span<const double> u_full,
                                        std::span<const double> p_full,
                                        std::span<const PamParams> params,
                                        bool with_tangents)
{
  std::vector<Triplet> tK, tA, tTf, tTg;
  const std::size_t reserve = static_cast<std::size_t>(16) * mesh.NumTets();
  tK.reserve(reserve);
  tA.reserve(reserve);
  tTf.reserve(reserve);
  tTg.reserve(reserve);

  for (int q = 0; q < mesh.NumTets(); q++)
  {
    const Tetra &tet = mesh.tets[q];
    const P1Tetra e = p1_tetra(mesh, q);
    const PamParams &pp = params[tet.region];
    const Vec2 gu = SpatialPart(TetGradient(tet, e, u_full));
    const Vec2 gp = SpatialPart(TetGradient(tet, e, p_full));
    const double f = eval_f(norm(gu), pp);
    const double g = eval_g(norm(gp), pp);
    const Mat2 Tf = with_tangents ? eval_tangent(TangentKind::Anhysteretic, gu, pp) : Mat2{};
    const Mat2 Tg = with_tangents ? eval_tangent(TangentKind::Dynamic, gp, pp) : Mat2{};

    double Ke[4][4], Ae[4][4], Tfe[4][4], Tge[4][4];
    for (int a = 0; a < 4; a++)
    {
      const Vec2 ga = SpatialPart(e.grad[a]);
      for (int b = 0; b < 4; b++)
      {
        const Vec2 gb = SpatialPart(e.grad[b]);
        const double stiff = e.volume * dot(ga, gb);
        Ke[a][b] = f * stiff;
        Ae[a][b] = g * stiff;
        if (with_tangents)
        {
          Tfe[a][b] = e.volume * dot(ga, Tf.apply(gb));
          Tge[a][b] = e.volume * dot(ga, Tg.apply(gb));
        }
      }
    }
    Scatter(tet, Ke, maps.node_to_u, maps.node_to_u, tK);
    Scatter(tet, Ae, maps.node_to_u, maps.node_to_p, tA);
    if (with_tangents)
    {
      Scatter(tet, Tfe, maps.node_to_u, maps.node_to_u, tTf);
      Scatter(tet, Tge, maps.node_to_u, maps.node_to_p, tTg);
    }
  }
  StNonlinearBlocks blocks;
  blocks.K = csr_from_triplets(maps.NumU(), maps.NumU(), tK);
  blocks.A = csr_from_triplets(maps.NumU(), maps.NumP(), tA);
  blocks.Tf = csr_from_triplets(maps.NumU(), maps.NumU(), tTf);
  blocks.Tg = csr_from_triplets(maps.NumU(), maps.NumP(), tTg);
  return blocks;
}

std::pair<Vector, Vector> st_residual(std::span<const double> u, std::span<const double> p,
                                      const StFixedBlocks &fixed,
                                      const StNonlinearBlocks &nonlinear)
{
  Vector R1 = spmv(fixed.B, u);
  const Vector Ku = spmv(nonlinear.K, u);
  const Vector Ap = spmv(nonlinear.A, p);
  for (std::size_t i = 0; i < R1.size(); i++)
  {
    R1[i] += Ku[i] + Ap[i] - fixed.F[i];
  }
  Vector R2 = spmv(fixed.M, p);
  const Vector Btu = spmv(fixed.Bt, u);
  for (std::size_t i = 0; i < R2.size(); i++)
  {
    R2[i] -= Btu[i];
  }
  return {std::move(R1), std::move(R2)};
}

CsrMatrix st_block_jacobian(const StFixedBlocks &fixed, const StNonlinearBlocks &nonlinear)
{
  const int nu = fixed.B.Rows();
  const int np = fixed.M.Rows();
  std::vector<Triplet> triplets;
  triplets.reserve(fixed.B.NonZeros() + nonlinear.Tf.NonZeros() + nonlinear.Tg.NonZeros() +
                   fixed.Bt.NonZeros() + fixed.M.NonZeros());
  AppendBlock(fixed.B, 0, 0, 1.0, triplets);
  AppendBlock(nonlinear.Tf, 0, 0, 1.0, triplets);
  AppendBlock(nonlinear.Tg, 0, nu, 1.0, triplets);
  AppendBlock(fixed.Bt, nu, 0, -1.0, triplets);
  AppendBlock(fixed.M, nu, nu, 1.0, triplets);
  return csr_from_triplets(nu + np, nu + np, triplets);
}

SpaceTimeSolution solve_spacetime(const SpaceTimeMesh &mesh, const Problem &problem,
                                  const NewtonSettings &settings)
{
  problem.Validate();
  if (mesh.n_spatial != problem.mesh.NumNodes())
  {
    throw InvalidArgument("space-time mesh was not extruded from the problem mesh");
  }
  const StDofMaps maps = StDofMaps::Build(mesh);
  const StFixedBlocks fixed = assemble_st_fixed(mesh, maps, problem);
  const auto params = problem.Params();
  const int nu = maps.NumU();
  const int np = maps.NumP();

  // Newton asks for the Jacobian at the point of the last accepted residual, so the
  // iterate-dependent blocks are cached by value.
  Vector cached_x;
  StNonlinearBlocks cached;
  bool cached_tangents = false;
  auto blocks_at = [&](const Vector &x, bool tangents) -> const StNonlinearBlocks & {
    if (x != cached_x || (tangents && !cached_tangents))
    {
      std::span<const double> xs(x);
      cached = assemble_st_nonlinear(mesh, maps, maps.ExpandU(xs.first(nu)),
                                     maps.ExpandP(xs.subspan(nu)), params, tangents);
      cached_x = x;
      cached_tangents = tangents;
    }
    return cached;
  };
  auto residual = [&](const Vector &x) {
    std::span<const double> xs(x);
    const auto [R1, R2] =
        st_residual(xs.first(nu), xs.subspan(nu), fixed, blocks_at(x, false));
    Vector R(R1);
    R.insert(R.end(), R2.begin(), R2.end());
    return R;
  };
  auto jacobian = [&](const Vector &x) { return st_block_jacobian(fixed, blocks_at(x, true)); };

  NewtonResult result = newton_solve(residual, jacobian, Vector(nu + np, 0.0), settings);
  SpaceTimeSolution sol;
  sol.u.assign(result.u.begin(), result.u.begin() + nu);
  sol.p.assign(result.u.begin() + nu, result.u.end());
  sol.report = std::move(result.report);
  return sol;
}

namespace
{

Vector SliceOf(const SpaceTimeMesh &mesh, const std::vector<int> &node_to_dof,
               const Vector &values, int slice)
{
  if (slice < 0 || slice > mesh.n_slices)
  {
    throw InvalidArgument("slice index " + std::to_string(slice) + " out of range");
  }
  Vector out(mesh.n_spatial, 0.0);
  for (int i = 0; i < mesh.n_spatial; i++)
  {
    const int k = node_to_dof[mesh.GlobalIndex(slice, i)];
    if (k >= 0)
    {
      out[i] = values[k];
    }
  }
  return out;
}

}  // namespace

Vector extract_slice(const SpaceTimeSolution &sol, const SpaceTimeMesh &mesh, int slice)
{
  const StDofMaps maps = StDofMaps::Build(mesh);
  return SliceOf(mesh, maps.node_to_u, sol.u, slice);
}

Vector extract_rate_slice(const SpaceTimeSolution &sol, const SpaceTimeMesh &mesh, int slice)
{
  const StDofMaps maps = StDofMaps::Build(mesh);
  return SliceOf(mesh, maps.node_to_p, sol.p, slice);
}

}  // namespace hystfem
