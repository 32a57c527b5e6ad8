// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "hystfem/errors.hpp"

namespace hystfem
{

void Mesh2D::SetBoundary(std::vector<int> boundary_nodes)
{
  std::sort(boundary_nodes.begin(), boundary_nodes.end());
  boundary_nodes.erase(std::unique(boundary_nodes.begin(), boundary_nodes.end()),
                       boundary_nodes.end());
  boundary_flag_.assign(nodes.size(), 0);
  for (int i : boundary_nodes)
  {
    if (i < 0 || i >= NumNodes())
    {
      throw InvalidArgument("boundary node id out of range");
    }
    boundary_flag_[i] = 1;
  }
  boundary_ = std::move(boundary_nodes);
}

void Mesh2D::DetectBoundary()
{
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto &tri : triangles)
  {
    for (int e = 0; e < 3; e++)
    {
      int a = tri.v[e], b = tri.v[(e + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  std::vector<int> boundary;
  for (const auto &[edge, count] : edge_count)
  {
    if (count == 1)
    {
      boundary.push_back(edge.first);
      boundary.push_back(edge.second);
    }
  }
  SetBoundary(std::move(boundary));
}

double Mesh2D::Area(int t) const
{
  const auto &a = nodes[triangles[t].v[0]];
  const auto &b = nodes[triangles[t].v[1]];
  const auto &c = nodes[triangles[t].v[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

Vec2 Mesh2D::Centroid(int t) const
{
  Vec2 c{0.0, 0.0};
  for (int k = 0; k < 3; k++)
  {
    c[0] += nodes[triangles[t].v[k]][0] / 3.0;
    c[1] += nodes[triangles[t].v[k]][1] / 3.0;
  }
  return c;
}

int Mesh2D::FindRegion(const std::string &name) const
{
  auto it = std::find(region_names.begin(), region_names.end(), name);
  return it == region_names.end() ? -1 : static_cast<int>(it - region_names.begin());
}

int Mesh2D::RegionId(const std::string &name)
{
  int id = FindRegion(name);
  if (id < 0)
  {
    region_names.push_back(name);
    id = static_cast<int>(region_names.size()) - 1;
  }
  return id;
}

void Mesh2D::Validate() const
{
  std::vector<std::uint8_t> used(nodes.size(), 0);
  std::map<std::pair<int, int>, int> edge_count;
  for (int t = 0; t < NumTriangles(); t++)
  {
    const auto &tri = triangles[t];
    for (int k = 0; k < 3; k++)
    {
      if (tri.v[k] < 0 || tri.v[k] >= NumNodes())
      {
        throw InvalidArgument("triangle " + std::to_string(t) + " references a missing node");
      }
      used[tri.v[k]] = 1;
      int a = tri.v[k], b = tri.v[(k + 1) % 3];
      if (++edge_count[{std::min(a, b), std::max(a, b)}] > 2)
      {
        throw InvalidArgument("edge shared by more than two triangles");
      }
    }
    if (tri.region < 0 || tri.region >= static_cast<int>(region_names.size()))
    {
      throw InvalidArgument("triangle " + std::to_string(t) + " has an unknown region");
    }
    if (!(Area(t) > 0.0))
    {
      throw InvalidArgument("triangle " + std::to_string(t) + " is not counterclockwise");
    }
  }
  if (std::find(used.begin(), used.end(), 0) != used.end())
  {
    throw InvalidArgument("mesh has unreferenced nodes");
  }
  if (boundary_flag_.size() != nodes.size())
  {
    throw InvalidArgument("mesh boundary set not initialized");
  }
}

double SpaceTimeMesh::Volume(int q) const
{
  const auto &a = nodes[tets[q].v[0]];
  const auto &b = nodes[tets[q].v[1]];
  const auto &c = nodes[tets[q].v[2]];
  const auto &d = nodes[tets[q].v[3]];
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double w[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  return (u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
          u[2] * (v[0] * w[1] - v[1] * w[0])) /
         6.0;
}

Team32Layout Team32Layout::Default()
{
  Team32Layout layout;
  layout.air_box = {-0.05, -0.03, 0.20, 0.21};
  layout.mesh_size = 0.01;
  layout.blocks = {
      {"fe", {0.00, 0.00, 0.15, 0.03}},           // bottom yoke
      {"fe", {0.00, 0.15, 0.15, 0.18}},           // top yoke
      {"fe", {0.00, 0.03, 0.03, 0.15}},           // left limb
      {"fe", {0.06, 0.03, 0.09, 0.15}},           // centre limb
      {"fe", {0.12, 0.03, 0.15, 0.15}},           // right limb
      {"cu_left_out", {-0.02, 0.04, -0.01, 0.14}},
      {"cu_left_in", {0.04, 0.04, 0.05, 0.14}},
      {"cu_right_in", {0.10, 0.04, 0.11, 0.14}},
      {"cu_right_out", {0.16, 0.04, 0.17, 0.14}},
  };
  return layout;
}

namespace
{

// Lattice mesher shared by the square and the block layouts.
Mesh2D BuildGrid(const Rect &box, int nx, int ny,
                 const std::function<std::string(double, double)> &tag_at)
{
  Mesh2D mesh;
  mesh.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; j++)
  {
    for (int i = 0; i <= nx; i++)
    {
      // Interpolate from both ends so the far edge is exact.
      const double x = (i == nx) ? box.x1 : box.x0 + (box.x1 - box.x0) * i / nx;
      const double y = (j == ny) ? box.y1 : box.y0 + (box.y1 - box.y0) * j / ny;
      mesh.nodes.push_back({x, y});
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  mesh.triangles.reserve(static_cast<std::size_t>(2) * nx * ny);
  for (int j = 0; j < ny; j++)
  {
    for (int i = 0; i < nx; i++)
    {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      for (const auto &v : {std::array<int, 3>{a, b, c}, std::array<int, 3>{a, c, d}})
      {
        Triangle tri{v, 0};
        const Vec2 xc{(mesh.nodes[v[0]][0] + mesh.nodes[v[1]][0] + mesh.nodes[v[2]][0]) / 3.0,
                      (mesh.nodes[v[0]][1] + mesh.nodes[v[1]][1] + mesh.nodes[v[2]][1]) / 3.0};
        tri.region = mesh.RegionId(tag_at(xc[0], xc[1]));
        mesh.triangles.push_back(tri);
      }
    }
  }
  std::vector<int> boundary;
  for (int j = 0; j <= ny; j++)
  {
    for (int i = 0; i <= nx; i++)
    {
      if (i == 0 || j == 0 || i == nx || j == ny)
      {
        boundary.push_back(id(i, j));
      }
    }
  }
  mesh.SetBoundary(std::move(boundary));
  return mesh;
}

// Number of lattice steps covering [0, length]; throws unless it is integral.
int LatticeSteps(double length, double h, const std::string &what)
{
  const double r = length / h;
  const double k = std::round(r);
  if (std::abs(r - k) > 1e-9 * std::max(1.0, r))
  {
    throw InvalidArgument(what + " is not a multiple of the mesh size");
  }
  return static_cast<int>(k);
}

}  // namespace

Mesh2D build_structured_square(int n, const RegionClassifier &classifier)
{
  if (n < 1)
  {
    throw InvalidArgument("structured square needs n >= 1");
  }
  return BuildGrid({0.0, 0.0, 1.0, 1.0}, n, n, classifier);
}

Mesh2D build_team32_layout(const Team32Layout &layout)
{
  const Rect &box = layout.air_box;
  const double h = layout.mesh_size;
  if (!(h > 0.0) || !(box.Width() > 0.0) || !(box.Height() > 0.0))
  {
    throw InvalidArgument("layout needs a positive mesh size and a nonempty box");
  }
  const int nx = LatticeSteps(box.Width(), h, "box width");
  const int ny = LatticeSteps(box.Height(), h, "box height");
  for (std::size_t b = 0; b < layout.blocks.size(); b++)
  {
    const Rect &r = layout.blocks[b].rect;
    const std::string name = "block '" + layout.blocks[b].tag + "' #" + std::to_string(b);
    if (!(r.Width() > 0.0) || !(r.Height() > 0.0))
    {
      throw InvalidArgument(name + " is empty");
    }
    const double tol = 1e-9 * h;
    if (r.x0 < box.x0 - tol || r.y0 < box.y0 - tol || r.x1 > box.x1 + tol || r.y1 > box.y1 + tol)
    {
      throw InvalidArgument(name + " leaves the air box");
    }
    LatticeSteps(r.x0 - box.x0, h, name + " left edge");
    LatticeSteps(r.x1 - box.x0, h, name + " right edge");
    LatticeSteps(r.y0 - box.y0, h, name + " bottom edge");
    LatticeSteps(r.y1 - box.y0, h, name + " top edge");
    for (std::size_t o = 0; o < b; o++)
    {
      const Rect &s = layout.blocks[o].rect;
      const double ox = std::min(r.x1, s.x1) - std::max(r.x0, s.x0);
      const double oy = std::min(r.y1, s.y1) - std::max(r.y0, s.y0);
      if (ox > tol && oy > tol)
      {
        throw InvalidArgument(name + " overlaps block #" + std::to_string(o));
      }
    }
  }
  return BuildGrid(box, nx, ny, [&layout](double x, double y) {
    for (const auto &block : layout.blocks)
    {
      if (block.rect.Contains(x, y))
      {
        return block.tag;
      }
    }
    return layout.background_tag;
  });
}

SpaceTimeMesh extrude_spacetime(const Mesh2D &mesh, int n_slices, double final_time)
{
  if (n_slices < 1 || !(final_time > 0.0))
  {
    throw InvalidArgument("extrusion needs n_slices >= 1 and T > 0");
  }
  SpaceTimeMesh st;
  st.n_spatial = mesh.NumNodes();
  st.n_slices = n_slices;
  st.final_time = final_time;
  st.region_names = mesh.region_names;
  const std::size_t n_nodes = static_cast<std::size_t>(st.n_spatial) * (n_slices + 1);
  st.nodes.reserve(n_nodes);
  st.lateral.reserve(n_nodes);
  st.initial.reserve(n_nodes);
  st.slice_index.reserve(n_nodes);
  for (int s = 0; s <= n_slices; s++)
  {
    const double t = st.SliceTime(s);
    for (int i = 0; i < st.n_spatial; i++)
    {
      st.nodes.push_back({mesh.nodes[i][0], mesh.nodes[i][1], t});
      st.lateral.push_back(mesh.IsBoundary(i) ? 1 : 0);
      st.initial.push_back(s == 0 ? 1 : 0);
      st.slice_index.push_back(s);
    }
  }

  st.tets.reserve(static_cast<std::size_t>(3) * mesh.NumTriangles() * n_slices);
  for (int s = 0; s < n_slices; s++)
  {
    for (const auto &tri : mesh.triangles)
    {
      std::array<int, 3> v = tri.v;
      std::sort(v.begin(), v.end());
      const int b0 = st.GlobalIndex(s, v[0]), b1 = st.GlobalIndex(s, v[1]),
                b2 = st.GlobalIndex(s, v[2]);
      const int t0 = st.GlobalIndex(s + 1, v[0]), t1 = st.GlobalIndex(s + 1, v[1]),
                t2 = st.GlobalIndex(s + 1, v[2]);
      // Every quad face is cut from its lowest-index vertex.
      for (const auto &q : {std::array<int, 4>{b0, b1, b2, t2}, std::array<int, 4>{b0, b1, t1, t2},
                            std::array<int, 4>{b0, t0, t1, t2}})
      {
        st.tets.push_back({q, tri.region});
        if (st.Volume(st.NumTets() - 1) < 0.0)
        {
          std::swap(st.tets.back().v[2], st.tets.back().v[3]);
        }
      }
    }
  }
  return st;
}

std::array<double, 3> barycentric(const Mesh2D &mesh, int t, const Vec2 &x)
{
  const auto &a = mesh.nodes[mesh.triangles[t].v[0]];
  const auto &b = mesh.nodes[mesh.triangles[t].v[1]];
  const auto &c = mesh.nodes[mesh.triangles[t].v[2]];
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  const double l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (x[1] - a[1])) / det;
  const double l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
  return {1.0 - l1 - l2, l1, l2};
}

int locate_point(const Mesh2D &mesh, const Vec2 &x)
{
  constexpr double tol = 1e-12;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto l = barycentric(mesh, t, x);
    if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol)
    {
      return t;
    }
  }
  std::ostringstream msg;
  msg << "point (" << x[0] << ", " << x[1] << ") is outside the domain";
  throw PointOutsideDomain(msg.str());
}

void write_mesh_dump(const Mesh2D &mesh, std::ostream &os)
{
  os.precision(17);
  os << "nodes " << mesh.NumNodes() << '\n';
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    os << i << ' ' << mesh.nodes[i][0] << ' ' << mesh.nodes[i][1] << '\n';
  }
  os << "elements " << mesh.NumTriangles() << '\n';
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.triangles[t];
    os << t << ' ' << tri.v[0] << ' ' << tri.v[1] << ' ' << tri.v[2] << ' '
       << mesh.region_names[tri.region] << '\n';
  }
}

void write_mesh_dump(const SpaceTimeMesh &mesh, std::ostream &os)
{
  os.precision(17);
  os << "nodes " << mesh.NumNodes() << '\n';
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    os << i << ' ' << mesh.nodes[i][0] << ' ' << mesh.nodes[i][1] << ' ' << mesh.nodes[i][2]
       << '\n';
  }
  os << "elements " << mesh.NumTets() << '\n';
  for (int q = 0; q < mesh.NumTets(); q++)
  {
    const auto &tet = mesh.tets[q];
    os << q << ' ' << tet.v[0] << ' ' << tet.v[1] << ' ' << tet.v[2] << ' ' << tet.v[3] << ' '
       << mesh.region_names[tet.region] << '\n';
  }
}

Mesh2D read_mesh_dump(std::istream &is)
{
  Mesh2D mesh;
  std::string line, keyword;
  int line_no = 0;
  auto fail = [&line_no](const std::string &what) {
    throw ParseError("mesh dump line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() {
    while (std::getline(is, line))
    {
      line_no++;
      if (!line.empty() && line[0] != '#')
      {
        return true;
      }
    }
    return false;
  };
  auto read_header = [&](const char *expected) {
    long count = -1;
    if (!next_line())
    {
      fail(std::string("missing '") + expected + "' header");
    }
    std::istringstream ss(line);
    if (!(ss >> keyword >> count) || keyword != expected || count < 0)
    {
      fail(std::string("expected '") + expected + " <count>'");
    }
    return count;
  };

  const long n_nodes = read_header("nodes");
  for (long i = 0; i < n_nodes; i++)
  {
    long id;
    double x, y;
    if (!next_line())
    {
      fail("truncated node list");
    }
    std::istringstream ss(line);
    if (!(ss >> id >> x >> y) || id != i)
    {
      fail("expected 'id x y' with consecutive ids");
    }
    mesh.nodes.push_back({x, y});
  }
  const long n_elems = read_header("elements");
  for (long t = 0; t < n_elems; t++)
  {
    long id;
    Triangle tri;
    std::string tag;
    if (!next_line())
    {
      fail("truncated element list");
    }
    std::istringstream ss(line);
    if (!(ss >> id >> tri.v[0] >> tri.v[1] >> tri.v[2] >> tag) || id != t)
    {
      fail("expected 'id n1 n2 n3 tag' with consecutive ids");
    }
    for (int k = 0; k < 3; k++)
    {
      if (tri.v[k] < 0 || tri.v[k] >= n_nodes)
      {
        fail("node index out of range");
      }
    }
    tri.region = mesh.RegionId(tag);
    mesh.triangles.push_back(tri);
  }
  mesh.DetectBoundary();
  mesh.Validate();
  return mesh;
}

}  // namespace hystfem
