// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_MESH_HPP
#define HYSTFEM_MESH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hystfem/pam_material.hpp"

namespace hystfem
{

struct Triangle
{
  std::array<int, 3> v;
  int region = 0;
};

//
// Planar P1 mesh. Triangles are counterclockwise; region ids index region_names.
//
class Mesh2D
{
public:
  std::vector<Vec2> nodes;
  std::vector<Triangle> triangles;
  std::vector<std::string> region_names;

  // Replaces the Dirichlet node set. Node ids must be in range.
  void SetBoundary(std::vector<int> boundary_nodes);

  // Marks every node lying on an edge used by exactly one triangle.
  void DetectBoundary();

  const std::vector<int> &BoundaryNodes() const { return boundary_; }
  bool IsBoundary(int node) const { return boundary_flag_[node] != 0; }

  int NumNodes() const { return static_cast<int>(nodes.size()); }
  int NumTriangles() const { return static_cast<int>(triangles.size()); }

  double Area(int t) const;
  Vec2 Centroid(int t) const;

  // Returns the id of the named region, or -1.
  int FindRegion(const std::string &name) const;
  // Returns the id of the named region, appending it when absent.
  int RegionId(const std::string &name);

  // Throws InvalidArgument on orientation, indexing or coverage problems.
  void Validate() const;

private:
  std::vector<int> boundary_;
  std::vector<std::uint8_t> boundary_flag_;
};

using Vec3 = std::array<double, 3>;

struct Tetra
{
  std::array<int, 4> v;
  int region = 0;
};

//
// Tensor-product extrusion of a Mesh2D over (0, T). Node (slice s, spatial node i)
// has global id s * NumSpatialNodes() + i and coordinates (x1, x2, t).
//
class SpaceTimeMesh
{
public:
  std::vector<Vec3> nodes;
  std::vector<Tetra> tets;
  std::vector<std::uint8_t> lateral;  // projection is a spatial boundary node
  std::vector<std::uint8_t> initial;  // t == 0
  std::vector<int> slice_index;
  std::vector<std::string> region_names;
  int n_spatial = 0;
  int n_slices = 0;
  double final_time = 0.0;

  int NumNodes() const { return static_cast<int>(nodes.size()); }
  int NumTets() const { return static_cast<int>(tets.size()); }
  int SpatialIndex(int node) const { return node % n_spatial; }
  int GlobalIndex(int slice, int spatial) const { return slice * n_spatial + spatial; }
  double SliceTime(int slice) const { return final_time * slice / n_slices; }

  // Signed volume; positive for every tet produced by extrude_spacetime.
  double Volume(int q) const;
};

struct Rect
{
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double Width() const { return x1 - x0; }
  double Height() const { return y1 - y0; }
  double Area() const { return Width() * Height(); }
  bool Contains(double x, double y) const { return x > x0 && x < x1 && y > y0 && y < y1; }
};

struct LayoutBlock
{
  std::string tag;
  Rect rect;
};

//
// Rectilinear transformer cross section: an enclosing box filled with background
// (air) except where a core or winding block is placed. Blocks must not overlap and
// their edges must sit on the lattice of spacing mesh_size anchored at the box origin.
//
struct Team32Layout
{
  Rect air_box;
  std::vector<LayoutBlock> blocks;
  std::string background_tag = "air";
  double mesh_size = 0.01;

  // Approximate three-limb core with two windings (dimensions in m):
  // 150 x 180 core, 30 wide limbs and yokes, 10 x 100 winding sides.
  static Team32Layout Default();
};

using RegionClassifier = std::function<std::string(double x1, double x2)>;

// Uniform (n+1)^2 grid on (0,1)^2; each cell split along its (i,j)-(i+1,j+1) diagonal.
Mesh2D build_structured_square(int n, const RegionClassifier &classifier);

Mesh2D build_team32_layout(const Team32Layout &layout);

// Each prism is split into 3 tets along face diagonals chosen by ascending global
// vertex index, so neighbouring prisms share matching faces.
SpaceTimeMesh extrude_spacetime(const Mesh2D &mesh, int n_slices, double final_time);

// Barycentric coordinates of x with respect to triangle t.
std::array<double, 3> barycentric(const Mesh2D &mesh, int t, const Vec2 &x);

// Lowest-index triangle containing x (tolerance 1e-12); throws PointOutsideDomain.
int locate_point(const Mesh2D &mesh, const Vec2 &x);

// Plain-text listing: "nodes N", then "id x y [t]" lines, "elements M", then
// "id n1 n2 n3 [n4] tag" lines.
void write_mesh_dump(const Mesh2D &mesh, std::ostream &os);
void write_mesh_dump(const SpaceTimeMesh &mesh, std::ostream &os);

// Reads a planar dump; the Dirichlet set is the topological boundary.
Mesh2D read_mesh_dump(std::istream &is);

}  // namespace hystfem

#endif  // HYSTFEM_MESH_HPP
