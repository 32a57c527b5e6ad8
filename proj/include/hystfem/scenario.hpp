// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_SCENARIO_HPP
#define HYSTFEM_SCENARIO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hystfem/mesh.hpp"
#include "hystfem/problem.hpp"
#include "hystfem/sparse.hpp"

namespace hystfem
{

enum class Interpolation
{
  Linear,
  BSpline
};

// Clamped cubic interpolating spline. End slopes come from one-sided second-order
// differences (first order with only two samples).
class CubicSpline
{
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;

private:
  std::vector<double> x_, y_, m_;  // m_: nodal first derivatives
};

//
// Scalar source-current excitation. A table carries samples (t, I); its value is
// the interpolated current times scale (turns / winding area for a coil).
//
struct Excitation
{
  enum class Kind
  {
    Sinusoid,
    Table
  };

  Kind kind = Kind::Sinusoid;
  double amplitude = 0.0;
  double frequency = 0.0;  // Hz
  double scale = 1.0;

  std::string path;
  Interpolation interpolation = Interpolation::Linear;
  std::vector<double> times;
  std::vector<double> values;
  CubicSpline spline;

  // Set when a table excitation had no samples and its sinusoid fallback is used.
  bool approximate = false;

  static Excitation Sinusoid(double amplitude, double frequency, double scale = 1.0);
  static Excitation Table(std::vector<double> t, std::vector<double> current,
                          Interpolation interp, double scale);
};

// Throws InvalidArgument for t outside a table's sample range.
double sample_excitation(const Excitation &exc, double t);

// Reads a current table with header "t,I".
Excitation load_current_table(const std::filesystem::path &path, Interpolation interp,
                              double scale);

struct MaterialConfig
{
  bool linear = true;
  double nu = 1.0;
  PamParams pam;

  PamParams Params() const { return linear ? PamParams::Linear(nu) : pam; }
};

struct RegionConfig
{
  std::string tag;
  double sigma = 0.0;
  MaterialConfig material;
  std::string excitation;  // empty means no source current
  Vec2 m_perp{0.0, 0.0};
};

struct GeometryConfig
{
  enum class Kind
  {
    UnitSquare,
    Team32,
    MeshFile
  };

  Kind kind = Kind::UnitSquare;

  // unit square: n x n cells, an optional inner rectangle tagged inner_tag
  int n = 8;
  bool has_inner = false;
  Rect inner;
  std::string inner_tag = "cu";
  std::string outer_tag = "fe";

  Team32Layout layout = Team32Layout::Default();

  std::filesystem::path mesh_path;
};

enum class Method
{
  TimeStep,
  SpaceTime,
  Both
};

Method parse_method(std::string_view name);
std::string method_name(Method m);

struct ScenarioConfig
{
  std::string name;
  GeometryConfig geometry;
  double T = 0.0;
  int n_steps = 0;
  std::vector<RegionConfig> regions;
  std::map<std::string, Excitation> excitations;
  std::vector<Vec2> probes;
  Method method = Method::TimeStep;
  NewtonSettings newton;
  std::filesystem::path output_dir = "out";
  std::vector<char> bh_components{'x'};

  const RegionConfig *FindRegion(const std::string &tag) const;

  // True when some excitation runs on its fallback instead of measured data.
  bool Approximate() const;

  // Checks field invariants that do not need the mesh; throws ValidationError.
  void Validate() const;
};

// JSON document. Relative paths are resolved against base_dir. Unknown keys are
// rejected; parse errors carry the line and column.
ScenarioConfig load_config(std::string_view text, const std::filesystem::path &base_dir = {});
ScenarioConfig load_config_file(const std::filesystem::path &path);

// "square_hysteresis" or "team32".
ScenarioConfig builtin_scenario(std::string_view name);

Mesh2D build_geometry(const ScenarioConfig &config);

// Mesh, per-region data and source for both engines. Every mesh region needs a
// region entry and every probe has to lie in the mesh.
Problem make_problem(const ScenarioConfig &config);

}  // namespace hystfem

#endif  // HYSTFEM_SCENARIO_HPP
