// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/problem.hpp"

#include <cmath>
#include <string>

#include "hystfem/errors.hpp"

namespace hystfem
{

std::vector<double> Problem::Conductivities() const
{
  std::vector<double> out;
  for (const auto &m : materials)
  {
    out.push_back(m.sigma);
  }
  return out;
}

std::vector<PamParams> Problem::Params() const
{
  std::vector<PamParams> out;
  for (const auto &m : materials)
  {
    out.push_back(m.params);
  }
  return out;
}

std::vector<Vec2> Problem::Magnetizations() const
{
  std::vector<Vec2> out;
  for (const auto &m : materials)
  {
    out.push_back(m.m_perp);
  }
  return out;
}

void Problem::Validate() const
{
  mesh.Validate();
  if (materials.size() != mesh.region_names.size())
  {
    throw InvalidArgument("problem needs one material per mesh region");
  }
  for (std::size_t r = 0; r < materials.size(); r++)
  {
    const auto &m = materials[r];
    if (!std::isfinite(m.sigma) || m.sigma < 0.0)
    {
      throw InvalidArgument("region '" + mesh.region_names[r] + "' has a negative conductivity");
    }
    m.params.Validate();
  }
  if (!(final_time > 0.0) || n_steps < 1)
  {
    throw InvalidArgument("problem needs T > 0 and at least one step");
  }
}

}  // namespace hystfem
