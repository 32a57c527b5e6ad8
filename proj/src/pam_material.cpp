// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/pam_material.hpp"

#include <string>

#include "hystfem/errors.hpp"

namespace hystfem
{

namespace
{

constexpr double kOriginGuard = 1.0e-12;

// s^e for s > 0 and a real exponent e.
inline double RealPow(double s, double e)
{
  return std::exp(e * std::log(s));
}

}  // namespace

void PamParams::Validate() const
{
  const double p[6] = {p0, p1, p2, p3, p4, p5};
  for (int j = 0; j < 6; j++)
  {
    if (!std::isfinite(p[j]) || p[j] < 0.0)
    {
      throw InvalidArgument("PAM parameter p" + std::to_string(j) +
                            " must be finite and nonnegative");
    }
  }
  if (p0 <= 0.0)
  {
    throw InvalidArgument("PAM parameter p0 must be positive");
  }
  if (p4 > 0.0 && p5 <= 0.0)
  {
    throw InvalidArgument("PAM parameter p5 must be positive when p4 > 0");
  }
}

double eval_f(double s, const PamParams &params)
{
  if (s <= 0.0 || params.p1 == 0.0)
  {
    return params.p0;
  }
  return params.p0 + params.p1 * RealPow(s, 2.0 * params.p2);
}

double eval_df(double s, const PamParams &params)
{
  if (s <= 0.0 || params.p1 == 0.0)
  {
    return 0.0;  // only consumed for s > 0
  }
  return 2.0 * params.p1 * params.p2 * RealPow(s, 2.0 * params.p2 - 1.0);
}

double eval_g(double s, const PamParams &params)
{
  if (params.p4 == 0.0)
  {
    return params.p3;
  }
  if (params.p5 <= 0.0)
  {
    throw InvalidArgument("g is singular at zero rate: p4 > 0 requires p5 > 0");
  }
  return params.p3 + params.p4 / std::sqrt(params.p5 * params.p5 + s * s);
}

double eval_dg(double s, const PamParams &params)
{
  if (params.p4 == 0.0)
  {
    return 0.0;
  }
  if (params.p5 <= 0.0)
  {
    throw InvalidArgument("g is singular at zero rate: p4 > 0 requires p5 > 0");
  }
  const double r2 = params.p5 * params.p5 + s * s;
  return -params.p4 * s / (r2 * std::sqrt(r2));
}

Vec2 eval_flux(TangentKind kind, const Vec2 &v, const PamParams &params)
{
  const double s = norm(v);
  const double c = (kind == TangentKind::Anhysteretic) ? eval_f(s, params) : eval_g(s, params);
  return {c * v[0], c * v[1]};
}

Vec2 eval_h_field(const FieldPair &fields, const PamParams &params)
{
  const double f = eval_f(norm(fields.B), params);
  const double g = eval_g(norm(fields.Bdot), params);
  return {f * fields.B[0] + g * fields.Bdot[0] - fields.M[0],
          f * fields.B[1] + g * fields.Bdot[1] - fields.M[1]};
}

Mat2 eval_tangent(TangentKind kind, const Vec2 &v, const PamParams &params)
{
  const double s = norm(v);
  const bool anhysteretic = (kind == TangentKind::Anhysteretic);
  const double c = anhysteretic ? eval_f(s, params) : eval_g(s, params);
  Mat2 T{c, 0.0, 0.0, c};
  if (s < kOriginGuard)
  {
    return T;
  }
  // c'(s) s (n x n) with n = v / s, written as (c'(s) / s) v x v.
  const double dc = anhysteretic ? eval_df(s, params) : eval_dg(s, params);
  const double w = dc / s;
  T.xx += w * v[0] * v[0];
  T.xy += w * v[0] * v[1];
  T.yx += w * v[1] * v[0];
  T.yy += w * v[1] * v[1];
  return T;
}

}  // namespace hystfem
