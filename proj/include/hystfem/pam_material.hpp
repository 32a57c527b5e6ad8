// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_PAM_MATERIAL_HPP
#define HYSTFEM_PAM_MATERIAL_HPP

#include <array>
#include <cmath>

namespace hystfem
{

using Vec2 = std::array<double, 2>;

// Row-major 2x2 tensor.
struct Mat2
{
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

  double trace() const { return xx + yy; }
  double det() const { return xx * yy - xy * yx; }
  Vec2 apply(const Vec2 &v) const { return {xx * v[0] + xy * v[1], yx * v[0] + yy * v[1]}; }
};

inline double norm(const Vec2 &v)
{
  return std::hypot(v[0], v[1]);
}

inline double dot(const Vec2 &a, const Vec2 &b)
{
  return a[0] * b[0] + a[1] * b[1];
}

//
// Coefficients of the pragmatic algebraic hysteresis law
//
//   H = f(|B|) B + g(|dB/dt|) dB/dt - M,
//   f(s) = p0 + p1 s^(2 p2),     g(s) = p3 + p4 / sqrt(p5^2 + s^2).
//
// Linear media (air, copper) use p0 = nu and p1 = p3 = p4 = 0.
//
struct PamParams
{
  double p0 = 1.0;  // anhysteretic base reluctivity
  double p1 = 0.0;  // anhysteretic gain
  double p2 = 1.0;  // anhysteretic exponent
  double p3 = 0.0;  // dynamic base coefficient
  double p4 = 0.0;  // hysteresis strength
  double p5 = 1.0;  // rate scale

  static PamParams Linear(double nu) { return {nu, 0.0, 1.0, 0.0, 0.0, 1.0}; }

  // Throws InvalidArgument when the coefficient set violates the model's domain.
  void Validate() const;

  bool IsLinearStatic() const { return p1 == 0.0; }
  bool HasDynamicTerm() const { return p3 != 0.0 || p4 != 0.0; }
};

enum class TangentKind
{
  Anhysteretic,  // d/dB [f(|B|) B]
  Dynamic        // d/dBdot [g(|Bdot|) Bdot]
};

struct FieldPair
{
  Vec2 B{0.0, 0.0};
  Vec2 Bdot{0.0, 0.0};
  Vec2 M{0.0, 0.0};
};

double eval_f(double s, const PamParams &params);
double eval_g(double s, const PamParams &params);

// Derivatives of the scalar coefficient functions.
double eval_df(double s, const PamParams &params);
double eval_dg(double s, const PamParams &params);

// c(|v|) v for c = f or g.
Vec2 eval_flux(TangentKind kind, const Vec2 &v, const PamParams &params);

Vec2 eval_h_field(const FieldPair &fields, const PamParams &params);

// Jacobian of v -> c(|v|) v:  c(s) I + c'(s) s (n x n),  n = v / s.
// The rank-one term is dropped below |v| = 1e-12 where it tends to zero.
Mat2 eval_tangent(TangentKind kind, const Vec2 &v, const PamParams &params);

}  // namespace hystfem

#endif  // HYSTFEM_PAM_MATERIAL_HPP
