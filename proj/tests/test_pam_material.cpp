// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "hystfem/errors.hpp"
#include "hystfem/pam_material.hpp"

using namespace hystfem;

namespace
{

const PamParams kSquare{75.6, 0.0223, 11.47, 0.0001, 65.8, 1.0};
const PamParams kTeam{181.88232, 0.267053, 8.999565, 0.00001, 0.0001, 50.0};

Mat2 FdTangent(TangentKind kind, const Vec2 &v, const PamParams &p, double h)
{
  Mat2 J;
  for (int j = 0; j < 2; j++)
  {
    Vec2 up = v, dn = v;
    up[j] += h;
    dn[j] -= h;
    const Vec2 fp = eval_flux(kind, up, p), fm = eval_flux(kind, dn, p);
    const double c0 = (fp[0] - fm[0]) / (2 * h), c1 = (fp[1] - fm[1]) / (2 * h);
    if (j == 0)
    {
      J.xx = c0;
      J.yx = c1;
    }
    else
    {
      J.xy = c0;
      J.yy = c1;
    }
  }
  return J;
}

double RelDiff(const Mat2 &a, const Mat2 &b)
{
  const double d = std::hypot(std::hypot(a.xx - b.xx, a.xy - b.xy), std::hypot(a.yx - b.yx, a.yy - b.yy));
  const double n = std::hypot(std::hypot(a.xx, a.xy), std::hypot(a.yx, a.yy));
  return d / n;
}

}  // namespace

TEST(EvalF, ZeroAndUnitInputs)
{
  EXPECT_EQ(eval_f(0.0, kSquare), 75.6);
  EXPECT_NEAR(eval_f(1.0, kSquare), 75.6223, 1e-12);
}

TEST(EvalF, MatchesMultiprecisionAtOnePointOne)
{
  using big = boost::multiprecision::cpp_bin_float_50;
  const big ref = big("75.6") + big("0.0223") * pow(big("1.1"), 2 * big("11.47"));
  EXPECT_NEAR(eval_f(1.1, kSquare), ref.convert_to<double>(), 1e-12);
  // frozen 40-digit reference
  EXPECT_NEAR(eval_f(1.1, kSquare), 75.79854230546298448817980494345432949114, 1e-12);
}

TEST(EvalF, MonotoneAndBoundedBelow)
{
  double prev = eval_f(0.0, kTeam);
  for (int i = 1; i <= 300; i++)
  {
    const double s = 0.01 * i;
    const double f = eval_f(s, kTeam);
    EXPECT_GE(f, prev);
    EXPECT_GE(f, kTeam.p0);
    prev = f;
  }
}

TEST(EvalG, ClosedFormValues)
{
  EXPECT_NEAR(eval_g(0.0, kSquare), 65.8001, 1e-12);
  EXPECT_NEAR(eval_g(1.0, kSquare), 0.0001 + 65.8 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(eval_g(1e12, kSquare), 0.0001, 1e-9);
}

TEST(EvalG, MonotoneAndBounded)
{
  double prev = eval_g(0.0, kSquare);
  for (int i = 1; i <= 300; i++)
  {
    const double g = eval_g(0.05 * i, kSquare);
    EXPECT_LE(g, prev);
    EXPECT_GT(g, kSquare.p3);
    EXPECT_LE(g, kSquare.p3 + kSquare.p4 / kSquare.p5);
    prev = g;
  }
}

TEST(EvalG, RejectsZeroRateScaleWithHysteresis)
{
  PamParams p = kSquare;
  p.p5 = 0.0;
  EXPECT_THROW(eval_g(0.0, p), InvalidArgument);
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p.p4 = 0.0;
  EXPECT_NO_THROW(p.Validate());
  EXPECT_EQ(eval_g(0.0, p), p.p3);
}

TEST(PamParams, ValidateRejectsOutOfDomain)
{
  PamParams p = kSquare;
  p.p1 = -1.0;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p = kSquare;
  p.p0 = 0.0;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p = kSquare;
  p.p3 = std::nan("");
  EXPECT_THROW(p.Validate(), InvalidArgument);
  EXPECT_NO_THROW(kSquare.Validate());
  EXPECT_NO_THROW(kTeam.Validate());
}

TEST(Derivatives, MatchFiniteDifferences)
{
  for (const PamParams &p : {kSquare, kTeam})
  {
    for (double s : {0.3, 0.9, 1.2, 2.0})
    {
      const double h = 1e-6;
      const double fd_f = (eval_f(s + h, p) - eval_f(s - h, p)) / (2 * h);
      const double fd_g = (eval_g(s + h, p) - eval_g(s - h, p)) / (2 * h);
      EXPECT_NEAR(eval_df(s, p), fd_f, 1e-6 * (1 + std::abs(fd_f)));
      EXPECT_NEAR(eval_dg(s, p), fd_g, 1e-6 * (1 + std::abs(fd_g)));
    }
  }
}

TEST(EvalH, Examples)
{
  Vec2 H = eval_h_field({}, kSquare);
  EXPECT_EQ(H[0], 0.0);
  EXPECT_EQ(H[1], 0.0);

  H = eval_h_field({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, kSquare);
  EXPECT_NEAR(H[0], 75.6223, 1e-12);
  EXPECT_EQ(H[1], 0.0);

  H = eval_h_field({{0.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}, kSquare);
  EXPECT_EQ(H[0], 0.0);
  EXPECT_NEAR(H[1], 0.0001 + 65.8 / std::sqrt(2.0), 1e-12);

  H = eval_h_field({{0.0, 0.0}, {0.0, 0.0}, {2.0, -3.0}}, kSquare);
  EXPECT_EQ(H[0], -2.0);
  EXPECT_EQ(H[1], 3.0);
}

TEST(EvalH, LinearParamsGiveClassicalLaw)
{
  const PamParams lin = PamParams::Linear(1e7 / (4 * std::numbers::pi));
  const Vec2 H = eval_h_field({{0.3, -0.7}, {5.0, 1.0}, {0.0, 0.0}}, lin);
  EXPECT_NEAR(H[0], lin.p0 * 0.3, 1e-12 * lin.p0);
  EXPECT_NEAR(H[1], -lin.p0 * 0.7, 1e-12 * lin.p0);
}

TEST(EvalH, RotationEquivariance)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0), ang(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 100; k++)
  {
    const double a = ang(rng), c = std::cos(a), s = std::sin(a);
    auto rot = [&](const Vec2 &v) { return Vec2{c * v[0] - s * v[1], s * v[0] + c * v[1]}; };
    const FieldPair fp{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const Vec2 H = eval_h_field(fp, kSquare);
    const Vec2 HR = eval_h_field({rot(fp.B), rot(fp.Bdot), rot(fp.M)}, kSquare);
    const Vec2 RH = rot(H);
    const double scale = 1.0 + norm(H);
    EXPECT_NEAR(HR[0], RH[0], 1e-12 * scale);
    EXPECT_NEAR(HR[1], RH[1], 1e-12 * scale);
  }
}

TEST(EvalTangent, OriginValues)
{
  Mat2 T = eval_tangent(TangentKind::Anhysteretic, {0.0, 0.0}, kSquare);
  EXPECT_EQ(T.xx, 75.6);
  EXPECT_EQ(T.yy, 75.6);
  EXPECT_EQ(T.xy, 0.0);
  EXPECT_EQ(T.yx, 0.0);
  T = eval_tangent(TangentKind::Dynamic, {0.0, 0.0}, kSquare);
  EXPECT_NEAR(T.xx, 65.8001, 1e-12);
  EXPECT_NEAR(T.yy, 65.8001, 1e-12);
  EXPECT_EQ(T.xy, 0.0);
}

TEST(EvalTangent, FiniteDifferenceAtReferencePoint)
{
  const Vec2 v{0.8, 0.3};
  const Mat2 T = eval_tangent(TangentKind::Anhysteretic, v, kSquare);
  const Mat2 F = FdTangent(TangentKind::Anhysteretic, v, kSquare, 1e-6 * (1 + norm(v)));
  EXPECT_LE(RelDiff(T, F), 1e-6);
}

TEST(EvalTangent, FiniteDifferenceRandomDraws)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rad(0.0, 3.0), ang(0.0, 2 * std::numbers::pi);
  for (const PamParams &p : {kSquare, kTeam})
  {
    for (TangentKind kind : {TangentKind::Anhysteretic, TangentKind::Dynamic})
    {
      for (int k = 0; k < 100; k++)
      {
        const double r = rad(rng), a = ang(rng);
        const Vec2 v{r * std::cos(a), r * std::sin(a)};
        const Mat2 T = eval_tangent(kind, v, p);
        const Mat2 F = FdTangent(kind, v, p, 1e-6 * (1 + r));
        EXPECT_LE(RelDiff(T, F), 1e-5) << "r=" << r;
        EXPECT_NEAR(T.xy, T.yx, 1e-14 * (std::abs(T.xx) + std::abs(T.yy)));
      }
    }
  }
}

TEST(EvalTangent, EigenvalueBounds)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; k++)
  {
    const Vec2 v{u(rng), u(rng)};
    const Mat2 Ta = eval_tangent(TangentKind::Anhysteretic, v, kSquare);
    const double tr = Ta.trace(), det = Ta.det();
    const double lmin = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4 * det)));
    EXPECT_GE(lmin, kSquare.p0 * (1 - 1e-12));
    const Mat2 Td = eval_tangent(TangentKind::Dynamic, v, kSquare);
    EXPECT_GT(Td.trace(), 0.0);
    EXPECT_GT(Td.det(), 0.0);
  }
}

TEST(EvalTangent, NearOriginGuardIsContinuous)
{
  const Mat2 a = eval_tangent(TangentKind::Dynamic, {1e-13, 0.0}, kSquare);
  const Mat2 b = eval_tangent(TangentKind::Dynamic, {1e-9, 0.0}, kSquare);
  EXPECT_NEAR(a.xx, b.xx, 1e-6);
  EXPECT_TRUE(std::isfinite(a.xx));
}
