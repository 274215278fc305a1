#include "tilekit/dtac.hpp"
#include "tilekit/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tilekit;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Singular;
}

bool close(double v, double w, double rel) { return std::abs(v - w) <= rel * std::max(std::abs(v), std::abs(w)) + 1e-12; }

}  // namespace

TEST(Dtac, HeavisideExamples) {
  EXPECT_EQ(heaviside(0, 3.0), 0.0);
  EXPECT_EQ(heaviside(-2, 3.0), 0.0);
  EXPECT_EQ(heaviside(1, 0.5), 1.0);
  EXPECT_EQ(heaviside(3, 2.0), 2.0);
  EXPECT_EQ(heaviside(2, -0.1), 0.0);
  EXPECT_EQ(heaviside(1, 0.0), 1.0);
}

TEST(Dtac, ThetaOrderZeroIsOne) {
  for (double beta : {0.0, 0.7})
    EXPECT_NEAR(std::abs(theta(ThetaKind::r, {0.3, 0.1}, {-0.2, 0.4}, {2, 0, beta}) - cplx(1.0)), 0.0, 1e-15);
}

TEST(Dtac, ThetaOneGaussian) {
  const cplx v = theta(ThetaKind::r, 0.0, 0.0, {0, 1, 0.0});
  EXPECT_NEAR(v.real(), 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi)), 1e-8);
  EXPECT_NEAR(v.imag(), 0.0, 1e-12);
  EXPECT_NEAR(DTacKernel({0, 1, 0.0}).theta_r00(), 0.19947114020071635, 1e-8);
}

TEST(Dtac, ThetaStableUnderRefinement) {
  QuadratureSpec fine;
  fine.eps = 0.25;
  fine.r0 = 0.125;
  fine.T = 10.5;
  fine.n = 1601;
  for (const DTacParams& p : {DTacParams{0, 1, 0.0}, DTacParams{1, 2, 0.3}, DTacParams{2, 1, -1.2}})
    for (ThetaKind kind : {ThetaKind::r, ThetaKind::plus, ThetaKind::minus}) {
      const cplx V{0.05, 0.02}, Z{-0.03, 0.04};
      const cplx a = theta(kind, V, Z, p), b = theta(kind, V, Z, p, fine);
      EXPECT_LE(std::abs(a - b), 1e-6 * std::abs(a)) << p.rho << ' ' << p.r << ' ' << static_cast<int>(kind);
    }
}

TEST(Dtac, ThetaErrors) {
  EXPECT_EQ(kind_of([] { theta(ThetaKind::minus, 0.0, 0.0, {0, kMaxThetaOrder, 0.0}); }), ErrorKind::UnsupportedOrder);
  EXPECT_EQ(kind_of([] { theta(ThetaKind::plus, 0.0, 0.0, {0, 0, 0.0}); }), ErrorKind::ConstraintViolation);
  EXPECT_EQ(kind_of([] { DTacKernel({0, kMaxThetaOrder, 0.0}); }), ErrorKind::UnsupportedOrder);
  QuadratureSpec bad;
  bad.r0 = 0.6;
  EXPECT_EQ(kind_of([&] { DTacKernel({0, 1, 0.0}, bad); }), ErrorKind::ConstraintViolation);
  EXPECT_EQ(kind_of([] { DTacKernel({-1, 1, 0.0}); }), ErrorKind::ConstraintViolation);
}

TEST(Dtac, CoarseQuadratureIsReported) {
  QuadratureSpec q;
  q.T = 1.0;
  q.n = 9;
  q.n0 = 4;
  const DTacKernel k({1, 1, 0.0}, q);
  EXPECT_EQ(kind_of([&] { k(2, 0.3, -1, 0.1); }), ErrorKind::QuadratureDiverged);
  EXPECT_GT(k.evaluate(2, 0.3, -1, 0.1).error_estimate, q.tol);
}

TEST(Dtac, PiecesSumToValue) {
  const DTacKernel k({1, 1, 0.3});
  for (long t1 = -2; t1 <= 3; ++t1)
    for (long t2 = -2; t2 <= 3; ++t2) {
      const DTacValue v = k(t1, 0.4, t2, -0.2);
      double s = 0;
      for (double p : v.pieces) s += p;
      EXPECT_NEAR(s, v.value, 1e-14 + v.error_estimate);
      if (t1 == t2) EXPECT_EQ(v.pieces[0], 0.0);
    }
}

TEST(Dtac, PieceSupports) {
  for (const DTacParams& p : {DTacParams{0, 0, 0.0}, DTacParams{1, 1, 0.3}, DTacParams{2, 1, -0.5}, DTacParams{1, 2, 0.0}}) {
    const DTacKernel k(p);
    for (long t1 = -2; t1 <= p.rho + 2; ++t1)
      for (long t2 = -2; t2 <= p.rho + 2; ++t2)
        for (double a : {-1.0, 0.5})
          for (double b : {-0.5, 1.0}) {
            const DTacValue v = k(t1, a, t2, b);
            if (t1 <= p.rho) EXPECT_LT(std::abs(v.pieces[1]), 1e-8);
            if (t2 >= 0) EXPECT_LT(std::abs(v.pieces[2]), 1e-8);
            if (t1 <= p.rho || t2 >= 0) EXPECT_LT(std::abs(v.pieces[4]), 1e-8);
          }
  }
}

TEST(Dtac, Involution) {
  for (const DTacParams& p : {DTacParams{0, 0, 0.0}, DTacParams{1, 1, 0.0}, DTacParams{2, 1, 0.0},
                              DTacParams{1, 1, 0.3}, DTacParams{1, 2, -1.2}}) {
    const DTacKernel k(p);
    for (long t1 = -2; t1 <= p.rho + 2; ++t1)
      for (long t2 = -2; t2 <= p.rho + 2; ++t2)
        for (double a : {-1.0, 0.0, 1.0})
          for (double b : {-1.0, 0.0, 1.0}) {
            const DTacValue v = k(t1, a, t2, b);
            const DTacValue w = k(p.rho - t2, p.beta - b, p.rho - t1, p.beta - a);
            EXPECT_TRUE(close(v.value, w.value, 1e-6)) << t1 << ' ' << a << ' ' << t2 << ' ' << b;
            // pieces 1 and 2 trade places, 0, 3 and 4 stay
            EXPECT_TRUE(close(v.pieces[0], w.pieces[0], 1e-6));
            EXPECT_TRUE(close(v.pieces[1], w.pieces[2], 1e-6));
            EXPECT_TRUE(close(v.pieces[2], w.pieces[1], 1e-6));
            EXPECT_TRUE(close(v.pieces[3], w.pieces[3], 1e-6));
            EXPECT_TRUE(close(v.pieces[4], w.pieces[4], 1e-6));
          }
  }
}

TEST(Dtac, AbscissaIndependence) {
  QuadratureSpec half;
  half.eps = 0.25;
  half.r0 = 0.125;
  for (const DTacParams& p : {DTacParams{1, 1, 0.0}, DTacParams{2, 1, 0.4}}) {
    const DTacKernel a(p), b(p, half);
    for (long t1 = -1; t1 <= p.rho + 1; ++t1)
      for (long t2 = -1; t2 <= p.rho + 1; ++t2)
        EXPECT_TRUE(close(a(t1, 0.3, t2, -0.4).value, b(t1, 0.3, t2, -0.4).value, 1e-6)) << t1 << ' ' << t2;
  }
}

TEST(Dtac, RhoZeroRZeroIsHeatKernel) {
  // no Theta factors: only L0 and L3 survive
  const DTacKernel k({0, 0, 0.0});
  const DTacValue v = k(0, 0.0, 0, 0.0);
  EXPECT_NEAR(v.value, v.pieces[3], 1e-14);
}

TEST(Dtac, PAlphaClosedForms) {
  EXPECT_NEAR(p_alpha(0, 0.0), 0.28209479177387814, 1e-12);
  for (double x : {-1.0, 0.0, 0.5, 2.0}) EXPECT_NEAR(p_alpha(0, x), std::exp(-x * x) / (2 * std::sqrt(std::numbers::pi)), 1e-14);
  EXPECT_NEAR(truncated_moment(-1, 0.0), std::sqrt(std::numbers::pi) / 2, 1e-10);
  EXPECT_NEAR(p_alpha(-1, 0.0), 0.5, 1e-10);
  for (long a : {0L, 1L, 2L, 5L, -1L, -2L, -3L, -5L})
    for (double x : {-1.0, 0.0, 2.0}) EXPECT_NEAR(p_alpha(a, x), p_alpha_quadrature(a, x), 1e-8) << a << ' ' << x;
}

TEST(Dtac, DeltaTildeShape) {
  const DTacParams p{1, 2, 0.0};
  for (long tau = 1; tau <= 4; ++tau) {
    std::vector<double> th;
    for (long i = 0; i < tau - p.rho + p.r; ++i) th.push_back(-1.0 + 0.6 * static_cast<double>(i));
    const auto m = delta_tilde_matrix(tau, th, p);
    ASSERT_EQ(static_cast<long>(m.size()), tau - p.rho + p.r);
    for (const auto& row : m) EXPECT_EQ(row.size(), th.size());
    // monomial block on top
    for (long i = 0; i < tau - p.rho; ++i) EXPECT_NEAR(m[i][1], std::pow(th[1], static_cast<double>(i)), 1e-14);
  }
  EXPECT_EQ(kind_of([&] { delta_tilde_matrix(2, {0.1, 0.2}, p); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([&] { one_level_density(0, {0.1}, p); }), ErrorKind::ConstraintViolation);
}

TEST(Dtac, DensitySwapInvariant) {
  const DTacParams p{1, 2, 0.3};
  const std::vector<double> th{-0.7, 0.1, 0.9};
  std::vector<double> sw = th;
  std::swap(sw[0], sw[2]);
  EXPECT_NEAR(one_level_density(2, th, p), one_level_density(2, sw, p), 1e-14);
}

TEST(Dtac, DensityNonNegativeOnGrid) {
  const DTacParams p{1, 1, 0.0};
  long violations = 0;
  for (double t = -4; t <= 4; t += 0.05)
    if (one_level_density(1, {t}, p) < 0) ++violations;
  EXPECT_EQ(violations, 0);
}

TEST(Dtac, CachedKernelMatchesDirect) {
  const DTacParams p{1, 1, 0.2};
  const DTacValue a = dtac_kernel(2, 0.1, -1, 0.3, p);
  const DTacValue b = DTacKernel(p)(2, 0.1, -1, 0.3);
  EXPECT_EQ(a.value, b.value);
}

TEST(Dtac, ConvergeStudyMapsAndSigns) {
  ScalingParams sp;
  sp.gamma = 2;
  sp.r = sp.rho = 1;
  // Heaviside-dominated point: tau1 - tau2 large, theta2 well above theta1
  const auto rows = converge_study(sp, {16}, {{4, -0.8, 0, 1.2}});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].eta1 - rows[0].eta2, 4);
  EXPECT_EQ(((rows[0].eta1 + rows[0].xi1) % 2 + 2) % 2, 1);
  EXPECT_NE(rows[0].limit, 0.0);
  EXPECT_EQ(std::signbit(rows[0].finite), std::signbit(rows[0].limit));
}

TEST(Dtac, TrendVerdicts) {
  std::vector<ConvergeRow> rows;
  for (auto [d, pt, e] : {std::tuple{8L, 0UL, 0.4}, {16L, 0UL, 0.2}, {32L, 0UL, 0.1}, {8L, 1UL, 0.4}, {16L, 1UL, 0.5},
                          {32L, 1UL, 0.1}}) {
    ConvergeRow r;
    r.d = d;
    r.point = pt;
    r.abs_err = e;
    rows.push_back(r);
  }
  const auto v = trend_verdicts(rows);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(v[0].pass());
  EXPECT_NEAR(v[0].ratio, 0.25, 1e-15);
  EXPECT_FALSE(v[1].monotone);
  EXPECT_FALSE(v[1].pass());
}
