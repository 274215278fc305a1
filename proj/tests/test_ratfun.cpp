#include "tilekit/identities.hpp"
#include "tilekit/ratfun.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tilekit;

namespace {

Rational q(long a, long b = 1) {
  Rational v(a, b);
  v.canonicalize();
  return v;
}

}  // namespace

TEST(AscFact, Examples) {
  for (long k : {-3L, 0L, 4L}) EXPECT_EQ(asc_fact(Rational(k), 0), 1);
  EXPECT_EQ(asc_fact(Rational(3), 2), 12);
  EXPECT_EQ(asc_fact(Rational(-2), 4), 0);
  EXPECT_EQ(asc_fact(Rational(1, 2), 2), Rational(3, 4));
}

TEST(AscFact, MatchesProduct) {
  for (long k = -6; k <= 6; ++k)
    for (long n = 0; n <= 8; ++n) {
      Integer p = 1;
      for (long j = 0; j < n; ++j) p *= k + j;
      EXPECT_EQ(asc_fact(k, n), p);
    }
}

TEST(FactoredRational, HigherOrderResidue) {
  // z^4 / (z-1)^3 at 1: C(4,2) = 6
  FactoredRational f = FactoredRational::from_roots({0}, 4);
  f.mul_linear(1, -3);
  EXPECT_EQ(f.residue(1), 6);
  EXPECT_EQ(f.residue(0), 0);
}

TEST(FactoredRational, NoPolesInContour) {
  FactoredRational f = FactoredRational::from_roots({3, 4}, -1);
  EXPECT_EQ(residue_sum(f, Contour::around({0, 1, 2})), 0);
}

TEST(FactoredRational, ResiduesSumToZeroAtInfinity) {
  // numerator degree <= denominator degree - 2: all finite residues sum to 0
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<long> pt(-6, 6), ex(1, 3);
  for (int t = 0; t < 200; ++t) {
    FactoredRational f(q(pt(gen) + 13, 7));
    for (int i = 0; i < 3; ++i) f.mul_linear(q(pt(gen), 1 + (t % 3)), -static_cast<int>(ex(gen)));
    const long zeros = ex(gen) - 1;
    for (long i = 0; i < zeros; ++i) f.mul_linear(Rational(pt(gen)) + Rational(1, 5), 1);
    // net degree
    if (f.degree_numerator() > -2 || f.poles().empty()) continue;
    EXPECT_EQ(residue_sum(f, Contour::everything()), 0);
  }
}

TEST(SResidue, Examples) {
  EXPECT_EQ(s_residue(4, 4, 3), 1);
  EXPECT_EQ(s_residue(5, 7, 1), 0);
  EXPECT_EQ(s_residue(0, 0, 1), 1);
  EXPECT_EQ(s_residue_series(4, 4, 3), 1);
  EXPECT_EQ(s_residue_series(5, 7, 1), 0);
}

TEST(SResidue, ClosedFormAgainstSeries) {
  const SuiteResult r = asc_fact_identity_suite(10, 12);
  EXPECT_TRUE(r.pass()) << r.first_failure;
  EXPECT_GT(r.cases, 100);
}

TEST(ModelFunctions, DegreesAndRoots) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const ModelFunctions mf = build_model_functions(bd);
  const TwoCutData& t = *bd.two_cut;
  EXPECT_EQ(mf.P.degree_numerator(), bd.N - bd.d);
  EXPECT_EQ(mf.Q.degree_numerator(), bd.N + bd.d);
  std::vector<Rational> roots;
  for (const auto* s : {&t.L, &t.C, &t.R})
    for (long v : *s) roots.emplace_back(v);
  std::sort(roots.begin(), roots.end());
  EXPECT_EQ(mf.Q.zeros(), roots);
}

TEST(ModelFunctions, PolesOfH) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const ModelFunctions mf = build_model_functions(bd);
  const TwoCutData& t = *bd.two_cut;
  std::vector<Rational> expect;
  for (long v : t.rho_bar.points()) expect.emplace_back(v);
  for (long v : t.sigma_bar.points()) expect.emplace_back(v);
  for (long v : t.L) expect.emplace_back(v);
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(mf.h.poles(), expect);
}

TEST(Petrov, WorkedExample) {
  // (m,x,n,y) = (1,0,2,1), N = 6: (n-m)_{y-x}/(y-x)! = 1
  const long N = 6, m = 1, x = 0, n = 2, y = 1;
  FactoredRational f = FactoredRational::asc_block(Rational(1 - x), N - m - 1) *
                       FactoredRational::asc_block(Rational(-y), N - n + 1).inverse();
  f.scale(Rational(factorial(N - n)) / Rational(factorial(N - m - 1)));
  EXPECT_EQ(residue_sum(f, Contour::around_interval(std::max(x, y - N + n), y)), 1);
}

TEST(Petrov, Sweep) {
  const SuiteResult r = petrov_suite(200, 11);
  EXPECT_TRUE(r.pass()) << r.first_failure;
}

TEST(SIdentity, TwoCutD2BoundaryPoint) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const SuiteResult r = s_identity_suite(bd, {Rational(1, 3)});
  EXPECT_TRUE(r.pass()) << r.first_failure;
  EXPECT_GT(r.cases, 0);
}

TEST(CombIdent, Range) {
  const SuiteResult r = combident_suite(12, 12);
  EXPECT_TRUE(r.pass()) << r.first_failure;
  EXPECT_EQ(r.cases, 13 * 91);
}
