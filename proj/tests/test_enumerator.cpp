#include "tilekit/enumerator.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/kernel_k.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

using namespace tilekit;

namespace {

const std::vector<TwoCutSpec>& small_specs() {
  static const std::vector<TwoCutSpec> s{{2, 2, 2, 2, 2, 2, 1}, {3, 2, 2, 3, 2, 2, 1}, {3, 3, 3, 3, 2, 3, 1}};
  return s;
}

Rational red_minor(const RedDotKernel& k, const std::vector<std::pair<long, long>>& pts) {
  std::vector<std::vector<Rational>> a(pts.size(), std::vector<Rational>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) a[i][j] = k(pts[i].first, pts[i].second, pts[j].first, pts[j].second);
  return determinant(a);
}

long black_area(const BoundaryData& bd) {
  long n = 0;
  for (long m = 0; m <= bd.N; ++m)
    for (long x = bd.row_lo(m); x <= bd.row_hi(); ++x) n += bd.black_in_P(m, x);
  return n;
}

}  // namespace

TEST(Enumerator, SplitMixReference) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Enumerator, HexagonCounts) {
  EXPECT_EQ(TilingEnumerator(validate(PolygonSpec::hexagon(1, 1, 1))).count(), 2);
  EXPECT_EQ(TilingEnumerator(validate(PolygonSpec::hexagon(2, 2, 2))).count(), 20);
}

TEST(Enumerator, FixedLevelsHaveMarginalOne) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const TilingEnumerator en(bd);
  for (long x : bd.x) EXPECT_EQ(en.marginal({{bd.N, x}}), 1);
  const RedDotConfig c = en.sample(1);
  ASSERT_EQ(static_cast<long>(c.levels[0].size()), bd.d);
  for (long x : c.levels[0]) EXPECT_EQ(en.marginal({{0, x}}), 1);
}

TEST(Enumerator, EnumerationIsInterlacedAndComplete) {
  for (const TwoCutSpec& s : small_specs()) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    Integer visited = 0;
    en.for_each([&](const RedDotConfig& c) {
      ++visited;
      ASSERT_EQ(static_cast<long>(c.levels.size()), bd.N + 1);
      for (long m = 0; m < bd.N; ++m) {
        EXPECT_TRUE(interlaces(c.levels[m], c.levels[m + 1]));
        EXPECT_EQ(c.levels[m + 1].size(), c.levels[m].size() + 1);
      }
    });
    EXPECT_EQ(visited, en.count());
  }
}

TEST(Enumerator, OnePointMarginalsAreKernelDiagonal) {
  for (const TwoCutSpec& s : {TwoCutSpec{5, 5, 4, 6, 3, 7, 2}, TwoCutSpec{2, 2, 2, 2, 2, 2, 1}}) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    const TwoCutKernel k(bd);
    long n = 0;
    const auto op = en.one_point();
    for (long m = 0; m < static_cast<long>(op.size()); ++m)
      for (const auto& [x, p] : op[m]) {
        if (!bd.black_in_P(m, x)) continue;
        EXPECT_EQ(p, k(m, x, m, x)) << m << ',' << x;
        ++n;
      }
    EXPECT_GT(n, 10);
  }
}

TEST(Enumerator, TwoPointMarginalsAreKernelMinors) {
  for (const TwoCutSpec& s : small_specs()) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    const TwoCutKernel k(bd);
    long n = 0;
    for (const auto& pp : en.two_point(0, bd.N)) {
      if (!bd.black_in_P(pp.m1, pp.x1) || !bd.black_in_P(pp.m2, pp.x2)) continue;
      EXPECT_EQ(pp.p, red_minor(k, {{pp.m1, pp.x1}, {pp.m2, pp.x2}}))
          << pp.m1 << ',' << pp.x1 << ';' << pp.m2 << ',' << pp.x2;
      ++n;
    }
    EXPECT_GT(n, 50);
  }
}

TEST(Enumerator, MarginalByDirectCounting) {
  const BoundaryData bd = validate(TwoCutSpec{3, 2, 2, 3, 2, 2, 1});
  const TilingEnumerator en(bd);
  std::map<std::pair<long, long>, long> hits;
  en.for_each([&](const RedDotConfig& c) {
    for (long m = 0; m <= bd.N; ++m)
      for (long x : c.levels[m]) ++hits[{m, x}];
  });
  for (const auto& [site, h] : hits)
    EXPECT_EQ(en.marginal({site}), Rational(h) / Rational(en.count()));
}

TEST(Enumerator, BlueCountsMatchOracleOnEveryTiling) {
  for (const TwoCutSpec& s : small_specs()) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    const BlueLineCounts ec = expected_blue_counts(bd);
    const long r = bd.two_cut->r, rho = bd.two_cut->rho, m1 = s.m1;
    // the closed form holds on the strip and up to d lines past it
    for (long tau = 0; tau <= rho + bd.d; ++tau) EXPECT_EQ(ec.at(m1 + tau), tau <= rho ? r : tau - rho + r);
    en.for_each([&](const RedDotConfig& c) {
      const TilingConfig t = tiling_from_levels(bd, c);
      EXPECT_EQ(static_cast<long>(t.tiles.size()), black_area(bd));
      for (long i = 0; i < static_cast<long>(ec.count.size()); ++i)
        ASSERT_EQ(blue_count_on_line(t, ec.first + i), ec.count[i]) << "eta " << ec.first + i;
    });
  }
}

TEST(Enumerator, TwoCutD2BlueCounts) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const BlueLineCounts ec = expected_blue_counts(bd);
  const std::vector<long> expect{1, 2, 3, 3, 2, 1, 1, 1, 2, 3, 3, 3, 2, 1};
  for (long eta = -1; eta <= 12; ++eta) EXPECT_EQ(ec.at(eta), expect[eta + 1]) << eta;
}

TEST(Enumerator, SampleDeterministic) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const TilingEnumerator en(bd);
  EXPECT_EQ(en.sample(42).levels, en.sample(42).levels);
  EXPECT_NE(en.sample(42).levels, en.sample(43).levels);
  const TilingConfig a = tiling_from_levels(bd, en.sample(7)), b = tiling_from_levels(bd, en.sample(7));
  EXPECT_EQ(render_svg(a), render_svg(b));
}

TEST(Enumerator, SamplesAgainstExactMarginals) {
  // 1e4 d=2 instance samples: blue counts on every line, and 1-point frequencies within 4 sigma
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const TilingEnumerator en(bd);
  const BlueLineCounts ec = expected_blue_counts(bd);
  const long samples = 10000;
  std::map<std::pair<long, long>, long> hits;
  for (long s = 0; s < samples; ++s) {
    const RedDotConfig c = en.sample(static_cast<uint64_t>(s));
    const TilingConfig t = tiling_from_levels(bd, c);
    for (long i = 0; i < static_cast<long>(ec.count.size()); ++i)
      ASSERT_EQ(blue_count_on_line(t, ec.first + i), ec.count[i]) << "sample " << s;
    for (long m = 1; m < bd.N; ++m)
      for (long x : c.levels[m]) ++hits[{m, x}];
  }
  long checked = 0;
  const auto op = en.one_point();
  for (long m = 1; m < bd.N; ++m)
    for (const auto& [x, p] : op[m]) {
      const double pd = p.get_d();
      const double sigma = std::sqrt(pd * (1 - pd) / samples);
      const double freq = static_cast<double>(hits[{m, x}]) / samples;
      EXPECT_LE(std::abs(freq - pd), 4 * sigma + 1e-12) << m << ',' << x;
      ++checked;
    }
  EXPECT_GT(checked, 50);
}

TEST(Enumerator, TilingRejectsBadLevels) {
  const BoundaryData bd = validate(TwoCutSpec{2, 2, 2, 2, 2, 2, 1});
  const TilingEnumerator en(bd);
  RedDotConfig c = en.sample(1);
  RedDotConfig short_cfg = c;
  short_cfg.levels.pop_back();
  EXPECT_THROW(tiling_from_levels(bd, short_cfg), Error);
  RedDotConfig broken = c;
  broken.levels[2].back() += 5;
  EXPECT_THROW(tiling_from_levels(bd, broken), Error);
}

TEST(Enumerator, SvgGolden) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const TilingEnumerator en(bd);
  const std::string svg = render_svg(tiling_from_levels(bd, en.sample(42)));
  std::ifstream in(std::string(TILEKIT_TEST_DATA) + "/twocut_d2_seed42.svg", std::ios::binary);
  ASSERT_TRUE(in) << "golden file missing";
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(svg, ss.str());
}

TEST(Enumerator, SvgHasOneShapePerTile) {
  const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  const TilingConfig t = tiling_from_levels(bd, TilingEnumerator(bd).sample(3));
  const std::string svg = render_svg(t);
  long polys = 0;
  for (size_t p = svg.find("<polygon"); p != std::string::npos; p = svg.find("<polygon", p + 1)) ++polys;
  EXPECT_EQ(polys, black_area(bd));
  EXPECT_EQ(static_cast<long>(t.tiles.size()), black_area(bd));
}
