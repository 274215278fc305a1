#include "tilekit/enumerator.hpp"
#include "tilekit/kasteleyn.hpp"
#include "tilekit/kernel_l.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tilekit;

namespace {

const BoundaryData& twocut_d2() {
  static const BoundaryData bd = validate(TwoCutSpec{5, 5, 4, 6, 3, 7, 2});
  return bd;
}

}  // namespace

TEST(KernelL, BlueDotCoordinates) {
  const BlueDot p = blue_dot_at(3, -1);
  EXPECT_EQ(p.eta, 3);
  EXPECT_EQ(p.xi, 4);
  EXPECT_EQ(p.m(), 3);
  EXPECT_EQ(p.x(), -1);
  for (const BlueDot& q : blue_sites(twocut_d2())) {
    EXPECT_EQ(((q.eta + q.xi) % 2 + 2) % 2, 1);
    EXPECT_EQ(blue_dot_at(q.m(), q.x()), q);
  }
}

TEST(KernelL, OnePointEqualsBlueMarginal) {
  for (const TwoCutSpec& s : {TwoCutSpec{5, 5, 4, 6, 3, 7, 2}, TwoCutSpec{2, 2, 2, 2, 2, 2, 1}}) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    const TwoCutKernel k(bd);
    const LKernel l(k);
    for (const BlueDot& p : blue_sites(bd)) {
      const Rational v = l(p, p);
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 1);
      EXPECT_EQ(v, en.blue_marginal({{p.m(), p.x()}})) << p.eta << ',' << p.xi;
    }
  }
}

TEST(KernelL, TwoPointMinorsEqualBlueMarginals) {
  for (const TwoCutSpec& s : {TwoCutSpec{2, 2, 2, 2, 2, 2, 1}, TwoCutSpec{3, 2, 2, 3, 2, 2, 1}}) {
    const BoundaryData bd = validate(s);
    const TilingEnumerator en(bd);
    const TwoCutKernel k(bd);
    const LKernel l(k);
    const auto sites = blue_sites(bd);
    long n = 0;
    for (size_t i = 0; i < sites.size(); ++i)
      for (size_t j = i + 1; j < sites.size(); ++j) {
        const BlueDot& p = sites[i];
        const BlueDot& q = sites[j];
        EXPECT_EQ(l.minor({p, q}), en.blue_marginal({{p.m(), p.x()}, {q.m(), q.x()}}));
        ++n;
      }
    EXPECT_GT(n, 20);
  }
}

TEST(KernelL, ThreePointMinorsOnMini) {
  const BoundaryData bd = validate(TwoCutSpec{2, 2, 2, 2, 2, 2, 1});
  const TilingEnumerator en(bd);
  const TwoCutKernel k(bd);
  const LKernel l(k);
  const auto sites = blue_sites(bd);
  for (size_t i = 0; i < sites.size(); ++i)
    for (size_t j = i + 1; j < sites.size(); ++j)
      for (size_t h = j + 1; h < sites.size(); ++h)
        EXPECT_EQ(l.minor({sites[i], sites[j], sites[h]}),
                  en.blue_marginal({{sites[i].m(), sites[i].x()}, {sites[j].m(), sites[j].x()},
                                    {sites[h].m(), sites[h].x()}}));
}

TEST(KernelL, EdgeKernelIsKasteleynInverse) {
  const BoundaryData& bd = twocut_d2();
  const KasteleynSystem sys = build_kasteleyn(bd);
  const ExactInverse inv = invert_exact(sys);
  const TwoCutKernel k(bd);
  const LKernel l(k);
  const auto sites = blue_sites(bd);
  for (const BlueDot& p : sites)
    for (const BlueDot& q : sites) {
      const int b = sys.black_index.at({p.m(), p.x()});
      const int w = sys.white_index.at({q.m() + 1, q.x()});
      EXPECT_EQ(l.edge_kernel(p, q), inv.at(b, w));
    }
}

TEST(KernelL, LineCountExpectations) {
  const BoundaryData& bd = twocut_d2();
  const TwoCutKernel k(bd);
  const LKernel l(k);
  const long m1 = bd.two_cut->spec.m1, rho = bd.two_cut->rho;
  for (long eta = m1; eta <= m1 + rho; ++eta) EXPECT_EQ(line_counts_expectation(l, eta), 1);
  EXPECT_EQ(line_counts_expectation(l, m1 + rho + 1), 2);
  EXPECT_EQ(line_counts_expectation(l, -50), 0);
  EXPECT_EQ(line_counts_expectation(l, 500), 0);
  const BlueLineCounts ec = expected_blue_counts(bd);
  for (long i = 0; i < static_cast<long>(ec.count.size()); ++i)
    EXPECT_EQ(line_counts_expectation(l, ec.first + i), ec.count[i]);
}

TEST(KernelL, CsvFormats) {
  const BoundaryData bd = validate(TwoCutSpec{2, 2, 2, 2, 2, 2, 1});
  const TwoCutKernel k(bd);
  const LKernel l(k);
  const auto sites = blue_sites(bd);
  std::ostringstream exact, flt;
  write_l_kernel_csv(exact, l, sites, sites, true);
  write_l_kernel_csv(flt, l, sites, sites, false);
  EXPECT_EQ(exact.str().rfind("eta1,xi1,eta2,xi2,value_num,value_den\n", 0), 0u);
  EXPECT_EQ(flt.str().rfind("eta1,xi1,eta2,xi2,value_float\n", 0), 0u);
  long lines = 0;
  for (char c : exact.str()) lines += c == '\n';
  EXPECT_EQ(lines, static_cast<long>(sites.size() * sites.size()) + 1);
}
