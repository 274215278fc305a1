#pragma once

#include "tilekit/exact.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tilekit {

struct TwoCutSpec {
  long n1 = 0, n2 = 0, m1 = 0, m2 = 0, b = 0, c = 0, d = 0;
  bool operator==(const TwoCutSpec&) const = default;
};

struct PolygonSpec {
  std::vector<long> upper_cuts;  // b_1 .. b_{u-1}
  std::vector<long> lower_cuts;  // d_1 .. d_l
  std::vector<long> upper_gaps;  // n_1 .. n_u
  std::vector<long> lower_gaps;  // m_1 .. m_{l+1}
  long b0 = 0, bu = 0, d0 = 0;

  static PolygonSpec from_two_cut(const TwoCutSpec& s);
  // uncut a x b x c hexagon: bottom a, lower-left b, left c
  static PolygonSpec hexagon(long a, long b, long c);
};

struct Interval {
  long lo = 0, hi = -1;  // inclusive, empty when hi < lo
  long size() const { return hi < lo ? 0 : hi - lo + 1; }
  bool contains(long v) const { return lo <= v && v <= hi; }
  std::vector<long> points() const;
};

struct TwoCutData {
  TwoCutSpec spec;
  long r = 0, rho = 0, sigma = 0;
  std::vector<long> L, C, R;  // ascending
  Interval rho_bar, sigma_bar;
};

struct LatticePoint {
  Rational m, x;
  bool operator==(const LatticePoint&) const = default;
};
struct ObliquePoint {
  Rational eta, xi;
  bool operator==(const ObliquePoint&) const = default;
};

ObliquePoint to_oblique(const LatticePoint& p);
LatticePoint from_oblique(const ObliquePoint& q);

struct BoundaryData {
  PolygonSpec polygon;
  std::optional<TwoCutData> two_cut;
  long N = 0, d = 0, S = 0;       // S = sum of lower gaps
  std::vector<long> x, y;         // descending, size d+N
  std::vector<long> lower_starts;  // first integer point of each lower cut
  std::vector<long> upper_starts;  // first integer point of each upper cut
  std::vector<long> R_multi;       // {x_i >= y_d}, ascending

  // interior test in the (M, X) plane; points on edges are not expected
  bool inside(double M, double X) const;
  bool black_in_P(long m, long x) const { return inside(m + 1.0 / 3, x - 1.0 / 6); }
  bool white_in_P(long n, long y) const { return inside(n - 1.0 / 3, y + 1.0 / 6); }
  // blue site with square [x-1/2,x+1/2] x [m,m+1] where m = (eta+xi-1)/2
  bool blue_site_in_P(long eta, long xi) const;

  // integer positions on level m inside the enclosing trapezoid
  long row_lo(long m) const { return -d - m; }
  long row_hi() const { return S - 1; }

  bool in_upper_cut_labels(long v) const;
};

BoundaryData validate(const TwoCutSpec& spec);
BoundaryData validate(const PolygonSpec& spec);

struct ScalingParams {
  double gamma = 2;
  long d = 8;
  long r = 0, rho = 0;
  double beta_bar1 = 0, beta_bar2 = 0, gamma_bar1 = 0, gamma_bar2 = 0;
  double a() const;
  double beta() const { return -beta_bar1 - beta_bar2; }
};

struct ScaledGeometry {
  TwoCutSpec spec;
  long eta0 = 0, xi0 = 0;
  double beta = 0;
  double xi_per_theta = 0;  // (gamma+1)/a * sqrt(d)
  double beta_bar2 = 0;
  // lattice point for (tau, theta): xi rounded to the parity with eta + xi odd
  ObliquePoint map(long tau, double theta) const;
  double theta_of(long xi) const;
};

ScaledGeometry scaled_geometry(const ScalingParams& sp);

struct UnequalCutHexagon {
  long m1p = 0, m2p = 0, n1p = 0, n2p = 0;
  long bL = 0, bR = 0, cL = 0, cR = 0;
  long d = 0, dp = 0;
};

struct ReducedHexagon {
  TwoCutSpec spec;
  long r = 0, rho = 0;            // of the reduced model
  long r_prime = 0, rho_prime = 0;  // of the original model
};

ReducedHexagon reduce_unequal_cuts(const UnequalCutHexagon& h);

long round_half_away(double v);

}  // namespace tilekit
