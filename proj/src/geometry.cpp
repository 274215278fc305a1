#include "tilekit/geometry.hpp"
#include "tilekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tilekit {

namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::ConstraintViolation, what); }

void require(bool ok, const std::string& what) {
  if (!ok) violation(what);
}

long sum(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

}  // namespace

std::vector<long> Interval::points() const {
  std::vector<long> out;
  for (long v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

PolygonSpec PolygonSpec::from_two_cut(const TwoCutSpec& s) {
  PolygonSpec p;
  p.upper_cuts = {s.d};
  p.lower_cuts = {s.d};
  p.upper_gaps = {s.n1, s.n2};
  p.lower_gaps = {s.m1, s.m2};
  p.b0 = s.b;
  p.d0 = s.c;
  p.bu = s.c;
  return p;
}

PolygonSpec PolygonSpec::hexagon(long a, long b, long c) {
  PolygonSpec p;
  p.upper_gaps = {a};
  p.lower_gaps = {a};
  p.d0 = b;
  p.bu = b;
  p.b0 = c;
  return p;
}

ObliquePoint to_oblique(const LatticePoint& p) {
  Rational half(1, 2);
  return {p.m + p.x + half, p.m - p.x - half};
}

LatticePoint from_oblique(const ObliquePoint& q) {
  Rational half(1, 2);
  return {(q.eta + q.xi) * half, (q.eta - q.xi - 1) * half};
}

bool BoundaryData::inside(double M, double X) const {
  if (M <= 0 || M >= N) return false;
  if (X <= -d - 0.5 - M || X <= -d - polygon.d0 - 0.5) return false;
  if (X >= S - 0.5 || X >= S + N - polygon.bu - 0.5 - M) return false;
  for (size_t i = 0; i < lower_starts.size(); ++i) {
    double s = static_cast<double>(lower_starts[i]);
    double di = static_cast<double>(polygon.lower_cuts[i]);
    if (M < di && X > s - 0.5 && X + M < s + di - 0.5) return false;
  }
  for (size_t j = 0; j < upper_starts.size(); ++j) {
    double t = static_cast<double>(upper_starts[j]);
    double bj = static_cast<double>(polygon.upper_cuts[j]);
    if (M > N - bj && X + M > t + N - 0.5 && X < t + bj - 0.5) return false;
  }
  return true;
}

bool BoundaryData::blue_site_in_P(long eta, long xi) const {
  if (((eta + xi) % 2 + 2) % 2 != 1) return false;
  const long m = (eta + xi - 1) / 2;  // exact: eta + xi - 1 is even
  const long x = (eta - xi - 1) / 2;
  return black_in_P(m, x) && white_in_P(m + 1, x);
}

bool BoundaryData::in_upper_cut_labels(long v) const {
  for (size_t j = 0; j < upper_starts.size(); ++j)
    if (v >= upper_starts[j] && v < upper_starts[j] + polygon.upper_cuts[j]) return true;
  return false;
}

BoundaryData validate(const PolygonSpec& p) {
  for (long v : p.upper_cuts) require(v > 0, "upper cut sizes must be positive");
  for (long v : p.lower_cuts) require(v > 0, "lower cut sizes must be positive");
  for (long v : p.upper_gaps) require(v > 0, "upper gaps must be positive");
  for (long v : p.lower_gaps) require(v > 0, "lower gaps must be positive");
  require(p.b0 >= 0 && p.bu >= 0 && p.d0 >= 0, "b0, bu, d0 must be nonnegative");
  require(p.upper_gaps.size() == p.upper_cuts.size() + 1, "need one more upper gap than upper cuts");
  require(p.lower_gaps.size() == p.lower_cuts.size() + 1, "need one more lower gap than lower cuts");
  if (sum(p.lower_gaps) != sum(p.upper_gaps))
    throw Error(ErrorKind::NonTileable, "sum of lower gaps must equal sum of upper gaps");

  BoundaryData bd;
  bd.polygon = p;
  bd.d = sum(p.lower_cuts);
  bd.N = p.b0 + p.d0;
  bd.S = sum(p.lower_gaps);
  const long d = bd.d, N = bd.N;
  require(N > 0, "N = b0 + d0 must be positive");
  require(p.b0 + sum(p.upper_cuts) + p.bu == d + N, "b0 + sum(b_i) + bu = d + N");
  require(p.bu <= N, "bu <= N");
  for (long v : p.lower_cuts) require(v <= N, "lower cut taller than the polygon");
  for (long v : p.upper_cuts) require(v <= N, "upper cut taller than the polygon");

  long pos = -d;
  for (size_t i = 0; i < p.lower_cuts.size(); ++i) {
    pos += p.lower_gaps[i];
    bd.lower_starts.push_back(pos);
    pos += p.lower_cuts[i];
  }
  pos = -d - p.d0;
  for (size_t j = 0; j < p.upper_cuts.size(); ++j) {
    pos += p.upper_gaps[j];
    bd.upper_starts.push_back(pos);
    pos += p.upper_cuts[j];
  }

  // level N labels, descending
  for (long v = bd.S - 1; v >= bd.S - p.bu; --v) bd.x.push_back(v);
  for (size_t j = bd.upper_starts.size(); j-- > 0;)
    for (long v = bd.upper_starts[j] + p.upper_cuts[j] - 1; v >= bd.upper_starts[j]; --v) bd.x.push_back(v);
  for (long v = -d - p.d0 - 1; v >= -d - N; --v) bd.x.push_back(v);
  // level 0 labels: cut points then the left staircase
  for (size_t i = bd.lower_starts.size(); i-- > 0;)
    for (long v = bd.lower_starts[i] + p.lower_cuts[i] - 1; v >= bd.lower_starts[i]; --v) bd.y.push_back(v);
  for (long j = 1; j <= N; ++j) bd.y.push_back(-d - j);

  require(static_cast<long>(bd.x.size()) == d + N, "label count mismatch");
  for (long i = 0; i < d + N; ++i) {
    if (bd.x[i] < bd.y[i]) {
      std::ostringstream os;
      os << "x_" << i + 1 << " >= y_" << i + 1 << " fails (" << bd.x[i] << " < " << bd.y[i] << ")";
      violation(os.str());
    }
  }
  if (d > 0) {
    long yd = bd.y[d - 1];
    require(!bd.in_upper_cut_labels(yd), "y_d must not be an upper-cut label");
    for (auto it = bd.x.rbegin(); it != bd.x.rend(); ++it)
      if (*it >= yd) bd.R_multi.push_back(*it);
  }
  return bd;
}

BoundaryData validate(const TwoCutSpec& s) {
  require(s.n1 > 0 && s.n2 > 0 && s.m1 > 0 && s.m2 > 0 && s.b > 0 && s.c > 0 && s.d > 0,
          "two-cut fields must be positive integers");
  require(s.m1 + s.m2 == s.n1 + s.n2, "m1 + m2 = n1 + n2");
  const long r = s.b - s.d;
  const long rho = s.n1 - s.m1 + s.b - s.d;
  const long sigma = s.m1 - s.n1 + s.c - s.d;
  require(r >= 0, "r = b - d >= 0");
  require(rho >= 0, "rho = n1 - m1 + b - d >= 0");
  require(sigma >= 0, "Sigma = m1 - n1 + c - d >= 0");
  require(std::max(-s.n2, -s.m1) < s.d - s.b, "max(-n2, -m1) < d - b");
  require(s.d - s.b <= s.m2 - s.n2, "d - b <= m2 - n2");
  require(s.n1 - s.m1 <= s.c - s.d, "n1 - m1 <= c - d");
  require(s.c - s.d < s.m2, "c - d < m2");
  // equality here means the vertical strip touches the lower-left corner; accepted
  require(s.c - s.d <= s.n1, "c - d <= n1");

  BoundaryData bd = validate(PolygonSpec::from_two_cut(s));
  TwoCutData t;
  t.spec = s;
  t.r = r;
  t.rho = rho;
  t.sigma = sigma;
  const long d = s.d, N = s.b + s.c;
  for (long v = -d - N; v <= -d - s.c - 1; ++v) t.L.push_back(v);
  for (long v = s.n1 - s.c - d; v <= s.n1 - s.c - 1; ++v) t.C.push_back(v);
  for (long v = s.m1 + s.m2 - s.c; v <= s.m1 + s.m2 - 1; ++v) t.R.push_back(v);
  t.rho_bar = {s.m1 - s.b - s.c, s.n1 - s.c - d - 1};
  t.sigma_bar = {s.n1 - s.c, s.m1 - d - 1};

  require(static_cast<long>(t.L.size()) == s.b && static_cast<long>(t.C.size()) == d &&
              static_cast<long>(t.R.size()) == s.c,
          "|L| = b, |C| = d, |R| = c");
  const long yd = bd.y[d - 1];
  require(bd.x[s.c] < yd && yd < bd.x[s.c - 1], "x_{c+1} < y_d < x_c");
  require(t.L.back() < t.rho_bar.lo && t.rho_bar.hi < t.C.front(), "L < rho_bar < C");
  require(t.C.back() < t.sigma_bar.lo && t.sigma_bar.hi < t.R.front(), "C < Sigma_bar < R");
  require(t.rho_bar.size() == rho && t.sigma_bar.size() == sigma, "strip trace widths");
  bd.two_cut = t;
  return bd;
}

long round_half_away(double v) { return static_cast<long>(std::round(v)); }

double ScalingParams::a() const { return 2.0 * std::sqrt(gamma / (gamma - 1.0)); }

ObliquePoint ScaledGeometry::map(long tau, double theta) const {
  const long eta = eta0 + tau;
  const double target = static_cast<double>(xi0) + xi_per_theta * (theta + beta_bar2);
  long lo = static_cast<long>(std::floor(target));
  if (((eta + lo) % 2 + 2) % 2 != 1) --lo;
  const long hi = lo + 2;
  const long xi = (target - lo <= hi - target) ? lo : hi;
  return {Rational(eta), Rational(xi)};
}

double ScaledGeometry::theta_of(long xi) const {
  return static_cast<double>(xi - xi0) / xi_per_theta - beta_bar2;
}

ScaledGeometry scaled_geometry(const ScalingParams& sp) {
  if (!(sp.gamma > 1.0 && sp.gamma < 3.0))
    throw Error(ErrorKind::GammaOutOfRange, "gamma must lie in (1, 3)");
  require(sp.d > 0 && sp.r >= 0 && sp.rho >= 0, "d > 0, r >= 0, rho >= 0");
  const double a = sp.a();
  const double g = sp.gamma;
  const double sd = std::sqrt(static_cast<double>(sp.d));
  TwoCutSpec s;
  s.d = sp.d;
  s.b = sp.d + sp.r;
  s.c = round_half_away(g * sp.d);
  s.m1 = round_half_away((g + 1) / (g - 1) * (sp.d + a / 2 * sp.beta_bar1 * sd + sp.gamma_bar1));
  s.m2 = round_half_away((g + 1) / (g - 1) * (sp.d + a / 2 * sp.beta_bar2 * sd + sp.gamma_bar2));
  s.n1 = s.m1 + (sp.rho - sp.r);
  s.n2 = s.m2 - (sp.rho - sp.r);
  // n1 + n2 = m1 + m2 holds by construction, so no repair step is needed
  ScaledGeometry out;
  out.spec = s;
  const long N = s.b + s.c;
  out.eta0 = s.m1;
  out.xi0 = N - s.m1 - 1;
  out.beta = sp.beta();
  out.xi_per_theta = (g + 1) / a * sd;
  out.beta_bar2 = sp.beta_bar2;
  return out;
}

ReducedHexagon reduce_unequal_cuts(const UnequalCutHexagon& h) {
  require(h.m1p + h.m2p == h.n1p + h.n2p, "m'1 + m'2 = n'1 + n'2");
  require(h.bL + h.cL == h.bR + h.cR, "b_L + c_L = b_R + c_R");
  require(h.cL + h.d == h.cR + h.dp, "c_L + d = c_R + d'");
  require(h.bL - h.d == h.bR - h.dp, "b_L - d = b_R - d'");
  require(h.bL - h.d >= 0, "r' = b_L - d >= 0");
  const long delta = h.dp - h.d;
  ReducedHexagon out;
  out.spec = {h.n1p - delta, h.n2p + delta, h.m1p, h.m2p, h.bL + delta, h.cL - delta, h.d};
  out.r_prime = h.bL - h.d;
  out.rho_prime = h.n1p - h.m1p + out.r_prime;
  BoundaryData bd = validate(out.spec);
  out.r = bd.two_cut->r;
  out.rho = bd.two_cut->rho;
  return out;
}

}  // namespace tilekit
