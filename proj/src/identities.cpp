#include "tilekit/identities.hpp"
#include "tilekit/enumerator.hpp"
#include "tilekit/ratfun.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tilekit {

void SuiteResult::record(const Rational& lhs, const Rational& rhs, const std::string& where) {
  ++cases;
  Rational diff = lhs - rhs;
  if (diff < 0) diff = -diff;
  if (diff > max_residual) max_residual = diff;
  if (diff != 0) {
    if (failures == 0) first_failure = where + ": " + to_string(lhs) + " != " + to_string(rhs);
    ++failures;
  }
}

namespace {

std::string at(std::initializer_list<long> v) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (long x : v) {
    if (!first) os << ',';
    first = false;
    os << x;
  }
  os << ')';
  return os.str();
}

std::vector<std::pair<long, long>> black_cells(const BoundaryData& bd) {
  std::vector<std::pair<long, long>> out;
  for (long m = 0; m <= bd.N; ++m)
    for (long x = bd.row_lo(m); x <= bd.row_hi(); ++x)
      if (bd.black_in_P(m, x)) out.emplace_back(m, x);
  return out;
}

Rational s_inverse(long x, long k, const Rational& w) {
  // 1 / S_x^{(k)}(w) = w^{-x-1} (1-w)^{-k}
  Rational out = 1;
  const Rational one_minus = 1 - w;
  for (long i = 0; i < k; ++i) out /= one_minus;
  const long e = x + 1;
  for (long i = 0; i < std::abs(e); ++i) {
    if (e > 0) out /= w;
    else out *= w;
  }
  return out;
}

}  // namespace

SuiteResult three_step_suite(const RedDotKernel& k) {
  SuiteResult res;
  res.name = "three_step";
  const BoundaryData& bd = k.boundary();
  const auto blacks = black_cells(bd);
  for (long n = 0; n < bd.N; ++n)
    for (long y = bd.row_lo(n) - 1; y <= bd.row_hi() + 1; ++y) {
      for (const auto& [m, x] : blacks) {
        const Rational lhs = k(m, x, n, y) - k(m, x, n + 1, y) + k(m, x, n + 1, y - 1);
        res.record(lhs, (m == n && x == y) ? 1 : 0, at({m, x, n, y}));
      }
    }
  return res;
}

SuiteResult k2k3_suite(const MultiCutKernel& k) {
  SuiteResult res;
  res.name = "k2k3";
  const BoundaryData& bd = k.boundary();
  const auto blacks = black_cells(bd);
  for (const auto& [n, y] : boundary_locus(bd))
    for (const auto& [m, x] : blacks) {
      const Rational rhs = x <= y ? asc_fact(Rational(n - m), y - x) / Rational(factorial(y - x)) : Rational(0);
      res.record(k.k12(m, x, n, y), rhs, at({m, x, n, y}));
    }
  return res;
}

std::vector<Rational> random_probes(size_t count, uint64_t seed) {
  std::mt19937_64 gen(splitmix64(seed));
  std::uniform_int_distribution<long> num(-400, 400), den(2, 9);
  std::vector<Rational> out;
  while (out.size() < count) {
    Rational v(num(gen), den(gen));
    v.canonicalize();
    if (v.get_den() != 1) out.push_back(v);  // never an integer, so off every pole set
  }
  return out;
}

SuiteResult boundary_identity_suite(const MultiCutKernel& k, const std::vector<Rational>& probes) {
  SuiteResult res;
  res.name = "boundary_identity";
  for (const auto& [n, y] : boundary_locus(k.boundary()))
    for (const Rational& v : probes) {
      const BoundaryVerdict bv = boundary_identity_check(k, n, y, v);
      res.record(bv.z_term + bv.w_term, 0, at({n, y}) + " v=" + to_string(v));
    }
  return res;
}

SuiteResult petrov_suite(long cases, uint64_t seed) {
  SuiteResult res;
  res.name = "petrov_integral";
  std::mt19937_64 gen(splitmix64(seed));
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
  while (res.cases < cases) {
    const long N = pick(2, 12);
    const long m = pick(0, N - 2);
    const long n = pick(m + 1, N);
    const long x = pick(-6, 6), y = pick(-6, 6);
    // (v-x+1)_{N-m-1} / (v-y)_{N-n+1}, poles at y-N+n .. y; the contour takes those >= x
    FactoredRational f = FactoredRational::asc_block(Rational(1 - x), N - m - 1) *
                         FactoredRational::asc_block(Rational(-y), N - n + 1).inverse();
    f.scale(Rational(factorial(N - n)) / Rational(factorial(N - m - 1)));
    const Rational lhs = residue_sum(f, Contour::around_interval(std::max(x, y - N + n), y));
    const Rational rhs = x <= y ? asc_fact(Rational(n - m), y - x) / Rational(factorial(y - x)) : Rational(0);
    res.record(lhs, rhs, "N=" + std::to_string(N) + " " + at({m, x, n, y}));
  }
  return res;
}

SuiteResult combident_suite(long kmax, long lmax) {
  SuiteResult res;
  res.name = "combinatorial_identity";
  for (long k = 0; k <= kmax; ++k)
    for (long l = 0; l <= lmax; ++l)
      for (long t = 0; t <= k; ++t) {
        Rational lhs = 0;
        for (long a = 0; a <= t; ++a) lhs += sign_pow(a) * binomial(k, a) * binomial(k + l + t - a, k + l);
        res.record(lhs, asc_fact(Rational(l + 1), t) / Rational(factorial(t)), at({k, l, t}));
      }
  return res;
}

SuiteResult s_identity_suite(const BoundaryData& bd, const std::vector<Rational>& ws) {
  SuiteResult res;
  res.name = "s_identity";
  const long N = bd.N;
  const FactoredRational Q = FactoredRational::from_roots(bd.x);
  IntPoly qp = IntPoly::from_roots(bd.x.begin(), bd.x.end());
  const IntPoly dq = qp.derivative();
  for (const auto& [n, y] : boundary_locus(bd)) {
    // (N-n)! Q(z) / (z-y)_{N-n+1}; the common roots cancel in the factored form
    FactoredRational f = Q * FactoredRational::asc_block(Rational(-y), N - n + 1).inverse();
    f.scale(Rational(factorial(N - n)));
    for (const Rational& w : ws) {
      Rational lhs = 0;
      for (long z = y - N + n; z <= y; ++z)
        lhs += f.eval(Rational(z)) / Rational(dq.eval<Integer>(Integer(z))) * s_inverse(z, N, w);
      res.record(lhs, s_inverse(y, n, w), at({n, y}) + " w=" + to_string(w));
    }
  }
  return res;
}

SuiteResult asc_fact_identity_suite(long span, long kmax) {
  SuiteResult res;
  res.name = "asc_fact_identity";
  for (long dxy = -span; dxy <= span; ++dxy)
    for (long k = 1; k <= kmax; ++k) {
      if (dxy + k - 1 < 0) continue;
      const long x = dxy, y = 0;
      res.record(s_residue_series(x, y, k), asc_fact(Rational(x - y + 1), k - 1) / Rational(factorial(k - 1)),
                 at({x, y, k}));
    }
  return res;
}

std::vector<SuiteResult> run_identities(const BoundaryData& bd) {
  std::vector<SuiteResult> out;
  const MultiCutKernel mk(bd);
  if (bd.two_cut) {
    const TwoCutKernel tk(bd);
    out.push_back(three_step_suite(tk));
  } else {
    out.push_back(three_step_suite(mk));
  }
  out.push_back(k2k3_suite(mk));
  out.push_back(boundary_identity_suite(mk, random_probes(3, 7)));
  out.push_back(petrov_suite(200, 11));
  out.push_back(combident_suite());
  out.push_back(s_identity_suite(bd, {Rational(1, 3), Rational(-2, 5)}));
  return out;
}

}  // namespace tilekit
