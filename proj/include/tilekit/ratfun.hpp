#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/polynomial.hpp"

#include <map>
#include <set>
#include <vector>

namespace tilekit {

using RatPoly = Polynomial<Rational>;
using IntPoly = Polynomial<Integer>;

// scalar * cofactor(z) * prod (z - a)^e
class FactoredRational {
 public:
  FactoredRational() = default;
  explicit FactoredRational(const Rational& scalar) : scalar_(scalar) {}

  static FactoredRational from_roots(const std::vector<long>& roots, int exponent = 1);
  // (z + a)_K = prod_{j<K} (z - (-a - j))
  static FactoredRational asc_block(const Rational& a, long K);

  FactoredRational& mul_linear(const Rational& root, int exponent);
  FactoredRational& mul_poly(const RatPoly& p);
  FactoredRational& scale(const Rational& s);
  FactoredRational operator*(const FactoredRational& o) const;
  // reciprocal; only for objects without a polynomial cofactor
  FactoredRational inverse() const;

  const Rational& scalar() const { return scalar_; }
  const std::map<Rational, int>& factors() const { return factors_; }
  int exponent_at(const Rational& a) const;

  // finite poles (net negative exponent), ascending
  std::vector<Rational> poles() const;
  // roots with positive net exponent, with multiplicity
  std::vector<Rational> zeros() const;
  long degree_numerator() const;

  Rational eval(const Rational& z) const;
  // Laurent coefficient of (z-a)^{-1}; handles poles of any order
  Rational residue(const Rational& a) const;
  // first `count` Taylor coefficients of f(a + t) * (t)^{order}, order = pole order at a
  std::vector<Rational> local_series(const Rational& a, long count) const;

 private:
  Rational scalar_ = 1;
  std::map<Rational, int> factors_;
  RatPoly cofactor_ = RatPoly::constant(1);
};

// Extensional contour: the set of enclosed points, or every finite pole.
struct Contour {
  std::set<Rational> enclosed;
  std::set<Rational> excluded;  // points declared to lie outside
  bool all_poles = false;

  static Contour around(const std::vector<long>& pts);
  static Contour around_interval(long lo, long hi);
  static Contour everything();
};

Rational residue_sum(const FactoredRational& f, const Contour& g);

// Res_{w=0} w^y / S_x^{(k)}(w), S_x^{(k)}(w) = w^{x+1} (1-w)^k
Rational s_residue(long x, long y, long k);
Rational s_residue_series(long x, long y, long k);

struct ModelFunctions {
  FactoredRational P, Q, P_rho, Q_C, P_Sigma, Q_L, Q_R, h;
  long N = 0;
  // (v-x+1)_{N-m-1} / (Q_R Q_C)(v)
  FactoredRational R1(long m, long x) const;
  // 1/R2(z) = Q_R Q_C (z) / (z-y)_{N-n+1}
  FactoredRational R2_inverse(long n, long y) const;
  // 1/(R2 h)(z) = P Q_L (z) / (z-y)_{N-n+1}
  FactoredRational R2h_inverse(long n, long y) const;
};

ModelFunctions build_model_functions(const BoundaryData& bd);

}  // namespace tilekit
