#include "tilekit/exact.hpp"
#include "tilekit/errors.hpp"

#include <utility>

namespace tilekit {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::NonTileable: return "NonTileable";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::PoleOnContour: return "PoleOnContour";
    case ErrorKind::DegenerateNormalizer: return "DegenerateNormalizer";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::QuadratureDiverged: return "QuadratureDiverged";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Error";
}

Rational asc_fact(const Rational& k, long n) {
  Rational out = 1;
  for (long i = 0; i < n; ++i) {
    out *= k + i;
    if (out == 0) break;
  }
  return out;
}

Integer asc_fact(long k, long n) {
  Integer out = 1;
  for (long i = 0; i < n; ++i) {
    if (k + i == 0) return 0;
    out *= k + i;
  }
  return out;
}

Integer factorial(long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return out;
}

Rational binomial(long a, long j) {
  if (j < 0) return 0;
  Rational num = 1;
  for (long i = 0; i < j; ++i) num *= a - i;
  num /= Rational(factorial(j));
  return num;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational vandermonde(const std::vector<Rational>& u) {
  Rational out = 1;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) out *= u[i] - u[j];
  return out;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const size_t n = a.size();
  Rational det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

}  // namespace tilekit
