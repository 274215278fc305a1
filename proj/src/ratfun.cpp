#include "tilekit/ratfun.hpp"
#include "tilekit/errors.hpp"

namespace tilekit {

FactoredRational FactoredRational::from_roots(const std::vector<long>& roots, int exponent) {
  FactoredRational f;
  for (long r : roots) f.mul_linear(Rational(r), exponent);
  return f;
}

FactoredRational FactoredRational::asc_block(const Rational& a, long K) {
  FactoredRational f;
  for (long j = 0; j < K; ++j) f.mul_linear(-a - j, 1);
  return f;
}

FactoredRational& FactoredRational::mul_linear(const Rational& root, int exponent) {
  if (exponent == 0) return *this;
  int& e = factors_[root];
  e += exponent;
  if (e == 0) factors_.erase(root);
  return *this;
}

FactoredRational& FactoredRational::mul_poly(const RatPoly& p) {
  cofactor_ = cofactor_ * p;
  return *this;
}

FactoredRational& FactoredRational::scale(const Rational& s) {
  scalar_ *= s;
  return *this;
}

FactoredRational FactoredRational::operator*(const FactoredRational& o) const {
  FactoredRational f = *this;
  f.scalar_ *= o.scalar_;
  for (const auto& [r, e] : o.factors_) f.mul_linear(r, e);
  f.cofactor_ = f.cofactor_ * o.cofactor_;
  return f;
}

FactoredRational FactoredRational::inverse() const {
  if (cofactor_.degree() != 0) throw std::logic_error("inverse of a polynomial cofactor");
  FactoredRational f;
  f.scalar_ = 1 / (scalar_ * cofactor_.coeff(0));
  for (const auto& [r, e] : factors_) f.factors_[r] = -e;
  return f;
}

int FactoredRational::exponent_at(const Rational& a) const {
  auto it = factors_.find(a);
  return it == factors_.end() ? 0 : it->second;
}

std::vector<Rational> FactoredRational::poles() const {
  std::vector<Rational> out;
  for (const auto& [r, e] : factors_)
    if (e < 0) out.push_back(r);
  return out;
}

std::vector<Rational> FactoredRational::zeros() const {
  std::vector<Rational> out;
  for (const auto& [r, e] : factors_)
    for (int i = 0; i < e; ++i) out.push_back(r);
  return out;
}

long FactoredRational::degree_numerator() const {
  long deg = cofactor_.degree();
  for (const auto& [r, e] : factors_) deg += e;
  return deg;
}

Rational FactoredRational::eval(const Rational& z) const {
  if (exponent_at(z) < 0) throw Error(ErrorKind::PoleOnContour, "evaluation at a pole " + to_string(z));
  Rational out = scalar_ * cofactor_.eval(z);
  for (const auto& [r, e] : factors_) {
    Rational base = z - r;
    if (base == 0) return 0;
    if (e > 0)
      for (int i = 0; i < e; ++i) out *= base;
    else
      for (int i = 0; i < -e; ++i) out /= base;
  }
  return out;
}

namespace {

// truncated product of series (length n)
void mul_series(std::vector<Rational>& acc, const std::vector<Rational>& s) {
  const size_t n = acc.size();
  std::vector<Rational> out(n, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (acc[i] == 0) continue;
    for (size_t j = 0; i + j < n && j < s.size(); ++j) out[i + j] += acc[i] * s[j];
  }
  acc.swap(out);
}

}  // namespace

std::vector<Rational> FactoredRational::local_series(const Rational& a, long count) const {
  // cofactor(a+t) coefficients via Taylor shift
  std::vector<Rational> acc(count, Rational(0));
  {
    RatPoly p = cofactor_;
    Rational fact = 1;
    for (long j = 0; j < count; ++j) {
      if (j > 0) fact *= j;
      acc[j] = scalar_ * p.eval(a) / fact;
      p = p.derivative();
    }
  }
  for (const auto& [r, e] : factors_) {
    if (r == a) continue;
    // (t + c)^e = c^e (1 + t/c)^e
    Rational c = a - r;
    Rational ce = 1;
    if (e > 0)
      for (int i = 0; i < e; ++i) ce *= c;
    else
      for (int i = 0; i < -e; ++i) ce /= c;
    std::vector<Rational> s(count);
    Rational cpow = 1;
    for (long j = 0; j < count; ++j) {
      s[j] = ce * binomial(e, j) / cpow;
      cpow *= c;
    }
    mul_series(acc, s);
  }
  return acc;
}

Rational FactoredRational::residue(const Rational& a) const {
  const int e = exponent_at(a);
  if (e >= 0) return 0;
  const long order = -e;
  if (order == 1 && cofactor_.degree() == 0) {
    Rational out = scalar_ * cofactor_.coeff(0);
    for (const auto& [r, ex] : factors_) {
      if (r == a) continue;
      Rational base = a - r;
      if (ex > 0)
        for (int i = 0; i < ex; ++i) out *= base;
      else
        for (int i = 0; i < -ex; ++i) out /= base;
    }
    return out;
  }
  return local_series(a, order)[order - 1];
}

Contour Contour::around(const std::vector<long>& pts) {
  Contour g;
  for (long p : pts) g.enclosed.insert(Rational(p));
  return g;
}

Contour Contour::around_interval(long lo, long hi) {
  Contour g;
  for (long p = lo; p <= hi; ++p) g.enclosed.insert(Rational(p));
  return g;
}

Contour Contour::everything() {
  Contour g;
  g.all_poles = true;
  return g;
}

Rational residue_sum(const FactoredRational& f, const Contour& g) {
  for (const auto& p : g.excluded) {
    if (g.all_poles && f.exponent_at(p) < 0)
      throw Error(ErrorKind::PoleOnContour, "pole " + to_string(p) + " excluded from a contour around all poles");
    if (g.enclosed.count(p))
      throw Error(ErrorKind::PoleOnContour, "point " + to_string(p) + " both enclosed and excluded");
  }
  Rational total = 0;
  if (g.all_poles) {
    for (const auto& p : f.poles()) total += f.residue(p);
    return total;
  }
  for (const auto& p : g.enclosed) total += f.residue(p);
  return total;
}

Rational s_residue_series(long x, long y, long k) {
  // w^{y-x-1} (1-w)^{-k} = (-1)^k w^{y-x-1} (w-1)^{-k}
  FactoredRational f(Rational(sign_pow(k)));
  f.mul_linear(0, static_cast<int>(y - x - 1)).mul_linear(1, static_cast<int>(-k));
  return f.residue(0);
}

Rational s_residue(long x, long y, long k) {
  if (k >= 1 && x - y + k - 1 >= 0) return Rational(asc_fact(x - y + 1, k - 1)) / Rational(factorial(k - 1));
  return s_residue_series(x, y, k);
}

ModelFunctions build_model_functions(const BoundaryData& bd) {
  if (!bd.two_cut) throw Error(ErrorKind::ConstraintViolation, "model functions need two-cut data");
  const TwoCutData& t = *bd.two_cut;
  ModelFunctions mf;
  mf.N = bd.N;
  mf.P_rho = FactoredRational::from_roots(t.rho_bar.points());
  mf.Q_C = FactoredRational::from_roots(t.C);
  mf.P_Sigma = FactoredRational::from_roots(t.sigma_bar.points());
  mf.Q_L = FactoredRational::from_roots(t.L);
  mf.Q_R = FactoredRational::from_roots(t.R);
  mf.P = mf.P_rho * mf.Q_C * mf.P_Sigma;
  mf.Q = mf.Q_L * mf.Q_C * mf.Q_R;
  mf.h = mf.Q_R * (mf.P_rho * mf.P_Sigma * mf.Q_L).inverse();
  return mf;
}

FactoredRational ModelFunctions::R1(long m, long x) const {
  return FactoredRational::asc_block(Rational(1 - x), N - m - 1) * (Q_R * Q_C).inverse();
}

FactoredRational ModelFunctions::R2_inverse(long n, long y) const {
  return Q_R * Q_C * FactoredRational::asc_block(Rational(-y), N - n + 1).inverse();
}

FactoredRational ModelFunctions::R2h_inverse(long n, long y) const {
  return P * Q_L * FactoredRational::asc_block(Rational(-y), N - n + 1).inverse();
}

}  // namespace tilekit
