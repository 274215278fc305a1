#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tilekit {

// Dense univariate polynomial, coefficients low degree first.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
  static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }
  static Polynomial monomial(std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = T(1);
    return Polynomial(std::move(c));
  }

  // prod (z - r) over the given roots
  template <class It>
  static Polynomial from_roots(It first, It last) {
    std::vector<T> c{T(1)};
    for (; first != last; ++first) {
      T r(*first);
      c.push_back(T(0));
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
      c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  template <class U>
  U eval(const U& z) const {
    U acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + U(c_[i]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial shifted_up(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<T> c(k, T(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> c(a.c_);
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }

  // quotient and remainder by a monic divisor; exact over any ring
  std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& b) const {
    if (b.is_zero() || b.c_.back() != T(1)) throw std::invalid_argument("divisor must be monic");
    if (degree() < b.degree()) return {Polynomial(), *this};
    std::vector<T> r(c_);
    const std::size_t db = b.c_.size() - 1;
    std::vector<T> q(c_.size() - db, T(0));
    for (std::size_t k = q.size(); k-- > 0;) {
      T lead = r[k + db];
      q[k] = lead;
      if (lead == T(0)) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= lead * b.c_[j];
    }
    r.resize(db);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

}  // namespace tilekit
