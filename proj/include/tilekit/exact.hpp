#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tilekit {

using Integer = mpz_class;
using Rational = mpq_class;

// (k)_n = k (k+1) ... (k+n-1), (k)_0 = 1
Rational asc_fact(const Rational& k, long n);
Integer asc_fact(long k, long n);

Integer factorial(long n);

// generalized binomial C(a, j) for integer a of any sign
Rational binomial(long a, long j);

std::string to_string(const Rational& q);

// value of prod_{i<j} (u_i - u_j)
Rational vandermonde(const std::vector<Rational>& u);

// determinant of a dense square rational matrix (Gaussian elimination)
Rational determinant(std::vector<std::vector<Rational>> a);

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace tilekit
