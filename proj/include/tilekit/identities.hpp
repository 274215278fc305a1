#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/kernel_k.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tilekit {

struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  Rational max_residual = 0;  // largest |lhs - rhs|
  std::string first_failure;
  bool pass() const { return cases > 0 && failures == 0; }
  void record(const Rational& lhs, const Rational& rhs, const std::string& where);
};

// K(m,x;n,y) - K(m,x;n+1,y) + K(m,x;n+1,y-1) = [(m,x) = (n,y)] over black (m,x) of P and every
// (n,y) with n < N on the enclosing rows, one column past each end
SuiteResult three_step_suite(const RedDotKernel& k);

// (K1 + K2)(m,x;n,y) = [x <= y] (n-m)_{y-x}/(y-x)! for (n,y) on the boundary locus
SuiteResult k2k3_suite(const MultiCutKernel& k);

// both summands of the boundary identity cancel, for every locus point and each probe v
SuiteResult boundary_identity_suite(const MultiCutKernel& k, const std::vector<Rational>& probes);
std::vector<Rational> random_probes(size_t count, uint64_t seed);

// the v-integral over x + N by residue enumeration against its closed form, random parameters
SuiteResult petrov_suite(long cases, uint64_t seed);

// sum_a (-1)^a C(k,a) C(k+l+t-a, k+l) = (l+1)_t / t!, 0 <= t <= k <= kmax, 0 <= l <= lmax
SuiteResult combident_suite(long kmax = 12, long lmax = 12);

// sum over the roots z of (z-y)_{N-n+1} of (N-n)! Q(z) / ((z-y)_{N-n+1}' Q'(z) S_z^{(N)}(w)) = 1/S_y^{(n)}(w)
SuiteResult s_identity_suite(const BoundaryData& bd, const std::vector<Rational>& ws);

// Res_{w=0} w^y / S_x^{(k)}(w) = (x-y+1)_{k-1}/(k-1)! for x - y + k - 1 >= 0
SuiteResult asc_fact_identity_suite(long span = 10, long kmax = 12);

// the six suites of the identities command
std::vector<SuiteResult> run_identities(const BoundaryData& bd);

}  // namespace tilekit
