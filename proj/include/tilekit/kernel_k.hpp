#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/ratfun.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <utility>
#include <vector>

namespace tilekit {

enum class OmegaVariant { plain, plus, minus };

// Which points of the Gamma_{-tau} range are summed when they coincide with L.
enum class GammaTauPolicy { include_L, exclude_L };

struct TupleWeight {
  std::vector<long> u;  // increasing
  Rational w;
};

// Common interface of the red-dot kernels.
class RedDotKernel {
 public:
  virtual ~RedDotKernel() = default;
  virtual Rational operator()(long m, long x, long n, long y) const = 0;
  virtual const BoundaryData& boundary() const = 0;
};

Rational k0_term(long m, long x, long n, long y);

// Kernel of the two-cut model: r+2 fold integrals, evaluated as residue sums.
class TwoCutKernel : public RedDotKernel {
 public:
  explicit TwoCutKernel(const BoundaryData& bd, GammaTauPolicy policy = GammaTauPolicy::include_L);

  Rational operator()(long m, long x, long n, long y) const override;
  const BoundaryData& boundary() const override { return bd_; }

  // same value through the generic residue engine, no polynomial-part shortcut;
  // `explicit_poles` replaces the contour around all poles by {v} + roots of (z-y)_{N-n+1}
  Rational reference(long m, long x, long n, long y, bool explicit_poles = false) const;

  Rational omega(long k, const Rational& v, const Rational& z, OmegaVariant variant) const;
  const Rational& omega_r00() const { return om00_; }
  const std::vector<Rational>& h_residues() const { return wL_; }
  std::vector<long> gamma_tau(long n, long y) const;
  long r() const { return r_; }

 private:
  std::vector<TupleWeight> tuples(long k) const;
  const std::vector<Rational>& a_vec(long m, long x) const;
  const std::vector<Rational>& f_vec(long n, long y) const;
  Rational omega_minus_at(const std::vector<TupleWeight>& ts, const Rational& v, const Rational& z) const;

  BoundaryData bd_;
  ModelFunctions mf_;
  GammaTauPolicy policy_;
  long N_, r_, m1_, y1_;
  std::vector<long> L_;
  std::vector<Rational> wL_;  // Res_u h for u in L
  std::vector<TupleWeight> tr_, tr1_;
  Rational om00_;
  std::vector<long> vstar_;  // C and R, ascending
  IntPoly qrc_;
  std::vector<Rational> qrc_prime_;  // (Q_R Q_C)'(v) on vstar
  std::vector<RatPoly> omega_poly_;   // Omega_r(v, .) on vstar

  mutable std::mutex mu_;
  mutable std::map<std::pair<long, long>, std::vector<Rational>> a_cache_, f_cache_;
};

// Kernel of the multi-cut model (d+2 fold integrals), valid for d >= 0.
class MultiCutKernel : public RedDotKernel {
 public:
  explicit MultiCutKernel(const BoundaryData& bd);

  Rational operator()(long m, long x, long n, long y) const override;
  const BoundaryData& boundary() const override { return bd_; }
  // K1 + K2 only
  Rational k12(long m, long x, long n, long y) const;
  const Rational& omega_R00() const { return om00_; }

  Rational omega_R(const Rational& v, const Rational& z) const;
  // d * Res_{w=0} Omega~(v,w) / S_y^{(n)}(w)
  Rational omega_tilde_term(long n, long y, const Rational& v) const;
  // z-integral over the roots of (z-y)_{N-n+1}, residue engine
  Rational boundary_z_term(long n, long y, const Rational& v) const;

 private:
  const std::vector<Rational>& a_vec(long m, long x) const;
  const std::vector<Rational>& f_vec(long n, long y) const;
  Rational g_beta(size_t beta, const Rational& v) const;

  BoundaryData bd_;
  long N_, d_;
  std::vector<long> roots_;  // all x_i ascending
  std::vector<Rational> q_prime_;
  std::map<long, Rational> q_prime_at_;
  IntPoly q_;
  std::vector<long> ycut_;  // y_1 .. y_d
  std::vector<TupleWeight> td_;  // d-tuples of R with weights
  std::vector<RatPoly> qt_;      // Q / prod_{u in T} (z-u) per tuple
  struct CofTuple {
    std::vector<long> u;
    Rational c;                      // (d-1)! prod 1/Q'(u) * Delta_{d-1}(u)
    std::vector<Rational> cof;       // cofactors along the first row
  };
  std::vector<CofTuple> td1_;
  Rational om00_;
  std::vector<RatPoly> h_;                     // Q(z) Omega_R(v,z) per root v
  std::vector<std::vector<Rational>> g_;       // G_beta(v) per root v

  mutable std::mutex mu_;
  mutable std::map<std::pair<long, long>, std::vector<Rational>> a_cache_, f_cache_;
};

// Red-dot points (n,y) near the upper boundary where the boundary identity applies.
std::vector<std::pair<long, long>> boundary_locus(const BoundaryData& bd);

struct BoundaryVerdict {
  Rational z_term, w_term, residual;
  bool pass = false;
};

BoundaryVerdict boundary_identity_check(const MultiCutKernel& k, long n, long y, const Rational& v);

void write_kernel_csv(std::ostream& os, const RedDotKernel& k,
                      const std::vector<std::pair<long, long>>& src,
                      const std::vector<std::pair<long, long>>& dst, bool exact);

template <class F>
void for_each_combination(size_t n, size_t k, F&& f) {
  if (k > n) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace tilekit
