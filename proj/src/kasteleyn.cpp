#include "tilekit/kasteleyn.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace tilekit {

KasteleynSystem build_kasteleyn(const BoundaryData& bd) {
  KasteleynSystem sys;
  for (long m = 0; m <= bd.N; ++m)
    for (long x = bd.row_lo(m) - 1; x <= bd.row_hi() + 1; ++x) {
      if (bd.black_in_P(m, x)) sys.black.push_back({m, x});
      if (bd.white_in_P(m, x)) sys.white.push_back({m, x});
    }
  if (sys.black.size() != sys.white.size())
    throw Error(ErrorKind::NonTileable, "black and white triangle counts differ");
  for (size_t i = 0; i < sys.black.size(); ++i) sys.black_index[sys.black[i]] = static_cast<int>(i);
  for (size_t i = 0; i < sys.white.size(); ++i) sys.white_index[sys.white[i]] = static_cast<int>(i);
  for (const Cell& w : sys.white) {
    std::vector<int> cols;
    for (Cell b : {Cell{w.m, w.x}, Cell{w.m - 1, w.x}, Cell{w.m - 1, w.x + 1}}) {
      auto it = sys.black_index.find(b);
      if (it != sys.black_index.end()) cols.push_back(it->second);
    }
    std::sort(cols.begin(), cols.end());
    sys.row_blacks.push_back(std::move(cols));
  }
  return sys;
}

int KasteleynSystem::entry(int white_row, int black_col) const {
  const auto& r = row_blacks[white_row];
  return std::binary_search(r.begin(), r.end(), black_col) ? 1 : 0;
}

std::vector<std::vector<Integer>> KasteleynSystem::dense() const {
  std::vector<std::vector<Integer>> a(size(), std::vector<Integer>(size(), Integer(0)));
  for (size_t i = 0; i < size(); ++i)
    for (int j : row_blacks[i]) a[i][j] = 1;
  return a;
}

namespace {

// fraction-free elimination; returns the last pivot (= +-det)
Integer bareiss(std::vector<std::vector<Integer>>& a, size_t ncols_elim, bool full_jordan, int& sign) {
  const size_t n = a.size();
  const size_t width = a.empty() ? 0 : a[0].size();
  Integer prev = 1;
  sign = 1;
  for (size_t k = 0; k < ncols_elim; ++k) {
    // pivot: nonzero entry in column k with the fewest nonzeros in its row
    size_t best = n;
    size_t best_nnz = width + 1;
    for (size_t i = k; i < n; ++i) {
      if (a[i][k] == 0) continue;
      size_t nnz = 0;
      for (size_t j = k; j < width; ++j) nnz += (a[i][j] != 0);
      if (nnz < best_nnz) {
        best = i;
        best_nnz = nnz;
      }
    }
    if (best == n) return 0;
    if (best != k) {
      std::swap(a[best], a[k]);
      sign = -sign;
    }
    const Integer piv = a[k][k];
    for (size_t i = 0; i < n; ++i) {
      if (i == k || (!full_jordan && i < k)) continue;
      const Integer f = a[i][k];
      for (size_t j = (full_jordan ? 0 : k); j < width; ++j) {
        if (j == k) continue;
        Integer v = piv * a[i][j];
        if (f != 0) v -= f * a[k][j];
        if (prev != 1) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][k] = 0;
    }
    prev = piv;
  }
  return prev;
}

}  // namespace

Integer kasteleyn_determinant(const KasteleynSystem& sys) {
  auto a = sys.dense();
  if (a.empty()) return 1;
  int sign = 1;
  Integer last = bareiss(a, a.size(), false, sign);
  return sign > 0 ? last : Integer(-last);
}

ExactInverse invert_exact(const KasteleynSystem& sys) {
  const size_t n = sys.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(2 * n, Integer(0)));
  for (size_t i = 0; i < n; ++i) {
    for (int j : sys.row_blacks[i]) a[i][j] = 1;
    a[i][n + i] = 1;
  }
  int sign = 1;
  Integer last = bareiss(a, n, true, sign);
  if (last == 0) throw Error(ErrorKind::Singular, "Kasteleyn matrix is singular");
  // [last * I | X] with X = last * A^{-1}
  ExactInverse inv;
  inv.det = sign > 0 ? last : Integer(-last);
  inv.adj.assign(n, std::vector<Integer>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.adj[i][j] = sign > 0 ? a[i][n + j] : Integer(-a[i][n + j]);
  return inv;
}

Integer kasteleyn_count(const BoundaryData& bd) {
  Integer d = kasteleyn_determinant(build_kasteleyn(bd));
  return abs(d);
}

InverseReport verify_inverse_identity(const KasteleynSystem& sys, const RedDotKernel& k) {
  const size_t n = sys.size();
  // column lists: for each black, the adjacent white rows
  std::vector<std::vector<int>> col_whites(n);
  for (size_t i = 0; i < n; ++i)
    for (int j : sys.row_blacks[i]) col_whites[j].push_back(static_cast<int>(i));
  std::vector<Rational> worst(n, Rational(0));
  parallel_for(n, [&](size_t bi) {
    const Cell& b = sys.black[bi];
    for (size_t bj = 0; bj < n; ++bj) {
      Rational sum = 0;
      for (int wi : col_whites[bj]) {
        const Cell& w = sys.white[wi];
        sum += Rational(sign_pow(b.x - w.x + b.m - w.m)) * k(b.m, b.x, w.m, w.x);
      }
      Rational res = abs(sum - (bi == bj ? 1 : 0));
      if (res > worst[bi]) worst[bi] = res;
    }
  });
  InverseReport rep;
  rep.entries_checked = static_cast<long>(n * n);
  for (const auto& w : worst)
    if (w > rep.max_residual) rep.max_residual = w;
  rep.pass = rep.max_residual == 0;
  return rep;
}

InverseReport compare_with_inverse(const KasteleynSystem& sys, const ExactInverse& inv, const RedDotKernel& k) {
  const size_t n = sys.size();
  std::vector<Rational> worst(n, Rational(0));
  parallel_for(n, [&](size_t bi) {
    const Cell& b = sys.black[bi];
    for (size_t wi = 0; wi < n; ++wi) {
      const Cell& w = sys.white[wi];
      Rational kv = Rational(sign_pow(b.x - w.x + b.m - w.m)) * k(b.m, b.x, w.m, w.x);
      Rational res = abs(kv - inv.at(static_cast<int>(bi), static_cast<int>(wi)));
      if (res > worst[bi]) worst[bi] = res;
    }
  });
  InverseReport rep;
  rep.entries_checked = static_cast<long>(n * n);
  for (const auto& w : worst)
    if (w > rep.max_residual) rep.max_residual = w;
  rep.pass = rep.max_residual == 0;
  return rep;
}

}  // namespace tilekit
