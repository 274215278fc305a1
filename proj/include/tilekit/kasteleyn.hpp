#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/kernel_k.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tilekit {

struct Cell {
  long m, x;
  auto operator<=>(const Cell&) const = default;
};

struct KasteleynSystem {
  std::vector<Cell> black;  // lexicographic by (m, x)
  std::vector<Cell> white;
  std::map<Cell, int> black_index, white_index;
  std::vector<std::vector<int>> row_blacks;  // per white row, adjacent black columns

  size_t size() const { return white.size(); }
  std::vector<std::vector<Integer>> dense() const;
  int entry(int white_row, int black_col) const;
};

KasteleynSystem build_kasteleyn(const BoundaryData& bd);

struct ExactInverse {
  Integer det;                                  // det of the white x black matrix
  std::vector<std::vector<Integer>> adj;        // det * inverse, rows black, columns white
  Rational at(int black_row, int white_col) const { return Rational(adj[black_row][white_col]) / Rational(det); }
};

ExactInverse invert_exact(const KasteleynSystem& sys);
Integer kasteleyn_determinant(const KasteleynSystem& sys);
Integer kasteleyn_count(const BoundaryData& bd);

struct InverseReport {
  long entries_checked = 0;
  Rational max_residual = 0;
  bool pass = false;
};

// sum_{white} (-1)^{x-y'+m-n'} K(m,x;n',y') A(white; black') = delta, for all black pairs
InverseReport verify_inverse_identity(const KasteleynSystem& sys, const RedDotKernel& k);

// entrywise comparison of (-1)^{x-y+m-n} K with the exact inverse
InverseReport compare_with_inverse(const KasteleynSystem& sys, const ExactInverse& inv, const RedDotKernel& k);

}  // namespace tilekit
