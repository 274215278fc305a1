#include "tilekit/kernel_l.hpp"

#include <algorithm>
#include <iomanip>

namespace tilekit {

BlueDot blue_dot_at(long m, long x) { return {m + x + 1, m - x}; }

std::vector<BlueDot> blue_sites(const BoundaryData& bd) {
  std::vector<BlueDot> out;
  for (long m = 0; m < bd.N; ++m)
    for (long x = bd.row_lo(m); x <= bd.row_hi(); ++x)
      if (bd.black_in_P(m, x) && bd.white_in_P(m + 1, x)) out.push_back(blue_dot_at(m, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlueDot> blue_sites_on_line(const BoundaryData& bd, long eta) {
  std::vector<BlueDot> out;
  for (long m = 0; m < bd.N; ++m) {
    const long x = eta - m - 1;
    if (bd.black_in_P(m, x) && bd.white_in_P(m + 1, x)) out.push_back(blue_dot_at(m, x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational LKernel::operator()(const BlueDot& p, const BlueDot& q) const {
  return -k_(p.m(), p.x(), q.m() + 1, q.x());
}

Rational LKernel::edge_kernel(const BlueDot& p, const BlueDot& q) const {
  Rational v = (*this)(p, q);
  if ((p.eta - q.eta) % 2 != 0) v = -v;
  return v;
}

Rational LKernel::minor(const std::vector<BlueDot>& pts) const {
  std::vector<std::vector<Rational>> a(pts.size(), std::vector<Rational>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) a[i][j] = (*this)(pts[i], pts[j]);
  return determinant(a);
}

Rational line_counts_expectation(const LKernel& l, long eta) {
  Rational s = 0;
  for (const BlueDot& p : blue_sites_on_line(l.boundary(), eta)) s += l(p, p);
  return s;
}

void write_l_kernel_csv(std::ostream& os, const LKernel& l, const std::vector<BlueDot>& src,
                        const std::vector<BlueDot>& dst, bool exact) {
  os << (exact ? "eta1,xi1,eta2,xi2,value_num,value_den\n" : "eta1,xi1,eta2,xi2,value_float\n");
  for (const BlueDot& p : src)
    for (const BlueDot& q : dst) {
      Rational v = l(p, q);
      os << p.eta << ',' << p.xi << ',' << q.eta << ',' << q.xi << ',';
      if (exact)
        os << v.get_num().get_str() << ',' << v.get_den().get_str() << '\n';
      else
        os << std::setprecision(17) << v.get_d() << '\n';
    }
}

}  // namespace tilekit
