#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/kernel_k.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace tilekit {

// Blue dot in oblique coordinates; eta + xi is odd.
struct BlueDot {
  long eta = 0, xi = 0;
  // lower edge of the blue square: black (m, x), white (m + 1, x)
  long m() const { return (eta + xi - 1) / 2; }
  long x() const { return (eta - xi - 1) / 2; }
  auto operator<=>(const BlueDot&) const = default;
};

BlueDot blue_dot_at(long m, long x);

// blue sites of P, sorted by (eta, xi)
std::vector<BlueDot> blue_sites(const BoundaryData& bd);
std::vector<BlueDot> blue_sites_on_line(const BoundaryData& bd, long eta);

class LKernel {
 public:
  explicit LKernel(const RedDotKernel& k) : k_(k) {}

  // L(eta,xi; eta',xi') = -K(m - 1/2, x; m' + 1/2, x') with the half-integer levels of the blue dots
  Rational operator()(const BlueDot& p, const BlueDot& q) const;
  // edge kernel before the (-1)^{eta - eta'} conjugation
  Rational edge_kernel(const BlueDot& p, const BlueDot& q) const;
  Rational minor(const std::vector<BlueDot>& pts) const;

  const BoundaryData& boundary() const { return k_.boundary(); }

 private:
  const RedDotKernel& k_;
};

// expected number of blue dots on the oblique line eta
Rational line_counts_expectation(const LKernel& l, long eta);

void write_l_kernel_csv(std::ostream& os, const LKernel& l, const std::vector<BlueDot>& src,
                        const std::vector<BlueDot>& dst, bool exact);

}  // namespace tilekit
