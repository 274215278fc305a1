#pragma once

#include "tilekit/geometry.hpp"

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace tilekit {

using cplx = std::complex<double>;

struct DTacParams {
  long rho = 0, r = 0;
  double beta = 0;
};

struct QuadratureSpec {
  double eps = 0.5;  // abscissa of the vertical line
  double T = 7.0;    // half-length of the line
  int n = 801;       // nodes on the line (odd, so that every other node is a coarser rule)
  double r0 = 0.25;  // radius of the circle around 0
  int n0 = 256;      // nodes on the circle (even)
  double tol = 1e-6;  // fine/coarse disagreement, relative with an absolute floor of tol
};

struct DTacValue {
  double value = 0;
  std::array<double, 5> pieces{};  // L0 (Heaviside) .. L4
  double error_estimate = 0;
};

enum class ThetaKind { r, plus, minus };

// z^{m-1}/(m-1)! for z >= 0 and m >= 1, else 0
double heaviside(long m, double z);

// largest k for the k-fold W integrals
constexpr long kMaxThetaOrder = 8;

// Theta_r(V,Z), Theta^+_{r-1}(V,Z) or Theta^-_{r+1}(V,Z) by the moment determinant
// k! det[ int W^{i+j} w(W) dW/2 pi i ] with line quadrature
cplx theta(ThetaKind kind, cplx V, cplx Z, const DTacParams& p, const QuadratureSpec& q = {});

// Node tables over the line and the circle; evaluation is a weighted double sum.
class DTacKernel {
 public:
  DTacKernel(const DTacParams& p, const QuadratureSpec& q = {});
  ~DTacKernel();
  DTacKernel(DTacKernel&&) noexcept;

  // throws QuadratureDiverged when the two resolutions disagree beyond q.tol
  DTacValue operator()(long tau1, double theta1, long tau2, double theta2) const;
  // same without the divergence check
  DTacValue evaluate(long tau1, double theta1, long tau2, double theta2) const;

  double theta_r00() const;
  const DTacParams& params() const { return p_; }
  const QuadratureSpec& quadrature() const { return q_; }

 struct Tables;

 private:
  DTacParams p_;
  QuadratureSpec q_;
  std::unique_ptr<Tables> t_, coarse_;  // every node, every other node
};

DTacValue dtac_kernel(long tau1, double theta1, long tau2, double theta2, const DTacParams& p,
                      const QuadratureSpec& q = {});

// int_{up L} v^alpha e^{v^2 + 2 x v} dv / 2 pi i
double p_alpha(long alpha, double x);
// same integral by trapezoid along Re v = q.eps
double p_alpha_quadrature(long alpha, double x, const QuadratureSpec& q = {});
// int_0^inf xi^{-alpha-1}/(-alpha-1)! e^{-(xi-x)^2} d xi, alpha < 0
double truncated_moment(long alpha, double x);

// Delta~ (theta) of size n1 = tau - rho + r
std::vector<std::vector<double>> delta_tilde_matrix(long tau, const std::vector<double>& theta, const DTacParams& p);
// unnormalized one-level density Delta~(theta) Delta(theta) exp(-|theta|^2/4)
double one_level_density(long tau, const std::vector<double>& theta, const DTacParams& p);

struct ProbePoint {
  long tau1 = 0;
  double theta1 = 0;
  long tau2 = 0;
  double theta2 = 0;
};

struct ConvergeRow {
  long d = 0;
  size_t point = 0;
  long eta1 = 0, xi1 = 0, eta2 = 0, xi2 = 0;
  double finite = 0, limit = 0, abs_err = 0;
};

// finite L-kernel at the lattice points nearest to each probe, conjugated and rescaled,
// against the limit kernel
std::vector<ConvergeRow> converge_study(const ScalingParams& sp, const std::vector<long>& d_grid,
                                        const std::vector<ProbePoint>& points, const QuadratureSpec& q = {});

// fixed probe set of the convergence check
std::vector<ProbePoint> default_probe_points();

struct TrendVerdict {
  size_t point = 0;
  std::vector<double> errors;  // along d_grid
  bool monotone = false;       // strictly decreasing
  double ratio = 0;            // last / first
  bool pass(double max_ratio = 0.5) const { return monotone && ratio < max_ratio; }
};
std::vector<TrendVerdict> trend_verdicts(const std::vector<ConvergeRow>& rows);

}  // namespace tilekit
