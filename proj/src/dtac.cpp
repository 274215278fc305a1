#include "tilekit/dtac.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/kernel_k.hpp"
#include "tilekit/kernel_l.hpp"
#include "tilekit/parallel.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace tilekit {

namespace {

constexpr double kPi = std::numbers::pi;

cplx ipow(cplx z, long k) {
  cplx b = k >= 0 ? z : 1.0 / z;
  long e = k >= 0 ? k : -k;
  cplx out = 1.0;
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

double factorial_d(long n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// k! det[mu(i + j)]_{i,j<k}
template <class F>
cplx moment_det(long k, F&& mu) {
  if (k == 0) return 1.0;
  Eigen::MatrixXcd a(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) a(i, j) = mu(i + j);
  return factorial_d(k) * a.determinant();
}

void check_order(long k) {
  if (k > kMaxThetaOrder)
    throw Error(ErrorKind::UnsupportedOrder, "Theta order " + std::to_string(k) + " exceeds " +
                                                 std::to_string(kMaxThetaOrder));
}

struct LineRule {
  std::vector<cplx> W, w;  // nodes and weights of dW / 2 pi i
  std::vector<cplx> wg;    // weights times e^{2W^2 + beta W} W^{-rho}
};

LineRule line_rule(const DTacParams& p, const QuadratureSpec& q, int stride) {
  LineRule out;
  const double h = 2.0 * q.T / (q.n - 1);
  for (int k = 0; k < q.n; k += stride) {
    const cplx W(q.eps, -q.T + h * k);
    double wt = h * stride / (2.0 * kPi);
    if (k == 0 || k + stride >= q.n) wt *= 0.5;
    out.W.push_back(W);
    out.w.push_back(wt);
    out.wg.push_back(wt * std::exp(2.0 * W * W + p.beta * W) * ipow(W, -p.rho));
  }
  return out;
}

struct CircleRule {
  std::vector<cplx> V, w;
};

CircleRule circle_rule(const QuadratureSpec& q, int stride) {
  CircleRule out;
  const int m = q.n0 / stride;
  for (int a = 0; a < m; ++a) {
    const cplx V = std::polar(q.r0, 2.0 * kPi * a / m);
    out.V.push_back(V);
    out.w.push_back(V / static_cast<double>(m));
  }
  return out;
}

void check_quadrature(const QuadratureSpec& q) {
  if (!(q.eps > q.r0 && q.r0 > 0) || q.n < 5 || q.n % 2 == 0 || q.n0 < 4 || q.n0 % 2 != 0 || q.T <= 0)
    throw Error(ErrorKind::ConstraintViolation, "quadrature needs eps > r0 > 0, odd n >= 5, even n0 >= 4, T > 0");
}

}  // namespace

double heaviside(long m, double z) {
  if (m < 1 || z < 0) return 0.0;
  return std::pow(z, static_cast<double>(m - 1)) / factorial_d(m - 1);
}

cplx theta(ThetaKind kind, cplx V, cplx Z, const DTacParams& p, const QuadratureSpec& q) {
  check_quadrature(q);
  const long k = kind == ThetaKind::r ? p.r : kind == ThetaKind::plus ? p.r - 1 : p.r + 1;
  if (k < 0) throw Error(ErrorKind::ConstraintViolation, "Theta^+ needs r >= 1");
  check_order(k);
  const LineRule lr = line_rule(p, q, 1);
  std::vector<cplx> mu(2 * k + 1, 0.0);
  for (size_t t = 0; t < lr.W.size(); ++t) {
    const cplx W = lr.W[t];
    cplx f = lr.wg[t];
    if (kind == ThetaKind::r) f *= (Z - W) / (V - W);
    else if (kind == ThetaKind::plus) f *= (Z - W) * (V - W);
    else f /= (Z - W) * (V - W);
    cplx pw = 1.0;
    for (auto& m : mu) {
      m += f * pw;
      pw *= W;
    }
  }
  return moment_det(k, [&](long j) { return mu[j]; });
}

struct DTacKernel::Tables {
  LineRule line;
  CircleRule circ;
  cplx th00 = 1.0;
  std::vector<cplx> t12;  // [a * nl + k]: Theta_r(V_a, Z_k) / (Theta_r(0,0) (Z_k - V_a))
  std::vector<cplx> t3;   // [k * nl + l]: Theta^+_{r-1}(V_k, Z_l) / Theta_r(0,0)
  std::vector<cplx> t4;   // [a * nc + b]: Theta^-_{r+1}(V_a, Z_b) / Theta_r(0,0)
};

namespace {

std::unique_ptr<DTacKernel::Tables> build_tables(const DTacParams& p, const QuadratureSpec& q, int stride) {
  auto t = std::make_unique<DTacKernel::Tables>();
  t->line = line_rule(p, q, stride);
  t->circ = circle_rule(q, stride);
  const auto& W = t->line.W;
  const auto& wg = t->line.wg;
  const size_t nl = W.size(), nc = t->circ.V.size();
  const long r = p.r;

  std::vector<cplx> M(2 * r + 3, 0.0);
  for (size_t k = 0; k < nl; ++k) {
    cplx pw = 1.0;
    for (auto& m : M) {
      m += wg[k] * pw;
      pw *= W[k];
    }
  }
  t->th00 = moment_det(r, [&](long j) { return M[j]; });
  if (std::abs(t->th00) < 1e-14)
    throw Error(ErrorKind::DegenerateNormalizer, "|Theta_r(0,0)| below 1e-14");

  // C_j(V) = int W^j w / (V - W) and its V-derivative, on the circle
  const size_t nj = 2 * r + 1;
  std::vector<cplx> C(nc * nj, 0.0), dC(nc * nj, 0.0);
  parallel_for(nc, [&](size_t a) {
    const cplx V = t->circ.V[a];
    for (size_t k = 0; k < nl; ++k) {
      const cplx inv = 1.0 / (V - W[k]);
      cplx f = wg[k] * inv, g = -wg[k] * inv * inv;
      for (size_t j = 0; j < nj; ++j) {
        C[a * nj + j] += f;
        dC[a * nj + j] += g;
        f *= W[k];
        g *= W[k];
      }
    }
  });

  t->t12.assign(nc * nl, 0.0);
  parallel_for(nc, [&](size_t a) {
    const cplx V = t->circ.V[a];
    for (size_t k = 0; k < nl; ++k) {
      const cplx dz = W[k] - V;  // Z on the line shares the W nodes
      const cplx th = moment_det(r, [&](long j) { return M[j] + dz * C[a * nj + j]; });
      t->t12[a * nl + k] = th / (t->th00 * dz);
    }
  });

  if (r >= 1) {
    t->t3.assign(nl * nl, 0.0);
    parallel_for(nl, [&](size_t k) {
      const cplx V = W[k];
      for (size_t l = 0; l < nl; ++l) {
        const cplx Z = W[l];
        const cplx th =
            moment_det(r - 1, [&](long j) { return Z * V * M[j] - (Z + V) * M[j + 1] + M[j + 2]; });
        t->t3[k * nl + l] = th / t->th00;
      }
    });
  }

  t->t4.assign(nc * nc, 0.0);
  parallel_for(nc, [&](size_t a) {
    const cplx V = t->circ.V[a];
    for (size_t b = 0; b < nc; ++b) {
      const cplx Z = t->circ.V[b];
      // 1/((Z-W)(V-W)) = (1/(V-W) - 1/(Z-W)) / (Z-V)
      auto D = [&](long j) -> cplx {
        if (a == b) return -dC[a * nj + j];
        return (C[a * nj + j] - C[b * nj + j]) / (Z - V);
      };
      t->t4[a * nc + b] = moment_det(r + 1, D) / t->th00;
    }
  });
  return t;
}

struct Pieces {
  std::array<cplx, 5> v{};
};

Pieces eval_pieces(const DTacKernel::Tables& t, const DTacParams& p, long tau1, double theta1, long tau2,
                   double theta2) {
  Pieces out;
  out.v[0] = 0.0 - heaviside(tau1 - tau2, theta2 - theta1);
  const auto& W = t.line.W;
  const auto& wl = t.line.w;
  const auto& V = t.circ.V;
  const auto& wc = t.circ.w;
  const size_t nl = W.size(), nc = V.size();
  const double beta = p.beta;
  const long rho = p.rho, r = p.r;

  // piece 1 and piece 2 share the table
  {
    std::vector<cplx> a1(nc), a2(nc), b1(nl), b2(nl);
    for (size_t a = 0; a < nc; ++a) {
      a1[a] = wc[a] * ipow(V[a], rho - tau1) * std::exp(-V[a] * V[a] - theta1 * V[a]);
      a2[a] = wc[a] * ipow(V[a], tau2) * std::exp(-V[a] * V[a] + (theta2 - beta) * V[a]);
    }
    for (size_t k = 0; k < nl; ++k) {
      b1[k] = wl[k] * ipow(W[k], tau2 - rho) * std::exp(W[k] * W[k] + theta2 * W[k]);
      b2[k] = wl[k] * ipow(W[k], -tau1) * std::exp(W[k] * W[k] - (theta1 - beta) * W[k]);
    }
    cplx s1 = 0, s2 = 0;
    for (size_t a = 0; a < nc; ++a) {
      cplx r1 = 0, r2 = 0;
      const cplx* row = &t.t12[a * nl];
      for (size_t k = 0; k < nl; ++k) {
        r1 += b1[k] * row[k];
        r2 += b2[k] * row[k];
      }
      s1 += a1[a] * r1;
      s2 += a2[a] * r2;
    }
    out.v[1] = s1;
    out.v[2] = s2;
  }

  if (r >= 1) {
    std::vector<cplx> a3(nl), b3(nl);
    for (size_t k = 0; k < nl; ++k) {
      a3[k] = wl[k] * ipow(W[k], -tau1) * std::exp(W[k] * W[k] - (theta1 - beta) * W[k]);
      b3[k] = wl[k] * ipow(W[k], tau2 - rho) * std::exp(W[k] * W[k] + theta2 * W[k]);
    }
    cplx s = 0;
    for (size_t k = 0; k < nl; ++k) {
      cplx row = 0;
      const cplx* tr = &t.t3[k * nl];
      for (size_t l = 0; l < nl; ++l) row += b3[l] * tr[l];
      s += a3[k] * row;
    }
    out.v[3] = static_cast<double>(r) * s;
  }

  {
    std::vector<cplx> a4(nc), b4(nc);
    for (size_t a = 0; a < nc; ++a) {
      a4[a] = wc[a] * ipow(V[a], rho - tau1) * std::exp(-V[a] * V[a] - theta1 * V[a]);
      b4[a] = wc[a] * ipow(V[a], tau2) * std::exp(-V[a] * V[a] + (theta2 - beta) * V[a]);
    }
    cplx s = 0;
    for (size_t a = 0; a < nc; ++a) {
      cplx row = 0;
      const cplx* tr = &t.t4[a * nc];
      for (size_t b = 0; b < nc; ++b) row += b4[b] * tr[b];
      s += a4[a] * row;
    }
    out.v[4] = -s / static_cast<double>(r + 1);
  }
  return out;
}

}  // namespace

DTacKernel::DTacKernel(const DTacParams& p, const QuadratureSpec& q) : p_(p), q_(q) {
  check_quadrature(q);
  if (p.rho < 0 || p.r < 0) throw Error(ErrorKind::ConstraintViolation, "rho >= 0 and r >= 0");
  check_order(p.r + 1);
  t_ = build_tables(p, q, 1);
  coarse_ = build_tables(p, q, 2);
}

DTacKernel::~DTacKernel() = default;
DTacKernel::DTacKernel(DTacKernel&&) noexcept = default;

double DTacKernel::theta_r00() const { return t_->th00.real(); }

DTacValue DTacKernel::evaluate(long tau1, double theta1, long tau2, double theta2) const {
  const Pieces f = eval_pieces(*t_, p_, tau1, theta1, tau2, theta2);
  const Pieces c = eval_pieces(*coarse_, p_, tau1, theta1, tau2, theta2);
  DTacValue out;
  cplx vf = 0, vc = 0;
  for (int i = 0; i < 5; ++i) {
    out.pieces[i] = f.v[i].real();
    vf += f.v[i];
    vc += c.v[i];
  }
  out.value = vf.real();
  out.error_estimate = std::abs(vf - vc) + std::abs(vf.imag());
  return out;
}

DTacValue DTacKernel::operator()(long tau1, double theta1, long tau2, double theta2) const {
  DTacValue v = evaluate(tau1, theta1, tau2, theta2);
  if (v.error_estimate > q_.tol * std::max(1.0, std::abs(v.value)))
    throw Error(ErrorKind::QuadratureDiverged,
                "resolutions differ by " + std::to_string(v.error_estimate));
  return v;
}

DTacValue dtac_kernel(long tau1, double theta1, long tau2, double theta2, const DTacParams& p,
                      const QuadratureSpec& q) {
  using Key = std::tuple<long, long, double, double, double, int, double, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<DTacKernel>> cache;
  const Key key{p.rho, p.r, p.beta, q.eps, q.T, q.n, q.r0, q.n0};
  std::shared_ptr<DTacKernel> k;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) k = it->second;
  }
  if (!k) {
    k = std::make_shared<DTacKernel>(p, q);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, k);
  }
  return (*k)(tau1, theta1, tau2, theta2);
}

double truncated_moment(long alpha, double x) {
  if (alpha >= 0) throw Error(ErrorKind::ConstraintViolation, "truncated_moment needs alpha < 0");
  const long k = -alpha;
  boost::math::quadrature::exp_sinh<double> integrator;
  // in log form, so that s^{k-1} never meets exp(-u^2) as inf * 0
  const double lg = std::lgamma(static_cast<double>(k));
  auto f = [&](double s) {
    const double u = s - x;
    if (s <= 0) return k == 1 ? std::exp(-u * u) : 0.0;
    return std::exp(static_cast<double>(k - 1) * std::log(s) - u * u - lg);
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

double p_alpha(long alpha, double x) {
  if (alpha >= 0) {
    const double h = boost::math::hermite(static_cast<unsigned>(alpha), -x);
    return std::exp(-x * x) * h / (std::pow(2.0, static_cast<double>(alpha + 1)) * std::sqrt(kPi));
  }
  // v^{-k} = int_0^inf s^{k-1} e^{-s v} ds / (k-1)!, then the Gaussian line integral
  const long k = -alpha;
  return std::pow(2.0, static_cast<double>(k - 1)) / std::sqrt(kPi) * truncated_moment(alpha, x);
}

double p_alpha_quadrature(long alpha, double x, const QuadratureSpec& q) {
  check_quadrature(q);
  const double h = 2.0 * q.T / (q.n - 1);
  cplx s = 0;
  for (int k = 0; k < q.n; ++k) {
    const cplx v(q.eps, -q.T + h * k);
    double wt = h / (2.0 * kPi);
    if (k == 0 || k == q.n - 1) wt *= 0.5;
    s += wt * ipow(v, alpha) * std::exp(v * v + 2.0 * x * v);
  }
  return s.real();
}

std::vector<std::vector<double>> delta_tilde_matrix(long tau, const std::vector<double>& th, const DTacParams& p) {
  if (tau < p.rho) throw Error(ErrorKind::ConstraintViolation, "one-level density needs tau >= rho");
  const long n1 = tau - p.rho + p.r;
  if (static_cast<long>(th.size()) != n1)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(n1) + " positions, got " + std::to_string(th.size()));
  std::vector<std::vector<double>> a;
  for (long i = 0; i < tau - p.rho; ++i) {
    std::vector<double> row;
    for (double t : th) row.push_back(std::pow(t, static_cast<double>(i)));
    a.push_back(row);
  }
  for (long s = 0; s < p.r; ++s) {
    std::vector<double> row;
    for (double t : th) row.push_back(p_alpha(-tau + s, (p.beta - t) / 2));
    a.push_back(row);
  }
  return a;
}

double one_level_density(long tau, const std::vector<double>& th, const DTacParams& p) {
  const auto a = delta_tilde_matrix(tau, th, p);
  const long n = static_cast<long>(th.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = a[i][j];
  double vdm = 1.0, norm2 = 0.0;
  for (long i = 0; i < n; ++i) {
    norm2 += th[i] * th[i];
    for (long j = i + 1; j < n; ++j) vdm *= th[i] - th[j];
  }
  return m.determinant() * vdm * std::exp(-norm2 / 4);
}

std::vector<ConvergeRow> converge_study(const ScalingParams& sp, const std::vector<long>& d_grid,
                                        const std::vector<ProbePoint>& points, const QuadratureSpec& q) {
  std::vector<ConvergeRow> out;
  const DTacKernel lim({sp.rho, sp.r, sp.beta()}, q);
  for (long d : d_grid) {
    ScalingParams s = sp;
    s.d = d;
    const ScaledGeometry sg = scaled_geometry(s);
    const BoundaryData bd = validate(sg.spec);
    const TwoCutKernel k(bd);
    const LKernel l(k);
    const double F = std::sqrt(static_cast<double>(d)) * (sp.gamma + 1) / (2 * sp.a());
    for (size_t i = 0; i < points.size(); ++i) {
      const ProbePoint& pp = points[i];
      const ObliquePoint o1 = sg.map(pp.tau1, pp.theta1), o2 = sg.map(pp.tau2, pp.theta2);
      ConvergeRow row;
      row.d = d;
      row.point = i;
      row.eta1 = o1.eta.get_num().get_si();
      row.xi1 = o1.xi.get_num().get_si();
      row.eta2 = o2.eta.get_num().get_si();
      row.xi2 = o2.xi.get_num().get_si();
      const Rational lv = l({row.eta1, row.xi1}, {row.eta2, row.xi2});
      const long half = (row.eta1 + row.xi1 - row.eta2 - row.xi2) / 2;
      row.finite = sign_pow(half) * std::pow(F, static_cast<double>(row.eta2 - row.eta1 + 1)) * lv.get_d();
      row.limit = lim(pp.tau1, sg.theta_of(row.xi1), pp.tau2, sg.theta_of(row.xi2)).value;
      row.abs_err = std::abs(row.finite - row.limit);
      out.push_back(row);
    }
  }
  return out;
}

std::vector<ProbePoint> default_probe_points() {
  return {{0, 0.2, 1, -0.3}, {1, 0.5, 0, 0.1}, {2, -0.4, 1, 0.3}, {0, 0.0, 0, 0.8}};
}

std::vector<TrendVerdict> trend_verdicts(const std::vector<ConvergeRow>& rows) {
  std::map<size_t, std::vector<std::pair<long, double>>> by_point;
  for (const ConvergeRow& r : rows) by_point[r.point].emplace_back(r.d, r.abs_err);
  std::vector<TrendVerdict> out;
  for (auto& [pt, v] : by_point) {
    std::sort(v.begin(), v.end());
    TrendVerdict t;
    t.point = pt;
    for (const auto& e : v) t.errors.push_back(e.second);
    t.monotone = true;
    for (size_t i = 1; i < t.errors.size(); ++i)
      if (!(t.errors[i] < t.errors[i - 1])) t.monotone = false;
    t.ratio = t.errors.front() > 0 ? t.errors.back() / t.errors.front() : 1.0;
    out.push_back(t);
  }
  return out;
}

}  // namespace tilekit
