#include "tilekit/kernel_k.hpp"
#include "tilekit/errors.hpp"

#include <algorithm>
#include <iomanip>

namespace tilekit {

namespace {

IntPoly block_poly(long y, long len) {
  // (z-y)_{len} = prod_{j<len} (z - (y - j))
  std::vector<long> roots;
  for (long j = 0; j < len; ++j) roots.push_back(y - j);
  return IntPoly::from_roots(roots.begin(), roots.end());
}

RatPoly to_rat(const IntPoly& p) {
  std::vector<Rational> c;
  for (const auto& a : p.coeffs()) c.emplace_back(a);
  return RatPoly(std::move(c));
}

Rational prime_at(const std::vector<long>& roots, long v) {
  Rational out = 1;
  for (long r : roots)
    if (r != v) out *= v - r;
  return out;
}

void check_levels(long N, long m, long n) {
  if (m < 0 || m > N - 1 || n < 0 || n > N)
    throw Error(ErrorKind::ConstraintViolation, "kernel levels outside 0 <= m < N, 0 <= n <= N");
}

}  // namespace

Rational k0_term(long m, long x, long n, long y) {
  if (n <= m || y < x) return 0;
  return -Rational(asc_fact(y - x + 1, n - m - 1)) / Rational(factorial(n - m - 1));
}

// ---------------------------------------------------------------- two-cut

TwoCutKernel::TwoCutKernel(const BoundaryData& bd, GammaTauPolicy policy)
    : bd_(bd), mf_(build_model_functions(bd)), policy_(policy) {
  const TwoCutData& t = *bd_.two_cut;
  N_ = bd_.N;
  r_ = t.r;
  m1_ = t.spec.m1;
  y1_ = bd_.y[0];
  L_ = t.L;
  for (long u : L_) wL_.push_back(mf_.h.residue(Rational(u)));
  tr_ = tuples(r_);
  tr1_ = tuples(r_ + 1);
  om00_ = 0;
  for (const auto& tw : tr_) om00_ += tw.w;
  if (om00_ == 0) throw Error(ErrorKind::DegenerateNormalizer, "Omega_r(0,0) = 0");

  vstar_ = t.C;
  vstar_.insert(vstar_.end(), t.R.begin(), t.R.end());
  qrc_ = IntPoly::from_roots(vstar_.begin(), vstar_.end());
  for (long v : vstar_) {
    qrc_prime_.push_back(prime_at(vstar_, v));
    RatPoly om;
    for (const auto& tw : tr_) {
      RatPoly p = RatPoly::constant(tw.w);
      for (long u : tw.u) p = p * RatPoly(std::vector<Rational>{Rational(-u, 1) / (v - u), Rational(1, 1) / (v - u)});
      om += p;
    }
    omega_poly_.push_back(om);
  }
}

std::vector<TupleWeight> TwoCutKernel::tuples(long k) const {
  std::vector<TupleWeight> out;
  if (k > static_cast<long>(L_.size())) return out;
  const Rational kf(factorial(k));
  for_each_combination(L_.size(), static_cast<size_t>(k), [&](const std::vector<size_t>& idx) {
    TupleWeight tw;
    Rational w = kf;
    std::vector<Rational> us;
    for (size_t i : idx) {
      tw.u.push_back(L_[i]);
      us.emplace_back(L_[i]);
      w *= wL_[i];
    }
    Rational vd = vandermonde(us);
    tw.w = w * vd * vd;
    out.push_back(std::move(tw));
  });
  return out;
}

Rational TwoCutKernel::omega(long k, const Rational& v, const Rational& z, OmegaVariant variant) const {
  const std::vector<TupleWeight> ts = tuples(k);
  Rational total = 0;
  for (const auto& tw : ts) {
    Rational term = tw.w;
    for (long u : tw.u) {
      switch (variant) {
        case OmegaVariant::plain:
          if (v == u) throw Error(ErrorKind::PoleOnContour, "v on the u-contour");
          term *= (z - u) / (v - u);
          break;
        case OmegaVariant::plus:
          term *= (v - u) * (z - u);
          break;
        case OmegaVariant::minus:
          if (v == u || z == u) throw Error(ErrorKind::PoleOnContour, "v or z on the u-contour");
          term /= (v - u) * (z - u);
          break;
      }
    }
    total += term;
  }
  return total;
}

Rational TwoCutKernel::omega_minus_at(const std::vector<TupleWeight>& ts, const Rational& v,
                                      const Rational& z) const {
  Rational total = 0;
  for (const auto& tw : ts) {
    Rational term = tw.w;
    for (long u : tw.u) term /= (v - u) * (z - u);
    total += term;
  }
  return total;
}

std::vector<long> TwoCutKernel::gamma_tau(long n, long y) const {
  std::vector<long> out;
  const long tau = y + n - m1_;
  if (tau >= 0) return out;
  const long hi = std::min(y1_ - N_, y);
  for (long z = y + n - N_; z <= hi; ++z) {
    if (policy_ == GammaTauPolicy::exclude_L && std::binary_search(L_.begin(), L_.end(), z)) continue;
    out.push_back(z);
  }
  return out;
}

const std::vector<Rational>& TwoCutKernel::a_vec(long m, long x) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = a_cache_.find({m, x});
    if (it != a_cache_.end()) return it->second;
  }
  std::vector<Rational> a(vstar_.size(), Rational(0));
  const Rational inv_fact = Rational(1) / Rational(factorial(N_ - m - 1));
  for (size_t j = 0; j < vstar_.size(); ++j) {
    const long v = vstar_[j];
    if (v < x) continue;
    a[j] = Rational(asc_fact(v - x + 1, N_ - m - 1)) / qrc_prime_[j] * inv_fact;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return a_cache_.emplace(std::make_pair(m, x), std::move(a)).first->second;
}

const std::vector<Rational>& TwoCutKernel::f_vec(long n, long y) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = f_cache_.find({n, y});
    if (it != f_cache_.end()) return it->second;
  }
  const IntPoly B = block_poly(y, N_ - n + 1);
  // polynomial parts of z^j Q_R Q_C / B, j = 0..r
  std::vector<IntPoly> pp;
  for (long j = 0; j <= r_; ++j) pp.push_back(qrc_.shifted_up(static_cast<size_t>(j)).divmod_monic(B).first);

  // Gamma_{-tau} data: (z0, coefficient, z0 in L)
  struct ZPoint {
    long z;
    Rational coef;
    bool in_L;
  };
  std::vector<ZPoint> zs;
  const FactoredRational F = mf_.R2h_inverse(n, y);
  for (long z0 : gamma_tau(n, y)) {
    const bool inL = std::binary_search(L_.begin(), L_.end(), z0);
    zs.push_back({z0, inL ? F.eval(Rational(z0)) : F.residue(Rational(z0)), inL});
  }

  const Rational nf(factorial(N_ - n));
  std::vector<Rational> f(vstar_.size());
  for (size_t j = 0; j < vstar_.size(); ++j) {
    const Rational v(vstar_[j]);
    Rational i1 = 0;
    for (long k = 0; k <= r_; ++k) {
      const Rational c = omega_poly_[j].coeff(static_cast<size_t>(k));
      if (c != 0) i1 += c * Rational(pp[k].eval(Integer(vstar_[j])));
    }
    Rational i2 = 0;
    for (const auto& zp : zs) {
      if (!zp.in_L) {
        i2 += zp.coef * omega_minus_at(tr1_, v, Rational(zp.z));
        continue;
      }
      // simple pole of Omega^- at z0 in L: only tuples containing z0 contribute
      for (const auto& tw : tr1_) {
        if (!std::binary_search(tw.u.begin(), tw.u.end(), zp.z)) continue;
        Rational term = tw.w;
        for (long u : tw.u) {
          term /= v - u;
          if (u != zp.z) term /= Rational(zp.z - u);
        }
        i2 += zp.coef * term;
      }
    }
    f[j] = nf * (i1 + i2 / (r_ + 1)) / om00_;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return f_cache_.emplace(std::make_pair(n, y), std::move(f)).first->second;
}

Rational TwoCutKernel::operator()(long m, long x, long n, long y) const {
  check_levels(N_, m, n);
  const auto& a = a_vec(m, x);
  const auto& f = f_vec(n, y);
  Rational out = k0_term(m, x, n, y);
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0) out += a[j] * f[j];
  return out;
}

Rational TwoCutKernel::reference(long m, long x, long n, long y, bool explicit_poles) const {
  check_levels(N_, m, n);
  const FactoredRational R1 = mf_.R1(m, x);
  const FactoredRational R2inv = mf_.R2_inverse(n, y);
  const FactoredRational R2hinv = mf_.R2h_inverse(n, y);
  Contour zc = Contour::everything();
  if (explicit_poles) {
    zc = Contour::around_interval(y - N_ + n, y);
  }
  const std::vector<long> gt = gamma_tau(n, y);
  Rational inner_total = 0;
  for (const Rational& v : R1.poles()) {
    if (v < x) continue;
    // Omega_r(v, z) as a polynomial in z
    RatPoly om;
    for (const auto& tw : tr_) {
      RatPoly p = RatPoly::constant(tw.w);
      for (long u : tw.u) p = p * RatPoly(std::vector<Rational>{-Rational(u) / (v - u), 1 / (v - u)});
      om += p;
    }
    FactoredRational g1 = R2inv;
    g1.mul_linear(v, -1).mul_poly(om);
    Contour c1 = zc;
    if (explicit_poles) c1.enclosed.insert(v);
    Rational i1 = residue_sum(g1, c1);

    Rational i2 = 0;
    if (!gt.empty()) {
      Contour c2 = Contour::around(gt);
      for (const auto& tw : tr1_) {
        FactoredRational g2 = R2hinv;
        Rational s = tw.w;
        for (long u : tw.u) {
          s /= v - u;
          g2.mul_linear(Rational(u), -1);
        }
        g2.scale(s);
        i2 += residue_sum(g2, c2);
      }
    }
    inner_total += R1.residue(v) * (i1 + i2 / (r_ + 1)) / om00_;
  }
  return k0_term(m, x, n, y) + Rational(factorial(N_ - n)) / Rational(factorial(N_ - m - 1)) * inner_total;
}

// ---------------------------------------------------------------- multi-cut

MultiCutKernel::MultiCutKernel(const BoundaryData& bd) : bd_(bd) {
  N_ = bd_.N;
  d_ = bd_.d;
  roots_.assign(bd_.x.rbegin(), bd_.x.rend());
  q_ = IntPoly::from_roots(roots_.begin(), roots_.end());
  for (long v : roots_) {
    q_prime_.push_back(prime_at(roots_, v));
    q_prime_at_[v] = q_prime_.back();
  }
  ycut_.assign(bd_.y.begin(), bd_.y.begin() + d_);
  const std::vector<long>& R = bd_.R_multi;

  auto aux = [&](long u, long yb) -> Rational {
    return Rational(asc_fact(u - yb + 1, N_ - 1)) / Rational(factorial(N_ - 1));
  };

  const Rational dfact(factorial(d_));
  const RatPoly qr = to_rat(q_);
  for_each_combination(R.size(), static_cast<size_t>(d_), [&](const std::vector<size_t>& idx) {
    TupleWeight tw;
    Rational w = dfact;
    std::vector<Rational> us;
    std::vector<std::vector<Rational>> mat;
    for (size_t i : idx) {
      const long u = R[i];
      tw.u.push_back(u);
      us.emplace_back(u);
      w /= q_prime_at_.at(u);
      std::vector<Rational> row;
      for (long yb : ycut_) row.push_back(aux(u, yb));
      mat.push_back(std::move(row));
    }
    tw.w = w * vandermonde(us) * determinant(mat);
    std::vector<long> tu = tw.u;
    IntPoly div = IntPoly::from_roots(tu.begin(), tu.end());
    qt_.push_back(to_rat(q_.divmod_monic(div).first));
    td_.push_back(std::move(tw));
  });
  om00_ = 0;
  for (const auto& tw : td_) om00_ += tw.w;
  if (om00_ == 0) throw Error(ErrorKind::DegenerateNormalizer, "Omega_R(0,0) = 0");

  if (d_ >= 1) {
    const Rational f1(factorial(d_ - 1));
    for_each_combination(R.size(), static_cast<size_t>(d_ - 1), [&](const std::vector<size_t>& idx) {
      CofTuple ct;
      Rational c = f1;
      std::vector<Rational> us;
      for (size_t i : idx) {
        ct.u.push_back(R[i]);
        us.emplace_back(R[i]);
        c /= q_prime_at_.at(R[i]);
      }
      ct.c = c * vandermonde(us);
      // cofactor of entry (1, beta): remove column beta from the d-1 aux rows
      for (long beta = 0; beta < d_; ++beta) {
        std::vector<std::vector<Rational>> minor;
        for (long u : ct.u) {
          std::vector<Rational> row;
          for (long b = 0; b < d_; ++b)
            if (b != beta) row.push_back(aux(u, ycut_[b]));
          minor.push_back(std::move(row));
        }
        ct.cof.push_back(Rational(sign_pow(beta)) * determinant(minor));
      }
      td1_.push_back(std::move(ct));
    });
  }

  for (long v : roots_) {
    RatPoly hv;
    for (size_t t = 0; t < td_.size(); ++t) {
      Rational s = td_[t].w;
      for (long u : td_[t].u) s *= v - u;
      if (s != 0) hv += s * qt_[t];
    }
    h_.push_back(hv);
    std::vector<Rational> g;
    for (long beta = 0; beta < d_; ++beta) g.push_back(g_beta(static_cast<size_t>(beta), Rational(v)));
    g_.push_back(std::move(g));
  }
}

Rational MultiCutKernel::g_beta(size_t beta, const Rational& v) const {
  Rational total = 0;
  for (const auto& ct : td1_) {
    Rational s = ct.c * ct.cof[beta];
    for (long u : ct.u) s *= v - u;
    total += s;
  }
  return total;
}

Rational MultiCutKernel::omega_R(const Rational& v, const Rational& z) const {
  Rational total = 0;
  for (const auto& tw : td_) {
    Rational s = tw.w;
    for (long u : tw.u) {
      if (z == u) throw Error(ErrorKind::PoleOnContour, "z on the u-contour");
      s *= (v - u) / (z - u);
    }
    total += s;
  }
  return total;
}

Rational MultiCutKernel::omega_tilde_term(long n, long y, const Rational& v) const {
  if (d_ == 0) return 0;
  Rational total = 0;
  for (const auto& ct : td1_) {
    Rational det = 0;
    for (long beta = 0; beta < d_; ++beta)
      det += s_residue_series(y, ycut_[beta], n) * ct.cof[beta];
    Rational s = ct.c * det;
    for (long u : ct.u) s *= v - u;
    total += s;
  }
  return Rational(d_) * total;
}

Rational MultiCutKernel::boundary_z_term(long n, long y, const Rational& v) const {
  const Contour c = Contour::around_interval(y - N_ + n, y);
  const Rational nf(factorial(N_ - n));
  Rational total = 0;
  for (const auto& tw : td_) {
    FactoredRational f(tw.w * nf);
    for (long u : tw.u) {
      f.scale(v - u);
      f.mul_linear(Rational(u), -1);
    }
    for (long xr : roots_) f.mul_linear(Rational(xr), 1);
    for (long j = 0; j <= N_ - n; ++j) f.mul_linear(Rational(y - j), -1);
    f.mul_linear(v, -1);
    total += residue_sum(f, c);
  }
  return total;
}

const std::vector<Rational>& MultiCutKernel::a_vec(long m, long x) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = a_cache_.find({m, x});
    if (it != a_cache_.end()) return it->second;
  }
  std::vector<Rational> a(roots_.size(), Rational(0));
  const Rational inv_fact = Rational(1) / Rational(factorial(N_ - m - 1));
  for (size_t j = 0; j < roots_.size(); ++j) {
    const long v = roots_[j];
    if (v < x) continue;
    a[j] = Rational(asc_fact(v - x + 1, N_ - m - 1)) / q_prime_[j] * inv_fact;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return a_cache_.emplace(std::make_pair(m, x), std::move(a)).first->second;
}

const std::vector<Rational>& MultiCutKernel::f_vec(long n, long y) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = f_cache_.find({n, y});
    if (it != f_cache_.end()) return it->second;
  }
  const RatPoly B = to_rat(block_poly(y, N_ - n + 1));
  const Rational nf(factorial(N_ - n));
  std::vector<Rational> s;
  for (long yb : ycut_) s.push_back(s_residue(y, yb, n));
  std::vector<Rational> f(roots_.size());
  for (size_t j = 0; j < roots_.size(); ++j) {
    const Rational v(roots_[j]);
    Rational i1 = nf * h_[j].divmod_monic(B).first.eval(v);
    Rational i2 = 0;
    for (long beta = 0; beta < d_; ++beta) i2 += s[beta] * g_[j][beta];
    i2 *= d_;
    f[j] = (i1 + i2) / om00_;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return f_cache_.emplace(std::make_pair(n, y), std::move(f)).first->second;
}

Rational MultiCutKernel::k12(long m, long x, long n, long y) const {
  check_levels(N_, m, n);
  const auto& a = a_vec(m, x);
  const auto& f = f_vec(n, y);
  Rational out = 0;
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0) out += a[j] * f[j];
  return out;
}

Rational MultiCutKernel::operator()(long m, long x, long n, long y) const {
  return k0_term(m, x, n, y) + k12(m, x, n, y);
}

// ---------------------------------------------------------------- boundary

std::vector<std::pair<long, long>> boundary_locus(const BoundaryData& bd) {
  std::vector<std::pair<long, long>> out;
  const long N = bd.N, S = bd.S, d = bd.d;
  const PolygonSpec& p = bd.polygon;
  // right upper oblique side, shifted by +1/2
  for (long n = N - p.bu + 1; n <= N; ++n) out.emplace_back(n, S + N - p.bu - n);
  // left vertical side, shifted by -1/2
  for (long n = p.d0 + 1; n <= N; ++n) out.emplace_back(n, -d - p.d0 - 1);
  for (size_t j = 0; j < bd.upper_starts.size(); ++j) {
    const long t = bd.upper_starts[j], bj = p.upper_cuts[j];
    for (long n = N - bj + 1; n <= N; ++n) {
      out.emplace_back(n, t + N - n);   // oblique side of the cut
      out.emplace_back(n, t + bj - 1);  // vertical side of the cut
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundaryVerdict boundary_identity_check(const MultiCutKernel& k, long n, long y, const Rational& v) {
  BoundaryVerdict out;
  out.z_term = k.boundary_z_term(n, y, v);
  out.w_term = k.omega_tilde_term(n, y, v);
  out.residual = out.z_term + out.w_term;
  out.pass = out.residual == 0;
  return out;
}

void write_kernel_csv(std::ostream& os, const RedDotKernel& k, const std::vector<std::pair<long, long>>& src,
                      const std::vector<std::pair<long, long>>& dst, bool exact) {
  os << (exact ? "m,x,n,y,value_num,value_den\n" : "m,x,n,y,value_float\n");
  for (const auto& [m, x] : src)
    for (const auto& [n, y] : dst) {
      Rational v = k(m, x, n, y);
      os << m << ',' << x << ',' << n << ',' << y << ',';
      if (exact)
        os << v.get_num().get_str() << ',' << v.get_den().get_str() << '\n';
      else
        os << std::setprecision(17) << v.get_d() << '\n';
    }
}

}  // namespace tilekit
