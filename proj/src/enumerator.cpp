#include "tilekit/enumerator.hpp"
#include "tilekit/errors.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace tilekit {

bool interlaces(const Level& a, const Level& b) {
  if (b.size() != a.size() + 1) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(b[i] < a[i] && a[i] <= b[i + 1])) return false;
  return true;
}

namespace {

// every upper level b interlacing with a, entries within [lo, hi]
template <class F>
void for_each_successor(const Level& a, long lo, long hi, F&& f) {
  const size_t k = a.size();
  Level b(k + 1);
  std::vector<long> from(k + 1), to(k + 1);
  for (size_t i = 0; i <= k; ++i) {
    from[i] = i == 0 ? lo : a[i - 1];
    to[i] = i == k ? hi : a[i] - 1;
    if (from[i] > to[i]) return;
  }
  for (size_t i = 0; i <= k; ++i) b[i] = from[i];
  while (true) {
    f(b);
    size_t i = k + 1;
    while (i > 0) {
      --i;
      if (b[i] < to[i]) {
        ++b[i];
        break;
      }
      b[i] = from[i];
      if (i == 0) return;
    }
  }
}

// necessary condition for reaching the top labels from level m (descending comparison)
bool can_reach_top(const Level& a, const std::vector<long>& x_desc, long steps) {
  const long k = static_cast<long>(a.size());
  for (long j = 0; j < k; ++j) {
    const long alpha = a[k - 1 - j];  // j-th largest
    if (x_desc[j] < alpha) return false;
    if (steps > 0 && j + steps < static_cast<long>(x_desc.size()) && x_desc[j + steps] >= alpha) return false;
  }
  return true;
}

}  // namespace

TilingEnumerator::TilingEnumerator(const BoundaryData& bd) : bd_(bd) {
  const long N = bd.N, d = bd.d;
  states_.resize(N + 1);
  Level start(bd.y.begin(), bd.y.begin() + d);
  std::reverse(start.begin(), start.end());
  states_[0].states.push_back(start);
  states_[0].index[start] = 0;
  for (long m = 0; m < N; ++m) {
    LevelData& cur = states_[m];
    LevelData& nxt = states_[m + 1];
    cur.succ.resize(cur.states.size());
    for (size_t i = 0; i < cur.states.size(); ++i) {
      for_each_successor(cur.states[i], -d - m - 1, bd.row_hi(), [&](const Level& b) {
        if (!can_reach_top(b, bd.x, N - m - 1)) return;
        auto [it, fresh] = nxt.index.emplace(b, static_cast<int>(nxt.states.size()));
        if (fresh) nxt.states.push_back(b);
        cur.succ[i].push_back(it->second);
      });
    }
  }
  Level top(bd.x.rbegin(), bd.x.rend());
  LevelData& last = states_[N];
  last.G.assign(last.states.size(), Integer(0));
  auto it = last.index.find(top);
  if (it != last.index.end()) last.G[it->second] = 1;
  for (long m = N - 1; m >= 0; --m) {
    LevelData& cur = states_[m];
    cur.G.assign(cur.states.size(), Integer(0));
    for (size_t i = 0; i < cur.states.size(); ++i)
      for (int j : cur.succ[i]) cur.G[i] += states_[m + 1].G[j];
  }
  total_ = states_[0].G[0];
  states_[0].F.assign(1, Integer(1));
  for (long m = 0; m < N; ++m) {
    LevelData& nxt = states_[m + 1];
    nxt.F.assign(nxt.states.size(), Integer(0));
    for (size_t i = 0; i < states_[m].states.size(); ++i) {
      if (states_[m].F[i] == 0) continue;
      for (int j : states_[m].succ[i]) nxt.F[j] += states_[m].F[i];
    }
  }
}

size_t TilingEnumerator::total_states() const {
  size_t n = 0;
  for (const auto& l : states_) n += l.states.size();
  return n;
}

namespace {

bool contains_all(const Level& lv, const std::vector<long>& xs) {
  for (long x : xs)
    if (!std::binary_search(lv.begin(), lv.end(), x)) return false;
  return true;
}

}  // namespace

Rational TilingEnumerator::marginal(const std::vector<std::pair<long, long>>& dots) const {
  if (total_ == 0) return 0;
  const long N = bd_.N;
  std::vector<std::vector<long>> need(N + 1);
  for (const auto& [m, x] : dots) {
    if (m < 0 || m > N) return 0;
    need[m].push_back(x);
  }
  std::vector<Integer> f(1, Integer(contains_all(states_[0].states[0], need[0]) ? 1 : 0));
  for (long m = 0; m < N; ++m) {
    std::vector<Integer> g(states_[m + 1].states.size(), Integer(0));
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      for (int j : states_[m].succ[i]) g[j] += f[i];
    }
    for (size_t j = 0; j < g.size(); ++j)
      if (g[j] != 0 && !contains_all(states_[m + 1].states[j], need[m + 1])) g[j] = 0;
    f.swap(g);
  }
  Integer hits = 0;
  for (size_t j = 0; j < f.size(); ++j) hits += f[j] * states_[N].G[j];
  return Rational(hits) / Rational(total_);
}

std::vector<std::vector<std::pair<long, Rational>>> TilingEnumerator::one_point() const {
  std::vector<std::vector<std::pair<long, Rational>>> out;
  for (long m = 0; m <= bd_.N; ++m) {
    std::map<long, Integer> acc;
    const LevelData& L = states_[m];
    for (size_t i = 0; i < L.states.size(); ++i) {
      Integer w = L.F[i] * L.G[i];
      if (w == 0) continue;
      for (long x : L.states[i]) acc[x] += w;
    }
    std::vector<std::pair<long, Rational>> row;
    for (long x = bd_.row_lo(m); x <= bd_.row_hi(); ++x) {
      auto it = acc.find(x);
      row.emplace_back(x, it == acc.end() ? Rational(0) : Rational(it->second) / Rational(total_));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<TilingEnumerator::PairProb> TilingEnumerator::two_point(long m_lo, long m_hi) const {
  std::vector<PairProb> out;
  if (total_ == 0) return out;
  const Rational Z(total_);
  for (long m1 = m_lo; m1 <= m_hi; ++m1) {
    const LevelData& L1 = states_[m1];
    for (long x1 = bd_.row_lo(m1); x1 <= bd_.row_hi(); ++x1) {
      // paths conditioned on x1 at level m1, pushed upwards
      std::vector<Integer> f(L1.states.size(), Integer(0));
      for (size_t i = 0; i < f.size(); ++i)
        if (std::binary_search(L1.states[i].begin(), L1.states[i].end(), x1)) f[i] = L1.F[i];
      for (long m2 = m1; m2 <= m_hi; ++m2) {
        if (m2 > m1) {
          std::vector<Integer> g(states_[m2].states.size(), Integer(0));
          for (size_t i = 0; i < f.size(); ++i) {
            if (f[i] == 0) continue;
            for (int j : states_[m2 - 1].succ[i]) g[j] += f[i];
          }
          f.swap(g);
        }
        const LevelData& L2 = states_[m2];
        std::map<long, Integer> acc;
        for (size_t i = 0; i < f.size(); ++i) {
          if (f[i] == 0) continue;
          Integer w = f[i] * L2.G[i];
          if (w == 0) continue;
          for (long x : L2.states[i]) acc[x] += w;
        }
        for (long x2 = bd_.row_lo(m2); x2 <= bd_.row_hi(); ++x2) {
          if (m2 == m1 && x2 <= x1) continue;
          auto it = acc.find(x2);
          out.push_back({m1, x1, m2, x2, it == acc.end() ? Rational(0) : Rational(it->second) / Z});
        }
      }
    }
  }
  return out;
}

bool is_blue_square(const Level& a, const Level& b, long x) {
  const size_t k = a.size();
  if (x > b[k]) return true;
  for (size_t i = 0; i < k; ++i)
    if (b[i] < x && x < a[i]) return true;
  return false;
}

Rational TilingEnumerator::blue_marginal(const std::vector<std::pair<long, long>>& squares) const {
  if (total_ == 0) return 0;
  const long N = bd_.N;
  std::vector<std::vector<long>> need(N);
  for (const auto& [m, x] : squares) {
    if (m < 0 || m >= N || !bd_.black_in_P(m, x) || !bd_.white_in_P(m + 1, x)) return 0;
    need[m].push_back(x);
  }
  std::vector<Integer> f(1, Integer(1));
  for (long m = 0; m < N; ++m) {
    std::vector<Integer> g(states_[m + 1].states.size(), Integer(0));
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      const Level& a = states_[m].states[i];
      for (int j : states_[m].succ[i]) {
        const Level& b = states_[m + 1].states[j];
        bool ok = true;
        for (long x : need[m]) ok = ok && is_blue_square(a, b, x);
        if (ok) g[j] += f[i];
      }
    }
    f.swap(g);
  }
  Integer hits = 0;
  for (size_t j = 0; j < f.size(); ++j) hits += f[j] * states_[N].G[j];
  return Rational(hits) / Rational(total_);
}

long BlueLineCounts::at(long eta) const {
  if (eta < first) return 0;
  if (eta >= first + static_cast<long>(count.size())) return 0;
  return count[eta - first];
}

BlueLineCounts expected_blue_counts(const BoundaryData& bd) {
  BlueLineCounts out;
  out.first = -bd.d - bd.N - 1;
  const long last = bd.S + bd.N;
  long c = 0;
  for (long eta = out.first; eta <= last; ++eta) {
    out.count.push_back(c);
    for (long m = 0; m < bd.N; ++m) {
      c += bd.black_in_P(m, eta - m) ? 1 : 0;
      c -= bd.white_in_P(m + 1, eta - m - 1) ? 1 : 0;
    }
  }
  return out;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// uniform integer in [0, bound) by rejection on random bits
Integer uniform_below(const Integer& bound, std::mt19937_64& gen) {
  const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    Integer v = 0;
    size_t have = 0;
    while (have < bits) {
      v <<= 64;
      Integer chunk;
      uint64_t r = gen();
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
      v += chunk;
      have += 64;
    }
    v >>= static_cast<mp_bitcnt_t>(have - bits);
    if (v < bound) return v;
  }
}

}  // namespace

RedDotConfig TilingEnumerator::sample(uint64_t seed) const {
  if (total_ == 0) throw Error(ErrorKind::NonTileable, "no tilings to sample");
  RedDotConfig cfg;
  int idx = 0;
  cfg.levels.push_back(states_[0].states[0]);
  for (long m = 0; m < bd_.N; ++m) {
    // one generator per level, derived from the seed
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<uint64_t>(m) + 1)));
    Integer pick = uniform_below(states_[m].G[idx], gen);
    int chosen = -1;
    for (int j : states_[m].succ[idx]) {
      const Integer& g = states_[m + 1].G[j];
      if (pick < g) {
        chosen = j;
        break;
      }
      pick -= g;
    }
    idx = chosen;
    cfg.levels.push_back(states_[m + 1].states[idx]);
  }
  return cfg;
}

TilingConfig tiling_from_levels(const BoundaryData& bd, const RedDotConfig& cfg) {
  if (static_cast<long>(cfg.levels.size()) != bd.N + 1)
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(bd.N + 1) + " levels");
  for (long m = 0; m <= bd.N; ++m) {
    const Level& l = cfg.levels[m];
    if (static_cast<long>(l.size()) != bd.d + m)
      throw Error(ErrorKind::DimensionMismatch, "level " + std::to_string(m) + " needs " + std::to_string(bd.d + m) + " dots");
    for (size_t i = 0; i < l.size(); ++i)
      if (l[i] < bd.row_lo(m) || l[i] > bd.row_hi() || (i > 0 && l[i] <= l[i - 1]))
        throw Error(ErrorKind::ConstraintViolation, "level " + std::to_string(m) + " is not an increasing row of P");
  }
  if (!std::equal(cfg.levels[bd.N].begin(), cfg.levels[bd.N].end(), bd.x.rbegin(), bd.x.rend()))
    throw Error(ErrorKind::ConstraintViolation, "top level differs from the boundary labels");
  TilingConfig t;
  t.dots = cfg;
  t.N = bd.N;
  t.S = bd.S;
  t.d = bd.d;
  if (bd.two_cut) t.strip = std::make_pair(bd.two_cut->spec.m1, bd.two_cut->spec.m1 + bd.two_cut->rho);
  const long hi = bd.row_hi();
  for (long m = 0; m <= bd.N; ++m)
    for (long x : cfg.levels[m])
      if (bd.black_in_P(m, x)) t.tiles.push_back({TileColor::red, m, x});
  for (long m = 0; m < bd.N; ++m) {
    const Level& a = cfg.levels[m];
    const Level& b = cfg.levels[m + 1];
    if (!interlaces(a, b)) throw Error(ErrorKind::ConstraintViolation, "levels do not interlace");
    const size_t k = a.size();
    auto blue = [&](long x) {
      if (!bd.black_in_P(m, x)) return;
      t.tiles.push_back({TileColor::blue, m, x});
      t.blue_dots.emplace_back(m + x + 1, m - x);
    };
    auto green = [&](long x) {
      if (bd.black_in_P(m, x)) t.tiles.push_back({TileColor::green, m, x});
    };
    for (long x = bd.row_lo(m); x < b[0] + 1; ++x) green(x);
    for (size_t i = 0; i < k; ++i) {
      for (long x = b[i] + 1; x < a[i]; ++x) blue(x);
      for (long x = a[i] + 1; x <= b[i + 1]; ++x) green(x);
    }
    for (long x = b[k] + 1; x <= hi; ++x) blue(x);
  }
  std::sort(t.blue_dots.begin(), t.blue_dots.end());
  return t;
}

long blue_count_on_line(const TilingConfig& t, long eta) {
  long n = 0;
  for (const auto& [e, xi] : t.blue_dots) n += (e == eta);
  return n;
}

namespace {

struct Pt {
  double X, M;
};

std::vector<Pt> tile_polygon(const Tile& tl) {
  const double m = static_cast<double>(tl.m), x = static_cast<double>(tl.x);
  switch (tl.color) {
    case TileColor::red:
      return {{x + 0.5, m - 1}, {x + 0.5, m}, {x - 0.5, m + 1}, {x - 0.5, m}};
    case TileColor::blue:
      return {{x - 0.5, m}, {x + 0.5, m}, {x + 0.5, m + 1}, {x - 0.5, m + 1}};
    case TileColor::green:
      return {{x - 1.5, m + 1}, {x - 0.5, m + 1}, {x + 0.5, m}, {x - 0.5, m}};
  }
  return {};
}

const char* fill_of(TileColor c) {
  switch (c) {
    case TileColor::red: return "#d62728";
    case TileColor::blue: return "#1f77b4";
    case TileColor::green: return "#2ca02c";
  }
  return "#000000";
}

}  // namespace

std::string render_svg(const TilingConfig& t) {
  const double scale = 20.0;
  const double xmin = -static_cast<double>(t.d + t.N) - 1.0;
  const double xmax = static_cast<double>(t.S) + 1.0;
  const double width = (xmax - xmin) * scale;
  const double height = (static_cast<double>(t.N) + 2.0) * scale;
  auto px = [&](double X) { return (X - xmin) * scale; };
  auto py = [&](double M) { return (static_cast<double>(t.N) + 1.0 - M) * scale; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (const Tile& tl : t.tiles) {
    os << "<polygon class=\"tile\" fill=\"" << fill_of(tl.color) << "\" stroke=\"#000000\" stroke-width=\"0.5\" points=\"";
    bool first = true;
    for (const Pt& p : tile_polygon(tl)) {
      if (!first) os << ' ';
      first = false;
      os << px(p.X) << ',' << py(p.M);
    }
    os << "\"/>\n";
  }
  if (t.strip) {
    // oblique lines X + M + 1/2 = eta
    for (long eta : {t.strip->first, t.strip->second}) {
      const double e = static_cast<double>(eta);
      os << "<line class=\"strip\" x1=\"" << px(e - 0.5) << "\" y1=\"" << py(0) << "\" x2=\"" << px(e - 0.5 - t.N)
         << "\" y2=\"" << py(static_cast<double>(t.N)) << "\" stroke=\"#000000\" stroke-dasharray=\"4,3\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tilekit
