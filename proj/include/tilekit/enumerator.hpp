#pragma once

#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tilekit {

using Level = std::vector<long>;  // ascending red-dot positions

struct LevelHash {
  size_t operator()(const Level& v) const {
    size_t h = 1469598103934665603ULL;
    for (long x : v) h = (h ^ static_cast<size_t>(x + 0x9e3779b9)) * 1099511628211ULL;
    return h;
  }
};

struct RedDotConfig {
  std::vector<Level> levels;  // m = 0..N
};

enum class TileColor { red, blue, green };

struct Tile {
  TileColor color;
  long m, x;  // red: dot (m,x); blue: square (m,x); green: black (m,x) with white (m+1,x-1)
};

struct TilingConfig {
  RedDotConfig dots;
  std::vector<Tile> tiles;
  std::vector<std::pair<long, long>> blue_dots;  // (eta, xi)
  // rendering data
  long N = 0, S = 0, d = 0;
  std::optional<std::pair<long, long>> strip;  // eta range of the oblique strip
};

// interlacing: b_i < a_i <= b_{i+1} for lower level a and upper level b
bool interlaces(const Level& lower, const Level& upper);

TilingConfig tiling_from_levels(const BoundaryData& bd, const RedDotConfig& cfg);

// blue dots on the oblique line eta
long blue_count_on_line(const TilingConfig& t, long eta);

// whether the square over black (m, x) is a blue tile, for levels a (m) and b (m+1)
bool is_blue_square(const Level& a, const Level& b, long x);

// Blue-dot count on every oblique line, from the polygon alone: crossing the strip between
// lines eta and eta+1 adds one dot per unpaired black triangle and removes one per unpaired white one.
// Returns counts for eta = first .. first + size - 1.
struct BlueLineCounts {
  long first = 0;
  std::vector<long> count;
  long at(long eta) const;
};
BlueLineCounts expected_blue_counts(const BoundaryData& bd);

class TilingEnumerator {
 public:
  explicit TilingEnumerator(const BoundaryData& bd);

  const Integer& count() const { return total_; }
  long level_count() const { return static_cast<long>(states_.size()); }
  size_t states_at(long m) const { return states_[m].states.size(); }
  size_t total_states() const;

  // probability that all listed (m, x) sites carry red dots
  Rational marginal(const std::vector<std::pair<long, long>>& dots) const;
  // P(x in level m) for every site of every level
  std::vector<std::vector<std::pair<long, Rational>>> one_point() const;
  // all two-point probabilities for sites on levels in [m_lo, m_hi]
  struct PairProb {
    long m1, x1, m2, x2;
    Rational p;
  };
  std::vector<PairProb> two_point(long m_lo, long m_hi) const;

  // probability that all listed squares (m, x) carry blue tiles
  Rational blue_marginal(const std::vector<std::pair<long, long>>& squares) const;

  RedDotConfig sample(uint64_t seed) const;

  // visit every configuration; returns the number visited
  template <class F>
  Integer for_each(F&& f) const;

  const BoundaryData& boundary() const { return bd_; }

 private:
  struct LevelData {
    std::vector<Level> states;
    std::unordered_map<Level, int, LevelHash> index;
    std::vector<std::vector<int>> succ;
    std::vector<Integer> G;  // completions to the top
    std::vector<Integer> F;  // paths from the bottom
  };
  BoundaryData bd_;
  std::vector<LevelData> states_;
  Integer total_;

  template <class F>
  void enumerate_from(long m, int idx, std::vector<int>& path, F& f) const;
};

template <class F>
void TilingEnumerator::enumerate_from(long m, int idx, std::vector<int>& path, F& f) const {
  path.push_back(idx);
  if (m == static_cast<long>(states_.size()) - 1) {
    RedDotConfig cfg;
    for (size_t k = 0; k < path.size(); ++k) cfg.levels.push_back(states_[k].states[path[k]]);
    f(cfg);
  } else {
    for (int j : states_[m].succ[idx])
      if (states_[m + 1].G[j] != 0) enumerate_from(m + 1, j, path, f);
  }
  path.pop_back();
}

template <class F>
Integer TilingEnumerator::for_each(F&& f) const {
  std::vector<int> path;
  if (total_ != 0) enumerate_from(0, 0, path, f);
  return total_;
}

std::string render_svg(const TilingConfig& t);

uint64_t splitmix64(uint64_t x);

}  // namespace tilekit
