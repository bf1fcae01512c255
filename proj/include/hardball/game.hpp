#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hardball/rng.hpp"
#include "hardball/types.hpp"

namespace hardball {

struct WeightMatrixError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Tridiagonal symmetric weight matrix k with k_ii = -2. Only the n-1
// neighbor entries k_{i,i+1} are free; queries outside 1..n read as zero,
// which realizes the augmentation convention at the path's ends.
template <class S>
class WeightMatrix {
 public:
  enum class Provenance { FromMasses, UserSupplied };

  WeightMatrix(int n, std::vector<S> neighbor, Provenance prov = Provenance::UserSupplied)
      : n_(n), neighbor_(std::move(neighbor)), provenance_(prov) {
    if (n_ < 1) throw WeightMatrixError("weight matrix needs n >= 1");
    if (static_cast<int>(neighbor_.size()) != n_ - 1)
      throw WeightMatrixError("weight matrix needs exactly n-1 neighbor entries");
  }

  // Validates a full n x n matrix: symmetric, diagonal -2, zero support
  // beyond the first off-diagonal.
  static WeightMatrix from_full(const std::vector<std::vector<S>>& k,
                                Provenance prov = Provenance::UserSupplied) {
    const int n = static_cast<int>(k.size());
    if (n < 1) throw WeightMatrixError("weight matrix needs n >= 1");
    for (const auto& row : k)
      if (static_cast<int>(row.size()) != n) throw WeightMatrixError("weight matrix must be square");
    const S minus_two = scalar_traits<S>::from_int(-2);
    const S zero = scalar_traits<S>::from_int(0);
    for (int i = 0; i < n; ++i) {
      if (!scalar_eq(k[i][i], minus_two))
        throw WeightMatrixError("weight matrix diagonal must be -2");
      for (int j = 0; j < n; ++j) {
        if (!scalar_eq(k[i][j], k[j][i])) throw WeightMatrixError("weight matrix must be symmetric");
        if (j - i > 1 && !scalar_eq(k[i][j], zero))
          throw WeightMatrixError("weight matrix must be tridiagonal");
      }
    }
    std::vector<S> neighbor;
    for (int i = 0; i + 1 < n; ++i) neighbor.push_back(k[i][i + 1]);
    return WeightMatrix(n, std::move(neighbor), prov);
  }

  int n() const { return n_; }
  Provenance provenance() const { return provenance_; }

  // k_ij for 1 <= i <= n; j may step outside 1..n and reads as zero.
  S at(int i, int j) const {
    if (i < 1 || i > n_) throw std::out_of_range("weight row index must be in 1..n");
    if (j < i - 1 || j > i + 1 || j < 1 || j > n_) return scalar_traits<S>::from_int(0);
    if (i == j) return scalar_traits<S>::from_int(-2);
    const int lo = std::min(i, j);
    return neighbor_[static_cast<std::size_t>(lo - 1)];
  }

  const std::vector<S>& neighbor_entries() const { return neighbor_; }

 private:
  int n_;
  std::vector<S> neighbor_;  // neighbor_[i-1] = k_{i,i+1}
  Provenance provenance_;
};

// k_{i,i+1} = (1/m_i) sqrt( 2/(1/m_i + 1/m_{i-1}) * 2/(1/m_{i+1} + 1/m_i) ).
// Float mode only; the value is irrational for generic masses.
inline WeightMatrix<double> weights_from_masses(const MassProfile<double>& masses) {
  masses.validate();
  const int n = masses.n();
  std::vector<double> neighbor;
  neighbor.reserve(n > 0 ? n - 1 : 0);
  for (int i = 1; i <= n - 1; ++i) {
    const double inv_prev = 1.0 / masses.m[i - 1];
    const double inv_mid = 1.0 / masses.m[i];
    const double inv_next = 1.0 / masses.m[i + 1];
    neighbor.push_back(inv_mid * std::sqrt((2.0 / (inv_mid + inv_prev)) * (2.0 / (inv_next + inv_mid))));
  }
  return WeightMatrix<double>(n, std::move(neighbor), WeightMatrix<double>::Provenance::FromMasses);
}

// Position in the numbers game, components 1..n. The implicit augmentation
// p_0 = p_{n+1} = 0 is applied by the operations, never stored.
template <class S>
struct GamePosition {
  std::vector<S> p;

  GamePosition() = default;
  explicit GamePosition(std::vector<S> values) : p(std::move(values)) {
    if (p.empty()) throw StateError("game position needs n >= 1");
  }

  int n() const { return static_cast<int>(p.size()); }
  const S& at(int i) const { return p.at(static_cast<std::size_t>(i - 1)); }
  S& at(int i) { return p.at(static_cast<std::size_t>(i - 1)); }
};

// Prefix sums q_i = p_0 + ... + p_i, i = 0..n (so q_0 = 0).
template <class S>
struct Potential {
  std::vector<S> q;
};

template <class S>
Potential<S> potential(const GamePosition<S>& pos) {
  Potential<S> out;
  out.q.reserve(pos.p.size() + 1);
  out.q.push_back(scalar_traits<S>::from_int(0));
  for (const S& pi : pos.p) out.q.push_back(out.q.back() + pi);
  return out;
}

template <class S>
bool is_negative_move(const GamePosition<S>& pos, int i) {
  return scalar_lt(pos.at(i), scalar_traits<S>::from_int(0));
}

// Nonnegative position <=> terminal. Equivalently the potential is a
// non-decreasing sequence.
template <class S>
bool is_terminal(const GamePosition<S>& pos) {
  const S zero = scalar_traits<S>::from_int(0);
  for (const S& pi : pos.p)
    if (scalar_lt(pi, zero)) return false;
  return true;
}

// Firing i: negate p_i and add p_i k_{i,j} to each neighbor component;
// neighbors outside 1..n are absorbed by the zero augmentation.
template <class S>
GamePosition<S> fire(const GamePosition<S>& pos, const WeightMatrix<S>& k, int i) {
  if (k.n() != pos.n()) throw StateError("fire: weight matrix size differs from position");
  if (i < 1 || i > pos.n()) throw std::out_of_range("fire index must be in 1..n");
  GamePosition<S> out = pos;
  const S pi = pos.at(i);
  out.at(i) = -pi;
  if (i - 1 >= 1) out.at(i - 1) = pos.at(i - 1) + pi * k.at(i, i - 1);
  if (i + 1 <= pos.n()) out.at(i + 1) = pos.at(i + 1) + pi * k.at(i, i + 1);
  return out;
}

struct InversionReport {
  std::size_t count = 0;
  // Float mode only: some pair sat within tolerance of a tie without being
  // identical, so the count is tolerance-sensitive at that pair.
  bool near_tie = false;
};

// Number of strict inversions of the potential: pairs i < j with q_i > q_j.
template <class S>
InversionReport inversion_number(const Potential<S>& pot) {
  InversionReport rep;
  const auto& q = pot.q;
  for (std::size_t i = 0; i + 1 < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (scalar_gt(q[i], q[j])) ++rep.count;
      if constexpr (!scalar_traits<S>::is_exact) {
        if (scalar_eq(q[i], q[j]) && q[i] != q[j]) rep.near_tie = true;
      }
    }
  return rep;
}

template <class S>
std::vector<int> negative_moves(const GamePosition<S>& pos) {
  std::vector<int> out;
  for (int i = 1; i <= pos.n(); ++i)
    if (is_negative_move(pos, i)) out.push_back(i);
  return out;
}

// Move-selection rule over the set of legal negative moves.
template <class S>
using Strategy = std::function<int(const GamePosition<S>&, const std::vector<int>&)>;

enum class StrategyKind { Leftmost, Rightmost, Random, MostNegative };

inline const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Leftmost: return "leftmost";
    case StrategyKind::Rightmost: return "rightmost";
    case StrategyKind::Random: return "random";
    case StrategyKind::MostNegative: return "most-negative";
  }
  return "?";
}

template <class S>
Strategy<S> make_strategy(StrategyKind kind, std::uint64_t seed = 0) {
  switch (kind) {
    case StrategyKind::Leftmost:
      return [](const GamePosition<S>&, const std::vector<int>& legal) { return legal.front(); };
    case StrategyKind::Rightmost:
      return [](const GamePosition<S>&, const std::vector<int>& legal) { return legal.back(); };
    case StrategyKind::Random: {
      auto rng = std::make_shared<Rng>(seed);
      return [rng](const GamePosition<S>&, const std::vector<int>& legal) {
        return legal[static_cast<std::size_t>(rng->uniform_int(0, static_cast<long>(legal.size()) - 1))];
      };
    }
    case StrategyKind::MostNegative:
      return [](const GamePosition<S>& pos, const std::vector<int>& legal) {
        int best = legal.front();
        for (int i : legal)
          if (scalar_lt(pos.at(i), pos.at(best))) best = i;
        return best;
      };
  }
  throw std::logic_error("unknown strategy kind");
}

template <class S>
struct PlayStep {
  int fired;
  GamePosition<S> position;
  std::size_t inversions;
};

template <class S>
struct PlayRecord {
  std::size_t initial_inversions = 0;
  std::vector<PlayStep<S>> steps;
  bool terminal = false;
  bool near_tie_seen = false;

  std::size_t moves() const { return steps.size(); }
};

// Plays negative moves chosen by `strategy` until the position is
// nonnegative or max_moves is reached, recording the potential's inversion
// number after every firing.
template <class S>
PlayRecord<S> play_negative_game(const GamePosition<S>& start, const WeightMatrix<S>& k,
                                 const Strategy<S>& strategy, std::size_t max_moves) {
  PlayRecord<S> rec;
  auto inv0 = inversion_number(potential(start));
  rec.initial_inversions = inv0.count;
  rec.near_tie_seen = inv0.near_tie;

  GamePosition<S> pos = start;
  while (rec.steps.size() < max_moves) {
    auto legal = negative_moves(pos);
    if (legal.empty()) {
      rec.terminal = true;
      return rec;
    }
    const int i = strategy(pos, legal);
    if (i < 1 || i > pos.n() || !is_negative_move(pos, i))
      throw StrategyIllegalMoveError("strategy selected index " + std::to_string(i) +
                                     " which is not a negative move");
    pos = fire(pos, k, i);
    auto inv = inversion_number(potential(pos));
    rec.near_tie_seen = rec.near_tie_seen || inv.near_tie;
    rec.steps.push_back({i, pos, inv.count});
  }
  rec.terminal = negative_moves(pos).empty();
  return rec;
}

// Default move cap when every neighbor weight satisfies the certificate
// condition k <= 1: one step of headroom over the n(n+1)/2 bound so a
// violation is observable rather than silently truncated.
inline std::size_t certified_move_cap(int n) {
  return static_cast<std::size_t>(n) * (n + 1) / 2 + 1;
}

}  // namespace hardball
