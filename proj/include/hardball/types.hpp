#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardball/scalar.hpp"

namespace hardball {

struct NonPositiveMassError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonApproachingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StrategyIllegalMoveError : std::logic_error {
  using std::logic_error::logic_error;
};

struct CriticalFindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Masses of balls 0..n. n+1 entries, all strictly positive.
template <class S>
struct MassProfile {
  std::vector<S> m;

  MassProfile() = default;
  explicit MassProfile(std::vector<S> masses) : m(std::move(masses)) { validate(); }

  int n() const { return static_cast<int>(m.size()) - 1; }
  std::size_t size() const { return m.size(); }

  void validate() const {
    if (m.size() < 2) throw StateError("mass profile needs at least two balls");
    for (const S& mi : m)
      if (scalar_sign(mi) <= 0) throw NonPositiveMassError("masses must be strictly positive");
  }
};

// Positions, velocities and clock of the particle system. Ball order on
// the line never changes; a user-supplied state must have strictly
// increasing positions. States emitted at event instants may carry equal
// positions for the pairs that just collided.
template <class S>
struct SystemState {
  std::vector<S> x;
  std::vector<S> v;
  S time{};

  SystemState() = default;
  SystemState(std::vector<S> positions, std::vector<S> velocities, S t = S(0))
      : x(std::move(positions)), v(std::move(velocities)), time(std::move(t)) {}

  void validate(const MassProfile<S>& masses) const {
    if (x.size() != masses.size()) throw StateError("positions length differs from mass profile");
    if (v.size() != masses.size()) throw StateError("velocities length differs from mass profile");
    for (std::size_t i = 1; i < x.size(); ++i)
      if (!scalar_gt(x[i], x[i - 1])) throw StateError("positions must be strictly increasing");
  }
};

// One collided pair. `index` follows the 1..n convention: pair i means
// ball i-1 hit ball i.
template <class S>
struct PairUpdate {
  int index;
  S pre_left, pre_right;
  S post_left, post_right;
};

// Batch of simultaneous, pairwise non-adjacent collisions at one instant.
template <class S>
struct CollisionEvent {
  S time;
  std::vector<PairUpdate<S>> pairs;  // ascending by index, no two adjacent
};

enum class Termination { Sorted, EventCapReached, MultipleCollisionError };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Sorted: return "sorted";
    case Termination::EventCapReached: return "event_cap_reached";
    case Termination::MultipleCollisionError: return "multiple_collision_error";
  }
  return "?";
}

template <class S>
struct CollisionTrace {
  SystemState<S> initial;
  std::vector<CollisionEvent<S>> events;
  Termination termination = Termination::Sorted;
  SystemState<S> final_state;

  // Populated only on MultipleCollisionError: the clashing pair indices
  // and the instant they would have collided.
  std::vector<int> clash_pairs;
  std::optional<S> clash_time;
};

template <class S>
std::size_t total_collisions(const CollisionTrace<S>& trace) {
  std::size_t count = 0;
  for (const auto& ev : trace.events) count += ev.pairs.size();
  return count;
}

// Mode conversions (exact values round to nearest double).
inline MassProfile<double> to_float(const MassProfile<Rational>& mp) {
  std::vector<double> m;
  m.reserve(mp.m.size());
  for (const auto& s : mp.m) m.push_back(s.to_double());
  return MassProfile<double>(std::move(m));
}

inline SystemState<double> to_float(const SystemState<Rational>& st) {
  SystemState<double> out;
  out.x.reserve(st.x.size());
  out.v.reserve(st.v.size());
  for (const auto& s : st.x) out.x.push_back(s.to_double());
  for (const auto& s : st.v) out.v.push_back(s.to_double());
  out.time = st.time.to_double();
  return out;
}

inline CollisionTrace<double> to_float(const CollisionTrace<Rational>& tr) {
  CollisionTrace<double> out;
  out.initial = to_float(tr.initial);
  out.final_state = to_float(tr.final_state);
  out.termination = tr.termination;
  out.clash_pairs = tr.clash_pairs;
  if (tr.clash_time) out.clash_time = tr.clash_time->to_double();
  out.events.reserve(tr.events.size());
  for (const auto& ev : tr.events) {
    CollisionEvent<double> e;
    e.time = ev.time.to_double();
    for (const auto& p : ev.pairs)
      e.pairs.push_back({p.index, p.pre_left.to_double(), p.pre_right.to_double(),
                         p.post_left.to_double(), p.post_right.to_double()});
    out.events.push_back(std::move(e));
  }
  return out;
}

}  // namespace hardball
