#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hardball/types.hpp"

namespace hardball {

enum class SimultaneityPolicy {
  ErrorOnAdjacent,  // batch simultaneous non-adjacent pairs, refuse adjacent ones
  Forbidden,        // refuse any simultaneous multi-pair event
};

struct SimConfig {
  std::size_t max_events = 1000;
  SimultaneityPolicy policy = SimultaneityPolicy::ErrorOnAdjacent;

  // Generous headroom above the n(n+1)/2 bound so that violating systems
  // stay observable while adversarial inputs still terminate.
  static SimConfig defaults(int n) {
    SimConfig c;
    c.max_events = 10 * static_cast<std::size_t>(n) * (n + 1) / 2 + 100;
    return c;
  }
};

// Elastic collision of two adjacent balls. Momentum and kinetic energy
// are conserved; the outgoing pair separates.
template <class S>
std::pair<S, S> collide(const S& m_left, const S& m_right, const S& v_left, const S& v_right) {
  if (scalar_sign(m_left) <= 0 || scalar_sign(m_right) <= 0)
    throw NonPositiveMassError("collide: masses must be strictly positive");
  if (!scalar_gt(v_left, v_right))
    throw NonApproachingError("collide: left velocity must strictly exceed right velocity");
  const S sum = m_left + m_right;
  const S two = scalar_traits<S>::from_int(2);
  S post_left = ((m_left - m_right) * v_left + two * m_right * v_right) / sum;
  S post_right = (two * m_left * v_left + (m_right - m_left) * v_right) / sum;
  return {std::move(post_left), std::move(post_right)};
}

template <class S>
struct NextEvent {
  S time;                  // absolute clock value of the event
  std::vector<int> pairs;  // ascending pair indices achieving coincidence at `time`
};

// Earliest future coincidence among approaching adjacent pairs, with all
// pairs whose collision times are equal under the scalar mode's
// comparison batched together. Returns nothing when velocities are
// non-decreasing left to right.
template <class S>
std::optional<NextEvent<S>> next_event(const SystemState<S>& state, const MassProfile<S>& masses) {
  const int n = masses.n();
  std::vector<std::pair<int, S>> candidates;
  std::optional<S> best;
  for (int i = 1; i <= n; ++i) {
    const S& vl = state.v[i - 1];
    const S& vr = state.v[i];
    if (!scalar_gt(vl, vr)) continue;  // not strictly approaching
    S dt = (state.x[i] - state.x[i - 1]) / (vl - vr);
    if (!best || dt < *best) best = dt;
    candidates.emplace_back(i, std::move(dt));
  }
  if (!best) return std::nullopt;
  NextEvent<S> ev;
  ev.time = state.time + *best;
  for (auto& [i, dt] : candidates)
    if (scalar_eq(dt, *best)) ev.pairs.push_back(i);
  return ev;
}

enum class StepStatus { Advanced, Terminated, MultipleCollision };

template <class S>
struct StepResult {
  StepStatus status;
  SystemState<S> state;  // post-event state if Advanced, input state otherwise
  std::optional<CollisionEvent<S>> event;
  std::vector<int> clash_pairs;
  std::optional<S> clash_time;
};

namespace detail {
inline bool has_adjacent_pair(const std::vector<int>& sorted_pairs) {
  for (std::size_t k = 1; k < sorted_pairs.size(); ++k)
    if (sorted_pairs[k] - sorted_pairs[k - 1] == 1) return true;
  return false;
}
}  // namespace detail

// One event-driven step: ballistic advance to the next coincidence and
// simultaneous application of the collision law to every batched pair.
// Pairs sharing a ball would make the dynamics undefined; those refuse.
template <class S>
StepResult<S> step(const SystemState<S>& state, const MassProfile<S>& masses,
                   const SimConfig& config) {
  auto ev = next_event(state, masses);
  if (!ev) return {StepStatus::Terminated, state, std::nullopt, {}, {}};

  const bool multi = ev->pairs.size() > 1;
  if ((config.policy == SimultaneityPolicy::Forbidden && multi) ||
      detail::has_adjacent_pair(ev->pairs))
    return {StepStatus::MultipleCollision, state, std::nullopt, ev->pairs, ev->time};

  const S dt = ev->time - state.time;
  SystemState<S> next = state;
  next.time = ev->time;
  for (std::size_t j = 0; j < next.x.size(); ++j) next.x[j] = state.x[j] + state.v[j] * dt;

  CollisionEvent<S> event;
  event.time = ev->time;
  for (int i : ev->pairs) {
    // Pin both balls to the same contact point; in exact mode the advanced
    // positions already coincide, in float mode this removes rounding skew.
    S contact = state.x[i - 1] + state.v[i - 1] * dt;
    next.x[i - 1] = contact;
    next.x[i] = std::move(contact);
    auto [post_left, post_right] = collide(masses.m[i - 1], masses.m[i], state.v[i - 1], state.v[i]);
    event.pairs.push_back({i, state.v[i - 1], state.v[i], post_left, post_right});
    next.v[i - 1] = std::move(post_left);
    next.v[i] = std::move(post_right);
  }
  return {StepStatus::Advanced, std::move(next), std::move(event), {}, {}};
}

// Repeats `step` until the velocity sequence is sorted, the event cap is
// reached, or an undefined multiple collision is encountered (the partial
// trace is returned with the clash attached).
template <class S>
CollisionTrace<S> simulate(const SystemState<S>& initial, const MassProfile<S>& masses,
                           const SimConfig& config) {
  masses.validate();
  initial.validate(masses);
  if (config.max_events < 1) throw std::invalid_argument("max_events must be >= 1");

  CollisionTrace<S> trace;
  trace.initial = initial;
  SystemState<S> cur = initial;
  while (trace.events.size() < config.max_events) {
    auto r = step(cur, masses, config);
    if (r.status == StepStatus::Terminated) {
      trace.termination = Termination::Sorted;
      trace.final_state = std::move(cur);
      return trace;
    }
    if (r.status == StepStatus::MultipleCollision) {
      trace.termination = Termination::MultipleCollisionError;
      trace.clash_pairs = std::move(r.clash_pairs);
      trace.clash_time = std::move(r.clash_time);
      trace.final_state = std::move(cur);
      return trace;
    }
    trace.events.push_back(std::move(*r.event));
    cur = std::move(r.state);
  }
  trace.termination = next_event(cur, masses) ? Termination::EventCapReached : Termination::Sorted;
  trace.final_state = std::move(cur);
  return trace;
}

// Totals used by conservation checks: (sum m_i v_i, sum m_i v_i^2).
template <class S>
std::pair<S, S> momentum_energy(const MassProfile<S>& masses, const SystemState<S>& state) {
  S momentum = S(0);
  S energy2 = S(0);
  for (std::size_t i = 0; i < masses.m.size(); ++i) {
    momentum += masses.m[i] * state.v[i];
    energy2 += masses.m[i] * state.v[i] * state.v[i];
  }
  return {std::move(momentum), std::move(energy2)};
}

}  // namespace hardball
