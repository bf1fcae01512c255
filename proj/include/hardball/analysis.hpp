#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardball/dynamics.hpp"
#include "hardball/game.hpp"
#include "hardball/rng.hpp"
#include "hardball/sweep.hpp"
#include "hardball/types.hpp"

namespace hardball {

// Mass-condition report. geometric margins are m_i^2 - m_{i-1} m_{i+1}
// (sign-equivalent to the geometric-mean condition and computable in both
// modes); arithmetic margins are m_i - (m_{i-1}+m_{i+1})/2. weights_ok
// records k_{i,i+1} <= 1 separately: the geometric condition implies it,
// but the converse is not asserted anywhere.
template <class S>
struct ConditionReport {
  bool geometric_ok = true;
  bool arithmetic_ok = true;
  bool weights_ok = true;
  std::vector<S> geometric_margins;
  std::vector<S> arithmetic_margins;
  std::vector<double> neighbor_weights;  // k_{i,i+1}, float values in both modes
};

template <class S>
ConditionReport<S> check_conditions(const MassProfile<S>& masses) {
  masses.validate();
  ConditionReport<S> rep;
  const int n = masses.n();
  const S two = scalar_traits<S>::from_int(2);
  const S four = scalar_traits<S>::from_int(4);
  const S one = scalar_traits<S>::from_int(1);
  for (int i = 1; i <= n - 1; ++i) {
    const S& prev = masses.m[i - 1];
    const S& mid = masses.m[i];
    const S& next = masses.m[i + 1];
    S geo = mid * mid - prev * next;
    S arith = mid - (prev + next) / two;
    rep.geometric_ok = rep.geometric_ok && scalar_ge(geo, S(0));
    rep.arithmetic_ok = rep.arithmetic_ok && scalar_ge(arith, S(0));
    // k_{i,i+1}^2 = 4 m_{i-1} m_{i+1} / ((m_i+m_{i-1})(m_i+m_{i+1})) is
    // rational, so exact mode needs no square root for the <= 1 test.
    S k_sq = four * prev * next / ((mid + prev) * (mid + next));
    if constexpr (scalar_traits<S>::is_exact) {
      rep.weights_ok = rep.weights_ok && scalar_le(k_sq, one);
    } else {
      rep.weights_ok = rep.weights_ok && scalar_le(std::sqrt(scalar_traits<S>::to_double(k_sq)), 1.0);
    }
    rep.neighbor_weights.push_back(std::sqrt(scalar_traits<S>::to_double(k_sq)));
    rep.geometric_margins.push_back(std::move(geo));
    rep.arithmetic_margins.push_back(std::move(arith));
  }
  return rep;
}

// p_i = (v_i - v_{i-1}) / sqrt(1/m_i + 1/m_{i-1}), the closed form of the
// collision coordinate (alpha_i, v). Float mode only.
GamePosition<double> game_position_of_state(const MassProfile<double>& masses,
                                            std::span<const double> velocities);

struct CrossValidateReport {
  bool ok = true;
  bool weights_ok = false;
  // Inversion number of the game potential before any event, then after
  // each event; length = events + 1.
  std::vector<std::size_t> inversions;
  // Events where some potential pair sat within tolerance of a tie; the
  // inversion count is tolerance-sensitive there. Purely diagnostic.
  std::size_t near_tie_events = 0;
  // Drop-check shortfalls at near-tie events: indeterminate at this
  // tolerance rather than wrong, so they are reported separately instead
  // of failing the audit.
  std::size_t indeterminate_drops = 0;
  std::optional<std::size_t> mismatch_event;  // 0-based index of first failing event
  std::string failure;
};

// Replays a trace's collision sequence as numbers-game firings and checks
// the correspondence event by event: fired coordinates are non-positive,
// the fired position matches the one recomputed from the simulator's
// velocities within 10*tau, and under weights_ok the potential's inversion
// number drops by at least the batch size.
CrossValidateReport cross_validate(const CollisionTrace<double>& trace,
                                   const MassProfile<double>& masses);

inline CrossValidateReport cross_validate(const CollisionTrace<Rational>& trace,
                                          const MassProfile<Rational>& masses) {
  return cross_validate(to_float(trace), to_float(masses));
}

// Equal masses, strictly decreasing velocities, pairwise-distinct gaps
// 1 + (i-1)/7. For this start no two pairs sharing a ball ever collide at
// the same instant, and simulation yields exactly n(n+1)/2 collisions.
std::pair<MassProfile<Rational>, SystemState<Rational>> max_collision_initial(int n);

// Samplers produce exact rationals; float-mode consumers convert.
using MassSampler = std::function<std::vector<Rational>(int n, Rng&)>;
using VelocitySampler = std::function<std::vector<Rational>(int n, Rng&)>;

// Geometric-mean-conforming masses, rejection-free: a random base mass
// times a non-increasing sequence of ratios (non-increasing ratios are the
// log-concavity condition, kept exact in rational arithmetic).
MassSampler conforming_mass_sampler();
// Independent ratios; may violate the condition.
MassSampler unconstrained_mass_sampler();
MassSampler pinned_mass_sampler(std::vector<Rational> masses);

// Integers in [-n, n] with adjacent entries distinct.
VelocitySampler integer_velocity_sampler();

// x_0 = 0, gaps 1 + j/97 with random j; avoids tau-scale near-ties.
std::vector<Rational> generic_positions(int n, Rng& rng);

template <class S>
std::vector<S> from_rational_vec(const std::vector<Rational>& v) {
  if constexpr (scalar_traits<S>::is_exact) {
    return v;
  } else {
    std::vector<S> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(r.to_double());
    return out;
  }
}

template <class S>
struct Finding {
  std::size_t trial;
  MassProfile<S> masses;
  SystemState<S> initial;
  std::size_t collisions;  // lower bound when capped ("at least this many")
  bool capped;
  Termination termination;
  bool geometric_ok;
};

template <class S>
struct SearchResult {
  int n = 0;
  std::size_t trials = 0;
  std::size_t bound = 0;
  std::vector<Finding<S>> findings;
  std::size_t multiple_collision_aborts = 0;
  std::size_t capped_runs = 0;
};

// Random systems whose simulated collision count exceeds n(n+1)/2. Every
// returned profile must fail the geometric condition; a conforming
// violator would contradict the certified bound and aborts the sweep as a
// critical finding (an implementation bug, not a disproof).
template <class S>
SearchResult<S> search_violations(int n, const MassSampler& mass_sampler,
                                  const VelocitySampler& velocity_sampler, std::size_t trials,
                                  std::uint64_t seed,
                                  ExecutionPolicy policy = ExecutionPolicy::Parallel) {
  if (n < 1) throw std::invalid_argument("search_violations: n must be >= 1");
  SearchResult<S> result;
  result.n = n;
  result.trials = trials;
  result.bound = static_cast<std::size_t>(n) * (n + 1) / 2;

  std::vector<std::optional<Finding<S>>> slots(trials);
  std::vector<unsigned char> aborted(trials, 0), capped(trials, 0);
  const SimConfig config = SimConfig::defaults(n);

  run_trials(trials, policy, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    MassProfile<S> masses(from_rational_vec<S>(mass_sampler(n, rng)));
    std::vector<S> velocities = from_rational_vec<S>(velocity_sampler(n, rng));
    std::vector<S> positions = from_rational_vec<S>(generic_positions(n, rng));
    SystemState<S> initial(std::move(positions), std::move(velocities));

    auto trace = simulate(initial, masses, config);
    const std::size_t count = total_collisions(trace);
    if (trace.termination == Termination::MultipleCollisionError) aborted[t] = 1;
    const bool hit_cap = trace.termination == Termination::EventCapReached;
    if (hit_cap) capped[t] = 1;

    if (count > result.bound) {
      const auto report = check_conditions(masses);
      if (report.geometric_ok)
        throw CriticalFindingError(
            "conforming mass profile exceeded the n(n+1)/2 bound at trial " + std::to_string(t) +
            " with " + std::to_string(count) + " collisions");
      slots[t] = Finding<S>{t,     masses,          initial, count,
                            hit_cap, trace.termination, report.geometric_ok};
    }
  });

  for (std::size_t t = 0; t < trials; ++t) {
    result.multiple_collision_aborts += aborted[t];
    result.capped_runs += capped[t];
    if (slots[t]) result.findings.push_back(std::move(*slots[t]));
  }
  return result;
}

struct EnsembleReport {
  std::size_t trials = 0;
  std::size_t violations = 0;       // collision count above n(n+1)/2
  std::size_t audit_failures = 0;   // cross_validate hard failures
  std::size_t near_tie_events = 0;  // tolerance-scale diagnostics (float mode)
  std::size_t indeterminate_drops = 0;
  std::size_t aborted = 0;          // MultipleCollisionError partial traces
  std::size_t capped = 0;
  std::size_t total_events = 0;
  std::size_t total_collisions = 0;
  double max_momentum_residual = 0.0;  // relative, float mode
  double max_energy_residual = 0.0;
  bool exact_conservation_ok = true;  // exact mode: sums bit-identical
};

// Shared engine behind `certify --trials` and `search` on conforming
// inputs: random conforming systems, simulated and cross-validated, with
// conservation residuals tracked. Trials are independent; results merge
// by trial index, so Serial and Parallel agree exactly.
template <class S>
EnsembleReport run_conforming_ensemble(int n_min, int n_max, std::size_t trials,
                                       std::uint64_t seed,
                                       ExecutionPolicy policy = ExecutionPolicy::Parallel) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("bad ensemble n range");
  const auto mass_sampler = conforming_mass_sampler();
  const auto velocity_sampler = integer_velocity_sampler();

  struct TrialRow {
    unsigned char violation = 0, audit_fail = 0, aborted = 0, capped = 0, exact_ok = 1;
    std::size_t near_ties = 0, indeterminate = 0, events = 0, collisions = 0;
    double momentum_residual = 0.0, energy_residual = 0.0;
  };
  std::vector<TrialRow> rows(trials);

  run_trials(trials, policy, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const int n = static_cast<int>(rng.uniform_int(n_min, n_max));
    MassProfile<S> masses(from_rational_vec<S>(mass_sampler(n, rng)));
    std::vector<S> velocities = from_rational_vec<S>(velocity_sampler(n, rng));
    std::vector<S> positions = from_rational_vec<S>(generic_positions(n, rng));
    SystemState<S> initial(std::move(positions), std::move(velocities));

    auto trace = simulate(initial, masses, SimConfig::defaults(n));
    TrialRow row;
    row.events = trace.events.size();
    row.collisions = total_collisions(trace);
    const std::size_t bound = static_cast<std::size_t>(n) * (n + 1) / 2;
    if (row.collisions > bound) row.violation = 1;
    if (trace.termination == Termination::MultipleCollisionError) row.aborted = 1;
    if (trace.termination == Termination::EventCapReached) row.capped = 1;

    auto audit = cross_validate(trace, masses);
    row.audit_fail = audit.ok ? 0 : 1;
    row.near_ties = audit.near_tie_events;
    row.indeterminate = audit.indeterminate_drops;

    auto [p0, e0] = momentum_energy(masses, trace.initial);
    auto [p1, e1] = momentum_energy(masses, trace.final_state);
    if constexpr (scalar_traits<S>::is_exact) {
      row.exact_ok = (p0 == p1 && e0 == e1) ? 1 : 0;
    } else {
      const double pscale = std::max(1.0, std::fabs(scalar_traits<S>::to_double(p0)));
      const double escale = std::max(1.0, std::fabs(scalar_traits<S>::to_double(e0)));
      row.momentum_residual = std::fabs(scalar_traits<S>::to_double(p1 - p0)) / pscale;
      row.energy_residual = std::fabs(scalar_traits<S>::to_double(e1 - e0)) / escale;
    }
    rows[t] = row;
  });

  EnsembleReport rep;
  rep.trials = trials;
  for (const auto& row : rows) {
    rep.violations += row.violation;
    rep.audit_failures += row.audit_fail;
    rep.near_tie_events += row.near_ties;
    rep.indeterminate_drops += row.indeterminate;
    rep.aborted += row.aborted;
    rep.capped += row.capped;
    rep.total_events += row.events;
    rep.total_collisions += row.collisions;
    rep.max_momentum_residual = std::max(rep.max_momentum_residual, row.momentum_residual);
    rep.max_energy_residual = std::max(rep.max_energy_residual, row.energy_residual);
    rep.exact_conservation_ok = rep.exact_conservation_ok && row.exact_ok;
  }
  return rep;
}

}  // namespace hardball
