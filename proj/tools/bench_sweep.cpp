// Times the serial reference path against the OpenMP path for the two
// trial-sweep kernels (conforming-ensemble audit and the numbers-game
// certificate sweep) and reports the speedup.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "hardball/analysis.hpp"
#include "hardball/game.hpp"

using namespace hardball;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds(t0, std::chrono::steady_clock::now());
}

// Certificate sweep body shared by both policies; results land in
// per-trial slots, so the two paths must agree exactly.
std::size_t game_sweep(std::size_t trials, std::uint64_t seed, ExecutionPolicy policy) {
  std::vector<std::size_t> moves(trials, 0);
  run_trials(trials, policy, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    std::vector<Rational> neighbor;
    for (int i = 0; i + 1 < n; ++i) neighbor.emplace_back(rng.uniform_int(0, 1 << 20), 1L << 20);
    WeightMatrix<Rational> k(n, std::move(neighbor));
    std::vector<Rational> p;
    for (int i = 0; i < n; ++i) p.emplace_back(rng.uniform_int(-9, 9));
    auto record = play_negative_game(GamePosition<Rational>(std::move(p)), k,
                                     make_strategy<Rational>(StrategyKind::Random, rng.next()),
                                     certified_move_cap(n));
    moves[t] = record.moves();
  });
  std::size_t total = 0;
  for (auto m : moves) total += m;
  return total;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t trials = 20000;
  if (argc > 1) trials = std::stoull(argv[1]);

  std::printf("threads: %d, trials per kernel: %zu\n", omp_get_max_threads(), trials);

  {
    EnsembleReport serial_rep, parallel_rep;
    const double ts = timed([&] {
      serial_rep = run_conforming_ensemble<Rational>(1, 6, trials, 42, ExecutionPolicy::Serial);
    });
    const double tp = timed([&] {
      parallel_rep = run_conforming_ensemble<Rational>(1, 6, trials, 42, ExecutionPolicy::Parallel);
    });
    const bool same = serial_rep.total_collisions == parallel_rep.total_collisions &&
                      serial_rep.violations == parallel_rep.violations &&
                      serial_rep.audit_failures == parallel_rep.audit_failures;
    std::printf("ensemble (exact): serial %.3fs | omp %.3fs | speedup %.2fx | results %s\n", ts, tp,
                ts / tp, same ? "identical" : "DIFFER");
    if (!same) return 1;
  }
  {
    std::size_t serial_total = 0, parallel_total = 0;
    const double ts = timed([&] { serial_total = game_sweep(trials, 7, ExecutionPolicy::Serial); });
    const double tp =
        timed([&] { parallel_total = game_sweep(trials, 7, ExecutionPolicy::Parallel); });
    std::printf("game sweep (exact): serial %.3fs | omp %.3fs | speedup %.2fx | results %s\n", ts,
                tp, ts / tp, serial_total == parallel_total ? "identical" : "DIFFER");
    if (serial_total != parallel_total) return 1;
  }
  return 0;
}
