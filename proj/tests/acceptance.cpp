// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardball/analysis.hpp"
#include "hardball/dynamics.hpp"
#include "hardball/embedding.hpp"
#include "hardball/game.hpp"
#include "hardball/io.hpp"
#include "support/generators.hpp"
#include "support/stepping_oracle.hpp"

using namespace hardball;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& run) {
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d: %s — %s%s%s [%.2f s]\n", number, ok ? "PASS" : "FAIL", title.c_str(),
              detail.empty() ? "" : "; ", detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const fs::path& dir, const std::string& args) {
  static int counter = 0;
  const fs::path out = dir / ("cli_out_" + std::to_string(counter++));
  const std::string cmd =
      std::string(HARDBALL_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  return r;
}

nlohmann::json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return nlohmann::json::parse(last);
}

constexpr std::uint64_t kEnsembleSeed = 20250810;

const char* kWitnessJson =
    R"({"masses":["1","1/100","1"],"positions":["0","1","15/7"],"velocities":["1","0","-1"]})";

bool per_event_conservation_exact(const CollisionTrace<Rational>& trace,
                                  const MassProfile<Rational>& masses) {
  auto [p, e] = momentum_energy(masses, trace.initial);
  std::vector<Rational> v = trace.initial.v;
  for (const auto& ev : trace.events) {
    for (const auto& pu : ev.pairs) {
      v[pu.index - 1] = pu.post_left;
      v[pu.index] = pu.post_right;
    }
    Rational pm(0), en(0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      pm += masses.m[j] * v[j];
      en += masses.m[j] * v[j] * v[j];
    }
    if (!(pm == p && en == e)) return false;
  }
  return true;
}

}  // namespace

int main() {
  set_float_tolerance(1e-9);

  fs::path workdir = fs::temp_directory_path() / ("hardball_acceptance_" + std::to_string(Rng(std::random_device{}()).next()));
  fs::create_directories(workdir);

  // shared between criteria 2/3/6
  EnsembleReport ensemble_exact, ensemble_float;

  criterion(1, "equal-mass attainment reaches exactly n(n+1)/2 for n = 1..30 (exact mode)",
            [&](std::string& detail) {
              for (int n = 1; n <= 30; ++n) {
                auto [masses, initial] = max_collision_initial(n);
                auto trace = simulate(initial, masses, SimConfig::defaults(n));
                const std::size_t want = static_cast<std::size_t>(n) * (n + 1) / 2;
                if (trace.termination != Termination::Sorted || total_collisions(trace) != want) {
                  detail = "n = " + std::to_string(n) + " gave " +
                           std::to_string(total_collisions(trace)) + " instead of " +
                           std::to_string(want);
                  return false;
                }
                if (!per_event_conservation_exact(trace, masses)) {
                  detail = "conservation broke at n = " + std::to_string(n);
                  return false;
                }
              }
              detail = "465 collisions at n = 30";
              return true;
            });

  criterion(2,
            "10,000 random conforming systems per mode stay within the bound, no critical findings",
            [&](std::string& detail) {
              ensemble_exact = run_conforming_ensemble<Rational>(1, 6, 10000, kEnsembleSeed);
              ensemble_float = run_conforming_ensemble<double>(1, 6, 10000, kEnsembleSeed);
              // the same sampled population through the search harness,
              // which aborts on any conforming violator
              std::size_t findings = 0;
              for (int n = 1; n <= 6; ++n) {
                auto r = search_violations<Rational>(n, conforming_mass_sampler(),
                                                     integer_velocity_sampler(), 1700,
                                                     kEnsembleSeed + n);
                findings += r.findings.size();
              }
              std::ostringstream os;
              os << "exact violations " << ensemble_exact.violations << ", float violations "
                 << ensemble_float.violations << ", search findings " << findings;
              detail = os.str();
              return ensemble_exact.violations == 0 && ensemble_float.violations == 0 &&
                     findings == 0;
            });

  criterion(3, "monotone certificate holds for every criterion-2 trace, checked by cmd_certify",
            [&](std::string& detail) {
              const std::string base = " --trials 10000 --n-min 1 --n-max 6 --seed " +
                                       std::to_string(kEnsembleSeed);
              auto exact = run_cli(workdir, "certify" + base);
              auto fl = run_cli(workdir, "certify --float" + base);
              std::ostringstream os;
              os << "in-process audits: exact " << ensemble_exact.audit_failures << "/"
                 << ensemble_exact.indeterminate_drops << ", float "
                 << ensemble_float.audit_failures << "/" << ensemble_float.indeterminate_drops
                 << "; cmd_certify exits " << exact.exit_code << " and " << fl.exit_code;
              detail = os.str();
              return ensemble_exact.audit_failures == 0 &&
                     ensemble_exact.indeterminate_drops == 0 &&
                     ensemble_float.audit_failures == 0 &&
                     ensemble_float.indeterminate_drops == 0 && exact.exit_code == 0 &&
                     fl.exit_code == 0;
            });

  criterion(4, "light-middle witness exceeds 3 collisions and the fixed-step oracle agrees",
            [&](std::string& detail) {
              MassProfile<Rational> masses({Rational(1), Rational(1, 100), Rational(1)});
              // The stated positions (0,1,2) with velocities (1,0,-1) close
              // both gaps at rate 1: the first event is a triple collision,
              // which this dynamics must refuse. The witness therefore uses
              // the generic spacing the position sampler mandates elsewhere.
              SystemState<Rational> stated({Rational(0), Rational(1), Rational(2)},
                                           {Rational(1), Rational(0), Rational(-1)});
              auto stated_trace = simulate(stated, masses, SimConfig::defaults(2));
              if (stated_trace.termination != Termination::MultipleCollisionError) {
                detail = "the equal-gap start should abort as a triple collision";
                return false;
              }
              SystemState<Rational> witness({Rational(0), Rational(1), Rational(15, 7)},
                                            {Rational(1), Rational(0), Rational(-1)});
              auto trace = simulate(witness, masses, SimConfig::defaults(2));
              auto oracle =
                  testing::fixed_step_collision_count(witness, masses, Rational(1, 8), 1000);
              std::ostringstream os;
              os << "generic spacing gives " << total_collisions(trace) << " collisions, oracle "
                 << oracle.collisions << "; equal-gap start aborts as documented";
              detail = os.str();
              return trace.termination == Termination::Sorted && total_collisions(trace) > 3 &&
                     total_collisions(trace) == 22 && !oracle.undefined &&
                     oracle.collisions == total_collisions(trace);
            });

  criterion(5, "embedding identities hold within 10*tau for 1,000 random mass profiles",
            [&](std::string& detail) {
              const double tol = 10.0 * float_tolerance();
              std::vector<unsigned char> ok(1000, 0);
              run_trials(ok.size(), ExecutionPolicy::Parallel, [&](std::size_t t) {
                Rng rng(derive_seed(555, t));
                const int n = static_cast<int>(rng.uniform_int(1, 8));
                auto masses = testing::random_masses_float(rng, n);
                auto g = build_embedding(masses);
                bool good = true;
                for (int i = 1; i <= n && good; ++i) {
                  good = good && std::fabs(norm(g.alpha(i)) - 1.0) <= tol;
                  good = good && std::fabs(dot(g.alpha(i), g.mass_vector())) <= tol;
                  for (int j = 1; j <= n; ++j)
                    if (std::abs(i - j) > 1) good = good && std::fabs(g.gram(i, j)) <= tol;
                }
                for (int i = 1; i <= n - 1 && good; ++i)
                  good = good &&
                         std::fabs(g.gram(i, i + 1) - neighbor_gram_closed_form(masses, i)) <= tol;
                // bridge identity on a random approaching pair
                auto vel = testing::random_velocities_float(rng, n + 1);
                const int i = static_cast<int>(rng.uniform_int(1, n));
                if (!(vel[i - 1] > vel[i])) std::swap(vel[i - 1], vel[i]);
                if (vel[i - 1] == vel[i]) vel[i - 1] += 1.0;
                auto [l, r] = collide(masses.m[i - 1], masses.m[i], vel[i - 1], vel[i]);
                std::vector<double> post = vel;
                post[i - 1] = l;
                post[i] = r;
                auto reflected = reflect(g, embed_velocities(masses, vel), i);
                auto embedded = embed_velocities(masses, post);
                for (std::size_t c = 0; c < embedded.coords.size() && good; ++c)
                  good = good && float_eq(reflected.coords[c], embedded.coords[c], tol);
                ok[t] = good ? 1 : 0;
              });
              std::size_t passed = 0;
              for (auto v : ok) passed += v;
              detail = std::to_string(passed) + "/1000 profiles clean";
              return passed == ok.size();
            });

  criterion(6, "conservation: bit-exact rationals, <= 1e-8 relative in float mode",
            [&](std::string& detail) {
              MassProfile<Rational> masses({Rational(1), Rational(1, 100), Rational(1)});
              SystemState<Rational> witness({Rational(0), Rational(1), Rational(15, 7)},
                                            {Rational(1), Rational(0), Rational(-1)});
              auto trace = simulate(witness, masses, SimConfig::defaults(2));
              const bool witness_exact = per_event_conservation_exact(trace, masses);
              std::ostringstream os;
              os << "ensemble residuals: momentum " << ensemble_float.max_momentum_residual
                 << ", energy " << ensemble_float.max_energy_residual;
              detail = os.str();
              return witness_exact && ensemble_exact.exact_conservation_ok &&
                     ensemble_float.max_momentum_residual <= 1e-8 &&
                     ensemble_float.max_energy_residual <= 1e-8;
            });

  criterion(7, "10,000 random weight matrices x 4 strategies terminate within n(n+1)/2",
            [&](std::string& detail) {
              const StrategyKind kinds[] = {StrategyKind::Leftmost, StrategyKind::Rightmost,
                                            StrategyKind::Random, StrategyKind::MostNegative};
              std::vector<unsigned char> ok(10000, 0);
              run_trials(ok.size(), ExecutionPolicy::Parallel, [&](std::size_t t) {
                Rng rng(derive_seed(777, t));
                const int n = static_cast<int>(rng.uniform_int(1, 6));
                std::vector<Rational> neighbor;
                for (int i = 0; i + 1 < n; ++i)
                  neighbor.emplace_back(rng.uniform_int(0, 1 << 20), 1L << 20);
                WeightMatrix<Rational> k(n, std::move(neighbor));
                std::vector<Rational> start;
                for (int i = 0; i < n; ++i) start.emplace_back(rng.uniform_int(-9, 9));
                GamePosition<Rational> p(std::move(start));
                const std::size_t bound = static_cast<std::size_t>(n) * (n + 1) / 2;
                bool good = true;
                for (auto kind : kinds) {
                  auto rec = play_negative_game(p, k, make_strategy<Rational>(kind, rng.next()),
                                                certified_move_cap(n));
                  good = good && rec.terminal && rec.moves() <= bound;
                  std::size_t prev = rec.initial_inversions;
                  for (const auto& step : rec.steps) {
                    good = good && step.inversions < prev;
                    prev = step.inversions;
                  }
                }
                ok[t] = good ? 1 : 0;
              });
              std::size_t passed = 0;
              for (auto v : ok) passed += v;
              detail = std::to_string(passed) + "/10000 matrices clean across all strategies";
              return passed == ok.size();
            });

  criterion(8, "k = 3/2 admits plays beyond 3 moves (exhaustive integer starts in [-5,5]^2)",
            [&](std::string& detail) {
              WeightMatrix<Rational> k(2, {Rational(3, 2)});
              std::function<bool(GamePosition<Rational>, std::size_t)> exceeds =
                  [&](GamePosition<Rational> pos, std::size_t moves) -> bool {
                if (moves > 3) return true;
                for (int i : negative_moves(pos))
                  if (exceeds(fire(pos, k, i), moves + 1)) return true;
                return false;
              };
              int witnesses = 0;
              for (long a = -5; a <= 5; ++a)
                for (long b = -5; b <= 5; ++b)
                  if (exceeds(GamePosition<Rational>({Rational(a), Rational(b)}), 0)) ++witnesses;
              detail = std::to_string(witnesses) + " of 121 starts exceed the bound";
              return witnesses >= 1;
            });

  criterion(9, "masses (1,2,4) pass the geometric check and fail the arithmetic check",
            [&](std::string& detail) {
              auto exact =
                  check_conditions(MassProfile<Rational>({Rational(1), Rational(2), Rational(4)}));
              auto fl = check_conditions(MassProfile<double>({1.0, 2.0, 4.0}));
              detail = "exact and float reports agree";
              return exact.geometric_ok && !exact.arithmetic_ok && fl.geometric_ok &&
                     !fl.arithmetic_ok;
            });

  criterion(10, "identical run specs reproduce byte-identical event logs",
            [&](std::string& detail) {
              // criterion-1-style run
              auto [masses6, initial6] = max_collision_initial(6);
              nlohmann::json sys;
              sys["masses"] = scalar_array_json<Rational>(masses6.m);
              sys["positions"] = scalar_array_json<Rational>(initial6.x);
              sys["velocities"] = scalar_array_json<Rational>(initial6.v);
              const fs::path attain = workdir / "attainment6.json";
              std::ofstream(attain) << sys.dump();
              const fs::path witness = workdir / "witness.json";
              std::ofstream(witness) << kWitnessJson;

              for (const fs::path& input : {attain, witness}) {
                const fs::path out = workdir / (input.stem().string() + ".jsonl");
                auto first = run_cli(workdir, "simulate --out " + out.string() + " " + input.string());
                const std::string log1 = slurp(out);
                auto second = run_cli(workdir, "simulate --out " + out.string() + " " + input.string());
                const std::string log2 = slurp(out);
                if (first.exit_code != 0 || second.exit_code != 0 || log1.empty() || log1 != log2) {
                  detail = "rerun of " + input.filename().string() + " differed";
                  return false;
                }
              }
              detail = "attainment and witness logs identical across reruns";
              return true;
            });

  std::error_code ec;
  fs::remove_all(workdir, ec);

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
