// Command-line front end: event-driven simulation, numbers-game plays,
// mass-condition checks, trace certification, and the violation search.
// Output is line-delimited JSON; every summary embeds the full run spec.
//
// Exit codes: 0 ok, 1 bad input, 2 multiple collision, 3 cap reached,
// 4 condition failed, 5 audit failed, 6 critical finding.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "hardball/analysis.hpp"
#include "hardball/dynamics.hpp"
#include "hardball/game.hpp"
#include "hardball/io.hpp"

namespace {

using namespace hardball;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMultipleCollision = 2;
constexpr int kExitCap = 3;
constexpr int kExitConditionFail = 4;
constexpr int kExitAuditFail = 5;
constexpr int kExitCritical = 6;

// Sink for line-delimited JSON: a file when --out is given (relative
// paths optionally rebased onto HARDBALL_OUT_DIR), stdout otherwise.
class OutputSink {
 public:
  explicit OutputSink(const std::string& out_path) {
    if (out_path.empty()) return;
    std::filesystem::path p(out_path);
    if (const char* dir = std::getenv("HARDBALL_OUT_DIR"); dir && p.is_relative())
      p = std::filesystem::path(dir) / p;
    file_ = std::make_unique<std::ofstream>(p);
    if (!*file_) throw InputError("output", "cannot open '" + p.string() + "' for writing");
  }

  void line(const nlohmann::json& j) { stream() << j.dump() << "\n"; }

 private:
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  std::unique_ptr<std::ofstream> file_;
};

StrategyKind parse_strategy(const std::string& name) {
  if (name == "leftmost") return StrategyKind::Leftmost;
  if (name == "rightmost") return StrategyKind::Rightmost;
  if (name == "random") return StrategyKind::Random;
  if (name == "most-negative") return StrategyKind::MostNegative;
  throw InputError("strategy", "unknown strategy '" + name + "'");
}

template <class S>
int run_simulate(const RunSpec& spec) {
  auto input = parse_system_input<S>(parse_json_text(read_input_text(spec.input), "input"));
  SimConfig config = SimConfig::defaults(input.masses.n());
  if (spec.max_events > 0) config.max_events = spec.max_events;

  auto trace = simulate(input.state, input.masses, config);

  OutputSink out(spec.output);
  for (const auto& ev : trace.events) out.line(event_json<S>(ev));
  out.line(trace_summary_json<S>(trace, input.masses, spec));

  switch (trace.termination) {
    case Termination::Sorted: return kExitOk;
    case Termination::MultipleCollisionError: return kExitMultipleCollision;
    case Termination::EventCapReached: return kExitCap;
  }
  return kExitOk;
}

template <class S>
int run_game(const RunSpec& spec) {
  auto input = parse_game_input<S>(parse_json_text(read_input_text(spec.input), "input"));
  const int n = input.start.n();
  const std::size_t bound = static_cast<std::size_t>(n) * (n + 1) / 2;

  const S one = scalar_traits<S>::from_int(1);
  bool certified = true;
  for (const S& k : input.weights.neighbor_entries())
    certified = certified && scalar_le(k, one);

  std::size_t max_moves = spec.max_moves;
  if (max_moves == 0) {
    if (!certified)
      throw InputError("max-moves",
                       "some neighbor weight exceeds 1; the bound does not apply, pass --max-moves");
    max_moves = certified_move_cap(n);
  }

  auto strategy = make_strategy<S>(parse_strategy(spec.strategy), spec.seed);
  auto record = play_negative_game(input.start, input.weights, strategy, max_moves);

  OutputSink out(spec.output);
  for (const auto& step : record.steps) {
    nlohmann::json j;
    j["fired"] = step.fired;
    j["position"] = scalar_array_json<S>(step.position.p);
    j["inversions"] = step.inversions;
    out.line(j);
  }
  nlohmann::json s;
  s["moves"] = record.moves();
  s["terminal"] = record.terminal;
  s["initial_inversions"] = record.initial_inversions;
  s["bound"] = bound;
  s["bound_exceeded"] = record.moves() > bound;
  s["certified_weights"] = certified;
  s["near_ties"] = record.near_tie_seen;
  s["runspec"] = spec.to_json();
  out.line(nlohmann::json{{"summary", std::move(s)}});

  return record.terminal ? kExitOk : kExitCap;
}

template <class S>
int run_check(const RunSpec& spec) {
  auto j = parse_json_text(read_input_text(spec.input), "input");
  if (!j.is_object() || !j.contains("masses")) throw InputError("masses", "missing");
  MassProfile<S> masses;
  try {
    masses = MassProfile<S>(parse_scalar_array<S>(j["masses"], "masses", 2));
  } catch (const NonPositiveMassError& e) {
    throw InputError("masses", e.what());
  } catch (const StateError& e) {
    throw InputError("masses", e.what());
  }
  auto rep = check_conditions(masses);

  nlohmann::json r;
  r["n"] = masses.n();
  r["geometric_ok"] = rep.geometric_ok;
  r["arithmetic_ok"] = rep.arithmetic_ok;
  r["weights_ok"] = rep.weights_ok;
  r["geometric_margins"] = scalar_array_json<S>(rep.geometric_margins);
  r["arithmetic_margins"] = scalar_array_json<S>(rep.arithmetic_margins);
  r["neighbor_weights"] = rep.neighbor_weights;
  r["runspec"] = spec.to_json();
  OutputSink out(spec.output);
  out.line(r);
  return rep.geometric_ok ? kExitOk : kExitConditionFail;
}

template <class S>
int run_certify(const RunSpec& spec) {
  OutputSink out(spec.output);

  if (spec.trials > 0) {
    auto rep = run_conforming_ensemble<S>(spec.n_min, spec.n_max, spec.trials, spec.seed);
    nlohmann::json s;
    s["trials"] = rep.trials;
    s["violations"] = rep.violations;
    s["audit_failures"] = rep.audit_failures;
    s["indeterminate_drops"] = rep.indeterminate_drops;
    s["near_tie_events"] = rep.near_tie_events;
    s["aborted"] = rep.aborted;
    s["capped"] = rep.capped;
    s["total_collisions"] = rep.total_collisions;
    s["max_momentum_residual"] = rep.max_momentum_residual;
    s["max_energy_residual"] = rep.max_energy_residual;
    s["exact_conservation_ok"] = rep.exact_conservation_ok;
    s["runspec"] = spec.to_json();
    out.line(nlohmann::json{{"summary", std::move(s)}});
    if (rep.violations > 0) return kExitCritical;
    return (rep.audit_failures == 0 && rep.indeterminate_drops == 0) ? kExitOk : kExitAuditFail;
  }

  auto input = parse_system_input<S>(parse_json_text(read_input_text(spec.input), "input"));
  SimConfig config = SimConfig::defaults(input.masses.n());
  if (spec.max_events > 0) config.max_events = spec.max_events;
  auto trace = simulate(input.state, input.masses, config);
  auto audit = cross_validate(trace, input.masses);

  nlohmann::json s;
  s["collisions"] = total_collisions(trace);
  s["termination"] = termination_name(trace.termination);
  s["inversions"] = audit.inversions;
  s["weights_ok"] = audit.weights_ok;
  s["audit"] = audit.ok ? "pass" : "fail";
  s["near_tie_events"] = audit.near_tie_events;
  s["indeterminate_drops"] = audit.indeterminate_drops;
  if (!audit.ok) {
    s["mismatch_event"] = *audit.mismatch_event;
    s["failure"] = audit.failure;
  }
  s["runspec"] = spec.to_json();
  out.line(nlohmann::json{{"summary", std::move(s)}});
  return audit.ok ? kExitOk : kExitAuditFail;
}

template <class S>
int run_search(const RunSpec& spec) {
  if (spec.n < 1) throw InputError("n", "must be >= 1");
  if (spec.trials < 1) throw InputError("trials", "must be >= 1");

  MassSampler mass_sampler;
  if (spec.mass_sampler == "conforming") {
    mass_sampler = conforming_mass_sampler();
  } else if (spec.mass_sampler == "uniform") {
    mass_sampler = unconstrained_mass_sampler();
  } else if (spec.mass_sampler.rfind("pinned:", 0) == 0) {
    std::vector<Rational> pinned;
    std::string rest = spec.mass_sampler.substr(7);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
      auto r = Rational::parse(tok);
      if (!r) throw InputError("mass-sampler", "cannot parse pinned mass '" + tok + "'");
      pinned.push_back(*r);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(pinned.size()) != spec.n + 1)
      throw InputError("mass-sampler", "pinned list needs n+1 masses");
    for (const auto& m : pinned)
      if (m.sign() <= 0) throw InputError("mass-sampler", "masses must be strictly positive");
    mass_sampler = pinned_mass_sampler(std::move(pinned));
  } else {
    throw InputError("mass-sampler", "expected conforming | uniform | pinned:<m0,m1,...>");
  }

  OutputSink out(spec.output);
  try {
    auto result = search_violations<S>(spec.n, mass_sampler, integer_velocity_sampler(),
                                       spec.trials, spec.seed);
    for (const auto& f : result.findings) {
      nlohmann::json j;
      j["trial"] = f.trial;
      j["masses"] = scalar_array_json<S>(f.masses.m);
      j["positions"] = scalar_array_json<S>(f.initial.x);
      j["velocities"] = scalar_array_json<S>(f.initial.v);
      j["collisions"] = f.collisions;
      j["collisions_is_lower_bound"] = f.capped;  // ">= cap", not an exact count
      j["geometric_ok"] = f.geometric_ok;
      out.line(j);
    }
    nlohmann::json s;
    s["trials"] = result.trials;
    s["n"] = result.n;
    s["bound"] = result.bound;
    s["findings"] = result.findings.size();
    s["multiple_collision_aborts"] = result.multiple_collision_aborts;
    s["capped_runs"] = result.capped_runs;
    s["runspec"] = spec.to_json();
    out.line(nlohmann::json{{"summary", std::move(s)}});
    return kExitOk;
  } catch (const CriticalFindingError& e) {
    nlohmann::json s;
    s["critical_finding"] = e.what();
    s["runspec"] = spec.to_json();
    out.line(nlohmann::json{{"summary", std::move(s)}});
    return kExitCritical;
  }
}

template <int (*ExactFn)(const RunSpec&), int (*FloatFn)(const RunSpec&)>
int dispatch(const RunSpec& spec) {
  if (spec.mode == "float") {
    set_float_tolerance(spec.tol);
    return FloatFn(spec);
  }
  return ExactFn(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-dimensional hard-ball collision laboratory"};
  app.require_subcommand(1);

  RunSpec spec;
  bool use_float = false;
  bool use_exact = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--float", use_float, "float mode with comparison tolerance tau");
    cmd->add_flag("--exact", use_exact, "exact rational mode (default)");
    cmd->add_option("--tol", spec.tol, "float-mode comparison tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", spec.seed, "random seed (recorded in output)");
    cmd->add_option("--out", spec.output, "output path (default: stdout)");
  };

  auto* sim = app.add_subcommand("simulate", "run the event-driven simulator");
  sim->add_option("input", spec.input, "system JSON path, or - for stdin")->required();
  sim->add_option("--max-events", spec.max_events, "event cap (default 10*n(n+1)/2+100)");
  add_common(sim);

  auto* game = app.add_subcommand("game", "play a negative numbers game");
  game->add_option("input", spec.input, "game JSON path, or - for stdin")->required();
  game->add_option("--strategy", spec.strategy, "leftmost | rightmost | random | most-negative");
  game->add_option("--max-moves", spec.max_moves, "move cap (defaults to n(n+1)/2+1 when all k <= 1)");
  add_common(game);

  auto* check = app.add_subcommand("check", "evaluate the mass conditions");
  check->add_option("input", spec.input, "JSON path with a masses array, or - for stdin")->required();
  add_common(check);

  auto* certify = app.add_subcommand("certify", "simulate and audit the game correspondence");
  certify->add_option("input", spec.input, "system JSON path, or - for stdin");
  certify->add_option("--trials", spec.trials, "audit a random conforming ensemble instead");
  certify->add_option("--n-min", spec.n_min, "ensemble minimum n");
  certify->add_option("--n-max", spec.n_max, "ensemble maximum n");
  certify->add_option("--max-events", spec.max_events, "event cap for single-system audits");
  add_common(certify);

  auto* search = app.add_subcommand("search", "sample systems and report bound violations");
  search->add_option("--n", spec.n, "number of adjacent pairs (balls - 1)")->required();
  search->add_option("--trials", spec.trials, "number of sampled systems")->required();
  search->add_option("--mass-sampler", spec.mass_sampler,
                     "conforming | uniform | pinned:<m0,m1,...>");
  add_common(search);

  CLI11_PARSE(app, argc, argv);

  try {
    if (use_float && use_exact) throw InputError("mode", "--float and --exact are exclusive");
    spec.mode = use_float ? "float" : "exact";
    if (sim->parsed()) {
      spec.subcommand = "simulate";
      return dispatch<run_simulate<Rational>, run_simulate<double>>(spec);
    }
    if (game->parsed()) {
      spec.subcommand = "game";
      return dispatch<run_game<Rational>, run_game<double>>(spec);
    }
    if (check->parsed()) {
      spec.subcommand = "check";
      return dispatch<run_check<Rational>, run_check<double>>(spec);
    }
    if (certify->parsed()) {
      spec.subcommand = "certify";
      if (spec.trials == 0 && spec.input.empty())
        throw InputError("input", "provide a system file or --trials");
      return dispatch<run_certify<Rational>, run_certify<double>>(spec);
    }
    if (search->parsed()) {
      spec.subcommand = "search";
      return dispatch<run_search<Rational>, run_search<double>>(spec);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
