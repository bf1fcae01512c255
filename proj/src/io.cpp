#include "hardball/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "hardball/dynamics.hpp"

namespace hardball {

namespace {

Rational rational_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw InputError(field, "cannot parse '" + j.get<std::string>() + "' as a rational");
    return *r;
  }
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw InputError(field, "non-finite number");
    return Rational::from_double(d);
  }
  throw InputError(field, "expected a number or a numeric string");
}

}  // namespace

template <>
Rational parse_scalar<Rational>(const nlohmann::json& j, const std::string& field) {
  return rational_from_json(j, field);
}

template <>
double parse_scalar<double>(const nlohmann::json& j, const std::string& field) {
  return rational_from_json(j, field).to_double();
}

template <class S>
std::vector<S> parse_scalar_array(const nlohmann::json& j, const std::string& field,
                                  std::size_t min_len) {
  if (!j.is_array()) throw InputError(field, "expected an array");
  if (j.size() < min_len)
    throw InputError(field, "needs at least " + std::to_string(min_len) + " entries");
  std::vector<S> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_scalar<S>(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

template std::vector<Rational> parse_scalar_array<Rational>(const nlohmann::json&,
                                                            const std::string&, std::size_t);
template std::vector<double> parse_scalar_array<double>(const nlohmann::json&, const std::string&,
                                                        std::size_t);

template <>
nlohmann::json scalar_json<Rational>(const Rational& value) {
  return value.str();
}

template <>
nlohmann::json scalar_json<double>(const double& value) {
  return value;
}

template <class S>
nlohmann::json scalar_array_json(const std::vector<S>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values) arr.push_back(scalar_json<S>(v));
  return arr;
}

template nlohmann::json scalar_array_json<Rational>(const std::vector<Rational>&);
template nlohmann::json scalar_array_json<double>(const std::vector<double>&);

template <class S>
SystemInput<S> parse_system_input(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("(root)", "expected a JSON object");
  if (!j.contains("masses")) throw InputError("masses", "missing");
  if (!j.contains("positions")) throw InputError("positions", "missing");
  if (!j.contains("velocities")) throw InputError("velocities", "missing");

  SystemInput<S> in;
  try {
    in.masses = MassProfile<S>(parse_scalar_array<S>(j["masses"], "masses", 2));
  } catch (const NonPositiveMassError& e) {
    throw InputError("masses", e.what());
  } catch (const StateError& e) {
    throw InputError("masses", e.what());
  }
  std::vector<S> x = parse_scalar_array<S>(j["positions"], "positions");
  std::vector<S> v = parse_scalar_array<S>(j["velocities"], "velocities");
  S t = j.contains("time") ? parse_scalar<S>(j["time"], "time") : S(0);
  in.state = SystemState<S>(std::move(x), std::move(v), std::move(t));
  try {
    in.state.validate(in.masses);
  } catch (const StateError& e) {
    throw InputError("positions", e.what());
  }
  return in;
}

template SystemInput<Rational> parse_system_input<Rational>(const nlohmann::json&);
template SystemInput<double> parse_system_input<double>(const nlohmann::json&);

template <class S>
GameInput<S> parse_game_input(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("(root)", "expected a JSON object");
  if (!j.contains("start")) throw InputError("start", "missing");
  std::vector<S> start = parse_scalar_array<S>(j["start"], "start", 1);
  const int n = static_cast<int>(start.size());

  if (j.contains("masses")) {
    if constexpr (scalar_traits<S>::is_exact) {
      throw InputError("masses",
                       "mass-derived weights are irrational; exact mode needs explicit weights");
    } else {
      MassProfile<double> masses(parse_scalar_array<double>(j["masses"], "masses", 2));
      if (masses.n() != n)
        throw InputError("masses", "mass profile implies n = " + std::to_string(masses.n()) +
                                       " but start has n = " + std::to_string(n));
      return {GamePosition<S>(std::move(start)), weights_from_masses(masses)};
    }
  }
  if (j.contains("weights_offdiag")) {
    std::vector<S> neighbor = parse_scalar_array<S>(j["weights_offdiag"], "weights_offdiag");
    if (static_cast<int>(neighbor.size()) != n - 1)
      throw InputError("weights_offdiag", "needs exactly n-1 = " + std::to_string(n - 1) + " entries");
    return {GamePosition<S>(std::move(start)), WeightMatrix<S>(n, std::move(neighbor))};
  }
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) throw InputError("weights", "expected an array of rows");
    std::vector<std::vector<S>> full;
    for (std::size_t r = 0; r < j["weights"].size(); ++r)
      full.push_back(parse_scalar_array<S>(j["weights"][r], "weights[" + std::to_string(r) + "]"));
    if (static_cast<int>(full.size()) != n)
      throw InputError("weights", "matrix must be n x n with n = " + std::to_string(n));
    try {
      return {GamePosition<S>(std::move(start)), WeightMatrix<S>::from_full(full)};
    } catch (const WeightMatrixError& e) {
      throw InputError("weights", e.what());
    }
  }
  throw InputError("weights", "provide one of: masses, weights, weights_offdiag");
}

template GameInput<Rational> parse_game_input<Rational>(const nlohmann::json&);
template GameInput<double> parse_game_input<double>(const nlohmann::json&);

nlohmann::json RunSpec::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["mode"] = mode;
  j["tol"] = mode == "exact" ? 0.0 : tol;  // tau is ignored in exact mode
  j["seed"] = seed;
  j["input"] = input;
  j["output"] = output;
  j["max_events"] = max_events;
  j["max_moves"] = max_moves;
  j["trials"] = trials;
  j["strategy"] = strategy;
  j["n"] = n;
  j["mass_sampler"] = mass_sampler;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  return j;
}

template <class S>
nlohmann::json event_json(const CollisionEvent<S>& event) {
  nlohmann::json j;
  j["t"] = scalar_json<S>(event.time);
  nlohmann::json pairs = nlohmann::json::array();
  nlohmann::json pre = nlohmann::json::array();
  nlohmann::json post = nlohmann::json::array();
  for (const auto& p : event.pairs) {
    pairs.push_back(p.index);
    pre.push_back(nlohmann::json::array({scalar_json<S>(p.pre_left), scalar_json<S>(p.pre_right)}));
    post.push_back(
        nlohmann::json::array({scalar_json<S>(p.post_left), scalar_json<S>(p.post_right)}));
  }
  j["pairs"] = std::move(pairs);
  j["pre"] = std::move(pre);
  j["post"] = std::move(post);
  return j;
}

template nlohmann::json event_json<Rational>(const CollisionEvent<Rational>&);
template nlohmann::json event_json<double>(const CollisionEvent<double>&);

template <class S>
nlohmann::json trace_summary_json(const CollisionTrace<S>& trace, const MassProfile<S>& masses,
                                  const RunSpec& spec) {
  auto [p0, e0] = momentum_energy(masses, trace.initial);
  auto [p1, e1] = momentum_energy(masses, trace.final_state);

  nlohmann::json s;
  s["collisions"] = total_collisions(trace);
  s["events"] = trace.events.size();
  s["termination"] = termination_name(trace.termination);
  if (!trace.clash_pairs.empty()) {
    s["clash_pairs"] = trace.clash_pairs;
    if (trace.clash_time) s["clash_time"] = scalar_json<S>(*trace.clash_time);
  }
  s["momentum_residual"] = scalar_json<S>(S(p1 - p0));
  s["energy_residual"] = scalar_json<S>(S(e1 - e0));
  s["final"] = {{"positions", scalar_array_json<S>(trace.final_state.x)},
                {"velocities", scalar_array_json<S>(trace.final_state.v)},
                {"time", scalar_json<S>(trace.final_state.time)}};
  s["runspec"] = spec.to_json();
  return nlohmann::json{{"summary", std::move(s)}};
}

template nlohmann::json trace_summary_json<Rational>(const CollisionTrace<Rational>&,
                                                     const MassProfile<Rational>&, const RunSpec&);
template nlohmann::json trace_summary_json<double>(const CollisionTrace<double>&,
                                                   const MassProfile<double>&, const RunSpec&);

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what, std::string("invalid JSON: ") + e.what());
  }
}

std::string read_input_text(const std::string& path_or_dash) {
  if (path_or_dash == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path_or_dash);
  if (!in) throw InputError("input", "cannot open '" + path_or_dash + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace hardball
