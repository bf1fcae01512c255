#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardball/analysis.hpp"
#include "hardball/game.hpp"
#include "hardball/types.hpp"

namespace hardball {

// Input rejection with the offending field attached; the CLI surfaces the
// field name in its diagnostic and exits 1.
struct InputError : std::runtime_error {
  std::string field;
  InputError(std::string field_name, const std::string& why)
      : std::runtime_error("field '" + field_name + "': " + why), field(std::move(field_name)) {}
};

// Scalars accept rational strings "a/b", exact decimal strings ("0.25",
// "1e-2"), and plain JSON numbers. Strings parse exactly; exact mode
// serializes back as rational strings so runs round-trip byte for byte.
template <class S>
S parse_scalar(const nlohmann::json& j, const std::string& field);

template <class S>
std::vector<S> parse_scalar_array(const nlohmann::json& j, const std::string& field,
                                  std::size_t min_len = 0);

template <class S>
nlohmann::json scalar_json(const S& value);

template <class S>
nlohmann::json scalar_array_json(const std::vector<S>& values);

template <class S>
struct SystemInput {
  MassProfile<S> masses;
  SystemState<S> state;
};

// {"masses": [...], "positions": [...], "velocities": [...], "time": 0?}
template <class S>
SystemInput<S> parse_system_input(const nlohmann::json& j);

// Game inputs carry a start position plus either masses (weights derived,
// float mode) or explicit weights: "weights" as a full square matrix or
// "weights_offdiag" as the n-1 neighbor entries.
template <class S>
struct GameInput {
  GamePosition<S> start;
  WeightMatrix<S> weights;
};

template <class S>
GameInput<S> parse_game_input(const nlohmann::json& j);

struct RunSpec {
  std::string subcommand;
  std::string mode = "exact";  // "exact" | "float"
  double tol = kDefaultFloatTolerance;
  std::uint64_t seed = 0;
  std::string input;   // path, "-" for stdin, empty when unused
  std::string output;  // path, empty = stdout
  std::size_t max_events = 0;  // 0 = derived default
  std::size_t max_moves = 0;
  std::size_t trials = 0;
  std::string strategy = "leftmost";
  int n = 0;
  std::string mass_sampler = "conforming";
  int n_min = 1, n_max = 6;

  nlohmann::json to_json() const;
};

template <class S>
nlohmann::json event_json(const CollisionEvent<S>& event);

template <class S>
nlohmann::json trace_summary_json(const CollisionTrace<S>& trace, const MassProfile<S>& masses,
                                  const RunSpec& spec);

nlohmann::json parse_json_text(const std::string& text, const std::string& what);
std::string read_input_text(const std::string& path_or_dash);

}  // namespace hardball
