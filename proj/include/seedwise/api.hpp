#pragma once

// JSON documents shared by the CLI and the HTTP service, so both paths emit
// identical bytes for the same query. Shapes are documented in docs/api.md.

#include "seedwise/frns.hpp"
#include "seedwise/frs.hpp"
#include "seedwise/oracle.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace seedwise::api {

using json = nlohmann::ordered_json;

enum class Model : std::uint8_t { frns, frs };

Model parse_model(std::string_view text);
std::string to_string(Model m);

//! "1,0.8,0.5,0.3" or "1,4/5,1/2,3/10".
WeightVector<Rational> parse_weights(std::string_view text);
//! "2,1,0,1".
WinVector parse_wins(std::string_view text);
Week parse_week(std::string_view text);
//! "a3" or "3".
Team parse_team(std::string_view text);

//! {"exact": "p/q", "decimal": x}
json rational_json(const Rational &x);
json weights_json(const WeightVector<Rational> &v);
json wins_json(const WinVector &w);

//! Accepts the string forms above or JSON arrays of numbers / "p/q" strings.
WeightVector<Rational> weights_from_json(const json &j);
WinVector wins_from_json(const json &j);

json probs_json(const WeightVector<Rational> &v);
json decision_json(const Decision<Rational> &d);
json nash_json(const WinVector &w, const WeightVector<Rational> &v);
json advice_json(Week m, const WinVector &w, const WeightVector<Rational> &v, Model model);
//! Championship odds once the regular season is over.
json final_json(const WinVector &final_wins, const WeightVector<Rational> &v);

//! Policy spec for simulations: "try", "frns" or "const:P" (a1 tries with
//! probability P everywhere). Rivals always try.
PolicyTable<Rational> parse_policy(std::string_view spec, const WeightVector<Rational> &v);
json simulate_json(const WeightVector<Rational> &v, std::string_view policy, std::uint64_t n, std::uint64_t seed);

//! Pretty-printed document with a trailing newline.
std::string render(const json &j);

//! {"error": "invalid_input", "reason": ...}
json error_json(std::string_view kind, std::string_view reason);

} // namespace seedwise::api
