#include "seedwise/api.hpp"

#include <charconv>
#include <vector>

namespace seedwise::api {

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    out.push_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidInput("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

json decision_fields(const Decision<Rational> &d) {
  json j;
  j["action"] = to_string(d.action);
  j["value_win"] = rational_json(d.value_win);
  j["value_lose"] = rational_json(d.value_lose);
  j["margin"] = rational_json(d.value_win - d.value_lose);
  return j;
}

json profile_json(const ActionProfile<Rational> &pi) {
  json out = json::array();
  for (Team t : kTeams) out.push_back(rational_json(pi[t]));
  return out;
}

json team_values(const std::array<Rational, kNumTeams> &values) {
  json out = json::object();
  for (Team t : kTeams) out[seedwise::to_string(t)] = rational_json(values[index(t)]);
  return out;
}

json query_json(Week m, const WinVector &w, const WeightVector<Rational> &v, Model model) {
  json q;
  q["week"] = number(m);
  q["wins"] = wins_json(w);
  q["weights"] = weights_json(v);
  q["model"] = to_string(model);
  return q;
}

} // namespace

Model parse_model(std::string_view text) {
  if (text == "frns") return Model::frns;
  if (text == "frs") return Model::frs;
  throw InvalidInput("model must be 'frns' or 'frs', got '" + std::string(text) + "'");
}

std::string to_string(Model m) { return m == Model::frns ? "frns" : "frs"; }

WeightVector<Rational> parse_weights(std::string_view text) {
  const auto parts = split_commas(text);
  if (parts.size() != kNumTeams) throw InvalidInput("weights need exactly 4 comma-separated values");
  std::array<Rational, kNumTeams> v;
  for (int k = 0; k < kNumTeams; ++k) v[k] = parse_rational(parts[k]);
  return WeightVector<Rational>(v);
}

WinVector parse_wins(std::string_view text) {
  const auto parts = split_commas(text);
  if (parts.size() != kNumTeams) throw InvalidInput("wins need exactly 4 comma-separated integers");
  WinVector w;
  for (int k = 0; k < kNumTeams; ++k) w.wins[k] = parse_int(parts[k], "win count");
  return w;
}

Week parse_week(std::string_view text) { return week_from_number(parse_int(text, "week")); }

Team parse_team(std::string_view text) {
  if (!text.empty() && text.front() == 'a') text.remove_prefix(1);
  return team_from_number(parse_int(text, "team"));
}

json rational_json(const Rational &x) {
  json j;
  j["exact"] = to_fraction_string(x);
  j["decimal"] = to_double(x);
  return j;
}

json weights_json(const WeightVector<Rational> &v) {
  json out = json::array();
  for (Team t : kTeams) out.push_back(to_fraction_string(v[t]));
  return out;
}

json wins_json(const WinVector &w) { return json(w.wins); }

WeightVector<Rational> weights_from_json(const json &j) {
  if (j.is_string()) return parse_weights(j.get<std::string>());
  if (!j.is_array() || j.size() != kNumTeams) throw InvalidInput("weights must be a string or an array of 4 values");
  std::array<Rational, kNumTeams> v;
  for (int k = 0; k < kNumTeams; ++k) {
    if (j[k].is_string()) v[k] = parse_rational(j[k].get<std::string>());
    else if (j[k].is_number()) v[k] = parse_rational(j[k].dump());
    else throw InvalidInput("weight entries must be numbers or \"p/q\" strings");
  }
  return WeightVector<Rational>(v);
}

WinVector wins_from_json(const json &j) {
  if (j.is_string()) return parse_wins(j.get<std::string>());
  if (!j.is_array() || j.size() != kNumTeams) throw InvalidInput("wins must be a string or an array of 4 integers");
  WinVector w;
  for (int k = 0; k < kNumTeams; ++k) {
    if (!j[k].is_number_integer()) throw InvalidInput("win counts must be integers");
    w.wins[k] = j[k].get<int>();
  }
  return w;
}

json probs_json(const WeightVector<Rational> &v) {
  const auto table = champ_table(v);
  json j;
  j["weights"] = weights_json(v);
  json t = json::object();
  for (Team team : kTeams) {
    json row = json::object();
    for (Bracket b : kBrackets) row[std::string(1, to_char(b))] = rational_json(table(team, b));
    t[seedwise::to_string(team)] = std::move(row);
  }
  j["table"] = std::move(t);
  j["orderings_hold"] = verify_orderings(table);
  return j;
}

json decision_json(const Decision<Rational> &d) { return decision_fields(d); }

json nash_json(const WinVector &w, const WeightVector<Rational> &v) {
  const auto report = equilibrium_report(w, v);
  json j;
  j["wins"] = wins_json(w);
  j["weights"] = weights_json(v);
  j["equality_tolerance"] = report.equality_tolerance;
  json pure = json::array();
  for (const auto &eq : report.pure) {
    json e;
    json profile = json::array();
    for (Team t : kTeams) profile.push_back(eq.profile[t] == 1 ? 1 : 0);
    e["profile"] = std::move(profile);
    e["payoff"] = team_values(eq.payoff);
    e["deviation_payoff"] = team_values(eq.deviation_payoff);
    pure.push_back(std::move(e));
  }
  j["pure"] = std::move(pure);
  if (report.continuum) {
    const auto &c = *report.continuum;
    json m;
    m["a12"] = c.a12 ? rational_json(*c.a12) : json(nullptr);
    m["a34"] = c.a34 ? rational_json(*c.a34) : json(nullptr);
    m["constraints"] = json::array({c.constraint12, c.constraint34});
    m["representative"] = profile_json(c.representative);
    m["payoff"] = team_values(c.payoff);
    json indifferent = json::array();
    for (Team t : c.bracket_indifferent) indifferent.push_back(seedwise::to_string(t));
    m["bracket_indifferent"] = std::move(indifferent);
    j["continuum"] = std::move(m);
  } else {
    j["continuum"] = nullptr;
  }
  return j;
}

json advice_json(Week m, const WinVector &w, const WeightVector<Rational> &v, Model model) {
  require_state(m, w);
  json j;
  j["query"] = query_json(m, w, v, model);
  if (model == Model::frs && m == Week::three) {
    j["equilibria"] = nash_json(w, v);
    return j;
  }
  if (model == Model::frs)
    j["note"] = "the all-teams model covers week 3 only; showing a1's advice with rivals always trying";
  j["team"] = "a1";
  j["decision"] = decision_fields(frns_decide(m, w, v));
  return j;
}

json final_json(const WinVector &final_wins, const WeightVector<Rational> &v) {
  const auto table = champ_table(v);
  const auto seeding = seeding_distribution(final_wins);
  json j;
  j["final_wins"] = wins_json(final_wins);
  j["weights"] = weights_json(v);
  json brackets = json::object();
  for (Bracket b : kBrackets) brackets[std::string(1, to_char(b))] = rational_json(seeding.probability<Rational>(b));
  j["bracket"] = std::move(brackets);
  std::array<Rational, kNumTeams> champ;
  for (Team t : kTeams) champ[index(t)] = expected_champ_prob(t, final_wins, table);
  j["championship"] = team_values(champ);
  return j;
}

PolicyTable<Rational> parse_policy(std::string_view spec, const WeightVector<Rational> &v) {
  PolicyTable<Rational> table;
  if (spec == "try") return table;
  if (spec == "frns") {
    for (Week m : {Week::one, Week::two, Week::three})
      for (const auto &w : reachable_states(m))
        table.set(Team::a1, m, w, as_probability<Rational>(frns_decide(m, w, v).action));
    return table;
  }
  if (spec.starts_with("const:")) {
    const Rational p = parse_rational(spec.substr(6));
    if (p < 0 || p > 1) throw InvalidInput("policy probability must lie in [0,1]");
    for (Week m : {Week::one, Week::two, Week::three}) table.set_week(Team::a1, m, p);
    return table;
  }
  throw InvalidInput("policy must be 'try', 'frns' or 'const:P', got '" + std::string(spec) + "'");
}

json simulate_json(const WeightVector<Rational> &v, std::string_view policy, std::uint64_t n, std::uint64_t seed) {
  const auto exact_policy = parse_policy(policy, v);
  PolicyTable<double> sim_policy;
  for (Team t : kTeams)
    for (Week m : {Week::one, Week::two, Week::three})
      for (const auto &w : reachable_states(m)) sim_policy.set(t, m, w, to_double(exact_policy.get(t, m, w)));
  std::array<double, kNumTeams> vd;
  for (Team t : kTeams) vd[index(t)] = to_double(v[t]);
  const auto result = monte_carlo(WeightVector<double>(vd), sim_policy, n, seed);
  const auto exact = enumerate_champ_prob(Week::one, WinVector{}, v, exact_policy);

  json j;
  j["weights"] = weights_json(v);
  j["policy"] = std::string(policy);
  j["samples"] = result.samples;
  j["seed"] = result.seed;
  j["generator"] = result.generator;
  json teams = json::object();
  for (Team t : kTeams) {
    const int k = index(t);
    json row;
    row["titles"] = result.titles[k];
    row["frequency"] = result.frequency[k];
    row["standard_error"] = result.standard_error[k];
    row["exact"] = rational_json(exact[k]);
    teams[seedwise::to_string(t)] = std::move(row);
  }
  j["teams"] = std::move(teams);
  return j;
}

std::string render(const json &j) { return j.dump(2) + "\n"; }

json error_json(std::string_view kind, std::string_view reason) {
  json j;
  j["error"] = std::string(kind);
  j["reason"] = std::string(reason);
  return j;
}

} // namespace seedwise::api
