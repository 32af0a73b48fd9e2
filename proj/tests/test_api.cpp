#include "seedwise/api.hpp"

#include <doctest.h>

using namespace seedwise;
using api::json;

namespace {
Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
} // namespace

TEST_CASE("input parsing") {
  CHECK(api::parse_weights("1,0.8,0.5,0.3") == WeightVector<Rational>(R(1), R(4, 5), R(1, 2), R(3, 10)));
  CHECK(api::parse_weights("1, 4/5, 1/2, 3/10") == WeightVector<Rational>(R(1), R(4, 5), R(1, 2), R(3, 10)));
  CHECK_THROWS_AS(api::parse_weights("1,0.8,0.5"), InvalidInput);
  CHECK_THROWS_AS(api::parse_weights("1,0.5,0.8,0.3"), InvalidInput);
  CHECK(api::parse_wins("2,1,0,1") == make_wins(2, 1, 0, 1));
  CHECK_THROWS_AS(api::parse_wins("2,1,x,1"), InvalidInput);
  CHECK(api::parse_week("3") == Week::three);
  CHECK_THROWS_AS(api::parse_week("4"), InvalidInput);
  CHECK(api::parse_team("a3") == Team::a3);
  CHECK(api::parse_team("2") == Team::a2);
  CHECK_THROWS_AS(api::parse_model("nash"), InvalidInput);
  CHECK(api::weights_from_json(json::array({1, 0.8, "1/2", 0.3})) ==
        WeightVector<Rational>(R(1), R(4, 5), R(1, 2), R(3, 10)));
  CHECK(api::wins_from_json(json::array({1, 2, 0, 1})) == make_wins(1, 2, 0, 1));
}

TEST_CASE("rationals carry exact and decimal forms") {
  const json j = api::rational_json(R(1, 4));
  CHECK(j["exact"] == "1/4");
  CHECK(j["decimal"] == 0.25);
}

TEST_CASE("probs document") {
  const json j = api::probs_json(api::parse_weights("1,1,1,1"));
  for (const auto &[team, row] : j["table"].items())
    for (const auto &[b, cell] : row.items()) CHECK(cell["exact"] == "1/4");
  CHECK(j["orderings_hold"] == true);
}

TEST_CASE("advice round-trips to the library decision") {
  const auto v = api::parse_weights("1,0.8,0.5,0.3");
  for (Week m : {Week::one, Week::two, Week::three}) {
    for (const auto &w : reachable_states(m)) {
      const json j = json::parse(api::render(api::advice_json(m, w, v, api::Model::frns)));
      const auto d = frns_decide(m, w, v);
      CHECK(j["decision"]["action"] == to_string(d.action));
      CHECK(parse_rational(j["decision"]["value_win"]["exact"].get<std::string>()) == d.value_win);
      CHECK(parse_rational(j["decision"]["value_lose"]["exact"].get<std::string>()) == d.value_lose);
      CHECK(j["query"]["week"] == number(m));
    }
  }
  CHECK(api::advice_json(Week::three, make_wins(2, 2, 0, 0), v, api::Model::frns)["decision"]["action"] ==
        "try to win");
  CHECK(api::advice_json(Week::three, make_wins(2, 1, 0, 1), v, api::Model::frns)["decision"]["action"] ==
        "lose intentionally");
}

TEST_CASE("frs advice") {
  const json cont = api::advice_json(Week::three, make_wins(1, 2, 0, 1), api::parse_weights("1,1,0.5,0.5"),
                                     api::Model::frs);
  REQUIRE(cont["equilibria"]["continuum"].is_object());
  CHECK(cont["equilibria"]["continuum"]["a12"]["exact"] == "1/2");
  CHECK(cont["equilibria"]["continuum"]["constraints"][0] == "pi1 = pi2");
  CHECK(cont["equilibria"]["continuum"]["constraints"][1] == "pi3 = pi4");

  const auto v = api::parse_weights("1,0.7,0.4,0.2");
  const json pure = api::nash_json(make_wins(2, 2, 0, 0), v);
  CHECK(pure["continuum"]["a12"]["exact"] == "1/2");
  CHECK(api::nash_json(make_wins(1, 2, 0, 1), api::parse_weights("1,0.9,0.5,0.5"))["continuum"].is_null());
  const auto report = equilibrium_report(make_wins(2, 2, 0, 0), v);
  REQUIRE(pure["pure"].size() == report.pure.size());
  for (std::size_t k = 0; k < report.pure.size(); ++k)
    CHECK(parse_rational(pure["pure"][k]["payoff"]["a1"]["exact"].get<std::string>()) == report.pure[k].payoff[0]);

  const json early = api::advice_json(Week::two, make_wins(1, 1, 0, 0), v, api::Model::frs);
  CHECK(early.contains("note"));
  CHECK(early.contains("decision"));
}

TEST_CASE("final standings") {
  const json j = api::final_json(make_wins(2, 2, 1, 1), api::parse_weights("1,1,1,1"));
  CHECK(j["bracket"]["A"]["exact"] == "1/2");
  CHECK(j["championship"]["a3"]["exact"] == "1/4");
}

TEST_CASE("policies") {
  const auto v = api::parse_weights("1,0.8,0.5,0.3");
  CHECK(api::parse_policy("try", v).size() == 0);
  CHECK(api::parse_policy("frns", v).size() == 20);
  CHECK(api::parse_policy("const:0.5", v).get(Team::a1, Week::two, make_wins(1, 1, 0, 0)) == R(1, 2));
  CHECK_THROWS_AS(api::parse_policy("const:2", v), InvalidInput);
  CHECK_THROWS_AS(api::parse_policy("random", v), InvalidInput);
  const json sim = api::simulate_json(v, "frns", 20000, 3);
  CHECK(sim["samples"] == 20000);
  CHECK(sim["teams"]["a1"].contains("exact"));
}
