#include "seedwise/frns.hpp"
#include "seedwise/frs.hpp"
#include "seedwise/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace seedwise;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const WinVector k1201 = make_wins(1, 2, 0, 1);

WeightVector<Rational> random_weights(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> d(1, 30);
  std::array<int, 4> x = {d(rng), d(rng), d(rng), d(rng)};
  std::sort(x.begin(), x.end(), std::greater<>());
  return WeightVector<Rational>(R(x[0], 30), R(x[1], 30), R(x[2], 30), R(x[3], 30));
}

ActionProfile<Rational> random_profile(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> d(0, 12);
  return {{R(d(rng), 12), R(d(rng), 12), R(d(rng), 12), R(d(rng), 12)}};
}

PolicyTable<Rational> week3_policy(const WinVector &w, const ActionProfile<Rational> &pi) {
  PolicyTable<Rational> p;
  for (Team t : kTeams) p.set(t, Week::three, w, pi[t]);
  return p;
}

} // namespace

TEST_CASE("Q for a1 at [1,2,0,1] under both trying") {
  const WeightVector<Rational> v(R(1), R(4, 5), R(1, 2), R(3, 10));
  const auto t = champ_table(v);
  const Rational ta = t(Team::a1, Bracket::A), tb = t(Team::a1, Bracket::B), tc = t(Team::a1, Bracket::C);
  const Rational v12 = win_prob(Team::a1, Team::a2, v);
  const Rational a34 = R(2, 7);
  const Rational expected = a34 * (v12 * R(1, 2) * (ta + tb) + (1 - v12) * R(1, 3) * (ta + tb + tc)) +
                            (1 - a34) * (v12 * R(1, 3) * (ta + tb + tc) + (1 - v12) * ta);
  CHECK(payoffs(k1201, v, a34, Pair::first_second).first[index(Condition::a)] == expected);
}

TEST_CASE("payoff slices agree with the enumeration oracle") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto v = random_weights(rng);
    for (const auto &w : reachable_states(Week::three)) {
      const auto pi = random_profile(rng);
      const auto table = payoff_table(w, v, pi);
      const auto e = effective_pair(v, pi);
      CHECK(e.a12 == effective_win_prob(v[Team::a1], v[Team::a2], pi[Team::a1], pi[Team::a2]));
      for (Condition c : kConditions) {
        // Condition c fixes the pair's own actions; the other pair keeps pi.
        const int bit = index(c);
        const Rational first_try = (bit == 1 || bit == 3) ? R(0) : R(1);
        const Rational second_try = (bit == 2 || bit == 3) ? R(0) : R(1);
        ActionProfile<Rational> p12 = pi, p34 = pi;
        p12[Team::a1] = first_try;
        p12[Team::a2] = second_try;
        p34[Team::a3] = first_try;
        p34[Team::a4] = second_try;
        const auto o12 = enumerate_champ_prob(Week::three, w, v, week3_policy(w, p12));
        const auto o34 = enumerate_champ_prob(Week::three, w, v, week3_policy(w, p34));
        CHECK(table(Team::a1, c) == o12[0]);
        CHECK(table(Team::a2, c) == o12[1]);
        CHECK(table(Team::a3, c) == o34[2]);
        CHECK(table(Team::a4, c) == o34[3]);
      }
      const auto payoff = expected_payoffs(w, v, pi);
      const auto oracle = enumerate_champ_prob(Week::three, w, v, week3_policy(w, pi));
      Rational sum = 0;
      for (int i = 0; i < kNumTeams; ++i) {
        CHECK(payoff[i] == oracle[i]);
        sum += payoff[i];
      }
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("all trying reproduces the single-team values") {
  const WeightVector<Rational> v(R(1), R(9, 10), R(1, 2), R(1, 5));
  for (const auto &w : reachable_states(Week::three))
    CHECK(expected_payoffs(w, v, ActionProfile<Rational>::all_try())[0] ==
          value_week3(w, v, Action::try_to_win));
}

TEST_CASE("symmetric weights make every profile an equilibrium") {
  const WeightVector<Rational> v(R(1), R(1), R(1), R(1));
  std::mt19937_64 rng(2);
  for (const auto &w : reachable_states(Week::three)) {
    for (Team t : kTeams)
      for (Condition c : kConditions) CHECK(payoff_table(w, v, random_profile(rng))(t, c) == R(1, 4));
    CHECK(pure_nash_enumerate(w, v).size() == 16);
    for (const auto &d : stationarity(w, v, random_profile(rng))) CHECK(d == 0);
  }
  const auto report = equilibrium_report(k1201, v);
  CHECK(report.pure.size() == 16);
  REQUIRE(report.continuum);
  for (const auto &e : report.continuum->payoff) CHECK(e == R(1, 4));
  CHECK(report.continuum->bracket_indifferent.size() == 4);
}

TEST_CASE("continuum at v1 = v2 and v3 = v4") {
  for (const Rational &t : {R(1, 4), R(1, 2), R(3, 4), R(1)}) {
    const WeightVector<Rational> v(R(1), R(1), t, t);
    const auto c = mixed_nash_check(k1201, v);
    REQUIRE(c);
    if (t == 1) {
      // Every team is indifferent to everything: the whole open cube.
      CHECK_FALSE(c->a12);
      CHECK_FALSE(c->a34);
      CHECK(c->constraint12 == "pi1, pi2 unconstrained in (0,1)");
    } else {
      REQUIRE(c->a12);
      REQUIRE(c->a34);
      CHECK(*c->a12 == R(1, 2));
      CHECK(*c->a34 == R(1, 2));
      CHECK(c->constraint12 == "pi1 = pi2");
      CHECK(c->constraint34 == "pi3 = pi4");
    }
    for (const Rational &x : {R(1, 5), R(1, 2), R(9, 10)}) {
      for (const Rational &y : {R(1, 3), R(3, 4)}) {
        const ActionProfile<Rational> pi{{x, x, y, y}};
        for (const auto &d : stationarity(k1201, v, pi)) CHECK(d == 0);
        const auto e = expected_payoffs(k1201, v, pi);
        const auto q = payoff_table(k1201, v, pi);
        for (Team i : kTeams) {
          CHECK(e[index(i)] == q(i, Condition::d));
          CHECK(e[index(i)] == c->payoff[index(i)]);
        }
      }
    }
  }
}

TEST_CASE("no continuum at [1,2,0,1] when the pairs differ in strength") {
  CHECK_FALSE(mixed_nash_check(k1201, WeightVector<Rational>(R(1), R(9, 10), R(1, 2), R(1, 2))));
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto v = random_weights(rng);
    if (v[Team::a1] == v[Team::a2] && v[Team::a3] == v[Team::a4]) continue;
    CHECK_FALSE(mixed_nash_check(k1201, v));
  }
}

TEST_CASE("[2,2,0,0] has a mixed continuum for every V") {
  // Winning the week-3 game only swaps brackets A and B for both pairs, so a
  // coin-flip effective probability on the other side leaves everyone indifferent.
  const WinVector w = make_wins(2, 2, 0, 0);
  const WeightVector<Rational> v(R(1), R(7, 10), R(2, 5), R(1, 5));
  const auto report = equilibrium_report(w, v);
  CHECK_FALSE(report.pure.empty());
  CHECK(report.equality_tolerance == 0.0);
  REQUIRE(report.continuum);
  const auto &c = *report.continuum;
  REQUIRE(c.a12);
  CHECK(*c.a12 == R(1, 2));
  CHECK(*c.a34 == R(1, 2));
  const auto e = effective_pair(v, c.representative);
  CHECK(e.a12 == R(1, 2));
  CHECK(e.a34 == R(1, 2));
  for (Team i : kTeams) {
    CHECK(c.representative[i] > 0);
    CHECK(c.representative[i] < 1);
    std::array<Rational, 2> ends;
    for (int a = 0; a < 2; ++a) {
      auto pi = c.representative;
      pi[i] = R(a);
      ends[a] = enumerate_champ_prob(Week::three, w, v, week3_policy(w, pi))[index(i)];
    }
    CHECK(ends[0] == ends[1]);
    CHECK(ends[0] == c.payoff[index(i)]);
  }
}

TEST_CASE("stationarity against finite differences") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.05, 1.0), p(0.1, 0.9);
  const auto &states = reachable_states(Week::three);
  for (int k = 0; k < 40; ++k) {
    std::array<double, 4> x = {u(rng), u(rng), u(rng), u(rng)};
    std::sort(x.begin(), x.end(), std::greater<>());
    const WeightVector<double> v(x);
    const WinVector &w = states[k % states.size()];
    const ActionProfile<double> pi{{p(rng), p(rng), p(rng), p(rng)}};
    const auto d = stationarity(w, v, pi);
    const double h = 1e-5;
    for (Team t : kTeams) {
      auto up = pi, down = pi;
      up[t] += h;
      down[t] -= h;
      const double fd = (expected_payoffs(w, v, up)[index(t)] - expected_payoffs(w, v, down)[index(t)]) / (2 * h);
      CHECK(std::fabs(fd - d[index(t)]) < 1e-9);
    }
  }
}

TEST_CASE("pure equilibria survive the best-response sweep") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 15; ++k) {
    const auto v = random_weights(rng);
    for (const auto &w : {k1201, make_wins(2, 2, 0, 0), make_wins(1, 1, 1, 1)}) {
      const auto eqs = pure_nash_enumerate(w, v);
      REQUIRE_FALSE(eqs.empty());
      for (const auto &eq : eqs) {
        for (Team i : kTeams) {
          CHECK(eq.deviation_payoff[index(i)] <= eq.payoff[index(i)]);
          const auto br = best_response_oracle(w, v, eq.profile, i, R(1, 10));
          CHECK(br.value <= eq.payoff[index(i)]);
        }
      }
    }
  }
}

TEST_CASE("team a1's best response to rivals trying is the single-team decision") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const auto v = random_weights(rng);
    for (const auto &w : reachable_states(Week::three)) {
      const auto br = best_response_oracle(w, v, ActionProfile<Rational>::all_try(), Team::a1, R(1, 2));
      const auto d = decide_week3(w, v);
      CHECK(br.value == d.best_value());
      if (d.value_win != d.value_lose) CHECK(br.alpha == as_probability<Rational>(d.action));
    }
  }
}

TEST_CASE("indifference kinds") {
  const WeightVector<Rational> equal(R(1), R(1), R(1), R(1));
  CHECK(indifference(k1201, equal, Team::a1).kind == Indifference<Rational>::Kind::any);
  const WeightVector<Rational> v(R(1), R(1), R(1, 2), R(1, 2));
  const auto ind = indifference(k1201, v, Team::a1);
  REQUIRE(ind.kind == Indifference<Rational>::Kind::point);
  CHECK(ind.at == R(1, 2));
}

TEST_CASE("floating-point reports carry their tolerance") {
  const auto report = equilibrium_report(k1201, WeightVector<double>(1.0, 1.0, 0.5, 0.5));
  CHECK(report.equality_tolerance == doctest::Approx(1e-12));
  REQUIRE(report.continuum);
  CHECK(*report.continuum->a12 == doctest::Approx(0.5));
}
