#include "seedwise/frs.hpp"

namespace seedwise {

char to_char(Condition c) { return static_cast<char>('a' + index(c)); }

const Pairing &pairing(Pair p) { return schedule(Week::three)[static_cast<int>(p)]; }

Pair pair_of(Team t) {
  return t == Team::a1 || t == Team::a2 ? Pair::first_second : Pair::third_fourth;
}

Pair other(Pair p) { return p == Pair::first_second ? Pair::third_fourth : Pair::first_second; }

namespace {

//! Probability that the first team of a pair wins under each condition.
template <typename Scalar> Scalar first_wins(Condition c, const Scalar &schwenk) {
  switch (c) {
  case Condition::a: return schwenk;
  case Condition::b: return ratio<Scalar>(0);
  case Condition::c: return ratio<Scalar>(1);
  case Condition::d: return half<Scalar>();
  }
  return schwenk;
}

template <typename Scalar> class LastWeek {
public:
  LastWeek(const WinVector &w, const WeightVector<Scalar> &v) : w_(w), v_(v), table_(champ_table(v)) {
    require_state(Week::three, w);
  }

  //! Championship probability of `t` given the winner of its own pair's game,
  //! with the other game's first team winning with probability a_other.
  Scalar champ_given(Team t, Team own_winner, const Scalar &a_other) const {
    const Pairing &o = pairing(other(pair_of(t)));
    const WinVector base = w_.with_win(own_winner);
    const Scalar one = ratio<Scalar>(1);
    return a_other * expected_champ_prob(t, base.with_win(o.first), table_) +
           (one - a_other) * expected_champ_prob(t, base.with_win(o.second), table_);
  }

  PayoffSlice<Scalar> slice(Pair p, const Scalar &a_other) const {
    const Pairing &g = pairing(p);
    const Scalar schwenk = win_prob(g.first, g.second, v_);
    const Scalar one = ratio<Scalar>(1);
    const std::array<Scalar, 2> first_team = {champ_given(g.first, g.first, a_other),
                                              champ_given(g.first, g.second, a_other)};
    const std::array<Scalar, 2> second_team = {champ_given(g.second, g.first, a_other),
                                               champ_given(g.second, g.second, a_other)};
    PayoffSlice<Scalar> out{p, {}, {}};
    for (Condition c : kConditions) {
      const Scalar pf = first_wins(c, schwenk);
      out.first[index(c)] = pf * first_team[0] + (one - pf) * first_team[1];
      out.second[index(c)] = pf * second_team[0] + (one - pf) * second_team[1];
    }
    return out;
  }

  PayoffTable<Scalar> table(const EffectivePair<Scalar> &e) const {
    PayoffTable<Scalar> out;
    const auto s12 = slice(Pair::first_second, e.a34);
    const auto s34 = slice(Pair::third_fourth, e.a12);
    out.q[0] = s12.first;
    out.q[1] = s12.second;
    out.q[2] = s34.first;
    out.q[3] = s34.second;
    return out;
  }

  Indifference<Scalar> indifference(Team t) const {
    const Team opp = pairing(pair_of(t)).opponent_of(t);
    const Scalar zero = ratio<Scalar>(0), one = ratio<Scalar>(1);
    const Scalar d0 = champ_given(t, t, zero) - champ_given(t, opp, zero);
    const Scalar d1 = champ_given(t, t, one) - champ_given(t, opp, one);
    if (scalar_equal(d0, d1))
      return ScalarTraits<Scalar>::is_zero(d0) ? Indifference<Scalar>::always() : Indifference<Scalar>::never();
    return Indifference<Scalar>::exactly(d0 / (d0 - d1));
  }

  const ChampTable<Scalar> &champs() const { return table_; }

private:
  WinVector w_;
  const WeightVector<Scalar> &v_;
  ChampTable<Scalar> table_;
};

template <typename Scalar>
std::array<Scalar, kNumTeams> payoffs_from(const PayoffTable<Scalar> &q, const ActionProfile<Scalar> &pi) {
  const Scalar one = ratio<Scalar>(1);
  std::array<Scalar, kNumTeams> e;
  for (Team t : kTeams) {
    const Pairing &g = pairing(pair_of(t));
    const Scalar &pf = pi[g.first];
    const Scalar &ps = pi[g.second];
    e[index(t)] = pf * ps * q(t, Condition::a) + (one - pf) * ps * q(t, Condition::b) +
                  pf * (one - ps) * q(t, Condition::c) + (one - pf) * (one - ps) * q(t, Condition::d);
  }
  return e;
}

// Combined constraint of two teammates on the other pair's probability,
// restricted to the open interval (0,1). nullopt: no solution; inner nullopt: any value.
template <typename Scalar>
std::optional<std::optional<Scalar>> joint_target(const Indifference<Scalar> &x, const Indifference<Scalar> &y) {
  using Kind = typename Indifference<Scalar>::Kind;
  if (x.kind == Kind::none || y.kind == Kind::none) return std::nullopt;
  std::optional<Scalar> target;
  if (x.kind == Kind::point && y.kind == Kind::point) {
    if (!scalar_equal(x.at, y.at)) return std::nullopt;
    target = x.at;
  } else if (x.kind == Kind::point) {
    target = x.at;
  } else if (y.kind == Kind::point) {
    target = y.at;
  }
  if (target && (*target <= 0 || *target >= 1)) return std::nullopt;
  return target;
}

// An interior (pi_first, pi_second) whose effective probability equals target.
template <typename Scalar>
std::pair<Scalar, Scalar> interior_member(const Scalar &schwenk, const std::optional<Scalar> &target) {
  const Scalar h = half<Scalar>();
  if (!target) return {h, h};
  // A = 1/2 + (x - y)/2 + x y (p - 1/2); solve for x at trial values of y.
  for (int depth = 1; depth <= 30; ++depth) {
    const std::int64_t den = std::int64_t{1} << depth;
    for (std::int64_t k = 1; k < den; k += 2) {
      const Scalar y = ratio<Scalar>(k, den);
      const Scalar x = (*target - h + h * y) / (h + y * (schwenk - h));
      if (x > 0 && x < 1) return {x, y};
    }
  }
  return {h, h};
}

} // namespace

template <typename Scalar>
EffectivePair<Scalar> effective_pair(const WeightVector<Scalar> &v, const ActionProfile<Scalar> &pi) {
  pi.validate();
  return {effective_win_prob(v[Team::a1], v[Team::a2], pi[Team::a1], pi[Team::a2]),
          effective_win_prob(v[Team::a3], v[Team::a4], pi[Team::a3], pi[Team::a4])};
}

template <typename Scalar>
PayoffSlice<Scalar> payoffs(const WinVector &w, const WeightVector<Scalar> &v, const Scalar &a_other, Pair pair) {
  if (a_other < 0 || a_other > 1) throw InvalidInput("effective probability must lie in [0,1]");
  return LastWeek<Scalar>(w, v).slice(pair, a_other);
}

template <typename Scalar>
PayoffTable<Scalar> payoff_table(const WinVector &w, const WeightVector<Scalar> &v, const ActionProfile<Scalar> &pi) {
  return LastWeek<Scalar>(w, v).table(effective_pair(v, pi));
}

template <typename Scalar>
std::array<Scalar, kNumTeams> expected_payoffs(const WinVector &w, const WeightVector<Scalar> &v,
                                               const ActionProfile<Scalar> &pi) {
  return payoffs_from(payoff_table(w, v, pi), pi);
}

template <typename Scalar>
std::array<Scalar, kNumTeams> stationarity(const WinVector &w, const WeightVector<Scalar> &v,
                                           const ActionProfile<Scalar> &pi) {
  const auto q = payoff_table(w, v, pi);
  std::array<Scalar, kNumTeams> d;
  for (Team t : kTeams) {
    const Pairing &g = pairing(pair_of(t));
    const bool is_first = g.first == t;
    const Scalar &rival = pi[g.opponent_of(t)];
    const Scalar interaction = q(t, Condition::a) - q(t, Condition::b) - q(t, Condition::c) + q(t, Condition::d);
    // First team moves between conditions b/d and a/c; second between c/d and a/b.
    const Scalar constant = is_first ? Scalar(q(t, Condition::c) - q(t, Condition::d))
                                     : Scalar(q(t, Condition::b) - q(t, Condition::d));
    d[index(t)] = rival * interaction + constant;
  }
  return d;
}

template <typename Scalar>
std::vector<PureEquilibrium<Scalar>> pure_nash_enumerate(const WinVector &w, const WeightVector<Scalar> &v) {
  const LastWeek<Scalar> game(w, v);
  auto evaluate = [&](const ActionProfile<Scalar> &pi) {
    return payoffs_from(game.table(effective_pair(v, pi)), pi);
  };
  std::vector<PureEquilibrium<Scalar>> out;
  for (int mask = 15; mask >= 0; --mask) {
    ActionProfile<Scalar> pi;
    for (Team t : kTeams) pi[t] = ratio<Scalar>((mask >> (3 - index(t))) & 1);
    PureEquilibrium<Scalar> eq{pi, evaluate(pi), {}};
    bool stable = true;
    for (Team t : kTeams) {
      ActionProfile<Scalar> dev = pi;
      dev[t] = ratio<Scalar>(1) - pi[t];
      eq.deviation_payoff[index(t)] = evaluate(dev)[index(t)];
      const Scalar &mine = eq.payoff[index(t)];
      const Scalar &alt = eq.deviation_payoff[index(t)];
      if (alt > mine && !scalar_equal(alt, mine)) stable = false;
    }
    if (stable) out.push_back(std::move(eq));
  }
  return out;
}

template <typename Scalar>
Indifference<Scalar> indifference(const WinVector &w, const WeightVector<Scalar> &v, Team t) {
  return LastWeek<Scalar>(w, v).indifference(t);
}

template <typename Scalar>
std::optional<MixedContinuum<Scalar>> mixed_nash_check(const WinVector &w, const WeightVector<Scalar> &v) {
  const LastWeek<Scalar> game(w, v);
  // Interior pi makes every d E_i / d pi_i a positive multiple of the
  // indifference gap, so a fully mixed equilibrium needs all four gaps zero.
  const auto on34 = joint_target(game.indifference(Team::a1), game.indifference(Team::a2));
  const auto on12 = joint_target(game.indifference(Team::a3), game.indifference(Team::a4));
  if (!on34 || !on12) return std::nullopt;

  MixedContinuum<Scalar> out;
  out.a12 = *on12;
  out.a34 = *on34;
  const Scalar p12 = win_prob(Team::a1, Team::a2, v);
  const Scalar p34 = win_prob(Team::a3, Team::a4, v);
  auto describe = [](const std::optional<Scalar> &target, const Scalar &schwenk, const char *x, const char *y,
                     const char *name) {
    if (!target) return std::string(x) + ", " + y + " unconstrained in (0,1)";
    if (scalar_equal(schwenk, half<Scalar>()) && scalar_equal(*target, half<Scalar>()))
      return std::string(x) + " = " + y;
    return "A" + std::string(name) + "(" + x + ", " + y + ") = a" + name;
  };
  out.constraint12 = describe(out.a12, p12, "pi1", "pi2", "12");
  out.constraint34 = describe(out.a34, p34, "pi3", "pi4", "34");
  const auto [x1, x2] = interior_member(p12, out.a12);
  const auto [x3, x4] = interior_member(p34, out.a34);
  out.representative = ActionProfile<Scalar>{{x1, x2, x3, x4}};
  out.payoff = payoffs_from(game.table(effective_pair(v, out.representative)), out.representative);
  const auto &t = game.champs();
  for (Team team : kTeams)
    if (scalar_equal(t(team, Bracket::A), t(team, Bracket::B)) && scalar_equal(t(team, Bracket::B), t(team, Bracket::C)))
      out.bracket_indifferent.push_back(team);
  return out;
}

template <typename Scalar>
EquilibriumReport<Scalar> equilibrium_report(const WinVector &w, const WeightVector<Scalar> &v) {
  EquilibriumReport<Scalar> out;
  out.wins = w;
  out.pure = pure_nash_enumerate(w, v);
  out.continuum = mixed_nash_check(w, v);
  out.equality_tolerance = ScalarTraits<Scalar>::equality_tolerance;
  return out;
}

#define SEEDWISE_INSTANTIATE(S)                                                                              \
  template EffectivePair<S> effective_pair(const WeightVector<S> &, const ActionProfile<S> &);               \
  template PayoffSlice<S> payoffs(const WinVector &, const WeightVector<S> &, const S &, Pair);               \
  template PayoffTable<S> payoff_table(const WinVector &, const WeightVector<S> &, const ActionProfile<S> &); \
  template std::array<S, kNumTeams> expected_payoffs(const WinVector &, const WeightVector<S> &,             \
                                                     const ActionProfile<S> &);                              \
  template std::array<S, kNumTeams> stationarity(const WinVector &, const WeightVector<S> &,                 \
                                                 const ActionProfile<S> &);                                  \
  template std::vector<PureEquilibrium<S>> pure_nash_enumerate(const WinVector &, const WeightVector<S> &);  \
  template Indifference<S> indifference(const WinVector &, const WeightVector<S> &, Team);                   \
  template std::optional<MixedContinuum<S>> mixed_nash_check(const WinVector &, const WeightVector<S> &);    \
  template EquilibriumReport<S> equilibrium_report(const WinVector &, const WeightVector<S> &);

SEEDWISE_INSTANTIATE(Rational)
SEEDWISE_INSTANTIATE(double)
#undef SEEDWISE_INSTANTIATE

} // namespace seedwise
