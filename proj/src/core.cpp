#include "seedwise/core.hpp"

#include <algorithm>
#include <set>

namespace seedwise {

Team team_from_number(int n) {
  if (n < 1 || n > kNumTeams) throw InvalidInput("team number must be in 1..4, got " + std::to_string(n));
  return static_cast<Team>(n - 1);
}

std::string to_string(Team t) { return "a" + std::to_string(number(t)); }

Week week_from_number(int n) {
  if (n < 1 || n > kNumWeeks) throw InvalidInput("week must be in 1..3, got " + std::to_string(n));
  return static_cast<Week>(n);
}

WinVector make_wins(int w1, int w2, int w3, int w4) { return WinVector{{w1, w2, w3, w4}}; }

std::string to_string(const WinVector &w) {
  return "[" + std::to_string(w.wins[0]) + "," + std::to_string(w.wins[1]) + "," +
         std::to_string(w.wins[2]) + "," + std::to_string(w.wins[3]) + "]";
}

template <typename Scalar>
WeightVector<Scalar>::WeightVector(Scalar v1, Scalar v2, Scalar v3, Scalar v4)
    : v_{std::move(v1), std::move(v2), std::move(v3), std::move(v4)} {
  for (const auto &x : v_)
    if (x < 0) throw InvalidInput("weights must be nonnegative");
  if (!(v_[0] >= v_[1] && v_[1] >= v_[2] && v_[2] >= v_[3]))
    throw InvalidInput("weights must be ordered v1 >= v2 >= v3 >= v4");
  // Ordered and nonnegative, so a second zero can only be v3.
  if (v_[2] == 0) throw InvalidInput("at most one weight may be zero");
}

template <typename Scalar> WeightVector<Scalar> WeightVector<Scalar>::canonical() const {
  const Scalar &v1 = v_[0];
  return WeightVector(v_[0] / v1, v_[1] / v1, v_[2] / v1, v_[3] / v1);
}

template <typename Scalar> Scalar win_prob(const Scalar &vi, const Scalar &vj) {
  if (vi < 0 || vj < 0) throw InvalidInput("weights must be nonnegative");
  const Scalar sum = vi + vj;
  if (sum == 0) throw DegenerateMatch();
  return vi / sum;
}

template <typename Scalar>
Scalar effective_win_prob(const Scalar &vi, const Scalar &vj, const Scalar &pi_i,
                          const Scalar &pi_j) {
  for (const Scalar *p : {&pi_i, &pi_j})
    if (*p < 0 || *p > 1) throw InvalidInput("action probability must lie in [0,1]");
  const Scalar one = ratio<Scalar>(1);
  const Scalar both_try = pi_i * pi_j;
  Scalar out = pi_i * (one - pi_j) + half<Scalar>() * (one - pi_i) * (one - pi_j);
  if (both_try != 0) out += win_prob(vi, vj) * both_try;
  return out;
}

template <typename Scalar> bool ActionProfile<Scalar>::is_pure() const {
  return std::all_of(pi.begin(), pi.end(), [](const Scalar &x) { return x == 0 || x == 1; });
}

template <typename Scalar> void ActionProfile<Scalar>::validate() const {
  for (const auto &x : pi)
    if (x < 0 || x > 1) throw InvalidInput("action probability must lie in [0,1]");
}

const std::array<Pairing, 2> &schedule(Week w) {
  static const std::array<std::array<Pairing, 2>, 3> kSchedule = {{
      {{{Team::a1, Team::a4}, {Team::a2, Team::a3}}},
      {{{Team::a1, Team::a3}, {Team::a2, Team::a4}}},
      {{{Team::a1, Team::a2}, {Team::a3, Team::a4}}},
  }};
  return kSchedule[number(w) - 1];
}

std::array<WeekOutcome, 4> week_outcomes(Week w) {
  const auto &games = schedule(w);
  return {{{games[0].first, games[1].first},
           {games[0].first, games[1].second},
           {games[0].second, games[1].first},
           {games[0].second, games[1].second}}};
}

WinVector apply(const WinVector &w, const WeekOutcome &o) {
  return w.with_win(o.winner0).with_win(o.winner1);
}

namespace {

std::vector<WinVector> advance_all(const std::vector<WinVector> &states, Week w) {
  std::set<WinVector> next;
  for (const auto &s : states)
    for (const auto &o : week_outcomes(w)) next.insert(apply(s, o));
  return {next.begin(), next.end()};
}

const std::array<std::vector<WinVector>, 4> &state_table() {
  static const std::array<std::vector<WinVector>, 4> table = [] {
    std::array<std::vector<WinVector>, 4> t;
    t[0] = {WinVector{}};
    for (int m = 1; m <= kNumWeeks; ++m) t[m] = advance_all(t[m - 1], static_cast<Week>(m));
    return t;
  }();
  return table;
}

} // namespace

const std::vector<WinVector> &reachable_states(Week m) { return state_table()[number(m) - 1]; }

const std::vector<WinVector> &final_standings() { return state_table()[kNumWeeks]; }

bool validate_state(Week m, const WinVector &w) {
  const auto &states = reachable_states(m);
  return std::binary_search(states.begin(), states.end(), w);
}

bool is_final_standing(const WinVector &w) {
  const auto &states = final_standings();
  return std::binary_search(states.begin(), states.end(), w);
}

void require_state(Week m, const WinVector &w) {
  for (int x : w.wins)
    if (x < 0) throw InvalidInput("win counts must be nonnegative");
  const int completed = number(m) - 1;
  if (w.total() != 2 * completed)
    throw InvalidInput("win vector " + to_string(w) + " must total " + std::to_string(2 * completed) +
                       " at the start of week " + std::to_string(number(m)));
  for (int x : w.wins)
    if (x > completed)
      throw InvalidInput("win vector " + to_string(w) + " has a team with more wins than completed weeks");
  if (!validate_state(m, w))
    throw InvalidInput("win vector " + to_string(w) + " is unreachable under the fixed schedule at week " +
                       std::to_string(number(m)));
}

template class WeightVector<Rational>;
template class WeightVector<double>;
template struct ActionProfile<Rational>;
template struct ActionProfile<double>;
template Rational win_prob(const Rational &, const Rational &);
template double win_prob(const double &, const double &);
template Rational effective_win_prob(const Rational &, const Rational &, const Rational &, const Rational &);
template double effective_win_prob(const double &, const double &, const double &, const double &);

} // namespace seedwise
