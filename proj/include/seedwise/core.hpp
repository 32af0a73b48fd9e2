#pragma once

// Domain types for the four-team league: team strengths, win counts, the
// fixed three-week round robin and the single-game win model.

#include "seedwise/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seedwise {

constexpr int kNumTeams = 4;
constexpr int kNumWeeks = 3;

//! Raised for any input that violates a domain invariant (unordered weights,
//! unreachable win vector, ...). The message names the violated invariant.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! Both teams have weight zero and both try: the single-game model is 0/0.
class DegenerateMatch : public std::domain_error {
public:
  DegenerateMatch() : std::domain_error("degenerate match: both weights are zero") {}
};

enum class Team : std::uint8_t { a1 = 0, a2 = 1, a3 = 2, a4 = 3 };

constexpr std::array<Team, kNumTeams> kTeams = {Team::a1, Team::a2, Team::a3, Team::a4};

constexpr int index(Team t) { return static_cast<int>(t); }
//! 1-based team number as used in reports ("a1" .. "a4").
constexpr int number(Team t) { return index(t) + 1; }
Team team_from_number(int n);
std::string to_string(Team t);

enum class Week : std::uint8_t { one = 1, two = 2, three = 3 };

constexpr int number(Week w) { return static_cast<int>(w); }
Week week_from_number(int n);

//! Win counts per team entering a week (or after the season, for final standings).
struct WinVector {
  std::array<int, kNumTeams> wins{};

  int operator[](Team t) const { return wins[index(t)]; }
  int total() const { return wins[0] + wins[1] + wins[2] + wins[3]; }
  WinVector with_win(Team t) const {
    WinVector out = *this;
    ++out.wins[index(t)];
    return out;
  }

  auto operator<=>(const WinVector &) const = default;
};

WinVector make_wins(int w1, int w2, int w3, int w4);
//! "[2,1,0,1]"
std::string to_string(const WinVector &w);

//! Team strengths v1 >= v2 >= v3 >= v4 >= 0 with at most one zero.
//! Ordering is enforced, never repaired by sorting.
template <typename Scalar> class WeightVector {
public:
  WeightVector(Scalar v1, Scalar v2, Scalar v3, Scalar v4);
  explicit WeightVector(const std::array<Scalar, kNumTeams> &v)
      : WeightVector(v[0], v[1], v[2], v[3]) {}

  const Scalar &operator[](Team t) const { return v_[index(t)]; }
  const std::array<Scalar, kNumTeams> &values() const { return v_; }

  //! Same vector divided by v1.
  WeightVector canonical() const;

  bool operator==(const WeightVector &) const = default;

private:
  std::array<Scalar, kNumTeams> v_;
};

//! Probability that a team of strength vi beats one of strength vj when both try.
template <typename Scalar> Scalar win_prob(const Scalar &vi, const Scalar &vj);

//! Probability that i beats j when i tries with probability pi_i and j with pi_j.
//! A trying team beats a tanking one surely; two tanking teams flip a coin.
template <typename Scalar>
Scalar effective_win_prob(const Scalar &vi, const Scalar &vj, const Scalar &pi_i,
                          const Scalar &pi_j);

template <typename Scalar>
Scalar win_prob(Team i, Team j, const WeightVector<Scalar> &v) {
  return win_prob(v[i], v[j]);
}

//! Per-team probability of trying to win, each in [0,1].
template <typename Scalar> struct ActionProfile {
  std::array<Scalar, kNumTeams> pi;

  const Scalar &operator[](Team t) const { return pi[index(t)]; }
  Scalar &operator[](Team t) { return pi[index(t)]; }

  static ActionProfile all_try() { return {{ratio<Scalar>(1), ratio<Scalar>(1), ratio<Scalar>(1), ratio<Scalar>(1)}}; }
  bool is_pure() const;
  void validate() const;
};

struct Pairing {
  Team first;
  Team second;

  bool involves(Team t) const { return first == t || second == t; }
  Team opponent_of(Team t) const { return first == t ? second : first; }
};

//! The two games of a week: week 1 {a1-a4, a2-a3}, week 2 {a1-a3, a2-a4},
//! week 3 {a1-a2, a3-a4}.
const std::array<Pairing, 2> &schedule(Week w);

//! One week's outcome: the winners of game 0 and game 1.
struct WeekOutcome {
  Team winner0;
  Team winner1;
};

//! The four outcomes of a week, in the order (first,first), (first,second),
//! (second,first), (second,second) by game.
std::array<WeekOutcome, 4> week_outcomes(Week w);

WinVector apply(const WinVector &w, const WeekOutcome &o);

//! W is producible by weeks 1..m-1 of the fixed schedule.
bool validate_state(Week m, const WinVector &w);
//! Throws InvalidInput naming the violated invariant.
void require_state(Week m, const WinVector &w);

//! Sorted set of win vectors reachable at the start of week m.
const std::vector<WinVector> &reachable_states(Week m);

//! Sorted set of reachable standings after all three weeks (sum 6).
const std::vector<WinVector> &final_standings();
bool is_final_standing(const WinVector &w);

extern template class WeightVector<Rational>;
extern template class WeightVector<double>;
extern template struct ActionProfile<Rational>;
extern template struct ActionProfile<double>;

} // namespace seedwise
