#pragma once

// Last-week game between all four teams, each free to tank: payoff tables,
// expected payoffs, stationarity, pure equilibria and mixed continua.

#include "seedwise/bracket.hpp"
#include "seedwise/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seedwise {

//! Action pattern inside one week-3 game, named from the lower-indexed team
//! of the pair: a both try, b first tanks, c second tanks, d both tank.
enum class Condition : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

constexpr std::array<Condition, 4> kConditions = {Condition::a, Condition::b, Condition::c, Condition::d};
constexpr int index(Condition c) { return static_cast<int>(c); }
char to_char(Condition c);

//! The two week-3 games.
enum class Pair : std::uint8_t { first_second = 0, third_fourth = 1 };

const Pairing &pairing(Pair p);
Pair pair_of(Team t);
Pair other(Pair p);

//! Q values for the two teams of one pair, given the probability that the
//! lower-indexed team of the other pair wins its game.
template <typename Scalar> struct PayoffSlice {
  Pair pair;
  std::array<Scalar, 4> first;  // Q for pairing(pair).first
  std::array<Scalar, 4> second; // Q for pairing(pair).second
};

template <typename Scalar> struct PayoffTable {
  std::array<std::array<Scalar, 4>, kNumTeams> q;

  const Scalar &operator()(Team t, Condition c) const { return q[index(t)][index(c)]; }
};

template <typename Scalar> struct EffectivePair {
  Scalar a12; // a1 beats a2
  Scalar a34; // a3 beats a4
};

template <typename Scalar>
EffectivePair<Scalar> effective_pair(const WeightVector<Scalar> &v, const ActionProfile<Scalar> &pi);

template <typename Scalar>
PayoffSlice<Scalar> payoffs(const WinVector &w, const WeightVector<Scalar> &v, const Scalar &a_other, Pair pair);

//! Full table with each pair's Q computed from the other pair's effective probability.
template <typename Scalar>
PayoffTable<Scalar> payoff_table(const WinVector &w, const WeightVector<Scalar> &v, const ActionProfile<Scalar> &pi);

//! Championship probability of every team under profile pi (sums to 1).
template <typename Scalar>
std::array<Scalar, kNumTeams> expected_payoffs(const WinVector &w, const WeightVector<Scalar> &v,
                                               const ActionProfile<Scalar> &pi);

//! d E_i / d pi_i for every team; each is independent of pi_i itself.
template <typename Scalar>
std::array<Scalar, kNumTeams> stationarity(const WinVector &w, const WeightVector<Scalar> &v,
                                           const ActionProfile<Scalar> &pi);

template <typename Scalar> struct PureEquilibrium {
  ActionProfile<Scalar> profile;
  std::array<Scalar, kNumTeams> payoff;
  //! Payoff of team i after flipping its own action, others fixed. E_i is
  //! affine in pi_i, so these endpoints certify every mixed deviation too.
  std::array<Scalar, kNumTeams> deviation_payoff;
};

//! All of the sixteen pure profiles that no team can improve on alone.
template <typename Scalar>
std::vector<PureEquilibrium<Scalar>> pure_nash_enumerate(const WinVector &w, const WeightVector<Scalar> &v);

//! Values of the other pair's effective probability at which a team is
//! indifferent between trying and tanking.
template <typename Scalar> struct Indifference {
  enum class Kind : std::uint8_t { none, point, any } kind = Kind::none;
  Scalar at{}; // valid for Kind::point

  static Indifference never() { return {Kind::none, Scalar{}}; }
  static Indifference always() { return {Kind::any, Scalar{}}; }
  static Indifference exactly(Scalar x) { return {Kind::point, std::move(x)}; }
};

template <typename Scalar>
Indifference<Scalar> indifference(const WinVector &w, const WeightVector<Scalar> &v, Team t);

//! A family of fully mixed equilibria pi in (0,1)^4.
template <typename Scalar> struct MixedContinuum {
  //! Required effective probability per pair; empty when every value in (0,1) works.
  std::optional<Scalar> a12;
  std::optional<Scalar> a34;
  //! Human-readable constraint per pair, e.g. "pi1 = pi2".
  std::string constraint12;
  std::string constraint34;
  //! An exact interior member of the family.
  ActionProfile<Scalar> representative;
  //! Payoffs, constant over the family.
  std::array<Scalar, kNumTeams> payoff;
  //! Teams for which every bracket type gives the same championship probability.
  std::vector<Team> bracket_indifferent;
};

template <typename Scalar>
std::optional<MixedContinuum<Scalar>> mixed_nash_check(const WinVector &w, const WeightVector<Scalar> &v);

template <typename Scalar> struct EquilibriumReport {
  WinVector wins;
  std::vector<PureEquilibrium<Scalar>> pure;
  std::optional<MixedContinuum<Scalar>> continuum;
  //! 0 for exact arithmetic, otherwise the relative tolerance used for equality tests.
  double equality_tolerance = 0.0;
};

template <typename Scalar>
EquilibriumReport<Scalar> equilibrium_report(const WinVector &w, const WeightVector<Scalar> &v);

} // namespace seedwise
