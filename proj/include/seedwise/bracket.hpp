#pragma once

// Championship probabilities for the three semifinal pairings and the
// seeding distribution induced by final standings.

#include "seedwise/core.hpp"

#include <array>

namespace seedwise {

//! Semifinal pairing: A {a1-a4, a2-a3}, B {a1-a3, a2-a4}, C {a1-a2, a3-a4}.
enum class Bracket : std::uint8_t { A = 0, B = 1, C = 2 };

constexpr std::array<Bracket, 3> kBrackets = {Bracket::A, Bracket::B, Bracket::C};
constexpr int index(Bracket b) { return static_cast<int>(b); }
char to_char(Bracket b);

const std::array<Pairing, 2> &semifinals(Bracket b);
//! Classifies an unordered pair of semifinals; the pair must partition the teams.
Bracket classify(Pairing semi0, Pairing semi1);

//! Win the semifinal, then the final against either possible opponent.
template <typename Scalar>
Scalar champ_prob(Team i, Bracket b, const WeightVector<Scalar> &v);

//! T[team][bracket] for all twelve combinations; each column sums to 1.
template <typename Scalar> struct ChampTable {
  std::array<std::array<Scalar, 3>, kNumTeams> t;

  const Scalar &operator()(Team i, Bracket b) const { return t[index(i)][index(b)]; }
};

template <typename Scalar> ChampTable<Scalar> champ_table(const WeightVector<Scalar> &v);

//! Distribution over bracket types, stored in 24ths: every tie-break is a
//! uniform permutation of a tied block, and block sizes divide 4! jointly.
struct SeedingDistribution {
  std::array<int, 3> twenty_fourths{};

  template <typename Scalar> Scalar probability(Bracket b) const {
    return ratio<Scalar>(twenty_fourths[index(b)], 24);
  }
  bool operator==(const SeedingDistribution &) const = default;
};

//! Sort by wins, permute tied blocks uniformly, pair seed 1-4 and 2-3.
SeedingDistribution seeding_distribution(const WinVector &final_wins);

template <typename Scalar>
Scalar expected_champ_prob(Team i, const WinVector &final_wins, const ChampTable<Scalar> &table);

template <typename Scalar>
Scalar expected_champ_prob(Team i, const WinVector &final_wins, const WeightVector<Scalar> &v) {
  return expected_champ_prob(i, final_wins, champ_table(v));
}

//! T1A>=T1B>=T1C, T2B>=T2A>=T2C, T3C>=T3A>=T3B, T4C>=T4B>=T4A.
template <typename Scalar> bool verify_orderings(const ChampTable<Scalar> &table);

template <typename Scalar> bool verify_orderings(const WeightVector<Scalar> &v) {
  return verify_orderings(champ_table(v));
}

} // namespace seedwise
