#include "seedwise/bracket.hpp"

#include <algorithm>
#include <map>

namespace seedwise {

char to_char(Bracket b) { return static_cast<char>('A' + index(b)); }

const std::array<Pairing, 2> &semifinals(Bracket b) {
  static const std::array<std::array<Pairing, 2>, 3> kSemis = {{
      {{{Team::a1, Team::a4}, {Team::a2, Team::a3}}},
      {{{Team::a1, Team::a3}, {Team::a2, Team::a4}}},
      {{{Team::a1, Team::a2}, {Team::a3, Team::a4}}},
  }};
  return kSemis[index(b)];
}

Bracket classify(Pairing semi0, Pairing semi1) {
  if (semi0.involves(Team::a1) == semi1.involves(Team::a1))
    throw InvalidInput("semifinal pairs must partition the four teams");
  const Pairing &with_a1 = semi0.involves(Team::a1) ? semi0 : semi1;
  switch (with_a1.opponent_of(Team::a1)) {
  case Team::a4: return Bracket::A;
  case Team::a3: return Bracket::B;
  case Team::a2: return Bracket::C;
  default: break;
  }
  throw InvalidInput("semifinal pair cannot match a team with itself");
}

template <typename Scalar>
Scalar champ_prob(Team i, Bracket b, const WeightVector<Scalar> &v) {
  const auto &semis = semifinals(b);
  const Pairing &own = semis[0].involves(i) ? semis[0] : semis[1];
  const Pairing &other = semis[0].involves(i) ? semis[1] : semis[0];
  const Team opp = own.opponent_of(i);
  const Scalar reach_final = win_prob(i, opp, v);
  const Scalar win_final = win_prob(other.first, other.second, v) * win_prob(i, other.first, v) +
                           win_prob(other.second, other.first, v) * win_prob(i, other.second, v);
  return reach_final * win_final;
}

template <typename Scalar> ChampTable<Scalar> champ_table(const WeightVector<Scalar> &v) {
  ChampTable<Scalar> out;
  for (Team i : kTeams)
    for (Bracket b : kBrackets) out.t[index(i)][index(b)] = champ_prob(i, b, v);
  return out;
}

namespace {

SeedingDistribution compute_seeding(const WinVector &w) {
  std::array<Team, kNumTeams> seeds = kTeams;
  std::array<int, 3> counts{};
  int consistent = 0;
  // All 24 seed orders; keep those ranking teams by wins descending.
  std::sort(seeds.begin(), seeds.end());
  do {
    bool ordered = true;
    for (int k = 0; k + 1 < kNumTeams; ++k)
      if (w[seeds[k]] < w[seeds[k + 1]]) ordered = false;
    if (!ordered) continue;
    ++consistent;
    ++counts[index(classify({seeds[0], seeds[3]}, {seeds[1], seeds[2]}))];
  } while (std::next_permutation(seeds.begin(), seeds.end()));
  SeedingDistribution out;
  for (int k = 0; k < 3; ++k) out.twenty_fourths[k] = counts[k] * (24 / consistent);
  return out;
}

} // namespace

SeedingDistribution seeding_distribution(const WinVector &final_wins) {
  if (!is_final_standing(final_wins))
    throw InvalidInput("win vector " + to_string(final_wins) + " is not a reachable final standing");
  static const std::map<WinVector, SeedingDistribution> table = [] {
    std::map<WinVector, SeedingDistribution> t;
    for (const auto &w : final_standings()) t.emplace(w, compute_seeding(w));
    return t;
  }();
  return table.at(final_wins);
}

template <typename Scalar>
Scalar expected_champ_prob(Team i, const WinVector &final_wins, const ChampTable<Scalar> &table) {
  const SeedingDistribution dist = seeding_distribution(final_wins);
  Scalar out = ratio<Scalar>(0);
  for (Bracket b : kBrackets)
    if (dist.twenty_fourths[index(b)] != 0) out += dist.probability<Scalar>(b) * table(i, b);
  return out;
}

template <typename Scalar> bool verify_orderings(const ChampTable<Scalar> &t) {
  using enum Bracket;
  auto chain = [&](Team i, Bracket hi, Bracket mid, Bracket lo) {
    return t(i, hi) >= t(i, mid) && t(i, mid) >= t(i, lo);
  };
  return chain(Team::a1, A, B, C) && chain(Team::a2, B, A, C) && chain(Team::a3, C, A, B) &&
         chain(Team::a4, C, B, A);
}

#define SEEDWISE_INSTANTIATE(S)                                                                    \
  template S champ_prob(Team, Bracket, const WeightVector<S> &);                                   \
  template ChampTable<S> champ_table(const WeightVector<S> &);                                     \
  template S expected_champ_prob(Team, const WinVector &, const ChampTable<S> &);                  \
  template bool verify_orderings(const ChampTable<S> &);

SEEDWISE_INSTANTIATE(Rational)
SEEDWISE_INSTANTIATE(double)
#undef SEEDWISE_INSTANTIATE

} // namespace seedwise
