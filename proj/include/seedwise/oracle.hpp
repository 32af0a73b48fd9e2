#pragma once

// Independent ground truth: exhaustive expansion of the season and playoff
// tree, brute-force policy search and seeded Monte Carlo simulation. Nothing
// here uses the closed forms of bracket.hpp, frns.hpp or frs.hpp.

#include "seedwise/core.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>

namespace seedwise {

//! Action probability of each team at each (week, win vector). Entries not
//! set default to 1 (try to win).
template <typename Scalar> class PolicyTable {
public:
  static PolicyTable always_try() { return {}; }

  void set(Team t, Week m, const WinVector &w, Scalar prob);
  Scalar get(Team t, Week m, const WinVector &w) const;

  //! Same action probability at every state of week m for team t.
  void set_week(Team t, Week m, const Scalar &prob);

  std::size_t size() const { return entries_.size(); }

private:
  std::map<std::tuple<int, int, WinVector>, Scalar> entries_;
};

//! Exact championship probabilities from state (m, W) under the given policies.
template <typename Scalar>
std::array<Scalar, kNumTeams> enumerate_champ_prob(Week m, const WinVector &w, const WeightVector<Scalar> &v,
                                                   const PolicyTable<Scalar> &policies);

//! Championship distribution from a final standing: uniform tie-break
//! permutations, then both playoff rounds.
template <typename Scalar>
std::array<Scalar, kNumTeams> playoff_distribution(const WinVector &final_wins, const WeightVector<Scalar> &v);

struct PolicyOptimum {
  Rational value;
  //! a1's optimal pure action at every state reachable from the start.
  PolicyTable<Rational> policy;
  std::uint64_t policies_examined = 0;
};

//! Best pure Markov policy for a1 with rivals always trying, by enumerating
//! every assignment of {try, tank} to the decision states reachable from (m, W).
PolicyOptimum best_policy_bruteforce(Week m, const WinVector &w, const WeightVector<Rational> &v);

struct SimulationResult {
  std::array<double, kNumTeams> frequency{};
  std::array<std::uint64_t, kNumTeams> titles{};
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::array<double, kNumTeams> standard_error{};
  std::string generator;
};

//! Simulates n full seasons and playoffs. Reproducible from (seed, n) and
//! independent of the number of worker threads.
SimulationResult monte_carlo(const WeightVector<double> &v, const PolicyTable<double> &policies, std::uint64_t n,
                             std::uint64_t seed, unsigned workers = 0);

template <typename Scalar> struct BestResponse {
  Scalar alpha;
  Scalar value;
};

//! Maximizes team i's week-3 championship probability over alpha on the grid
//! {0, step, ..., 1}, other actions fixed to pi. Ties keep the smallest alpha.
template <typename Scalar>
BestResponse<Scalar> best_response_oracle(const WinVector &w, const WeightVector<Scalar> &v,
                                          const ActionProfile<Scalar> &pi, Team i, const Scalar &step);

} // namespace seedwise
