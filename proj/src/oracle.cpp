#include "seedwise/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

namespace seedwise {

template <typename Scalar> void PolicyTable<Scalar>::set(Team t, Week m, const WinVector &w, Scalar prob) {
  if (prob < 0 || prob > 1) throw InvalidInput("action probability must lie in [0,1]");
  entries_[{index(t), number(m), w}] = std::move(prob);
}

template <typename Scalar> Scalar PolicyTable<Scalar>::get(Team t, Week m, const WinVector &w) const {
  auto it = entries_.find({index(t), number(m), w});
  return it == entries_.end() ? ratio<Scalar>(1) : it->second;
}

template <typename Scalar> void PolicyTable<Scalar>::set_week(Team t, Week m, const Scalar &prob) {
  for (const auto &w : reachable_states(m)) set(t, m, w, prob);
}

namespace {

template <typename Scalar> Scalar schwenk(const Scalar &vi, const Scalar &vj) { return vi / (vi + vj); }

//! Probability that `first` wins one regular-season game, expanding the four
//! (try, tank) action combinations explicitly.
template <typename Scalar>
Scalar game_first_wins(const Scalar &v_first, const Scalar &v_second, const Scalar &pi_first,
                       const Scalar &pi_second) {
  const Scalar one = ratio<Scalar>(1);
  Scalar total = ratio<Scalar>(0);
  for (int first_tries = 0; first_tries < 2; ++first_tries) {
    for (int second_tries = 0; second_tries < 2; ++second_tries) {
      const Scalar weight = (first_tries ? pi_first : one - pi_first) * (second_tries ? pi_second : one - pi_second);
      if (weight == 0) continue;
      Scalar outcome;
      if (first_tries && second_tries) outcome = schwenk(v_first, v_second);
      else if (first_tries) outcome = one;
      else if (second_tries) outcome = ratio<Scalar>(0);
      else outcome = ratio<Scalar>(1, 2);
      total += weight * outcome;
    }
  }
  return total;
}

//! Playoff tree from explicit seeds: 1 v 4 and 2 v 3, then the final.
template <typename Scalar>
void add_playoff(const std::array<int, kNumTeams> &seed, const std::array<Scalar, kNumTeams> &v, const Scalar &weight,
                 std::array<Scalar, kNumTeams> &out) {
  const Scalar one = ratio<Scalar>(1);
  for (int left = 0; left < 2; ++left) {
    const int l = left ? seed[0] : seed[3];
    const Scalar pl = left ? schwenk(v[seed[0]], v[seed[3]]) : one - schwenk(v[seed[0]], v[seed[3]]);
    if (pl == 0) continue;
    for (int right = 0; right < 2; ++right) {
      const int r = right ? seed[1] : seed[2];
      const Scalar pr = right ? schwenk(v[seed[1]], v[seed[2]]) : one - schwenk(v[seed[1]], v[seed[2]]);
      if (pr == 0) continue;
      const Scalar reach = weight * pl * pr;
      const Scalar l_wins = schwenk(v[l], v[r]);
      out[l] += reach * l_wins;
      out[r] += reach * (one - l_wins);
    }
  }
}

template <typename Scalar>
std::array<Scalar, kNumTeams> playoff_from_standing(const WinVector &w, const std::array<Scalar, kNumTeams> &v) {
  std::array<Scalar, kNumTeams> out;
  out.fill(ratio<Scalar>(0));
  std::array<int, kNumTeams> seed = {0, 1, 2, 3};
  std::vector<std::array<int, kNumTeams>> orders;
  do {
    bool ranked = true;
    for (int k = 0; k + 1 < kNumTeams; ++k)
      if (w.wins[seed[k]] < w.wins[seed[k + 1]]) ranked = false;
    if (ranked) orders.push_back(seed);
  } while (std::next_permutation(seed.begin(), seed.end()));
  const Scalar weight = ratio<Scalar>(1, static_cast<std::int64_t>(orders.size()));
  for (const auto &o : orders) add_playoff(o, v, weight, out);
  return out;
}

template <typename Scalar> class SeasonTree {
public:
  SeasonTree(const WeightVector<Scalar> &v, const PolicyTable<Scalar> &policies)
      : v_(v.values()), policies_(policies) {}

  std::array<Scalar, kNumTeams> expand(int week, const WinVector &w) {
    if (week > kNumWeeks) return terminal(w);
    const Week m = static_cast<Week>(week);
    const auto &games = schedule(m);
    std::array<Scalar, 2> first_wins;
    for (int g = 0; g < 2; ++g) {
      const Team f = games[g].first, s = games[g].second;
      first_wins[g] = game_first_wins(v_[index(f)], v_[index(s)], policies_.get(f, m, w), policies_.get(s, m, w));
    }
    const Scalar one = ratio<Scalar>(1);
    std::array<Scalar, kNumTeams> out;
    out.fill(ratio<Scalar>(0));
    for (int o0 = 0; o0 < 2; ++o0) {
      for (int o1 = 0; o1 < 2; ++o1) {
        const Scalar p = (o0 ? one - first_wins[0] : first_wins[0]) * (o1 ? one - first_wins[1] : first_wins[1]);
        if (p == 0) continue;
        WinVector next = w;
        ++next.wins[index(o0 ? games[0].second : games[0].first)];
        ++next.wins[index(o1 ? games[1].second : games[1].first)];
        const auto sub = expand(week + 1, next);
        for (int t = 0; t < kNumTeams; ++t) out[t] += p * sub[t];
      }
    }
    return out;
  }

private:
  const std::array<Scalar, kNumTeams> &terminal(const WinVector &w) {
    auto it = terminal_.find(w);
    if (it == terminal_.end()) it = terminal_.emplace(w, playoff_from_standing(w, v_)).first;
    return it->second;
  }

  std::array<Scalar, kNumTeams> v_;
  const PolicyTable<Scalar> &policies_;
  std::map<WinVector, std::array<Scalar, kNumTeams>> terminal_;
};

} // namespace

template <typename Scalar>
std::array<Scalar, kNumTeams> enumerate_champ_prob(Week m, const WinVector &w, const WeightVector<Scalar> &v,
                                                   const PolicyTable<Scalar> &policies) {
  require_state(m, w);
  return SeasonTree<Scalar>(v, policies).expand(number(m), w);
}

template <typename Scalar>
std::array<Scalar, kNumTeams> playoff_distribution(const WinVector &final_wins, const WeightVector<Scalar> &v) {
  if (!is_final_standing(final_wins))
    throw InvalidInput("win vector " + to_string(final_wins) + " is not a reachable final standing");
  return playoff_from_standing(final_wins, v.values());
}

namespace {

// Decision graph for a1 from (m, W): every reachable (week, W) node with its
// successors under each a1 action, rivals always trying.
struct DecisionNode {
  int week;
  WinVector wins;
  // [action][k] = (successor node or -1 for terminal, terminal standing, probability)
  struct Edge {
    int next;
    WinVector standing;
    Rational p_exact;
    double p;
  };
  std::array<std::vector<Edge>, 2> edges; // 0 = tank, 1 = try
};

struct DecisionGraph {
  std::vector<DecisionNode> nodes;
  std::map<WinVector, Rational> terminal_exact;
  std::map<WinVector, double> terminal;
};

DecisionGraph build_graph(Week m, const WinVector &start, const WeightVector<Rational> &v) {
  DecisionGraph g;
  std::map<std::pair<int, WinVector>, int> ids;
  std::vector<std::pair<int, WinVector>> frontier = {{number(m), start}};
  ids[frontier.front()] = 0;
  g.nodes.push_back({number(m), start, {}});
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const int week = g.nodes[k].week;
    const WinVector w = g.nodes[k].wins;
    const auto &games = schedule(static_cast<Week>(week));
    for (int act = 0; act < 2; ++act) {
      std::array<Rational, 2> fw = {
          game_first_wins(v[games[0].first], v[games[0].second], Rational(act), Rational(1)),
          game_first_wins(v[games[1].first], v[games[1].second], Rational(1), Rational(1))};
      std::vector<DecisionNode::Edge> edges;
      for (int o0 = 0; o0 < 2; ++o0) {
        for (int o1 = 0; o1 < 2; ++o1) {
          Rational p = (o0 ? 1 - fw[0] : fw[0]) * (o1 ? 1 - fw[1] : fw[1]);
          if (p == 0) continue;
          WinVector next = w;
          ++next.wins[index(o0 ? games[0].second : games[0].first)];
          ++next.wins[index(o1 ? games[1].second : games[1].first)];
          int id = -1;
          if (week < kNumWeeks) {
            auto key = std::make_pair(week + 1, next);
            auto it = ids.find(key);
            if (it == ids.end()) {
              it = ids.emplace(key, static_cast<int>(g.nodes.size())).first;
              g.nodes.push_back({week + 1, next, {}});
            }
            id = it->second;
          } else if (!g.terminal_exact.count(next)) {
            const auto dist = playoff_from_standing(next, v.values());
            g.terminal_exact[next] = dist[0];
            g.terminal[next] = dist[0].convert_to<double>();
          }
          edges.push_back({id, next, p, p.convert_to<double>()});
        }
      }
      g.nodes[k].edges[act] = std::move(edges);
    }
  }
  return g;
}

template <typename Scalar, typename Prob, typename Terminal>
Scalar evaluate_policy(const DecisionGraph &g, std::uint64_t mask, int node, Prob prob, Terminal terminal) {
  const int act = static_cast<int>((mask >> node) & 1u);
  Scalar total = Scalar(0);
  for (const auto &e : g.nodes[node].edges[act])
    total += prob(e) * (e.next < 0 ? terminal(e.standing) : evaluate_policy<Scalar>(g, mask, e.next, prob, terminal));
  return total;
}

// Bits of `mask` that actually influence play: nodes reachable under it.
std::uint64_t live_bits(const DecisionGraph &g, std::uint64_t mask) {
  std::uint64_t live = 0;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    if (live >> n & 1u) continue;
    live |= std::uint64_t{1} << n;
    for (const auto &e : g.nodes[n].edges[(mask >> n) & 1u])
      if (e.next >= 0) stack.push_back(e.next);
  }
  return live;
}

} // namespace

PolicyOptimum best_policy_bruteforce(Week m, const WinVector &w, const WeightVector<Rational> &v) {
  require_state(m, w);
  const DecisionGraph g = build_graph(m, w, v);
  const std::size_t n = g.nodes.size();
  if (n > 24) throw InvalidInput("decision graph too large for brute force");
  const std::uint64_t count = std::uint64_t{1} << n;

  // Screen every policy in floating point, then settle the near-best ones exactly.
  std::vector<double> values(count);
  double best = -1.0;
  auto p_double = [](const DecisionNode::Edge &e) { return e.p; };
  auto t_double = [&](const WinVector &s) { return g.terminal.at(s); };
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    values[mask] = evaluate_policy<double>(g, mask, 0, p_double, t_double);
    best = std::max(best, values[mask]);
  }
  std::set<std::uint64_t> candidates;
  for (std::uint64_t mask = 0; mask < count; ++mask)
    if (values[mask] >= best - 1e-10) candidates.insert(mask & live_bits(g, mask));

  auto p_exact = [](const DecisionNode::Edge &e) { return e.p_exact; };
  auto t_exact = [&](const WinVector &s) { return g.terminal_exact.at(s); };
  PolicyOptimum out;
  out.policies_examined = count;
  std::optional<std::uint64_t> arg;
  for (std::uint64_t mask : candidates) {
    Rational value = evaluate_policy<Rational>(g, mask, 0, p_exact, t_exact);
    // Prefer trying on exact ties (higher mask bits mean more "try").
    if (!arg || value > out.value || (value == out.value && mask > *arg)) {
      out.value = std::move(value);
      arg = mask;
    }
  }
  const std::uint64_t live = live_bits(g, *arg);
  for (std::size_t k = 0; k < n; ++k)
    if (live >> k & 1u)
      out.policy.set(Team::a1, static_cast<Week>(g.nodes[k].week), g.nodes[k].wins, Rational((*arg >> k) & 1u));
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Uniform {
public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  // 53 random bits; std distributions are not portable across libraries.
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kBatch = 1u << 15;

// Policy lookup flattened to (team, week, state) for the simulation loop.
struct FlatPolicy {
  std::array<std::array<std::map<WinVector, double>, kNumWeeks>, kNumTeams> prob;

  double get(int team, int week, const WinVector &w) const {
    const auto &m = prob[team][week - 1];
    auto it = m.find(w);
    return it == m.end() ? 1.0 : it->second;
  }
};

std::array<std::uint64_t, kNumTeams> simulate_batch(const std::array<double, kNumTeams> &v, const FlatPolicy &policy,
                                                    std::uint64_t samples, std::uint64_t seed) {
  Uniform u(seed);
  std::array<std::uint64_t, kNumTeams> titles{};
  auto play = [&](int a, int b) { return u() < v[a] / (v[a] + v[b]) ? a : b; };
  for (std::uint64_t s = 0; s < samples; ++s) {
    WinVector w{};
    for (int week = 1; week <= kNumWeeks; ++week) {
      const WinVector start = w;
      for (const auto &g : schedule(static_cast<Week>(week))) {
        const int f = index(g.first), sec = index(g.second);
        const bool f_tries = u() < policy.get(f, week, start);
        const bool s_tries = u() < policy.get(sec, week, start);
        int winner;
        if (f_tries && s_tries) winner = play(f, sec);
        else if (f_tries) winner = f;
        else if (s_tries) winner = sec;
        else winner = u() < 0.5 ? f : sec;
        ++w.wins[winner];
      }
    }
    // Seeds: wins descending, ties broken by an independent uniform key.
    std::array<std::pair<int, double>, kNumTeams> key;
    for (int t = 0; t < kNumTeams; ++t) key[t] = {t, u()};
    std::sort(key.begin(), key.end(), [&](const auto &x, const auto &y) {
      if (w.wins[x.first] != w.wins[y.first]) return w.wins[x.first] > w.wins[y.first];
      return x.second < y.second;
    });
    const int left = play(key[0].first, key[3].first);
    const int right = play(key[1].first, key[2].first);
    ++titles[play(left, right)];
  }
  return titles;
}

} // namespace

SimulationResult monte_carlo(const WeightVector<double> &v, const PolicyTable<double> &policies, std::uint64_t n,
                             std::uint64_t seed, unsigned workers) {
  if (n < 1) throw InvalidInput("sample count must be at least 1");
  FlatPolicy flat;
  for (int t = 0; t < kNumTeams; ++t)
    for (int week = 1; week <= kNumWeeks; ++week)
      for (const auto &w : reachable_states(static_cast<Week>(week)))
        flat.prob[t][week - 1][w] = policies.get(static_cast<Team>(t), static_cast<Week>(week), w);

  const std::uint64_t batches = (n + kBatch - 1) / kBatch;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));
  std::vector<std::array<std::uint64_t, kNumTeams>> partial(workers, std::array<std::uint64_t, kNumTeams>{});
  auto run = [&](unsigned worker) {
    for (std::uint64_t b = worker; b < batches; b += workers) {
      const std::uint64_t samples = std::min(kBatch, n - b * kBatch);
      const auto titles = simulate_batch(v.values(), flat, samples, splitmix64(seed ^ splitmix64(b)));
      for (int t = 0; t < kNumTeams; ++t) partial[worker][t] += titles[t];
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(run, k);
    run(0);
  }
  SimulationResult out;
  out.samples = n;
  out.seed = seed;
  out.generator = "mt19937_64 (splitmix64 batch sub-seeds, 32768 samples per batch)";
  for (const auto &p : partial)
    for (int t = 0; t < kNumTeams; ++t) out.titles[t] += p[t];
  for (int t = 0; t < kNumTeams; ++t) {
    const double f = static_cast<double>(out.titles[t]) / static_cast<double>(n);
    out.frequency[t] = f;
    out.standard_error[t] = std::sqrt(f * (1.0 - f) / static_cast<double>(n));
  }
  return out;
}

template <typename Scalar>
BestResponse<Scalar> best_response_oracle(const WinVector &w, const WeightVector<Scalar> &v,
                                          const ActionProfile<Scalar> &pi, Team i, const Scalar &step) {
  require_state(Week::three, w);
  if (step <= 0 || step > 1) throw InvalidInput("grid step must satisfy 0 < step <= 1");
  std::vector<Scalar> grid;
  for (Scalar a = ratio<Scalar>(0); a < 1 && !scalar_equal(a, ratio<Scalar>(1)); a += step) grid.push_back(a);
  grid.push_back(ratio<Scalar>(1));
  std::optional<BestResponse<Scalar>> best;
  for (const Scalar &alpha : grid) {
    PolicyTable<Scalar> table;
    for (Team t : kTeams) table.set(t, Week::three, w, t == i ? alpha : pi[t]);
    Scalar value = enumerate_champ_prob(Week::three, w, v, table)[index(i)];
    if (!best || value > best->value) best = BestResponse<Scalar>{alpha, std::move(value)};
  }
  return *best;
}

template class PolicyTable<Rational>;
template class PolicyTable<double>;

#define SEEDWISE_INSTANTIATE(S)                                                                              \
  template std::array<S, kNumTeams> enumerate_champ_prob(Week, const WinVector &, const WeightVector<S> &,   \
                                                         const PolicyTable<S> &);                            \
  template std::array<S, kNumTeams> playoff_distribution(const WinVector &, const WeightVector<S> &);        \
  template BestResponse<S> best_response_oracle(const WinVector &, const WeightVector<S> &,                  \
                                                const ActionProfile<S> &, Team, const S &);

SEEDWISE_INSTANTIATE(Rational)
SEEDWISE_INSTANTIATE(double)
#undef SEEDWISE_INSTANTIATE

} // namespace seedwise
