#include "seedwise/frns.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

namespace seedwise {

std::string to_string(Action a) {
  return a == Action::try_to_win ? "try to win" : "lose intentionally";
}

namespace {

template <typename Scalar> class FrnsSolver {
public:
  explicit FrnsSolver(const WeightVector<Scalar> &v) : v_(v), table_(champ_table(v)) {}

  Scalar value(Week m, const WinVector &w, Action action) const {
    const auto &games = schedule(m);
    // a1 is always the first team of the first game.
    const Scalar one = ratio<Scalar>(1);
    const Scalar a1_wins = effective_win_prob(v_[Team::a1], v_[games[0].second],
                                              as_probability<Scalar>(action), one);
    const Scalar other_first = win_prob(games[1].first, games[1].second, v_);
    Scalar total = ratio<Scalar>(0);
    for (const auto &o : week_outcomes(m)) {
      const Scalar p0 = o.winner0 == Team::a1 ? a1_wins : one - a1_wins;
      const Scalar p1 = o.winner1 == games[1].first ? other_first : one - other_first;
      const Scalar p = p0 * p1;
      if (p == 0) continue;
      total += p * continuation(m, apply(w, o));
    }
    return total;
  }

  Decision<Scalar> decide(Week m, const WinVector &w) const {
    return make_decision(value(m, w, Action::try_to_win), value(m, w, Action::lose_intentionally));
  }

private:
  Scalar continuation(Week m, const WinVector &next) const {
    if (m == Week::three) return expected_champ_prob(Team::a1, next, table_);
    const Week following = static_cast<Week>(number(m) + 1);
    return decide(following, next).best_value();
  }

  const WeightVector<Scalar> &v_;
  ChampTable<Scalar> table_;
};

} // namespace

template <typename Scalar>
Scalar frns_value(Week m, const WinVector &w, const WeightVector<Scalar> &v, Action action) {
  require_state(m, w);
  return FrnsSolver<Scalar>(v).value(m, w, action);
}

template <typename Scalar>
Decision<Scalar> frns_decide(Week m, const WinVector &w, const WeightVector<Scalar> &v) {
  require_state(m, w);
  return FrnsSolver<Scalar>(v).decide(m, w);
}

bool has_region_polynomial(const WinVector &w) {
  return w == make_wins(1, 2, 0, 1) || w == make_wins(0, 1, 1, 2) || w == make_wins(1, 2, 1, 0);
}

template <typename Scalar>
Scalar theorem_polynomial(const WinVector &w, const WeightVector<Scalar> &v) {
  if (!has_region_polynomial(w))
    throw InvalidInput("no boundary polynomial for week-3 state " + to_string(w));
  const auto c = v.canonical();
  const Scalar &v2 = c[Team::a2];
  const Scalar &v3 = c[Team::a3];
  const Scalar &v4 = c[Team::a4];
  const Scalar v22 = v2 * v2, v33 = v3 * v3, v44 = v4 * v4;
  if (w == make_wins(1, 2, 1, 0)) {
    // Negated numerator of value_win - value_lose over positive denominators.
    return (v4 - v3) * (2 * v22 * v33 + 3 * v22 * v3 * v4 - v22 * v44 + 2 * v33 * v44);
  }
  // [1,2,0,1] and [0,1,1,2]: trying wins iff p34 >= (4TA-2TB-2TC)/(5TA-TB-4TC).
  return (v3 - v4) * (3 * v22 * v3 * v4 + 2 * v22 * v44 + 2 * v33 * v44 - v22 * v33);
}

void region_scan(Week m, const WinVector &w, const Rational &step,
                 const std::function<void(const RegionRow &)> &emit) {
  for (const auto &row : region_scan(m, w, step)) emit(row);
}

std::vector<RegionRow> region_scan(Week m, const WinVector &w, const Rational &step) {
  require_state(m, w);
  if (step <= 0 || step > Rational(1, 4)) throw InvalidInput("grid step must satisfy 0 < step <= 1/4");
  std::vector<Rational> axis;
  for (Rational x = step; x <= 1; x += step) axis.push_back(x);
  struct Point {
    std::size_t i2, i3, i4;
  };
  std::vector<Point> points;
  for (std::size_t i2 = 0; i2 < axis.size(); ++i2)
    for (std::size_t i3 = 0; i3 <= i2; ++i3)
      for (std::size_t i4 = 0; i4 <= i3; ++i4) points.push_back({i2, i3, i4});

  std::vector<RegionRow> rows(points.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < points.size(); k += stride) {
      const auto &p = points[k];
      const WeightVector<Rational> v(Rational(1), axis[p.i2], axis[p.i3], axis[p.i4]);
      auto d = FrnsSolver<Rational>(v).decide(m, w);
      const bool lose_region = d.value_lose - d.value_win >= 0;
      rows[k] = RegionRow{axis[p.i2], axis[p.i3], axis[p.i4], std::move(d.value_win),
                          std::move(d.value_lose), lose_region, d.action};
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }
  return rows;
}

void write_region_csv_header(std::ostream &os) { os << "v2,v3,v4,value_win,value_lose,decision\n"; }

void write_region_csv_row(std::ostream &os, const RegionRow &row) {
  os << to_decimal_string(to_double(row.v2)) << ',' << to_decimal_string(to_double(row.v3)) << ','
     << to_decimal_string(to_double(row.v4)) << ',' << to_decimal_string(to_double(row.value_win)) << ','
     << to_decimal_string(to_double(row.value_lose)) << ','
     << (row.decision == Action::try_to_win ? "win" : "lose") << '\n';
}

void write_gnuplot_script(std::ostream &os, const std::string &csv_path, Week m, const WinVector &w) {
  os << "# lose-intentionally region for a1, week " << number(m) << ", W = " << to_string(w) << "\n"
     << "set datafile separator ','\n"
     << "set xlabel 'v2'\nset ylabel 'v3'\nset zlabel 'v4'\n"
     << "set xrange [0:1]\nset yrange [0:1]\nset zrange [0:1]\n"
     << "set title 'value_lose - value_win >= 0'\n"
     << "splot '" << csv_path << "' every ::1 using 1:2:($5 >= $4 ? $3 : 1/0) with points pt 7 ps 0.4 notitle\n";
}

#define SEEDWISE_INSTANTIATE(S)                                                                    \
  template S frns_value(Week, const WinVector &, const WeightVector<S> &, Action);                 \
  template Decision<S> frns_decide(Week, const WinVector &, const WeightVector<S> &);              \
  template S theorem_polynomial(const WinVector &, const WeightVector<S> &);

SEEDWISE_INSTANTIATE(Rational)
SEEDWISE_INSTANTIATE(double)
#undef SEEDWISE_INSTANTIATE

} // namespace seedwise
