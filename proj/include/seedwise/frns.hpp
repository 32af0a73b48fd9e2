#pragma once

// Backward induction for team a1 when every rival always tries to win.

#include "seedwise/bracket.hpp"
#include "seedwise/core.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace seedwise {

enum class Action : std::uint8_t { lose_intentionally = 0, try_to_win = 1 };

constexpr std::array<Action, 2> kActions = {Action::try_to_win, Action::lose_intentionally};

std::string to_string(Action a);

template <typename Scalar> Scalar as_probability(Action a) {
  return ratio<Scalar>(a == Action::try_to_win ? 1 : 0);
}

//! Ties go to trying: the win branch is taken when value_win >= value_lose.
template <typename Scalar> struct Decision {
  Action action;
  Scalar value_win;
  Scalar value_lose;

  const Scalar &best_value() const { return action == Action::try_to_win ? value_win : value_lose; }
};

template <typename Scalar> Decision<Scalar> make_decision(Scalar value_win, Scalar value_lose) {
  const Action a = value_win >= value_lose ? Action::try_to_win : Action::lose_intentionally;
  return {a, std::move(value_win), std::move(value_lose)};
}

//! Probability that a1 wins the championship when it plays `action` in week m
//! from state W and plays optimally afterwards; rivals always try.
template <typename Scalar>
Scalar frns_value(Week m, const WinVector &w, const WeightVector<Scalar> &v, Action action);

template <typename Scalar>
Decision<Scalar> frns_decide(Week m, const WinVector &w, const WeightVector<Scalar> &v);

template <typename Scalar>
Scalar value_week3(const WinVector &w, const WeightVector<Scalar> &v, Action action) {
  return frns_value(Week::three, w, v, action);
}
template <typename Scalar>
Scalar value_week2(const WinVector &w, const WeightVector<Scalar> &v, Action action) {
  return frns_value(Week::two, w, v, action);
}
template <typename Scalar> Scalar value_week1(const WeightVector<Scalar> &v, Action action) {
  return frns_value(Week::one, WinVector{}, v, action);
}
template <typename Scalar> Decision<Scalar> decide_week3(const WinVector &w, const WeightVector<Scalar> &v) {
  return frns_decide(Week::three, w, v);
}
template <typename Scalar> Decision<Scalar> decide_week2(const WinVector &w, const WeightVector<Scalar> &v) {
  return frns_decide(Week::two, w, v);
}
template <typename Scalar> Decision<Scalar> decide_week1(const WeightVector<Scalar> &v) {
  return frns_decide(Week::one, WinVector{}, v);
}

//! Week-3 states whose decision depends on V and has a closed-form boundary.
bool has_region_polynomial(const WinVector &w);

//! Boundary polynomial in (v2, v3, v4) after scaling v1 to 1. a1 should try
//! to win iff the value is <= 0. Defined for [1,2,0,1], [0,1,1,2], [1,2,1,0].
template <typename Scalar>
Scalar theorem_polynomial(const WinVector &w, const WeightVector<Scalar> &v);

struct RegionRow {
  Rational v2, v3, v4;
  Rational value_win, value_lose;
  bool in_lose_region; // value_lose - value_win >= 0
  Action decision;
};

//! Grid {step, 2 step, ..., <= 1} for v2 >= v3 >= v4 with v1 = 1, in
//! lexicographic (v2, v3, v4) order. Requires 0 < step <= 1/4.
std::vector<RegionRow> region_scan(Week m, const WinVector &w, const Rational &step);
void region_scan(Week m, const WinVector &w, const Rational &step,
                 const std::function<void(const RegionRow &)> &emit);

//! Header "v2,v3,v4,value_win,value_lose,decision".
void write_region_csv_header(std::ostream &os);
void write_region_csv_row(std::ostream &os, const RegionRow &row);
//! Gnuplot script that scatters the lose-region points of `csv_path`.
void write_gnuplot_script(std::ostream &os, const std::string &csv_path, Week m, const WinVector &w);

} // namespace seedwise
