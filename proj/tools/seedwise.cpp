// seedwise: advice, probability tables, region sweeps, equilibria,
// simulations and the HTTP service from the command line.
//
// Exit codes: 0 success, 2 invalid input, 3 internal error.

#include "seedwise/api.hpp"
#include "seedwise/service.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace seedwise;
using api::json;

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fraction(const Rational &x) {
  return denominator(x) == 1 ? numerator(x).str() : to_fraction_string(x);
}

std::string rat(const Rational &x) {
  std::ostringstream os;
  os << fraction(x) << " (" << to_decimal_string(to_double(x), 10) << ")";
  return os.str();
}

std::string weights_text(const WeightVector<Rational> &v) {
  std::string out = "(";
  for (Team t : kTeams) out += (t == Team::a1 ? "" : ", ") + fraction(v[t]);
  return out + ")";
}

void print_decision(std::ostream &os, const Decision<Rational> &d) {
  os << "a1 should " << to_string(d.action) << "\n"
     << "  championship probability if trying: " << rat(d.value_win) << "\n"
     << "  championship probability if losing: " << rat(d.value_lose) << "\n";
}

void print_report(std::ostream &os, const WinVector &w, const WeightVector<Rational> &v) {
  const auto report = equilibrium_report(w, v);
  os << "week-3 game at W = " << to_string(w) << ", V = " << weights_text(v) << "\n";
  os << report.pure.size() << " pure equilibri" << (report.pure.size() == 1 ? "um" : "a") << "\n";
  for (const auto &eq : report.pure) {
    os << "  pi = (";
    for (Team t : kTeams) os << (t == Team::a1 ? "" : ",") << (eq.profile[t] == 1 ? 1 : 0);
    os << ")  E =";
    for (Team t : kTeams) os << ' ' << fraction(eq.payoff[index(t)]);
    os << "\n";
  }
  if (!report.continuum) {
    os << "no fully mixed equilibrium\n";
    return;
  }
  const auto &c = *report.continuum;
  os << "mixed continuum: " << c.constraint12 << ", " << c.constraint34 << "\n";
  os << "  payoffs on the continuum:";
  for (Team t : kTeams) os << ' ' << fraction(c.payoff[index(t)]);
  os << "\n";
  if (!c.bracket_indifferent.empty()) {
    os << "  indifferent between all bracket types:";
    for (Team t : c.bracket_indifferent) os << ' ' << to_string(t);
    os << "\n";
  }
}

void print_probs(std::ostream &os, const WeightVector<Rational> &v) {
  const auto table = champ_table(v);
  os << "championship probability by bracket, V = " << weights_text(v) << "\n";
  os << "      " << std::left << std::setw(27) << "A (1-4, 2-3)" << std::setw(27) << "B (1-3, 2-4)"
     << "C (1-2, 3-4)\n";
  for (Team t : kTeams) {
    os << std::left << std::setw(6) << to_string(t);
    for (Bracket b : kBrackets) os << std::setw(26) << rat(table(t, b)) << ' ';
    os << "\n";
  }
}

void emit(bool as_json, const json &j, const std::function<void(std::ostream &)> &text) {
  if (as_json) std::cout << api::render(j);
  else text(std::cout);
}

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  return out;
}

int run(int argc, char **argv) {
  CLI::App app{"Tanking advice for a four-team round robin with a seeded playoff."};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option defaults")->envname("SEEDWISE_CONFIG");

  std::string weights, wins, model = "frns", policy = "try", out_path = "-", gnuplot_path, state_dir, host = "127.0.0.1";
  std::string step = "0.05";
  int week = 3, port = 8080;
  std::uint64_t samples = 1000000, seed = 42;
  bool as_json = false;

  auto *advise = app.add_subcommand("advise", "Advice for a1 (frns) or the week-3 equilibria (frs)");
  advise->add_option("--week", week, "Week 1, 2 or 3")->required();
  advise->add_option("--wins", wins, "Wins entering the week, e.g. 2,1,0,1")->required();
  advise->add_option("--weights", weights, "Team strengths v1>=v2>=v3>=v4, decimals or p/q")->required();
  advise->add_option("--model", model, "frns or frs")->check(CLI::IsMember({"frns", "frs"}));
  advise->add_flag("--json", as_json, "Machine-readable output");

  auto *probs = app.add_subcommand("probs", "Championship probability for each team and bracket");
  probs->add_option("--weights", weights, "Team strengths")->required();
  probs->add_flag("--json", as_json, "Machine-readable output");

  auto *regions = app.add_subcommand("regions", "Sweep the ordered weight grid and write a CSV of a1's decision");
  regions->add_option("--week", week, "Week 1, 2 or 3")->required();
  regions->add_option("--wins", wins, "Wins entering the week")->required();
  regions->add_option("--step", step, "Grid step, 0 < step <= 1/4");
  regions->add_option("--out", out_path, "CSV path, - for stdout");
  regions->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script here");

  auto *nash = app.add_subcommand("nash", "Equilibria of the week-3 game where every team may tank");
  nash->add_option("--wins", wins, "Wins entering week 3")->required();
  nash->add_option("--weights", weights, "Team strengths")->required();
  nash->add_flag("--json", as_json, "Machine-readable output");

  auto *simulate = app.add_subcommand("simulate", "Monte Carlo seasons against the exact probabilities");
  simulate->add_option("--weights", weights, "Team strengths")->required();
  simulate->add_option("--policy", policy, "a1 policy: try, frns or const:P");
  simulate->add_option("--n", samples, "Number of seasons")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Generator seed");
  simulate->add_flag("--json", as_json, "Machine-readable output");

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "TCP port")->envname("SEEDWISE_PORT");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--state-dir", state_dir, "Directory for season documents")
      ->envname("SEEDWISE_STATE_DIR")
      ->default_str("seedwise-state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kExitInvalid;
  }

  if (advise->parsed()) {
    const Week m = api::parse_week(std::to_string(week));
    const WinVector w = api::parse_wins(wins);
    const auto v = api::parse_weights(weights);
    const api::Model mdl = api::parse_model(model);
    const json j = api::advice_json(m, w, v, mdl);
    emit(as_json, j, [&](std::ostream &os) {
      os << "week " << week << ", W = " << to_string(w) << ", V = " << weights_text(v) << "\n";
      if (mdl == api::Model::frs && m == Week::three) {
        print_report(os, w, v);
        return;
      }
      if (mdl == api::Model::frs) os << "note: " << j["note"].get<std::string>() << "\n";
      print_decision(os, frns_decide(m, w, v));
    });
  } else if (probs->parsed()) {
    const auto v = api::parse_weights(weights);
    emit(as_json, api::probs_json(v), [&](std::ostream &os) { print_probs(os, v); });
  } else if (regions->parsed()) {
    const Week m = api::parse_week(std::to_string(week));
    const WinVector w = api::parse_wins(wins);
    const auto rows = region_scan(m, w, parse_rational(step));
    auto write = [&](std::ostream &os) {
      write_region_csv_header(os);
      for (const auto &r : rows) write_region_csv_row(os, r);
    };
    if (out_path == "-") {
      write(std::cout);
    } else {
      auto out = open_output(out_path);
      write(out);
      if (!out) throw IoError("cannot write " + out_path + ": " + std::strerror(errno));
    }
    if (!gnuplot_path.empty()) {
      auto gp = open_output(gnuplot_path);
      write_gnuplot_script(gp, out_path == "-" ? "regions.csv" : out_path, m, w);
    }
  } else if (nash->parsed()) {
    const WinVector w = api::parse_wins(wins);
    require_state(Week::three, w);
    const auto v = api::parse_weights(weights);
    emit(as_json, api::nash_json(w, v), [&](std::ostream &os) { print_report(os, w, v); });
  } else if (simulate->parsed()) {
    const auto v = api::parse_weights(weights);
    const json j = api::simulate_json(v, policy, samples, seed);
    emit(as_json, j, [&](std::ostream &os) {
      os << samples << " seasons, seed " << seed << ", policy " << policy << ", " << j["generator"].get<std::string>()
         << "\n";
      for (Team t : kTeams) {
        const json &row = j["teams"][to_string(t)];
        const double f = row["frequency"].get<double>(), se = row["standard_error"].get<double>();
        const double exact = row["exact"]["decimal"].get<double>();
        os << to_string(t) << "  frequency " << to_decimal_string(f, 6) << " +- " << to_decimal_string(se, 3)
           << "  exact " << to_decimal_string(exact, 6) << "  (" << to_decimal_string((f - exact) / se, 3)
           << " SE)\n";
      }
    });
  } else if (serve->parsed()) {
    if (state_dir.empty()) state_dir = "seedwise-state";
    service::Service svc(state_dir);
    std::cerr << "seedwise: serving on http://" << host << ":" << port << ", state in " << state_dir << "\n";
    if (!svc.listen(host, port)) {
      std::cerr << "seedwise: cannot listen on " << host << ":" << port << "\n";
      return kExitInvalid;
    }
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidInput &e) {
    std::cerr << "seedwise: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateMatch &e) {
    std::cerr << "seedwise: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const IoError &e) {
    std::cerr << "seedwise: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception &e) {
    std::cerr << "seedwise: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
