#include "seedwise/api.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace seedwise;
using api::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(SEEDWISE_CLI) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

} // namespace

TEST_CASE("advise") {
  auto r = run("advise --week 3 --wins 2,2,0,0 --weights 1,0.8,0.5,0.3 --model frns");
  CHECK(r.status == 0);
  CHECK(r.out.find("a1 should try to win") != std::string::npos);
  r = run("advise --week 3 --wins 2,1,0,1 --weights 1,0.8,0.5,0.3 --model frns");
  CHECK(r.out.find("a1 should lose intentionally") != std::string::npos);
  r = run("advise --week 3 --wins 1,2,0,1 --weights 1,1,0.5,0.5 --model frs");
  CHECK(r.status == 0);
  CHECK(r.out.find("mixed continuum: pi1 = pi2, pi3 = pi4") != std::string::npos);
}

TEST_CASE("machine output round-trips") {
  const auto r = run("advise --week 2 --wins 1,0,1,0 --weights 1,9/10,1/2,1/5 --json");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  const auto v = api::parse_weights("1,9/10,1/2,1/5");
  const auto d = frns_decide(Week::two, make_wins(1, 0, 1, 0), v);
  CHECK(j["decision"]["action"] == to_string(d.action));
  CHECK(parse_rational(j["decision"]["value_win"]["exact"].get<std::string>()) == d.value_win);
  CHECK(r.out == api::render(api::advice_json(Week::two, make_wins(1, 0, 1, 0), v, api::Model::frns)));
}

TEST_CASE("exit codes") {
  CHECK(run("advise --week 3 --wins 2,2,1,1 --weights 1,0.8,0.5,0.3").status == 2);
  CHECK(run("probs --weights 1,0.5,0.8,0.3").status == 2);
  CHECK(run("probs --weights 1,0,0,0").status == 2);
  CHECK(run("advise --week 3").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("regions --week 3 --wins 2,2,0,0 --out /nonexistent/dir/x.csv").status == 2);
}

TEST_CASE("probs") {
  const auto r = run("probs --weights 1,1,1,1 --json");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  for (const auto &[team, row] : j["table"].items())
    for (const auto &[b, cell] : row.items()) CHECK(cell["decimal"] == 0.25);
}

TEST_CASE("regions writes the golden CSV and a plot script") {
  const auto dir = std::filesystem::temp_directory_path() / "seedwise-cli-regions";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "r.csv").string(), gp = (dir / "r.gp").string();
  REQUIRE(run("regions --week 3 --wins 1,2,1,0 --step 0.05 --out " + csv + " --gnuplot " + gp).status == 0);
  auto slurp = [](const std::string &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(csv) == slurp(SEEDWISE_GOLDEN_DIR "/regions_week3_1210_step005.csv"));
  CHECK(slurp(gp).find("splot") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("simulate is deterministic") {
  const auto a = run("simulate --weights 1,1,1,1 --n 1000000 --seed 42 --json");
  const auto b = run("simulate --weights 1,1,1,1 --n 1000000 --seed 42 --json");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  for (const auto &[team, row] : j["teams"].items()) {
    const double f = row["frequency"].get<double>(), se = row["standard_error"].get<double>();
    CHECK(std::fabs(f - 0.25) < 3 * se);
  }
}

TEST_CASE("config file supplies defaults") {
  const auto path = std::filesystem::temp_directory_path() / "seedwise-cli.ini";
  {
    std::ofstream out(path);
    out << "[probs]\nweights=\"1,1,1,1\"\n";
  }
  const auto r = run("--config " + path.string() + " probs --json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"1/4\"") != std::string::npos);
  std::filesystem::remove(path);
}
