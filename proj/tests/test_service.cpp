#include "seedwise/service.hpp"

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

using namespace seedwise;
using namespace seedwise::service;
using api::json;

namespace {

std::filesystem::path fresh_dir(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("seedwise-" + name + "-" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  return dir;
}

Response get(Service &s, const std::string &path, std::map<std::string, std::string> params = {}) {
  return s.handle({"GET", path, std::move(params), ""});
}

Response post(Service &s, const std::string &path, const json &body) {
  return s.handle({"POST", path, {}, body.dump()});
}

std::string create(Service &s, const std::string &weights = "1,0.8,0.5,0.3") {
  const auto r = post(s, "/season", {{"weights", weights}});
  REQUIRE(r.status == 201);
  return json::parse(r.body)["id"].get<std::string>();
}

} // namespace

TEST_CASE("stateless endpoints") {
  Service s;
  const auto probs = get(s, "/probs", {{"weights", "1,1,1,1"}});
  CHECK(probs.status == 200);
  CHECK(probs.body == api::render(api::probs_json(api::parse_weights("1,1,1,1"))));
  const auto bad = get(s, "/probs", {{"weights", "1,0.5,0.9,0.1"}});
  CHECK(bad.status == 400);
  CHECK(json::parse(bad.body)["error"] == "invalid_input");
  CHECK(get(s, "/probs").status == 400);

  const auto advice = get(s, "/advice", {{"week", "3"}, {"wins", "2,1,0,1"}, {"weights", "1,0.8,0.5,0.3"}});
  CHECK(advice.status == 200);
  CHECK(json::parse(advice.body)["decision"]["action"] == "lose intentionally");
  CHECK(get(s, "/advice", {{"week", "3"}, {"wins", "2,2,1,1"}, {"weights", "1,0.8,0.5,0.3"}}).status == 400);
  CHECK(get(s, "/nash", {{"wins", "1,1,0,0"}, {"weights", "1,1,1,1"}}).status == 400);
  CHECK(get(s, "/nowhere").status == 404);
}

TEST_CASE("season lifecycle") {
  Service s;
  const std::string id = create(s);
  const auto v = api::parse_weights("1,0.8,0.5,0.3");

  const json advice = json::parse(get(s, "/season/" + id + "/advice", {{"model", "frns"}}).body);
  json expected = api::advice_json(Week::one, WinVector{}, v, api::Model::frns);
  CHECK(advice["decision"] == expected["decision"]);
  CHECK(advice["season"]["revision"] == 1);

  // Week 1 pairs a1-a4 and a2-a3.
  auto r = post(s, "/season/" + id + "/result", {{"week", 1}, {"winners", {"a2", "a3"}}});
  CHECK(r.status == 400);
  CHECK(json::parse(r.body)["reason"].get<std::string>().find("[0,1,1,0]") != std::string::npos);
  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a1-a3"}, {"winner", "a3"}});
  CHECK(r.status == 400);
  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a1-a4"}, {"winner", "a2"}});
  CHECK(r.status == 400);
  r = post(s, "/season/" + id + "/result", {{"week", 2}, {"game", "a1-a3"}, {"winner", "a1"}});
  CHECK(r.status == 409);

  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a1-a4"}, {"winner", "a4"}, {"revision", 1}});
  REQUIRE(r.status == 200);
  CHECK(json::parse(r.body)["revision"] == 2);
  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a4-a1"}, {"winner", "a1"}});
  CHECK(r.status == 409);
  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a2-a3"}, {"winner", "a3"}, {"revision", 1}});
  CHECK(r.status == 409);
  r = post(s, "/season/" + id + "/result", {{"week", 1}, {"game", "a2-a3"}, {"winner", "a3"}, {"revision", 2}});
  REQUIRE(r.status == 200);
  const json state = json::parse(r.body);
  CHECK(state["wins"] == json::array({0, 0, 1, 1}));
  CHECK(state["week"] == 2);

  const json week2 = json::parse(get(s, "/season/" + id + "/advice").body);
  CHECK(week2["decision"] == api::advice_json(Week::two, make_wins(0, 0, 1, 1), v, api::Model::frns)["decision"]);

  CHECK(post(s, "/season/" + id + "/result", {{"week", 2}, {"winners", {"a3", "a2"}}}).status == 200);
  CHECK(post(s, "/season/" + id + "/result", {{"week", 3}, {"winners", {"a1", "a4"}}}).status == 200);
  const json done = json::parse(get(s, "/season/" + id + "/advice").body);
  CHECK(done["final_wins"] == json::array({1, 1, 2, 2}));
  CHECK(post(s, "/season/" + id + "/result", {{"week", 3}, {"game", "a1-a2"}, {"winner", "a1"}}).status == 409);

  CHECK(get(s, "/season/unknown/advice").status == 404);
  CHECK(post(s, "/season/unknown/result", {{"week", 1}, {"winners", {"a1"}}}).status == 404);
  CHECK(s.handle({"POST", "/season", {}, "{not json"}).status == 400);
}

TEST_CASE("what-if does not mutate") {
  Service s;
  const std::string id = create(s);
  const auto r = post(s, "/season/" + id + "/whatif",
                      {{"weights", {1, 1, 0.5, 0.5}}, {"week", 3}, {"wins", {1, 2, 0, 1}}, {"model", "frs"}});
  REQUIRE(r.status == 200);
  const json j = json::parse(r.body);
  CHECK(j["equilibria"]["continuum"]["constraints"] == json::array({"pi1 = pi2", "pi3 = pi4"}));
  CHECK(j["season"]["revision"] == 1);

  const auto hyp = post(s, "/season/" + id + "/whatif", {{"results", {{{"week", 1}, {"winners", {"a1", "a2"}}}}}});
  REQUIRE(hyp.status == 200);
  CHECK(json::parse(hyp.body)["query"]["wins"] == json::array({1, 1, 0, 0}));
  CHECK(post(s, "/season/" + id + "/whatif", {{"week", 3}, {"wins", {2, 2, 1, 1}}}).status == 400);
  CHECK(post(s, "/season/" + id + "/whatif", {{"results", {{{"week", 2}, {"winners", {"a1"}}}}}}).status == 400);
  CHECK(json::parse(get(s, "/season/" + id).body)["revision"] == 1);
}

TEST_CASE("persistence round trip") {
  const auto dir = fresh_dir("persist");
  json before;
  std::string id;
  {
    Service s(dir);
    id = create(s, "1,9/10,3/5,1/5");
    post(s, "/season/" + id + "/result", {{"week", 1}, {"winners", {"a1", "a3"}}});
    before = json::parse(get(s, "/season/" + id).body);
  }
  {
    Service s(dir);
    CHECK(json::parse(get(s, "/season/" + id).body) == before);
    const std::string next = create(s);
    CHECK(next != id);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent conflicting results: exactly one wins") {
  Service s;
  const std::string id = create(s);
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> threads;
  for (int k = 0; k < 8; ++k) {
    threads.emplace_back([&, k] {
      const std::string winner = k % 2 ? "a1" : "a4";
      const auto r = post(s, "/season/" + id + "/result",
                          {{"week", 1}, {"game", "a1-a4"}, {"winner", winner}, {"revision", 1}});
      (r.status == 200 ? ok : conflict)++;
    });
  }
  for (auto &t : threads) t.join();
  CHECK(ok == 1);
  CHECK(conflict == 7);
  CHECK(json::parse(get(s, "/season/" + id).body)["revision"] == 2);
}

TEST_CASE("http transport serves the same bytes") {
  Service s;
  const int port = s.start_background("127.0.0.1");
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get("/probs?weights=1,0.9,0.6,0.2");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == api::render(api::probs_json(api::parse_weights("1,0.9,0.6,0.2"))));
  const auto created = client.Post("/season", R"({"weights":"1,0.8,0.5,0.3"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  s.stop();
}
