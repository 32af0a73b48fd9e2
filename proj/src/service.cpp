#include "seedwise/service.hpp"

#include <httplib.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace seedwise::service {

using api::json;

namespace {

std::string game_name(const Pairing &g) { return to_string(g.first) + "-" + to_string(g.second); }

const Pairing &scheduled_game(Week m, Team a, Team b) {
  for (const auto &g : schedule(m))
    if (g.involves(a) && g.involves(b) && a != b) return g;
  const auto &s = schedule(m);
  throw InvalidInput(to_string(a) + "-" + to_string(b) + " is not scheduled in week " + std::to_string(number(m)) +
                     " (week " + std::to_string(number(m)) + " pairs " + game_name(s[0]) + " and " +
                     game_name(s[1]) + ")");
}

const Pairing &game_of(Week m, Team t) {
  const auto &s = schedule(m);
  return s[0].involves(t) ? s[0] : s[1];
}

bool same_game(const Pairing &x, const Pairing &y) { return x.first == y.first && x.second == y.second; }

std::string require_string(const json &j, const char *key) {
  if (!j.contains(key) || !j[key].is_string()) throw InvalidInput(std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

Week require_week(const json &j) {
  if (!j.contains("week") || !j["week"].is_number_integer()) throw InvalidInput("missing integer field 'week'");
  return week_from_number(j["week"].get<int>());
}

json parse_body(const std::string &body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw InvalidInput("request body must be a JSON object");
    return j;
  } catch (const json::parse_error &e) {
    throw InvalidInput(std::string("malformed JSON body: ") + e.what());
  }
}

std::string param(const Request &req, const std::string &key) {
  auto it = req.params.find(key);
  if (it == req.params.end()) throw InvalidInput("missing query parameter '" + key + "'");
  return it->second;
}

std::string param_or(const Request &req, const std::string &key, std::string fallback) {
  auto it = req.params.find(key);
  return it == req.params.end() ? fallback : it->second;
}

Response ok(const json &j, int status = 200) { return {status, api::render(j)}; }

json season_advice(const SeasonState &s, api::Model model) {
  json j = s.current_week() > kNumWeeks ? api::final_json(s.wins(), s.weights)
                                        : api::advice_json(static_cast<Week>(s.current_week()), s.wins(), s.weights, model);
  json tag;
  tag["id"] = s.id;
  tag["revision"] = s.revision;
  j["season"] = std::move(tag);
  return j;
}

} // namespace

int SeasonState::current_week() const { return static_cast<int>(results.size()) / 2 + 1; }

WinVector SeasonState::wins() const {
  WinVector w;
  for (const auto &r : results) ++w.wins[index(r.winner)];
  return w;
}

std::vector<Pairing> SeasonState::pending() const {
  std::vector<Pairing> out;
  const int m = current_week();
  if (m > kNumWeeks) return out;
  for (const auto &g : schedule(static_cast<Week>(m))) {
    bool played = false;
    for (const auto &r : results)
      if (number(r.week) == m && same_game(r.game, g)) played = true;
    if (!played) out.push_back(g);
  }
  return out;
}

json season_json(const SeasonState &s) {
  json j;
  j["id"] = s.id;
  j["revision"] = s.revision;
  j["weights"] = api::weights_json(s.weights);
  json results = json::array();
  for (const auto &r : s.results) {
    json e;
    e["week"] = number(r.week);
    e["game"] = game_name(r.game);
    e["winner"] = to_string(r.winner);
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  j["week"] = s.current_week();
  j["complete"] = s.current_week() > kNumWeeks;
  j["wins"] = api::wins_json(s.wins());
  return j;
}

SeasonState season_from_json(const json &j) {
  SeasonState base{require_string(j, "id"), api::weights_from_json(j.at("weights")), {}, 1};
  std::vector<GameResult> results;
  for (const auto &e : j.at("results")) {
    for (auto &r : parse_results(e)) results.push_back(r);
  }
  SeasonState s = with_results(base, results);
  s.revision = j.at("revision").get<std::uint64_t>();
  return s;
}

std::vector<GameResult> parse_results(const json &body) {
  const Week m = require_week(body);
  if (body.contains("winners")) {
    const json &winners = body["winners"];
    if (!winners.is_array() || winners.empty() || winners.size() > 2)
      throw InvalidInput("'winners' must list one or two teams");
    std::vector<GameResult> out;
    for (const auto &x : winners) {
      if (!x.is_string()) throw InvalidInput("winners must be team names such as \"a1\"");
      const Team t = api::parse_team(x.get<std::string>());
      out.push_back({m, game_of(m, t), t});
    }
    if (out.size() == 2 && same_game(out[0].game, out[1].game)) {
      WinVector w;
      ++w.wins[index(out[0].winner)];
      ++w.wins[index(out[1].winner)];
      const auto &s = schedule(m);
      throw InvalidInput("winners " + to_string(out[0].winner) + " and " + to_string(out[1].winner) +
                         " give W = " + to_string(w) + ", which is unreachable: week " +
                         std::to_string(number(m)) + " pairs " + game_name(s[0]) + " and " + game_name(s[1]));
    }
    return out;
  }
  const std::string game = require_string(body, "game");
  const auto dash = game.find('-');
  if (dash == std::string::npos) throw InvalidInput("game must look like \"a1-a4\"");
  const Team a = api::parse_team(game.substr(0, dash));
  const Team b = api::parse_team(game.substr(dash + 1));
  const Pairing &g = scheduled_game(m, a, b);
  const Team winner = api::parse_team(require_string(body, "winner"));
  if (!g.involves(winner))
    throw InvalidInput("winner " + to_string(winner) + " does not play in " + game_name(g));
  return {{m, g, winner}};
}

SeasonState with_results(const SeasonState &s, const std::vector<GameResult> &results) {
  SeasonState out = s;
  for (const auto &r : results) {
    const int m = out.current_week();
    if (m > kNumWeeks) throw Conflict("the season is complete; no games remain");
    if (number(r.week) != m) {
      throw Conflict("out of order: the next games are in week " + std::to_string(m) + ", got week " +
                     std::to_string(number(r.week)));
    }
    const auto pending = out.pending();
    bool open = false;
    for (const auto &g : pending) open = open || same_game(g, r.game);
    if (!open) throw Conflict(game_name(r.game) + " in week " + std::to_string(m) + " is already recorded");
    out.results.push_back(r);
  }
  return out;
}

SeasonStore::SeasonStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::filesystem::create_directories(dir_);
  for (const auto &entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error &e) {
      throw std::runtime_error("cannot parse season file " + entry.path().string() + ": " + e.what());
    }
    SeasonState s = season_from_json(j);
    if (s.id.size() > 1 && s.id[0] == 's') {
      try {
        next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(s.id.substr(1)) + 1);
      } catch (const std::exception &) {
      }
    }
    seasons_.emplace(s.id, std::move(s));
  }
}

void SeasonStore::persist(const SeasonState &s) const {
  if (dir_.empty()) return;
  const auto target = dir_ / (s.id + ".json");
  const auto tmp = dir_ / (s.id + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << api::render(season_json(s));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

SeasonState SeasonStore::create(const WeightVector<Rational> &weights) {
  std::lock_guard lock(mutex_);
  SeasonState s{"s" + std::to_string(next_id_), weights, {}, 1};
  persist(s);
  ++next_id_;
  seasons_.emplace(s.id, s);
  return s;
}

SeasonState SeasonStore::get(const std::string &id) const {
  std::lock_guard lock(mutex_);
  auto it = seasons_.find(id);
  if (it == seasons_.end()) throw NotFound("unknown season '" + id + "'");
  return it->second;
}

SeasonState SeasonStore::record(const std::string &id, const std::vector<GameResult> &results,
                                std::optional<std::uint64_t> expected_revision) {
  std::lock_guard lock(mutex_);
  auto it = seasons_.find(id);
  if (it == seasons_.end()) throw NotFound("unknown season '" + id + "'");
  if (expected_revision && *expected_revision != it->second.revision) {
    throw Conflict("revision mismatch: season is at " + std::to_string(it->second.revision) + ", request expected " +
                   std::to_string(*expected_revision));
  }
  SeasonState next = with_results(it->second, results);
  ++next.revision;
  persist(next);
  it->second = next;
  return next;
}

struct Service::Server {
  httplib::Server http;
  std::thread thread;
};

Service::Service(std::filesystem::path state_dir) : store_(std::move(state_dir)) {}

Service::~Service() { stop(); }

Response Service::handle(const Request &req) {
  try {
    return route(req);
  } catch (const InvalidInput &e) {
    return {400, api::render(api::error_json("invalid_input", e.what()))};
  } catch (const DegenerateMatch &e) {
    return {400, api::render(api::error_json("invalid_input", e.what()))};
  } catch (const NotFound &e) {
    return {404, api::render(api::error_json("not_found", e.what()))};
  } catch (const Conflict &e) {
    return {409, api::render(api::error_json("conflict", e.what()))};
  } catch (const std::exception &e) {
    return {500, api::render(api::error_json("internal", e.what()))};
  }
}

Response Service::route(const Request &req) {
  static const std::regex season_path(R"(^/season/([A-Za-z0-9_-]+)(/(result|advice|whatif))?$)");
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";

  if (get && req.path == "/probs") return ok(api::probs_json(api::parse_weights(param(req, "weights"))));
  if (get && req.path == "/advice") {
    return ok(api::advice_json(api::parse_week(param(req, "week")), api::parse_wins(param(req, "wins")),
                               api::parse_weights(param(req, "weights")),
                               api::parse_model(param_or(req, "model", "frns"))));
  }
  if (get && req.path == "/nash") {
    const WinVector w = api::parse_wins(param(req, "wins"));
    require_state(Week::three, w);
    return ok(api::nash_json(w, api::parse_weights(param(req, "weights"))));
  }
  if (post && req.path == "/season") {
    const json body = parse_body(req.body);
    if (!body.contains("weights")) throw InvalidInput("missing field 'weights'");
    return ok(season_json(store_.create(api::weights_from_json(body["weights"]))), 201);
  }

  std::smatch match;
  if (!std::regex_match(req.path, match, season_path)) throw NotFound("no route for " + req.method + " " + req.path);
  const std::string id = match[1];
  const std::string action = match[3];

  if (get && action.empty()) return ok(season_json(store_.get(id)));
  if (get && action == "advice") {
    return ok(season_advice(store_.get(id), api::parse_model(param_or(req, "model", "frns"))));
  }
  if (post && action == "result") {
    const json body = parse_body(req.body);
    std::optional<std::uint64_t> revision;
    if (body.contains("revision")) {
      if (!body["revision"].is_number_unsigned()) throw InvalidInput("'revision' must be a nonnegative integer");
      revision = body["revision"].get<std::uint64_t>();
    }
    store_.get(id); // 404 before validating the body against the schedule
    return ok(season_json(store_.record(id, parse_results(body), revision)));
  }
  if (post && action == "whatif") {
    const json body = parse_body(req.body);
    SeasonState s = store_.get(id);
    if (body.contains("weights")) s.weights = api::weights_from_json(body["weights"]);
    const api::Model model = api::parse_model(body.contains("model") ? body["model"].get<std::string>() : "frns");
    if (body.contains("wins") || body.contains("week")) {
      const Week m = require_week(body);
      if (!body.contains("wins")) throw InvalidInput("what-if with 'week' also needs 'wins'");
      json j = api::advice_json(m, api::wins_from_json(body["wins"]), s.weights, model);
      j["season"] = json{{"id", s.id}, {"revision", s.revision}};
      return ok(j);
    }
    if (body.contains("results")) {
      if (!body["results"].is_array()) throw InvalidInput("'results' must be an array");
      std::vector<GameResult> extra;
      for (const auto &e : body["results"])
        for (auto &r : parse_results(e)) extra.push_back(r);
      try {
        s = with_results(s, extra);
      } catch (const Conflict &e) {
        throw InvalidInput(std::string("what-if results do not continue the season: ") + e.what());
      }
    }
    return ok(season_advice(s, model));
  }
  throw NotFound("no route for " + req.method + " " + req.path);
}

namespace {

void install_routes(httplib::Server &http, Service &service) {
  auto adapt = [&service](const httplib::Request &in, httplib::Response &out) {
    Request req{in.method, in.path, {}, in.body};
    for (const auto &[k, v] : in.params) req.params.emplace(k, v);
    const Response r = service.handle(req);
    out.status = r.status;
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_content(r.body, "application/json; charset=utf-8");
  };
  http.Get(".*", adapt);
  http.Post(".*", adapt);
  http.Options(".*", [](const httplib::Request &, httplib::Response &out) {
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type");
    out.status = 204;
  });
}

} // namespace

bool Service::listen(const std::string &host, int port) {
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this);
  return server_->http.listen(host, port);
}

int Service::start_background(const std::string &host) {
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this);
  const int port = server_->http.bind_to_any_port(host);
  if (port < 0) throw std::runtime_error("cannot bind a port on " + host);
  server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return port;
}

void Service::stop() {
  if (!server_) return;
  server_->http.stop();
  if (server_->thread.joinable()) server_->thread.join();
  server_.reset();
}

} // namespace seedwise::service
