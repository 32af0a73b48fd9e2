#pragma once

// HTTP/JSON facade: stateless advice, probabilities and equilibria, plus
// persistent seasons. Routing lives in Service::handle so it can be driven
// without sockets; listen() only adapts httplib requests to it.

#include "seedwise/api.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace seedwise::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
};

struct GameResult {
  Week week;
  Pairing game;
  Team winner;
};

struct SeasonState {
  std::string id;
  WeightVector<Rational> weights;
  std::vector<GameResult> results;
  std::uint64_t revision = 1;

  //! 1..3 while games remain, 4 once all six are recorded.
  int current_week() const;
  WinVector wins() const;
  //! Games of the current week still unplayed.
  std::vector<Pairing> pending() const;
};

api::json season_json(const SeasonState &s);
SeasonState season_from_json(const api::json &j);

//! Raised for 404 / 409 conditions; InvalidInput maps to 400.
class NotFound : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class Conflict : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Parses a result body ({"week", "game", "winner"} or {"week", "winners"})
//! into the games it records, checking them against the schedule.
std::vector<GameResult> parse_results(const api::json &body);

//! Appends results to a copy of s. Results must belong to the current week
//! and not repeat a recorded game (Conflict otherwise).
SeasonState with_results(const SeasonState &s, const std::vector<GameResult> &results);

//! Seasons in memory, mirrored to one JSON document per season when a
//! directory is given.
class SeasonStore {
public:
  explicit SeasonStore(std::filesystem::path dir = {});

  SeasonState create(const WeightVector<Rational> &weights);
  SeasonState get(const std::string &id) const;
  //! Compare-and-set on the revision when expected_revision is given.
  SeasonState record(const std::string &id, const std::vector<GameResult> &results,
                     std::optional<std::uint64_t> expected_revision);

private:
  void persist(const SeasonState &s) const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, SeasonState> seasons_;
  std::uint64_t next_id_ = 1;
};

class Service {
public:
  explicit Service(std::filesystem::path state_dir = {});
  ~Service();

  Response handle(const Request &req);

  //! Blocks until stop() is called. Returns false if the port could not be bound.
  bool listen(const std::string &host, int port);
  //! Binds an ephemeral port and serves on a background thread; returns the port.
  int start_background(const std::string &host);
  void stop();

private:
  Response route(const Request &req);

  SeasonStore store_;
  struct Server;
  std::unique_ptr<Server> server_;
};

} // namespace seedwise::service
