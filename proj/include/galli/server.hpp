#pragma once

// JSON-over-HTTP sessions: one game per session, moves posted by the player.

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "galli/serialize.hpp"

namespace httplib {
class Server;
}

namespace galli {

struct Session {
  std::string id;
  bool hidden = false;
  std::chrono::system_clock::time_point created;
  std::mutex mutex;
  GameState state;
};

class SessionStore {
 public:
  std::shared_ptr<Session> create(GameState state, bool hidden);
  std::shared_ptr<Session> find(const std::string& id) const;
  bool erase(const std::string& id);

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  unsigned long next_ = 1;
};

/// {reports, legal_moves, won}, plus the algebra unless hidden.
Json session_view(const GameState& g, bool hidden);

/// Installs the /sessions routes. With force_hidden every session is hidden regardless of the requested mode.
void install_routes(httplib::Server& server, SessionStore& store, bool force_hidden = false);

/// GALLIMAUFRY_PORT, or 7464.
int default_port();

/// Blocks serving on the port; false when it cannot bind.
bool serve(const std::string& host, int port, bool force_hidden);

}  // namespace galli
