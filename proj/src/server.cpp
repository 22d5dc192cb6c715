#include "galli/server.hpp"

#include <cstdlib>

#include "httplib.h"

namespace galli {

std::shared_ptr<Session> SessionStore::create(GameState state, bool hidden) {
  auto s = std::make_shared<Session>();
  s->hidden = hidden;
  s->created = std::chrono::system_clock::now();
  s->state = std::move(state);
  std::lock_guard lock(mutex_);
  s->id = "s" + std::to_string(next_++);
  sessions_.emplace(s->id, s);
  return s;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

Json session_view(const GameState& g, bool hidden) {
  Json j;
  j["reports"] = to_json(reports(g));
  Json moves = Json::array();
  for (const auto& m : legal_moves(g)) moves.push_back(to_json(m));
  j["legal_moves"] = moves;
  j["won"] = is_won(g);
  j["turn"] = g.turn();
  if (!hidden) j["algebra"] = algebra_json(g);
  return j;
}

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  reply(res, status, Json{{"error", code}, {"message", message}});
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidScenario:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable: return 400;
    case ErrorCode::IllegalMove:
    case ErrorCode::IllegalDescent: return 409;
    default: return 422;
  }
}

std::optional<Json> body_json(const httplib::Request& req, httplib::Response& res) {
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) {
      fail(res, 400, "InvalidRequest", "the body must be a JSON object");
      return std::nullopt;
    }
    return j;
  } catch (const Json::exception& e) {
    fail(res, 400, "InvalidRequest", std::string("the body is not JSON: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store, bool force_hidden) {
  server.Post("/sessions", [&store, force_hidden](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    bool hidden = force_hidden;
    if (body->contains("mode")) {
      const Json& mode = body->at("mode");
      if (mode == "hidden")
        hidden = true;
      else if (mode != "open")
        return fail(res, 400, "InvalidRequest", "\"mode\" must be \"open\" or \"hidden\"");
    }
    if (!body->contains("scenario")) return fail(res, 400, "InvalidRequest", "missing field \"scenario\"");
    try {
      GameState g = new_game(scenario_from_json(body->at("scenario")));
      auto s = store.create(std::move(g), hidden);
      std::lock_guard lock(s->mutex);
      Json out;
      out["session"] = s->id;
      out["mode"] = hidden ? "hidden" : "open";
      out.update(session_view(s->state, hidden));
      reply(res, 201, out);
    } catch (const Error& e) {
      reply(res, status_for(e), error_json(e));
    }
  });

  server.Get(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    auto s = store.find(req.matches[1]);
    if (!s) return fail(res, 404, "UnknownSession", "no session " + std::string(req.matches[1]));
    std::lock_guard lock(s->mutex);
    reply(res, 200, session_view(s->state, s->hidden));
  });

  server.Delete(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!store.erase(req.matches[1])) return fail(res, 404, "UnknownSession", "no session " + std::string(req.matches[1]));
    res.status = 204;
  });

  server.Post(R"(/sessions/([^/]+)/moves)", [&store](const httplib::Request& req, httplib::Response& res) {
    auto s = store.find(req.matches[1]);
    if (!s) return fail(res, 404, "UnknownSession", "no session " + std::string(req.matches[1]));
    auto body = body_json(req, res);
    if (!body) return;
    if (!body->contains("move")) return fail(res, 400, "InvalidRequest", "missing field \"move\"");
    Move m;
    try {
      m = move_from_json(body->at("move"));
    } catch (const Error& e) {
      return fail(res, 400, "InvalidRequest", e.what());
    }
    std::lock_guard lock(s->mutex);
    if (auto why = violation(s->state, m)) return fail(res, 409, "IllegalMove", *why);
    try {
      s->state = apply_move(s->state, m);
    } catch (const Error& e) {
      return reply(res, status_for(e), error_json(e));
    }
    reply(res, 200, session_view(s->state, s->hidden));
  });

  server.Get(R"(/sessions/([^/]+)/transcript)", [&store](const httplib::Request& req, httplib::Response& res) {
    auto s = store.find(req.matches[1]);
    if (!s) return fail(res, 404, "UnknownSession", "no session " + std::string(req.matches[1]));
    std::string text;
    {
      std::lock_guard lock(s->mutex);
      text = transcript_text(s->state);
    }
    if (s->hidden) {
      // The scenario holds polynomials; hidden sessions drop it from turn 0.
      const auto end = text.find('\n');
      Json first = Json::parse(text.substr(0, end));
      first.erase("scenario");
      text = first.dump() + text.substr(end);
    }
    res.status = 200;
    res.set_content(text, "application/x-ndjson");
  });
}

int default_port() {
  if (const char* p = std::getenv("GALLIMAUFRY_PORT")) {
    try {
      const int port = std::stoi(p);
      if (port > 0 && port < 65536) return port;
    } catch (const std::exception&) {
    }
  }
  return 7464;
}

bool serve(const std::string& host, int port, bool force_hidden) {
  httplib::Server server;
  SessionStore store;
  install_routes(server, store, force_hidden);
  return server.listen(host, port);
}

}  // namespace galli
