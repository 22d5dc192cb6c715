#include "galli/serialize.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace galli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidScenario, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

unsigned nonneg(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return static_cast<unsigned>(j.get<long long>());
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::BlowupI: return "blowup1";
    case MoveKind::BlowupII: return "blowup2";
    case MoveKind::Descend: return "descend";
    case MoveKind::Tightify: return "tightify";
    case MoveKind::Relax: return "relax";
    case MoveKind::Intersect: return "intersect";
  }
  return "?";
}

Json face_json(const Face& f) {
  Json out = Json::array();
  for (auto v : f) out.push_back(v + 1);
  return out;
}

Face face_from(const Json& j) {
  if (!j.is_array()) bad("a face must be an array of vertices");
  Face f;
  for (const auto& v : j) {
    const unsigned k = nonneg(v, "a vertex");
    if (k == 0) bad("vertices are numbered from 1");
    f.push_back(k - 1);
  }
  std::sort(f.begin(), f.end());
  return f;
}

Json chart_alg_json(const ChartAlg& a) {
  Json out = Json::object();
  for (const auto& [d, gs] : a.gens) {
    Json list = Json::array();
    for (const auto& g : gs) list.push_back(g.to_string());
    out[std::to_string(d)] = list;
  }
  return out;
}

}  // namespace

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) bad("\"" + s + "\" is not a rational number");
  q.canonicalize();
  return q;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  const Json& names = field(j, "variables");
  if (!names.is_array() || names.empty()) bad("\"variables\" must be a nonempty array");
  std::vector<std::string> vars;
  for (const auto& n : names) vars.push_back(text(n, "a variable name"));
  try {
    s.vars = VarSet(vars);
    if (j.contains("hypersurfaces")) {
      const Json& hs = j.at("hypersurfaces");
      if (!hs.is_array()) bad("\"hypersurfaces\" must be an array");
      for (const auto& h : hs) {
        if (h.is_null())
          s.hypersurfaces.push_back(std::nullopt);
        else
          s.hypersurfaces.push_back(parse_poly(text(h, "a hypersurface"), s.vars));
      }
    }
    new_habitat(s.vars, s.hypersurfaces);
    const Json& threads = field(j, "threads");
    if (!threads.is_array() || threads.size() != 1) bad("a scenario has exactly one thread");
    const Json& t = threads.front();
    s.m = t.contains("dimension") ? nonneg(t.at("dimension"), "\"dimension\"") : static_cast<unsigned>(vars.size());
    const Json& pairs = field(t, "pairs");
    if (!pairs.is_array() || pairs.empty()) bad("\"pairs\" must be a nonempty array");
    for (const auto& p : pairs) {
      const unsigned b = nonneg(field(p, "degree"), "\"degree\"");
      if (b == 0) bad("\"degree\" must be positive");
      const Json& gens = field(p, "generators");
      if (!gens.is_array()) bad("\"generators\" must be an array");
      std::vector<std::string> texts;
      for (const auto& g : gens) texts.push_back(text(g, "a generator"));
      s.pairs.emplace_back(Ideal::parse(s.vars, texts), b);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidScenario) throw;
    bad(std::string(error_code_name(e.code())) + ": " + e.what());
  }
  if (s.m > vars.size()) bad("\"dimension\" exceeds the number of variables");
  return s;
}

Json to_json(const Scenario& s) {
  Json j;
  j["variables"] = s.vars.names();
  Json hs = Json::array();
  for (const auto& h : s.hypersurfaces) hs.push_back(h ? Json(h->to_string()) : Json(nullptr));
  j["hypersurfaces"] = hs;
  Json pairs = Json::array();
  for (const auto& [ideal, b] : s.pairs) {
    Json gens = Json::array();
    for (const auto& g : ideal.gens()) gens.push_back(g.to_string());
    pairs.push_back(Json{{"degree", b}, {"generators", gens}});
  }
  j["threads"] = Json::array({Json{{"pairs", pairs}, {"dimension", s.m}}});
  return j;
}

Json to_json(const Move& m) {
  Json j;
  j["kind"] = kind_name(m.kind);
  j["thread"] = m.thread;
  if (m.kind == MoveKind::BlowupI) j["face"] = face_json(m.face);
  if (m.kind == MoveKind::Relax || m.kind == MoveKind::Intersect) j["vertex"] = m.vertex + 1;
  return j;
}

Move move_from_json(const Json& j) {
  Move m;
  const std::string k = text(field(j, "kind"), "\"kind\"");
  const std::pair<const char*, MoveKind> kinds[] = {
      {"blowup1", MoveKind::BlowupI}, {"blowup2", MoveKind::BlowupII}, {"descend", MoveKind::Descend},
      {"tightify", MoveKind::Tightify}, {"relax", MoveKind::Relax},     {"intersect", MoveKind::Intersect}};
  auto it = std::find_if(std::begin(kinds), std::end(kinds), [&](const auto& kv) { return k == kv.first; });
  if (it == std::end(kinds)) bad("unknown move kind \"" + k + "\"");
  m.kind = it->second;
  m.thread = static_cast<int>(nonneg(field(j, "thread"), "\"thread\""));
  if (m.kind == MoveKind::BlowupI) m.face = face_from(field(j, "face"));
  if (m.kind == MoveKind::Relax || m.kind == MoveKind::Intersect) {
    const unsigned v = nonneg(field(j, "vertex"), "\"vertex\"");
    if (v == 0) bad("vertices are numbered from 1");
    m.vertex = v - 1;
  }
  return m;
}

Move parse_move(const std::string& line) {
  std::istringstream in(line);
  std::string kind, thread;
  if (!(in >> kind >> thread)) bad("a move reads \"<kind> T<thread> [vertex | {face}]\"");
  if (!thread.empty() && (thread[0] == 'T' || thread[0] == 't')) thread.erase(0, 1);
  Json j;
  j["kind"] = kind;
  try {
    std::size_t used = 0;
    j["thread"] = std::stoi(thread, &used);
    if (used != thread.size()) throw std::invalid_argument(thread);
  } catch (const std::exception&) {
    bad("\"" + thread + "\" is not a thread");
  }
  std::string rest;
  std::getline(in, rest);
  rest.erase(0, rest.find_first_not_of(" \t"));
  rest.erase(rest.find_last_not_of(" \t\r") + 1);
  if (kind == "blowup1") {
    if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}') bad("a type I blowup names a face such as {1,2}");
    Json face = Json::array();
    std::istringstream vs(rest.substr(1, rest.size() - 2));
    std::string v;
    while (std::getline(vs, v, ','))
      try {
        face.push_back(std::stoi(v));
      } catch (const std::exception&) {
        bad("\"" + v + "\" is not a vertex");
      }
    j["face"] = face;
  } else if (kind == "relax" || kind == "intersect") {
    try {
      j["vertex"] = std::stoi(rest);
    } catch (const std::exception&) {
      bad("\"" + rest + "\" is not a vertex");
    }
  } else if (!rest.empty()) {
    bad("unexpected \"" + rest + "\" after the move");
  }
  return move_from_json(j);
}

std::string report_text(const Report& r) {
  std::string out = "T" + std::to_string(r.thread) + (r.active ? "" : " (inactive)") + ": dim " + std::to_string(r.dim) +
                    ", gendeg " + std::to_string(r.gendeg);
  if (r.resolved) return out + ", resolved";
  if (r.bold) out += ", bold";
  out += ", complex {";
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    std::string f;
    for (auto v : r.complex[i]) f += (f.empty() ? "" : ",") + std::to_string(v + 1);
    out += (i ? " " : "") + (f.empty() ? std::string("{}") : "{" + f + "}");
  }
  out += "}";
  if (!r.labels.empty()) {
    out += ", labels";
    for (const auto& [v, l] : r.labels) out += " " + std::to_string(v + 1) + ":" + rational_str(l);
  }
  if (r.maxorder) out += ", maxorder " + rational_str(*r.maxorder);
  return out;
}

Json to_json(const Report& r) {
  Json j;
  j["thread"] = r.thread;
  j["dim"] = r.dim;
  j["gendeg"] = r.gendeg;
  j["bold"] = r.bold;
  Json complex = Json::array();
  for (const auto& f : r.complex) complex.push_back(face_json(f));
  j["complex"] = complex;
  Json labels = Json::object();
  for (const auto& [v, l] : r.labels) labels[std::to_string(v + 1)] = rational_str(l);
  j["labels"] = labels;
  j["maxorder"] = r.maxorder ? Json(rational_str(*r.maxorder)) : Json(nullptr);
  j["active"] = r.active;
  j["resolved"] = r.resolved;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.thread = static_cast<int>(nonneg(field(j, "thread"), "\"thread\""));
  r.dim = nonneg(field(j, "dim"), "\"dim\"");
  r.gendeg = nonneg(field(j, "gendeg"), "\"gendeg\"");
  const Json& bold = field(j, "bold");
  if (!bold.is_boolean()) bad("\"bold\" must be a boolean");
  r.bold = bold.get<bool>();
  const Json& complex = field(j, "complex");
  if (!complex.is_array()) bad("\"complex\" must be an array");
  for (const auto& f : complex) r.complex.push_back(face_from(f));
  const Json& labels = field(j, "labels");
  if (!labels.is_object()) bad("\"labels\" must be an object");
  for (const auto& [k, v] : labels.items()) {
    std::size_t vertex = 0;
    try {
      vertex = std::stoul(k);
    } catch (const std::exception&) {
      bad("label key \"" + k + "\" is not a vertex");
    }
    if (vertex == 0) bad("vertices are numbered from 1");
    r.labels[vertex - 1] = parse_rational(text(v, "a label"));
  }
  const Json& mo = field(j, "maxorder");
  if (!mo.is_null()) r.maxorder = parse_rational(text(mo, "\"maxorder\""));
  r.active = j.contains("active") ? j.at("active").get<bool>() : true;
  r.resolved = j.contains("resolved") ? j.at("resolved").get<bool>() : r.complex.empty();
  return r;
}

Json to_json(const std::vector<Report>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(to_json(r));
  return out;
}

Json algebra_json(const GameState& g) {
  Json j;
  Json charts = Json::array();
  for (const auto& c : g.habitat().charts) {
    Json cj;
    cj["chart"] = c.id;
    Json to_root = Json::array();
    for (const auto& p : c.to_root) to_root.push_back(p.to_string());
    cj["to_root"] = to_root;
    Json slots = Json::object();
    for (std::size_t s = 0; s < c.slots.size(); ++s)
      if (c.present(s)) slots[std::to_string(s + 1)] = c.slot_poly(s).to_string();
    cj["hypersurfaces"] = slots;
    Json piece = Json::array();
    for (const auto& p : c.piece) piece.push_back(p.to_string());
    cj["piece"] = piece;
    Json opens = Json::array();
    for (const auto& p : c.opens) opens.push_back(p.to_string());
    cj["opens"] = opens;
    charts.push_back(cj);
  }
  j["charts"] = charts;
  Json threads = Json::array();
  for (const auto& t : g.threads) {
    Json tj;
    tj["thread"] = t.id;
    Json per = Json::object();
    for (const auto& [id, a] : t.history.back().charts) per[std::to_string(id)] = chart_alg_json(a);
    tj["charts"] = per;
    threads.push_back(tj);
  }
  j["threads"] = threads;
  return j;
}

Json error_json(const Error& e) { return Json{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}}; }

Json to_json(const ResolutionTree& t) {
  Json j;
  j["f"] = t.f.to_string();
  Json blowups = Json::array();
  for (std::size_t k = 0; k < t.centers.size(); ++k) {
    Json center = Json::object();
    for (const auto& [id, coords] : t.centers[k]) {
      const Chart& c = t.habitats.at(k).chart(id);
      Json names = Json::array();
      for (auto v : coords) names.push_back(c.vars.name(v));
      center[std::to_string(id)] = names;
    }
    blowups.push_back(Json{{"center", center}});
  }
  j["blowups"] = blowups;
  Json leaves = Json::array();
  const Habitat& last = t.habitats.back();
  for (const auto& leaf : t.leaves) {
    const Chart& c = last.chart(leaf.chart);
    Json lj;
    lj["chart"] = leaf.chart;
    Json to_root = Json::array();
    for (const auto& p : c.to_root) to_root.push_back(p.to_string());
    lj["to_root"] = to_root;
    Json piece = Json::array();
    for (const auto& p : c.piece) piece.push_back(p.to_string());
    lj["piece"] = piece;
    Json opens = Json::array();
    for (const auto& p : c.opens) opens.push_back(p.to_string());
    lj["opens"] = opens;
    lj["strict"] = leaf.strict.to_string();
    Json ex = Json::object();
    for (const auto& [s, e] : leaf.exceptional) ex[std::to_string(s + 1)] = e;
    lj["exceptional"] = ex;
    Json basis = Json::array();
    for (const auto& p : leaf.certificate.basis) basis.push_back(p.to_string());
    lj["certificate"] = Json{{"smooth", leaf.certificate.smooth}, {"basis", basis}};
    leaves.push_back(lj);
  }
  j["leaves"] = leaves;
  return j;
}

void write_transcript(std::ostream& out, const GameState& g) {
  for (int k = 0; k <= g.turn(); ++k) {
    Json line;
    line["turn"] = k;
    if (k == 0)
      line["scenario"] = to_json(g.scenario);
    else
      line["move"] = to_json(g.moves[static_cast<std::size_t>(k - 1)]);
    line["reports"] = to_json(g.reports_log.at(static_cast<std::size_t>(k)));
    out << line.dump() << '\n';
  }
}

std::string transcript_text(const GameState& g) {
  std::ostringstream out;
  write_transcript(out, g);
  return out.str();
}

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string line;
  int expected = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      bad(std::string("transcript line is not JSON: ") + e.what());
    }
    if (nonneg(field(j, "turn"), "\"turn\"") != static_cast<unsigned>(expected))
      bad("transcript turns must count up from 0");
    if (expected == 0)
      t.scenario = scenario_from_json(field(j, "scenario"));
    else
      t.moves.push_back(move_from_json(field(j, "move")));
    std::vector<Report> rs;
    if (j.contains("reports"))
      for (const auto& r : j.at("reports")) rs.push_back(report_from_json(r));
    t.reports.push_back(std::move(rs));
    ++expected;
  }
  if (expected == 0) bad("empty transcript");
  return t;
}

}  // namespace galli
