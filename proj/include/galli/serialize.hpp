#pragma once

// JSON forms of scenarios, moves, reports and transcripts. Rationals are "p/q" strings; vertices are 1-based.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "galli/driver.hpp"
#include "galli/game.hpp"

namespace galli {

using Json = nlohmann::ordered_json;

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

/// {"variables":[...], "hypersurfaces":[poly-or-null,...], "threads":[{"pairs":[{"degree":b,"generators":[...]}], "dimension":m}]}
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

Json to_json(const Move& m);
Move move_from_json(const Json& j);

/// Inverse of to_string(Move): "tightify T0", "relax T6 1", "blowup1 T0 {1,2}"; the T is optional.
Move parse_move(const std::string& text);

Json to_json(const Report& r);
/// One line for people: thread, dim, gendeg, bold, complex, labels, maxorder.
std::string report_text(const Report& r);
Report report_from_json(const Json& j);
Json to_json(const std::vector<Report>& rs);

/// Per thread and chart, the listed generators by degree; plus the charts' coordinates. Open-information mode only.
Json algebra_json(const GameState& g);

Json error_json(const Error& e);

/// Blowup centers (variable names per chart) and, per leaf chart, lineage, strict transform and certificate.
Json to_json(const ResolutionTree& t);

struct Transcript {
  Scenario scenario;
  std::vector<Move> moves;
  /// reports[k] after k moves.
  std::vector<std::vector<Report>> reports;
};

/// JSON lines: turn 0 carries the scenario and the initial reports, turn k >= 1 the k-th move and the reports after it.
void write_transcript(std::ostream& out, const GameState& g);
std::string transcript_text(const GameState& g);
Transcript read_transcript(std::istream& in);

}  // namespace galli
