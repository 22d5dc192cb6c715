// galli: resolve, play, replay, desingularize, serve.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "galli/dido.hpp"
#include "galli/driver.hpp"
#include "galli/serialize.hpp"
#include "galli/server.hpp"

using namespace galli;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidScenario, path + ": " + e.what());
  }
}

void print_reports(std::ostream& out, const std::vector<Report>& rs) {
  for (const auto& r : rs)
    if (r.active) out << "  " << report_text(r) << '\n';
}

int resolve(const std::string& path, const std::string& out_path, std::size_t max_moves, bool quiet) {
  const Scenario s = scenario_from_json(read_json(path));
  StrategyOptions opts;
  opts.max_moves = max_moves;
  if (!quiet)
    opts.on_move = [](const StrategyStep& step, const GameState&) {
      std::cerr << to_string(step.move) << "  [" << tag_name(step.tag) << "]\n";
    };
  const StrategyResult r = win(new_game(s), opts);
  if (out_path.empty()) {
    write_transcript(std::cout, r.state);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Usage("cannot write " + out_path);
    write_transcript(out, r.state);
  }
  (out_path.empty() ? std::cerr : std::cout) << "WON in " << r.steps.size() << " moves\n";
  return 0;
}

int play(const std::string& path, bool show_algebra) {
  GameState g = new_game(scenario_from_json(read_json(path)));
  std::cout << "turn 0\n";
  print_reports(std::cout, reports(g));
  std::string line;
  while (!is_won(g)) {
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    line.erase(0, line.find_first_not_of(" \t"));
    if (line.empty()) continue;
    if (line == "quit" || line == "q") break;
    if (line == "help" || line == "?") {
      std::cout << "moves: tightify T, descend T, blowup2 T, blowup1 T {i,j}, relax T i, intersect T i\n"
                   "other: legal, reports, algebra, transcript FILE, quit\n";
      continue;
    }
    if (line == "legal") {
      for (const auto& m : legal_moves(g)) std::cout << "  " << to_string(m) << '\n';
      continue;
    }
    if (line == "reports") {
      print_reports(std::cout, reports(g));
      continue;
    }
    if (line == "algebra") {
      if (show_algebra)
        std::cout << algebra_json(g).dump(2) << '\n';
      else
        std::cout << "hidden; start with --show-algebra\n";
      continue;
    }
    if (line.rfind("transcript ", 0) == 0) {
      std::ofstream out(line.substr(11));
      write_transcript(out, g);
      std::cout << (out ? "written\n" : "cannot write\n");
      continue;
    }
    try {
      const Move m = parse_move(line);
      if (auto why = violation(g, m)) {
        std::cout << "illegal: " << *why << '\n';
        continue;
      }
      g = apply_move(g, m);
      std::cout << "turn " << g.turn() << '\n';
      print_reports(std::cout, reports(g));
    } catch (const Error& e) {
      std::cout << error_json(e).dump() << '\n';
    }
  }
  if (is_won(g)) std::cout << "WON in " << g.turn() << " moves\n";
  return 0;
}

int replay_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  const Transcript t = read_transcript(in);
  const bool check = std::all_of(t.reports.begin(), t.reports.end(), [](const auto& r) { return !r.empty(); });
  const GameState g = replay(t.scenario, t.moves, check ? &t.reports : nullptr);
  for (int k = 0; k <= g.turn(); ++k) {
    std::cout << "turn " << k;
    if (k > 0) std::cout << ": " << to_string(g.moves[static_cast<std::size_t>(k - 1)]);
    std::cout << '\n';
    print_reports(std::cout, g.reports_log[static_cast<std::size_t>(k)]);
  }
  std::cout << (is_won(g) ? "won" : "not won") << " after " << g.turn() << " moves"
            << (check ? ", reports match" : "") << '\n';
  return 0;
}

int desingularize(const std::string& path, const std::string& out_path) {
  const Scenario s = scenario_from_json(read_json(path));
  if (s.pairs.size() != 1 || s.pairs.front().first.gens().size() != 1)
    throw Error(ErrorCode::InvalidScenario, "desingularize takes one hypersurface: one pair with one generator");
  if (!s.hypersurfaces.empty())
    throw Error(ErrorCode::InvalidScenario, "desingularize works on affine space without hypersurfaces");
  const ResolutionTree t = desingularize_hypersurface(s.pairs.front().first.gens().front());
  const Json j = to_json(t);
  std::cout << "f = " << t.f.to_string() << ", " << t.centers.size() << " blowups, " << t.leaves.size() << " leaf charts\n";
  for (const auto& leaf : j["leaves"]) {
    std::cout << "chart " << leaf["chart"].get<int>() << ": strict transform " << leaf["strict"].get<std::string>()
              << (leaf["certificate"]["smooth"].get<bool>() ? ", smooth\n" : ", SINGULAR\n");
  }
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw Usage("cannot write " + out_path);
    out << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution game engine: auto-resolve, play, replay, desingularize, serve."};
  app.require_subcommand(1);

  std::string file, out_path, host = "127.0.0.1";
  std::size_t max_moves = 10'000;
  bool quiet = false, show_algebra = false, hidden = false;
  int port = default_port();

  auto* res = app.add_subcommand("resolve", "Play the winning strategy and write the transcript.");
  res->add_option("scenario", file, "Scenario JSON")->required();
  res->add_option("-o,--out", out_path, "Transcript file (default: stdout)");
  res->add_option("--max-moves", max_moves, "Move cap");
  res->add_flag("-q,--quiet", quiet, "Do not list moves on stderr");

  auto* pl = app.add_subcommand("play", "Play interactively, one move per line.");
  pl->add_option("scenario", file, "Scenario JSON")->required();
  pl->add_flag("--show-algebra", show_algebra, "Allow the algebra command");

  auto* rp = app.add_subcommand("replay", "Replay a transcript, checking recorded reports.");
  rp->add_option("transcript", file, "Transcript (JSON lines)")->required();

  auto* ds = app.add_subcommand("desingularize", "Embedded desingularization of a hypersurface.");
  ds->add_option("scenario", file, "Scenario JSON with one generator")->required();
  ds->add_option("-o,--out", out_path, "Tree JSON file (default: stdout)");

  auto* sv = app.add_subcommand("serve", "Serve the session API over HTTP.");
  sv->add_option("--port", port, "Port (default: GALLIMAUFRY_PORT or 7464)");
  sv->add_option("--host", host, "Address to bind");
  sv->add_flag("--hidden", hidden, "Force hidden mode for every session");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    if (*res) return resolve(file, out_path, max_moves, quiet);
    if (*pl) return play(file, show_algebra);
    if (*rp) return replay_file(file);
    if (*ds) return desingularize(file, out_path);
    if (*sv) {
      std::cerr << "listening on " << host << ":" << port << (hidden ? " (hidden)" : "") << '\n';
      if (!serve(host, port, hidden)) {
        std::cerr << "cannot listen on " << host << ":" << port << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const Usage& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << '\n';
    return 1;
  }
  return 2;
}
