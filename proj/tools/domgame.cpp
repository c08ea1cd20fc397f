#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "domgame/boxes.hpp"
#include "domgame/game.hpp"
#include "domgame/graph_io.hpp"
#include "domgame/oracle.hpp"
#include "domgame/strategy.hpp"
#include "domgame/tree_enum.hpp"
#include "domgame/verify.hpp"

namespace {

using namespace domgame;

int default_jobs() {
  if (const char* env = std::getenv("DOMGAME_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_move_script(const std::string& csv, const ParsedGraph& pg) {
  std::vector<int> out;
  if (csv.empty()) return out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    long long id = std::stoll(tok);
    int label = pg.label_of(id);
    if (label < 0) throw std::runtime_error("unknown vertex id in move list: " + tok);
    out.push_back(label);
  }
  return out;
}

void print_state(const GameState& s, const ParsedGraph& pg, std::ostream& out) {
  out << "  t=" << s.moves_played() << " p(V)=" << s.total_value()
      << " Psi=" << s.cumulative_psi << "\n  vertices:";
  for (int v : bits(s.original.vertices())) {
    out << ' ' << pg.id_of(v) << ':' << to_string(s.color[v]);
    if (s.color[v] == Color::kBlue) out << static_cast<int>(s.value[v]);
  }
  out << "\n";
  DenseGraph d = densify(s.underlying, s.color, s.value);
  out << "  dense:";
  for (auto [u, v] : d.graph.edges()) {
    out << ' ';
    if (is_virtual_label(u)) out << "+v";
    else out << pg.id_of(u);
    out << '-';
    if (is_virtual_label(v)) out << "+v";
    else out << pg.id_of(v);
  }
  if (d.graph.edges().empty()) out << " (empty)";
  out << "\n";
}

void print_boxes(const GameState& s, const ParsedGraph& pg, std::ostream& out) {
  DenseGraph d = densify(s.underlying, s.color, s.value);
  auto dec = find_decomposition(d, 0);
  if (!dec) dec = find_decomposition(d, 1);
  if (!dec) {
    out << "  boxes: none (no valid decomposition)\n";
    return;
  }
  out << "  boxes:";
  for (size_t i = 0; i < dec->boxes.size(); ++i) {
    const Box& b = dec->boxes[i];
    out << " [" << to_string(b.type);
    if (b.root >= 0) out << " root=" << (is_virtual_label(b.root) ? -1 : pg.id_of(b.root));
    out << ":";
    for (int v : bits(b.vertices)) {
      out << ' ';
      if (is_virtual_label(v)) out << "+v";
      else out << pg.id_of(v);
    }
    out << "]";
  }
  out << "\n";
}

int cmd_enumerate(int max_n, bool forests_scope) {
  for (int n = forests_scope ? 2 : 1; n <= max_n; ++n) {
    if (forests_scope) {
      std::cout << "n=" << n << " forests=" << forests(n).size() << "\n";
    } else {
      std::cout << "n=" << n << " trees=" << trees(n).size() << "\n";
    }
  }
  return 0;
}

int cmd_verify(const VerifyOptions& opt) {
  VerificationReport report = run_verify(opt);
  std::cout << "# domgame verify " << report.config_echo << "\n";
  for (const NSummary& s : report.per_n) std::cout << s.to_line() << "\n";
  for (const GameRecord& r : report.failures) std::cout << "FAIL " << r.to_line() << "\n";
  std::cout << "RESULT total_games=" << report.total_games
            << " failures=" << report.failures.size() << "\n";
  return report.ok() ? 0 : 1;
}

int cmd_gamma(const std::string& file, Variant variant) {
  ParsedGraph pg = parse_graph(read_file(file));
  int value = gamma(pg.forest, variant);
  int bound = t_max(pg.forest.size(), variant);
  bool ok = value <= bound;
  std::cout << "gamma=" << value << " bound=" << bound << (ok ? " ok" : " VIOLATED") << "\n";
  return ok ? 0 : 1;
}

int run_game_loop(const std::string& file, Variant variant, const std::string& script_csv,
                  bool interactive, bool dump_boxes, bool trace_mode) {
  ParsedGraph pg = parse_graph(read_file(file));
  std::vector<int> script = parse_move_script(script_csv, pg);
  size_t script_pos = 0;

  StrategyConfig cfg;
  GameState s = initial_state(pg.forest, variant);
  int bound = t_max(pg.forest.size(), variant);
  std::cout << "# n=" << s.n() << " Tmax=" << bound << " variant=" << to_string(variant) << "\n";

  while (!is_terminal(s)) {
    if (!trace_mode) print_state(s, pg, std::cout);
    if (dump_boxes) print_boxes(s, pg, std::cout);
    if (s.to_move() == Player::kDominator) {
      auto [mv, s1] = play(s, cfg);
      s = std::move(s1);
      const MoveRecord& r = s.history.back();
      std::cout << "move " << s.moves_played() << " D " << pg.id_of(mv) << " gain=" << r.gain
                << " psi=" << r.psi << " Psi=" << s.cumulative_psi << "\n";
      continue;
    }
    int mv = -1;
    if (script_pos < script.size()) {
      mv = script[script_pos++];
      if ((legal_moves(s) & bit(mv)) == 0) {
        std::cerr << "error: scripted Staller move at step " << (s.moves_played() + 1)
                  << " is illegal (vertex " << pg.id_of(mv) << ")\n";
        return 2;
      }
    } else if (interactive) {
      for (;;) {
        std::cout << "staller> " << std::flush;
        std::string entry;
        long long id = -1;
        bool eof = !std::getline(std::cin, entry);
        if (!eof) {
          try {
            size_t pos = 0;
            id = std::stoll(entry, &pos);
            while (pos < entry.size() && std::isspace(static_cast<unsigned char>(entry[pos])))
              ++pos;
            if (pos != entry.size()) id = -1;
          } catch (const std::exception&) {
            id = -1;
          }
          if (id < 0) {
            std::cout << "illegal move, try again\n";
            continue;
          }
        }
        if (eof) {
          std::cout << "\n# aborted (end of input); partial record:\n";
          GameRecord r;
          r.forest = forest_id(pg.forest);
          r.n = s.n();
          r.variant = variant;
          r.adversary = "human";
          r.moves = s.history;
          r.T = s.moves_played();
          r.t_max = bound;
          r.min_cumulative_psi = s.min_cumulative_psi;
          r.result = "aborted";
          std::cout << r.to_line(&pg.original_ids) << "\n";
          return 1;
        }
        int label = pg.label_of(id);
        if (label >= 0 && (legal_moves(s) & bit(label)) != 0) {
          mv = label;
          break;
        }
        std::cout << "illegal move, try again\n";
      }
    } else {
      std::cerr << "error: Staller move needed at step " << (s.moves_played() + 1)
                << " but the move list is exhausted\n";
      return 2;
    }
    s = update(s, mv, cfg);
    const MoveRecord& r = s.history.back();
    std::cout << "move " << s.moves_played() << " S " << pg.id_of(mv) << " gain=" << r.gain
              << " psi=" << r.psi << " Psi=" << s.cumulative_psi << "\n";
  }
  if (dump_boxes) std::cout << "  boxes: game over (empty graph)\n";

  GameRecord r;
  r.forest = forest_id(pg.forest);
  r.n = s.n();
  r.variant = variant;
  r.adversary = interactive ? "human" : "scripted";
  r.moves = s.history;
  r.T = s.moves_played();
  r.t_max = bound;
  r.min_cumulative_psi = s.min_cumulative_psi;
  r.result = r.T <= r.t_max ? "win" : "loss";
  std::cout << "final T=" << r.T << " Tmax=" << r.t_max << " result=" << r.result << "\n";
  std::cout << r.to_line(&pg.original_ids) << "\n";
  return r.T <= r.t_max ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"domination-game strategy verifier"};
  app.require_subcommand(1);

  int max_n = 10;
  bool forests_scope = false;
  auto* enumerate = app.add_subcommand("enumerate", "count tree/forest isomorphism classes");
  enumerate->add_option("--max-n", max_n, "largest size")->required();
  enumerate->add_flag("--forests", forests_scope, "enumerate isolate-free forests");

  VerifyOptions vopt;
  std::string variant_str = "both", adversary_str = "exhaustive";
  bool strict_fidelity = false;
  vopt.jobs = default_jobs();
  auto* verify = app.add_subcommand("verify", "play and check all adversary lines");
  verify->add_option("--max-n", vopt.max_n, "largest size")->required();
  verify->add_option("--variant", variant_str, "both|dominator|staller");
  verify->add_option("--adversary", adversary_str, "exhaustive|greedy|random");
  verify->add_option("--seed", vopt.seed, "seed for the random adversary");
  verify->add_option("--jobs", vopt.jobs, "worker threads (default $DOMGAME_JOBS)");
  verify->add_flag("--forests", vopt.forests_scope, "isolate-free forests instead of trees");
  verify->add_flag("--strict-fidelity", strict_fidelity,
                   "all dense vertices, three-ply lookahead ties");
  verify->add_flag("--simplified", vopt.simplified,
                   "distance-4-free family with the simplified strategy");
  verify->add_flag("--fail-fast", vopt.fail_fast, "stop after the first failure");

  std::string file, gamma_variant = "dominator";
  auto* gamma_cmd = app.add_subcommand("gamma", "minimax game domination number");
  gamma_cmd->add_option("file", file, "graph file")->required();
  gamma_cmd->add_option("--variant", gamma_variant, "dominator|staller");

  std::string play_file, play_variant = "dominator", play_script;
  auto* play_cmd = app.add_subcommand("play", "interactive game, human plays Staller");
  play_cmd->add_option("file", play_file, "graph file")->required();
  play_cmd->add_option("--variant", play_variant, "dominator|staller");
  play_cmd->add_option("--staller-moves", play_script, "comma-separated scripted moves");

  std::string trace_file, trace_variant = "dominator", trace_script;
  bool dump_boxes = false;
  auto* trace_cmd = app.add_subcommand("trace", "deterministic replay of a scripted game");
  trace_cmd->add_option("file", trace_file, "graph file")->required();
  trace_cmd->add_option("--variant", trace_variant, "dominator|staller");
  trace_cmd->add_option("--staller-moves", trace_script, "comma-separated scripted moves");
  trace_cmd->add_flag("--dump-boxes", dump_boxes, "print the box decomposition per step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto to_variant = [](const std::string& s) {
    if (s == "dominator") return Variant::kDominatorStart;
    if (s == "staller") return Variant::kStallerStart;
    throw std::runtime_error("unknown variant: " + s);
  };

  try {
    if (enumerate->parsed()) return cmd_enumerate(max_n, forests_scope);
    if (verify->parsed()) {
      if (variant_str == "dominator") vopt.run_staller_start = false;
      else if (variant_str == "staller") vopt.run_dominator_start = false;
      else if (variant_str != "both") throw std::runtime_error("unknown variant: " + variant_str);
      if (adversary_str == "exhaustive") vopt.adversary.kind = AdversaryKind::kExhaustive;
      else if (adversary_str == "greedy") vopt.adversary.kind = AdversaryKind::kGreedyMinGain;
      else if (adversary_str == "random") vopt.adversary.kind = AdversaryKind::kRandom;
      else throw std::runtime_error("unknown adversary: " + adversary_str);
      vopt.adversary.seed = vopt.seed;
      if (strict_fidelity) {
        vopt.cfg.ladder = MoveSource::kAllDense;
        vopt.cfg.tiebreak = Tiebreak::kLookahead3;
      }
      if (vopt.max_n < 2 || vopt.max_n > 22)
        throw std::runtime_error("verify: --max-n must be between 2 and 22");
      return cmd_verify(vopt);
    }
    if (gamma_cmd->parsed()) return cmd_gamma(file, to_variant(gamma_variant));
    if (play_cmd->parsed())
      return run_game_loop(play_file, to_variant(play_variant), play_script,
                           /*interactive=*/true, false, false);
    if (trace_cmd->parsed())
      return run_game_loop(trace_file, to_variant(trace_variant), trace_script,
                           /*interactive=*/false, dump_boxes, true);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
