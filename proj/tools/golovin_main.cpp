#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "golovin/agent.hpp"
#include "golovin/errors.hpp"
#include "golovin/harness.hpp"
#include "golovin/interpreter.hpp"
#include "golovin/simulator.hpp"
#include "golovin/text.hpp"
#include "golovin/world.hpp"

namespace fs = std::filesystem;
using namespace golovin;

namespace {

struct Common {
  std::string data_dir = GOLOVIN_DEFAULT_DATA_DIR;
  std::string db;
  std::string config;
  std::uint64_t seed = 0;
  int budget = 1000;
};

struct Resources {
  Lexicon lex;
  CommandDB db;
  AgentConfig config;
};

Resources load_resources(const Common& c) {
  Resources r;
  r.lex = Lexicon::load_dir(c.data_dir);
  r.db = CommandDB::load(c.db.empty() ? fs::path(c.data_dir) / "sample.db" : fs::path(c.db));
  if (!c.config.empty()) r.config = AgentConfig::from_file(KeyValueFile::load(c.config));
  r.config.seed = c.seed;
  return r;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--data-dir", c.data_dir, "Directory with embeddings, frequencies and word lists");
  app->add_option("--db", c.db, "Command pattern database (default: <data-dir>/sample.db)");
  app->add_option("--config", c.config, "Agent config file (key = value)");
  app->add_option("--seed", c.seed, "Run seed");
  app->add_option("--budget", c.budget, "Step budget")->check(CLI::PositiveNumber);
}

struct EnvChoice {
  std::string backend = "sim";
  std::string world;
  std::string interpreter;
  std::string story;
  std::vector<std::string> interpreter_args{"-m", "-p"};
  std::string prompt = "> ";
  int timeout_ms = 5000;
};

void add_env(CLI::App* app, EnvChoice& e) {
  app->add_option("--backend", e.backend, "sim or interpreter")->check(CLI::IsMember({"sim", "interpreter"}));
  app->add_option("--world", e.world, "World file for the simulator");
  app->add_option("--interpreter", e.interpreter, "Interpreter binary (default: $GOLOVIN_INTERPRETER)");
  app->add_option("--story", e.story, "Story file for the interpreter");
  app->add_option("--interpreter-arg", e.interpreter_args, "Interpreter arguments");
  app->add_option("--prompt", e.prompt, "Text that ends each interpreter response");
  app->add_option("--timeout-ms", e.timeout_ms, "Interpreter response timeout")->check(CLI::PositiveNumber);
}

struct Game {
  std::string id;
  int max = 0;
  EnvFactory factory;
};

Game make_game(const EnvChoice& e, int max_override) {
  if (e.backend == "sim") {
    if (e.world.empty()) throw UsageError("--world is required with the sim backend");
    WorldSpec w = load_world(e.world);
    Game g{w.name, max_override > 0 ? max_override : w.max_score, nullptr};
    g.factory = simulator_factory(std::move(w));
    return g;
  }
  if (e.story.empty()) throw UsageError("--story is required with the interpreter backend");
  InterpreterOptions opts;
  opts.program = resolve_interpreter(e.interpreter);
  opts.args = e.interpreter_args;
  opts.story = e.story;
  opts.prompt = e.prompt;
  opts.timeout = std::chrono::milliseconds(e.timeout_ms);
  Game g{fs::path(e.story).stem().string(), max_override, nullptr};
  g.factory = [opts](std::uint64_t) { return std::make_unique<InterpreterEnv>(opts); };
  return g;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autonomous interactive-fiction player"};
  app.require_subcommand(1);

  Common play_c;
  EnvChoice play_e;
  int play_max = 0;
  std::string play_transcript;
  auto* play = app.add_subcommand("play", "Play one episode and print the transcript");
  add_common(play, play_c);
  add_env(play, play_e);
  play->add_option("--max", play_max, "Maximum score (interpreter games)");
  play->add_option("--transcript", play_transcript, "Also write the transcript here");

  Common eval_c;
  std::string eval_games;
  int eval_runs = 10;
  std::string eval_ablate;
  std::string eval_out;
  std::string eval_reports;
  unsigned eval_threads = 1;
  auto* eval = app.add_subcommand("eval", "Run a suite of worlds and write the score table");
  add_common(eval, eval_c);
  eval->add_option("--games", eval_games, "World file or directory of *.world files")->required();
  eval->add_option("--runs", eval_runs, "Runs per game and ablation")->check(CLI::PositiveNumber);
  eval->add_option("--ablate", eval_ablate, "Comma-separated features to toggle: map,battle");
  eval->add_option("--out", eval_out, "Table output file (default: standard output)");
  eval->add_option("--reports", eval_reports, "Also write per-episode reports here");
  eval->add_option("--threads", eval_threads, "Worker threads")->check(CLI::PositiveNumber);

  Common map_c;
  EnvChoice map_e;
  auto* map_dump = app.add_subcommand("map-dump", "Play one episode and print the final map");
  add_common(map_dump, map_c);
  add_env(map_dump, map_e);

  double score_max = 0, score_raw = 0;
  std::string score_reports;
  auto* score_cmd = app.add_subcommand("score", "Compute modified scores");
  auto* max_opt = score_cmd->add_option("--max", score_max, "Maximum score");
  auto* raw_opt = score_cmd->add_option("--raw", score_raw, "Raw score");
  auto* rep_opt = score_cmd->add_option("--reports", score_reports, "Report file to rescore");
  max_opt->needs(raw_opt);
  raw_opt->needs(max_opt);
  rep_opt->excludes(max_opt)->excludes(raw_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) {
      Resources r = load_resources(play_c);
      Game g = make_game(play_e, play_max);
      EpisodeOptions eo;
      eo.budget = play_c.budget;
      eo.seed = play_c.seed;
      eo.live = &std::cout;
      eo.transcript_path = play_transcript;
      EpisodeReport rep = run_episode(g.id, g.max, g.factory, r.lex, r.db, r.config, eo);
      std::cout << "score\t" << rep.raw;
      if (rep.max > 0) std::cout << "/" << rep.max << "\tmodified\t" << std::setprecision(6) << rep.modified;
      std::cout << "\n";
      if (rep.failed) {
        std::cerr << "environment failure: " << rep.error << "\n";
        return 3;
      }
    } else if (*eval) {
      Resources r = load_resources(eval_c);
      SuiteOptions so;
      so.runs = eval_runs;
      so.budget = eval_c.budget;
      so.seed = eval_c.seed;
      so.ablations = ablations_for(text::split(eval_ablate, ','));
      so.threads = eval_threads;
      so.source = fs::path(eval_c.db.empty() ? "sample.db" : eval_c.db).stem().string();
      SuiteReport rep = evaluate_suite(list_games(eval_games), r.lex, r.db, r.config, so);
      std::string out = rep.table() + "\n" + rep.normalized_table();
      if (eval_out.empty()) {
        std::cout << out;
      } else {
        std::ofstream f(eval_out);
        if (!f) throw UsageError("cannot write " + eval_out);
        f << out;
      }
      if (!eval_reports.empty()) {
        std::vector<EpisodeReport> all;
        for (const auto& c : rep.cells) all.insert(all.end(), c.reports.begin(), c.reports.end());
        std::ofstream f(eval_reports);
        if (!f) throw UsageError("cannot write " + eval_reports);
        f << format_reports(all);
      }
    } else if (*map_dump) {
      Resources r = load_resources(map_c);
      Game g = make_game(map_e, 0);
      auto env = g.factory(map_c.seed);
      Agent agent(r.lex, r.db, r.config);
      agent.play(*env, map_c.budget);
      std::cout << agent.state().map.dump();
    } else if (*score_cmd) {
      std::cout << std::setprecision(10);
      if (!score_reports.empty()) {
        for (const auto& rep : parse_reports(read_file(score_reports), score_reports))
          std::cout << rep.game << "\t" << rep.raw << "\t" << rep.max << "\t" << rep.modified << "\n";
      } else if (*max_opt) {
        std::cout << modified_score(score_raw, score_max) << "\n";
      } else {
        throw UsageError("score needs --max and --raw, or --reports");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const EnvironmentError& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
