#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "golovin/agent.hpp"
#include "golovin/commands.hpp"
#include "golovin/env.hpp"
#include "golovin/lexicon.hpp"
#include "golovin/world.hpp"

namespace golovin {

// raw / max, plus 0.2 when raw is positive. Throws UsageError when max <= 0.
double modified_score(double raw, double max);

struct EpisodeReport {
  std::string game;
  int raw = 0;
  int max = 0;
  double modified = 0;
  int steps = 0;
  int lives = 1;
  bool won = false;
  bool failed = false;
  std::string error;
  std::string transcript;
  std::filesystem::path transcript_path;

  friend bool operator==(const EpisodeReport&, const EpisodeReport&) = default;
};

// Builds a fresh environment for one episode from a run seed.
using EnvFactory = std::function<std::unique_ptr<Environment>(std::uint64_t seed)>;

// Environment seed used for a world under a run seed.
std::uint64_t environment_seed(const WorldSpec& world, std::uint64_t run_seed);
EnvFactory simulator_factory(WorldSpec world);

struct EpisodeOptions {
  int budget = 1000;
  std::uint64_t seed = 0;
  std::ostream* live = nullptr;             // transcript mirror
  std::filesystem::path transcript_path;   // written when non-empty
};

// One agent playing one game. Environment failures are reported, not thrown.
EpisodeReport run_episode(const std::string& game, int max_score, const EnvFactory& factory, const Lexicon& lex,
                          const CommandDB& db, AgentConfig config, const EpisodeOptions& options);
EpisodeReport run_episode(const WorldSpec& world, const Lexicon& lex, const CommandDB& db, AgentConfig config,
                          const EpisodeOptions& options);

struct Ablation {
  std::string name;
  bool use_map = true;
  bool use_battle = true;

  AgentConfig apply(AgentConfig c) const;
};

// Every on/off combination of the named features ("map", "battle"); the
// empty list gives just the full configuration.
std::vector<Ablation> ablations_for(const std::vector<std::string>& features);

struct SuiteCell {
  std::string game;
  std::string ablation;
  int runs = 0;
  double mean_raw = 0;
  double mean_modified = 0;
  std::vector<EpisodeReport> reports;
};

struct SuiteReport {
  std::string source;  // command database tag
  std::vector<SuiteCell> cells;

  // `game<TAB>ablation<TAB>runs<TAB>mean_raw<TAB>mean_modified` with header.
  std::string table() const;
  // Per ablation, mean modified score over games scaled so the best is 100.
  std::vector<std::pair<std::string, double>> normalized() const;
  std::string normalized_table() const;
};

struct SuiteOptions {
  int runs = 10;
  int budget = 1000;
  std::uint64_t seed = 0;
  std::vector<Ablation> ablations{Ablation{"full"}};
  unsigned threads = 1;
  std::string source = "sample";
};

// Loads every world first; a load failure aborts before any episode runs.
SuiteReport evaluate_suite(const std::vector<std::filesystem::path>& games, const Lexicon& lex, const CommandDB& db,
                           const AgentConfig& config, const SuiteOptions& options);

// A world file, or every *.world file of a directory in name order.
std::vector<std::filesystem::path> list_games(const std::filesystem::path& path);

// Report files: `game<TAB>raw<TAB>max<TAB>steps<TAB>lives<TAB>failed` lines.
std::string format_reports(const std::vector<EpisodeReport>& reports);
std::vector<EpisodeReport> parse_reports(const std::string& contents, const std::string& source = "<reports>");

}  // namespace golovin
