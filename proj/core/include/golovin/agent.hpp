#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "golovin/commands.hpp"
#include "golovin/config.hpp"
#include "golovin/env.hpp"
#include "golovin/lexicon.hpp"
#include "golovin/mapper.hpp"

namespace golovin {

// Every tunable of the playing loop. Defaults are hand-picked; none of them
// come from a published tuning run.
struct AgentConfig {
  ScoringParams scoring;
  int gather_limit = 3;          // take attempts per new area
  int item_command_limit = 3;    // top commands run after acquiring an item
  int actions_before_move = 4;   // general commands per visit before moving
  int battle_repeat = 3;         // repeats of a selected fight command
  int battle_max_failures = 2;   // consecutive unchanged repeats that end battle mode
  double battle_bias = 5.0;      // multiplier for fight commands aimed at a described noun
  double curiosity_move_weight = 1.0;
  int death_suffix_length = 5;   // trailing commands remembered from a fatal life
  int finalize_margin = 5;
  bool use_map = true;
  bool use_battle = true;
  std::vector<std::string> acquisition_verbs{"take", "get", "pick", "grab", "buy", "steal"};
  std::uint64_t seed = 0;

  void validate() const;
  // Overrides the fields named in the file. Unknown keys are an error.
  void apply(const KeyValueFile& file);
  static AgentConfig from_file(const KeyValueFile& file);
  // `key = value` lines covering every field.
  std::string to_text() const;
};

enum class Generator { battle, gather, inventory, general, movement, fallback, replay, restart };
std::string_view to_string(Generator g);

struct Decision {
  std::string command;
  Generator generator = Generator::fallback;
};

struct Trajectory {
  std::vector<std::pair<std::string, int>> steps;  // command, score after it
  int final_score = 0;
  bool died = false;

  std::vector<std::string> commands() const;
  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
};

struct BattleMode {
  std::string command;
  int repeats_left = 0;
  int failures = 0;
};

// The tail of a fatal life. Anchored suffixes cover a whole (short) life and
// only match from the start of a life.
struct DeathSuffix {
  std::vector<std::string> commands;
  bool anchored = false;

  auto operator<=>(const DeathSuffix&) const = default;
};

struct AgentState {
  std::optional<BattleMode> battle;
  std::vector<std::string> inventory;
  std::map<std::string, std::set<std::string>> blacklists;  // location label -> failed commands
  Trajectory life;
  Trajectory best;
  std::set<DeathSuffix> death_suffixes;
  MapGraph map;
  int lives = 1;

  // Reset on arrival in an area.
  int general_tried = 0;
  // Per life.
  std::map<std::string, std::set<std::string>> gather_tried;  // label -> nouns
  std::deque<std::string> pending_items;
  std::map<std::string, std::set<std::string>> item_commands_done;
  std::vector<std::string> planned_path;

  bool blacklisted(const std::string& label, const std::string& command) const;
};

struct PlayResult {
  int final_score = 0;
  int steps = 0;
  int lives = 1;
  bool won = false;
  bool replayed = false;
};

// The playing loop. Generators fire in the order battle, gather, inventory,
// general, movement; the first one that proposes something wins.
class Agent {
 public:
  // `lex` and `db` must outlive the agent.
  Agent(const Lexicon& lex, const CommandDB& db, AgentConfig config);

  void begin(const Percept& opening);
  Decision next_command(const Percept& p);
  bool wants_inventory(std::string_view command) const;
  void observe(const Percept& prev, const std::string& command, const Percept& now,
               const std::optional<std::vector<std::string>>& inventory);
  // Records the fatal suffix, restarts the game, keeps long-term memory.
  Percept on_death(Environment& env);
  // Abandons the current life without recording a death.
  Percept restart(Environment& env);
  // Restarts and replays the best trajectory within `remaining` steps.
  // Returns the score reached and the steps used.
  std::pair<int, int> finalize(Environment& env, int remaining, std::ostream* transcript = nullptr, int step_base = 0);
  // Starts the environment and plays until the budget is spent or the game is won.
  PlayResult play(Environment& env, int budget, std::ostream* transcript = nullptr);

  std::optional<std::string> battle_generator(const Percept& p);
  std::optional<std::string> gather_generator(const Percept& p);
  std::optional<std::string> inventory_generator(const Percept& p);
  std::optional<std::string> general_generator(const Percept& p);
  // Never empty: falls back to "look".
  std::string movement_generator(const Percept& p);

  // Scored candidates for the percept; cached until the state text or the
  // inventory changes.
  const std::vector<CandidateCommand>& candidates(const Percept& p, const CandidateFilter& filter = {});

  bool death_excluded(const std::string& command) const;
  const AgentState& state() const { return state_; }
  AgentState& mutable_state() { return state_; }
  const AgentConfig& config() const { return config_; }
  const NounFilter& noun_filter() const { return filter_; }

 private:
  bool available(const std::string& label, const std::string& command) const;
  std::optional<std::string> try_movement(const Percept& p);
  void reset_life();
  void enter_area();
  void remember_area_value(const Percept& p);
  std::string mode_name() const;

  const Lexicon* lex_;
  const CommandDB* db_;
  AgentConfig config_;
  NounFilter filter_;
  RouletteSelector rng_;
  AgentState state_;
  bool waive_death_ = false;

  struct CacheKey {
    std::string state;
    std::vector<std::string> inventory;
    bool battle_only;
    std::string through;
    double bias;
    auto operator<=>(const CacheKey&) const = default;
  };
  std::map<CacheKey, std::vector<CandidateCommand>> cache_;
  std::string cache_state_;
};

// Splits "go north" / "north" into the move word; nullopt for anything else.
std::optional<std::string> move_of(std::string_view command);

}  // namespace golovin
