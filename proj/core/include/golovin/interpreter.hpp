#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "golovin/env.hpp"

namespace golovin {

// Status-line and terminal-state patterns for one interpreter/game pairing.
struct OutputPatterns {
  // First capture group is the score.
  std::vector<std::string> score = {R"(Score:[ \t]*(-?\d+))"};
  // First capture group is the move counter.
  std::vector<std::string> moves = {R"(Moves:[ \t]*(\d+))", R"(Turns:[ \t]*(\d+))"};
  // `score/moves` pair at the end of a status line ("West of House      0/1").
  std::string pair = R"(^\s*\S.*\s{2,}(-?\d+)/(\d+)\s*$)";
  // Plain substrings.
  std::vector<std::string> death = {"You have died", "*** You have died ***"};
  std::vector<std::string> won = {"*** You have won ***"};
};

// Turns one raw interpreter response into a percept. Status lines are removed
// before anything else; score and moves carry forward from `previous` when no
// pattern matches. Idempotent on already-normalized text.
Percept parse_interpreter_output(const std::string& raw, const Percept& previous = {},
                                 const OutputPatterns& patterns = {});

// Item names from an inventory response: one per listing line, leading
// articles dropped, header lines ("You are carrying:") skipped.
std::vector<std::string> parse_inventory_listing(const std::string& response);

struct InterpreterOptions {
  std::filesystem::path program;     // empty: $GOLOVIN_INTERPRETER
  std::vector<std::string> args;     // e.g. {"-m", "-p"} for dumb frotz
  std::filesystem::path story;       // game file, appended after args
  std::string prompt = "> ";         // a response ends when the output ends with this
  std::chrono::milliseconds timeout{5000};
  std::string inventory_command = "inventory";
  OutputPatterns patterns;
};

// Resolves the interpreter binary: explicit option first, then the
// GOLOVIN_INTERPRETER environment variable.
std::filesystem::path resolve_interpreter(const std::filesystem::path& explicit_path);

// Backend that drives an external Z-machine interpreter in dumb-terminal mode
// over its standard streams. restart() respawns the process, which is the
// only portable way to get a state identical to start.
class InterpreterEnv final : public Environment {
 public:
  explicit InterpreterEnv(InterpreterOptions options);
  ~InterpreterEnv() override;
  InterpreterEnv(const InterpreterEnv&) = delete;
  InterpreterEnv& operator=(const InterpreterEnv&) = delete;

  Percept start() override;
  Percept step(std::string_view command) override;
  Percept restart() override;
  std::vector<std::string> query_inventory() override;

  // Raw text of the last exchange, for debugging desyncs.
  const std::string& last_raw() const { return last_raw_; }

 private:
  class Process;

  void spawn();
  std::string exchange(std::string_view command);

  InterpreterOptions options_;
  std::unique_ptr<Process> process_;
  std::string last_raw_;
  bool started_ = false;
};

}  // namespace golovin
