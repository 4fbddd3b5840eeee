#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace golovin {

// One observation from the game.
struct Percept {
  // Full game response, whitespace-normalized. Case is preserved.
  std::string description;
  // Look-style description of the current location when the backend can
  // produce one (the simulator does). Empty otherwise.
  std::string view;
  int score = 0;
  int moves = 0;
  bool dead = false;
  bool won = false;
  // Set only when the percept answers an inventory query.
  std::optional<std::string> inventory_listing;

  // Text the agent treats as "the game state": the view when present,
  // the raw description otherwise.
  const std::string& state_text() const { return view.empty() ? description : view; }
  bool terminal() const { return dead || won; }

  friend bool operator==(const Percept&, const Percept&) = default;
};

enum class Backend { simulator, interpreter };

struct SessionHandle {
  Backend backend = Backend::simulator;
  int episode = 0;  // incremented by every restart
  int steps = 0;    // commands issued in the current life; reset on restart
  int inventory_queries = 0;  // metered apart from steps
};

// Uniform game-environment interface. One instance is one session and must
// stay on one thread of control.
class Environment {
 public:
  virtual ~Environment() = default;

  // Opening percept (score 0, moves 0).
  virtual Percept start() = 0;
  // Throws UsageError when the session is dead or won.
  virtual Percept step(std::string_view command) = 0;
  // Back to the opening state. Agent memory is the caller's concern.
  virtual Percept restart() = 0;
  // Item names in listing order. Does not count as a step.
  virtual std::vector<std::string> query_inventory() = 0;

  const SessionHandle& session() const { return session_; }
  const Percept& last() const { return last_; }

 protected:
  SessionHandle session_;
  Percept last_;
};

}  // namespace golovin
