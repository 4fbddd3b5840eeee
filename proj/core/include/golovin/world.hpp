#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace golovin {

struct RoomSpec {
  std::string id;
  std::string label;
  std::string body;
  std::vector<std::pair<std::string, std::string>> exits;  // move word -> room id, file order
  int entry_score = 0;  // awarded the first time the room is entered
  std::size_t line = 0;

  const std::string* exit_for(const std::string& move) const;
};

struct ObjectSpec {
  std::string name;
  std::string location;
  bool takeable = false;
  int take_score = 0;
};

struct EnemySpec {
  std::string name;
  std::string location;
  int hp = 1;
  int kill_score = 0;
  bool lethal = false;
  // Per-attack probability that a surviving lethal enemy kills the player.
  // Unset means the world-wide COUNTERATTACK value.
  std::optional<double> counter_chance;
  // Hit points come back to full on any turn that is not an attack on it.
  bool regen = false;
  // Per-attack probability that the blow misses and nothing changes.
  double dodge = 0.0;
};

struct WinCondition {
  std::optional<int> score;
  std::optional<std::string> room;
};

// A scripted mini-adventure, parsed from the world file format:
//
//   ROOM <id> [score=<n>]
//   LABEL <sentence>
//   DESC <text...>            (repeatable; lines are joined)
//   EXIT <move-word> <room-id>
//   OBJECT <name> [takeable] [score=<n>]
//   ENEMY <name> hp=<n> [score=<n>] [lethal[=<p>]] [regen] [dodge=<p>]
//   WIN score=<n> | room=<id>
//   LOSE room=<id>
//   COUNTERATTACK <p>         (default lethal counterattack probability, 0 if absent)
//   SEED <n>                  (environment random seed)
//   MAXSCORE <n>              (optional; checked against the reachability sweep)
//
// One directive per line, `#` starts a comment. The first room is the start.
struct WorldSpec {
  std::string name;
  std::vector<RoomSpec> rooms;
  std::vector<ObjectSpec> objects;
  std::vector<EnemySpec> enemies;
  std::vector<std::string> lose_rooms;
  WinCondition win;
  double counter_chance = 0.0;
  std::uint64_t seed = 0;
  int max_score = 0;

  const RoomSpec& start_room() const { return rooms.front(); }
  const RoomSpec* room(const std::string& id) const;
};

WorldSpec parse_world(const std::string& contents, const std::string& source = "<world>");
WorldSpec load_world(const std::filesystem::path& path);

// Sum of every score event reachable from the start room.
int reachable_max_score(const WorldSpec& world);

}  // namespace golovin
