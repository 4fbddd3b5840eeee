#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "golovin/env.hpp"
#include "golovin/world.hpp"

namespace golovin {

// Deterministic scripted-world backend.
//
// Grammar: verb [noun [preposition noun]], case-insensitive. Supported verbs:
// moves (bare or after "go"), look, inventory, take/get/grab/pick [up],
// examine/x, and the attack verbs attack/kill/fight/shoot/punch/hit.
// Anything else gets a fixed refusal and changes nothing but the move counter.
class Simulator final : public Environment {
 public:
  static constexpr const char* kRefusal = "I don't understand that.";

  explicit Simulator(WorldSpec world);
  // Environment seed overrides the world file's SEED.
  Simulator(WorldSpec world, std::uint64_t seed);

  Percept start() override;
  Percept step(std::string_view command) override;
  Percept restart() override;
  std::vector<std::string> query_inventory() override;

  const WorldSpec& world() const { return world_; }
  const std::string& room_id() const { return room_; }
  // Look-style text of the current room.
  std::string view() const;

 private:
  struct EnemyState {
    int hp = 0;
    bool alive = true;
  };

  void reset();
  Percept make_percept(std::string description) const;
  std::string enter(const std::string& room_id);
  std::string do_take(const std::vector<std::string>& toks);
  std::string do_examine(const std::vector<std::string>& toks);
  std::string do_attack(const std::vector<std::string>& toks, int& attacked_enemy);
  std::string inventory_text() const;
  std::string noun_after(const std::vector<std::string>& toks, std::size_t from) const;
  int object_here(const std::string& name) const;
  int enemy_here(const std::string& name) const;
  void check_win();

  WorldSpec world_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::string room_;
  std::vector<std::string> object_location_;  // room id, or empty when carried
  std::vector<int> inventory_;                 // object indices, acquisition order
  std::vector<EnemyState> enemies_;
  std::set<std::string> visited_;
  int score_ = 0;
  int moves_ = 0;
  bool dead_ = false;
  bool won_ = false;
  bool started_ = false;
};

}  // namespace golovin
