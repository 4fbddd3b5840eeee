#include "golovin/simulator.hpp"

#include <algorithm>
#include <array>

#include "golovin/errors.hpp"
#include "golovin/moves.hpp"
#include "golovin/text.hpp"

namespace golovin {

namespace {

constexpr std::array<std::string_view, 4> kTakeVerbs{"take", "get", "grab", "pick"};
constexpr std::array<std::string_view, 6> kAttackVerbs{"attack", "kill", "fight", "shoot", "punch", "hit"};
constexpr std::array<std::string_view, 8> kFiller{"the", "a", "an", "up", "at", "to", "on", "my"};

template <std::size_t N>
bool among(const std::array<std::string_view, N>& set, const std::string& w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

std::string with_article(const std::string& noun) {
  bool vowel = !noun.empty() && std::string_view("aeiou").find(noun[0]) != std::string_view::npos;
  return (vowel ? "an " : "a ") + noun;
}

// The 64-bit draw is turned into [0,1) by hand so the stream is identical
// across standard library implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Simulator::Simulator(WorldSpec world) : Simulator(std::move(world), 0) { seed_ = world_.seed; }

Simulator::Simulator(WorldSpec world, std::uint64_t seed) : world_(std::move(world)), seed_(seed) {
  session_.backend = Backend::simulator;
}

void Simulator::reset() {
  rng_.seed(seed_);
  room_ = world_.start_room().id;
  object_location_.clear();
  for (const auto& o : world_.objects) object_location_.push_back(o.location);
  inventory_.clear();
  enemies_.clear();
  for (const auto& e : world_.enemies) enemies_.push_back({e.hp, true});
  visited_ = {room_};
  score_ = 0;
  moves_ = 0;
  dead_ = false;
  won_ = false;
  session_.steps = 0;
}

Percept Simulator::start() {
  reset();
  started_ = true;
  last_ = make_percept(view());
  return last_;
}

Percept Simulator::restart() {
  if (started_) ++session_.episode;
  return start();
}

std::string Simulator::view() const {
  const RoomSpec& r = *world_.room(room_);
  std::string out = r.label;
  if (!r.body.empty()) out += " " + r.body;
  for (std::size_t i = 0; i < world_.objects.size(); ++i)
    if (object_location_[i] == room_) out += " You can see " + with_article(world_.objects[i].name) + " here.";
  for (std::size_t i = 0; i < world_.enemies.size(); ++i) {
    const auto& e = world_.enemies[i];
    if (e.location != room_ || !enemies_[i].alive) continue;
    if (enemies_[i].hp == e.hp) {
      out += " There is " + with_article(e.name) + " here.";
    } else {
      out += " The " + e.name + " is wounded (" + std::to_string(enemies_[i].hp) + "/" + std::to_string(e.hp) + ").";
    }
  }
  return out;
}

Percept Simulator::make_percept(std::string description) const {
  Percept p;
  p.description = text::collapse_whitespace(description);
  p.view = view();
  p.score = score_;
  p.moves = moves_;
  p.dead = dead_;
  p.won = won_ && !dead_;
  return p;
}

std::string Simulator::noun_after(const std::vector<std::string>& toks, std::size_t from) const {
  for (std::size_t i = from; i < toks.size(); ++i)
    if (!among(kFiller, toks[i])) return toks[i];
  return {};
}

int Simulator::object_here(const std::string& name) const {
  for (std::size_t i = 0; i < world_.objects.size(); ++i)
    if (world_.objects[i].name == name && object_location_[i] == room_) return static_cast<int>(i);
  return -1;
}

int Simulator::enemy_here(const std::string& name) const {
  for (std::size_t i = 0; i < world_.enemies.size(); ++i)
    if (world_.enemies[i].name == name && world_.enemies[i].location == room_ && enemies_[i].alive)
      return static_cast<int>(i);
  return -1;
}

std::string Simulator::enter(const std::string& room_id) {
  room_ = room_id;
  if (visited_.insert(room_id).second) score_ += world_.room(room_id)->entry_score;
  if (std::find(world_.lose_rooms.begin(), world_.lose_rooms.end(), room_id) != world_.lose_rooms.end()) {
    dead_ = true;
    return view() + " *** You have died ***";
  }
  return view();
}

std::string Simulator::do_take(const std::vector<std::string>& toks) {
  std::string noun = noun_after(toks, 1);
  if (noun.empty()) return "What do you want to take?";
  int obj = object_here(noun);
  if (obj < 0) {
    for (int i : inventory_)
      if (world_.objects[i].name == noun) return "You already have that.";
    if (enemy_here(noun) >= 0) return "The " + noun + " would not like that.";
    return "You can't see any such thing.";
  }
  if (!world_.objects[obj].takeable) return "That's fixed in place.";
  object_location_[obj].clear();
  inventory_.push_back(obj);
  score_ += world_.objects[obj].take_score;
  return "Taken: " + noun + ".";
}

std::string Simulator::do_examine(const std::vector<std::string>& toks) {
  std::string noun = noun_after(toks, 1);
  if (noun.empty()) return view();
  bool carried = std::any_of(inventory_.begin(), inventory_.end(),
                             [&](int i) { return world_.objects[i].name == noun; });
  if (carried || object_here(noun) >= 0 || enemy_here(noun) >= 0)
    return "You see nothing special about the " + noun + ".";
  return "You can't see any such thing.";
}

std::string Simulator::do_attack(const std::vector<std::string>& toks, int& attacked_enemy) {
  std::string noun = noun_after(toks, 1);
  if (noun.empty()) return "What do you want to attack?";
  int idx = enemy_here(noun);
  if (idx < 0) {
    if (object_here(noun) >= 0) return "Violence isn't the answer to this one.";
    return "You can't see any such thing.";
  }
  attacked_enemy = idx;
  const EnemySpec& spec = world_.enemies[idx];
  EnemyState& st = enemies_[idx];
  if (spec.dodge > 0 && unit(rng_) < spec.dodge) return "The " + spec.name + " jumps nimbly aside.";
  st.hp -= 1;
  if (st.hp <= 0) {
    st.alive = false;
    score_ += spec.kill_score;
    return "The " + spec.name + " is defeated!";
  }
  std::string msg = "You hit the " + spec.name + ".";
  if (spec.lethal) {
    double chance = spec.counter_chance.value_or(world_.counter_chance);
    if (unit(rng_) < chance) {
      dead_ = true;
      msg += " The " + spec.name + " strikes back. *** You have died ***";
    }
  }
  return msg;
}

std::string Simulator::inventory_text() const {
  if (inventory_.empty()) return "You are empty-handed.";
  std::string out = "You are carrying:";
  for (int i : inventory_) out += "\n" + with_article(world_.objects[i].name);
  return out;
}

void Simulator::check_win() {
  if (dead_) return;
  if (world_.win.score && score_ >= *world_.win.score) won_ = true;
  if (world_.win.room && room_ == *world_.win.room) won_ = true;
}

Percept Simulator::step(std::string_view command) {
  if (!started_) throw UsageError("step before start");
  if (dead_ || won_) throw UsageError("step on a terminated session; restart first");
  ++moves_;
  ++session_.steps;

  auto toks = text::words(command);
  std::string msg;
  int attacked = -1;
  bool inventory = false;
  const RoomSpec& here = *world_.room(room_);

  auto try_move = [&](const std::string& move) {
    if (const std::string* target = here.exit_for(move)) return enter(*target);
    return std::string("You can't go that way.");
  };

  if (toks.empty()) {
    msg = kRefusal;
  } else if (toks.size() == 1 && here.exit_for(toks[0])) {
    msg = try_move(toks[0]);
  } else if (toks[0] == "go" && toks.size() == 2) {
    msg = try_move(toks[1]);
  } else if (toks.size() == 1 && (toks[0] == "look" || toks[0] == "l")) {
    msg = view();
  } else if (toks.size() == 1 && (toks[0] == "inventory" || toks[0] == "i")) {
    msg = inventory_text();
    inventory = true;
  } else if (among(kTakeVerbs, toks[0])) {
    msg = do_take(toks);
  } else if (toks[0] == "examine" || toks[0] == "x" || (toks[0] == "look" && toks.size() > 1)) {
    msg = do_examine(toks);
  } else if (among(kAttackVerbs, toks[0])) {
    msg = do_attack(toks, attacked);
  } else if (toks.size() == 1 && (is_move_word(toks[0]) || std::any_of(world_.rooms.begin(), world_.rooms.end(),
                                                                         [&](const RoomSpec& r) {
                                                                           return r.exit_for(toks[0]) != nullptr;
                                                                         }))) {
    msg = "You can't go that way.";
  } else {
    msg = kRefusal;
  }

  for (std::size_t i = 0; i < enemies_.size(); ++i) {
    if (static_cast<int>(i) == attacked || !enemies_[i].alive || !world_.enemies[i].regen) continue;
    enemies_[i].hp = world_.enemies[i].hp;
  }
  check_win();

  last_ = make_percept(msg);
  if (inventory) last_.inventory_listing = msg;
  return last_;
}

std::vector<std::string> Simulator::query_inventory() {
  ++session_.inventory_queries;
  std::vector<std::string> out;
  for (int i : inventory_) out.push_back(world_.objects[i].name);
  return out;
}

}  // namespace golovin
