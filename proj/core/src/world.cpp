#include "golovin/world.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "golovin/errors.hpp"
#include "golovin/text.hpp"

namespace golovin {

const std::string* RoomSpec::exit_for(const std::string& move) const {
  for (const auto& [word, target] : exits)
    if (word == move) return &target;
  return nullptr;
}

const RoomSpec* WorldSpec::room(const std::string& id) const {
  for (const auto& r : rooms)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

struct Parser {
  const std::string& source;
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(source, line, what); }

  int to_int(const std::string& s) const {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("not an integer: '" + s + "'");
    return v;
  }

  double to_prob(const std::string& s) const {
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(s, &used);
      if (used != s.size()) fail("not a number: '" + s + "'");
    } catch (const std::invalid_argument&) {
      fail("not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range: '" + s + "'");
    }
    if (v < 0.0 || v > 1.0) fail("probability outside [0, 1]: '" + s + "'");
    return v;
  }

  // Splits `key=value`; returns false when there is no '='.
  static bool key_value(const std::string& tok, std::string& key, std::string& value) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) return false;
    key = tok.substr(0, eq);
    value = tok.substr(eq + 1);
    return true;
  }
};

std::string rest_after_keyword(const std::string& line) {
  std::string t = text::trim(line);
  auto sp = t.find_first_of(" \t");
  if (sp == std::string::npos) return {};
  return text::trim(t.substr(sp + 1));
}

}  // namespace

WorldSpec parse_world(const std::string& contents, const std::string& source) {
  WorldSpec w;
  w.name = source;
  Parser p{source};
  std::istringstream in(contents);
  std::string raw;
  std::optional<int> declared_max;
  std::size_t win_line = 0;
  struct PendingExit {
    std::string room, target;
    std::size_t line;
  };
  std::vector<PendingExit> pending_exits;
  std::vector<std::pair<std::string, std::size_t>> lose_lines;

  std::optional<std::size_t> room_index;
  auto current_room = [&]() -> RoomSpec& {
    if (!room_index) p.fail("directive outside of a ROOM section");
    return w.rooms[*room_index];
  };

  while (std::getline(in, raw)) {
    ++p.line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = text::split_ws(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "ROOM") {
      if (toks.size() < 2) p.fail("ROOM needs an id");
      if (w.room(toks[1])) p.fail("duplicate room id '" + toks[1] + "'");
      RoomSpec r;
      r.id = toks[1];
      r.line = p.line;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string k, v;
        if (!Parser::key_value(toks[i], k, v) || k != "score") p.fail("unexpected ROOM attribute '" + toks[i] + "'");
        r.entry_score = p.to_int(v);
      }
      w.rooms.push_back(std::move(r));
      room_index = w.rooms.size() - 1;
    } else if (kw == "LABEL") {
      auto& r = current_room();
      r.label = text::collapse_whitespace(rest_after_keyword(raw));
      if (r.label.empty()) p.fail("empty LABEL");
    } else if (kw == "DESC") {
      auto& r = current_room();
      auto body = text::collapse_whitespace(rest_after_keyword(raw));
      if (!r.body.empty() && !body.empty()) r.body += ' ';
      r.body += body;
    } else if (kw == "EXIT") {
      auto& r = current_room();
      if (toks.size() != 3) p.fail("EXIT needs <move-word> <room-id>");
      std::string move = text::to_lower(toks[1]);
      if (r.exit_for(move)) p.fail("duplicate exit '" + move + "' in room '" + r.id + "'");
      r.exits.emplace_back(move, toks[2]);
      pending_exits.push_back({r.id, toks[2], p.line});
    } else if (kw == "OBJECT") {
      auto& r = current_room();
      if (toks.size() < 2) p.fail("OBJECT needs a name");
      ObjectSpec o;
      o.name = text::to_lower(toks[1]);
      o.location = r.id;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string k, v;
        if (toks[i] == "takeable") {
          o.takeable = true;
        } else if (Parser::key_value(toks[i], k, v) && k == "score") {
          o.take_score = p.to_int(v);
        } else {
          p.fail("unexpected OBJECT attribute '" + toks[i] + "'");
        }
      }
      w.objects.push_back(std::move(o));
    } else if (kw == "ENEMY") {
      auto& r = current_room();
      if (toks.size() < 2) p.fail("ENEMY needs a name");
      EnemySpec e;
      e.name = text::to_lower(toks[1]);
      e.location = r.id;
      bool have_hp = false;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string k, v;
        if (toks[i] == "lethal") {
          e.lethal = true;
        } else if (toks[i] == "regen") {
          e.regen = true;
        } else if (Parser::key_value(toks[i], k, v)) {
          if (k == "hp") {
            e.hp = p.to_int(v);
            have_hp = true;
          } else if (k == "score") {
            e.kill_score = p.to_int(v);
          } else if (k == "lethal") {
            e.lethal = true;
            e.counter_chance = p.to_prob(v);
          } else if (k == "dodge") {
            e.dodge = p.to_prob(v);
          } else {
            p.fail("unexpected ENEMY attribute '" + toks[i] + "'");
          }
        } else {
          p.fail("unexpected ENEMY attribute '" + toks[i] + "'");
        }
      }
      if (!have_hp) p.fail("ENEMY needs hp=<n>");
      if (e.hp < 1) p.fail("ENEMY hp must be positive");
      w.enemies.push_back(std::move(e));
    } else if (kw == "WIN") {
      if (toks.size() != 2) p.fail("WIN needs score=<n> or room=<id>");
      std::string k, v;
      if (!Parser::key_value(toks[1], k, v)) p.fail("WIN needs score=<n> or room=<id>");
      if (k == "score") {
        w.win.score = p.to_int(v);
      } else if (k == "room") {
        w.win.room = v;
      } else {
        p.fail("WIN needs score=<n> or room=<id>");
      }
      win_line = p.line;
    } else if (kw == "LOSE") {
      std::string k, v;
      if (toks.size() != 2 || !Parser::key_value(toks[1], k, v) || k != "room") p.fail("LOSE needs room=<id>");
      w.lose_rooms.push_back(v);
      lose_lines.emplace_back(v, p.line);
    } else if (kw == "COUNTERATTACK") {
      if (toks.size() != 2) p.fail("COUNTERATTACK needs a probability");
      w.counter_chance = p.to_prob(toks[1]);
    } else if (kw == "SEED") {
      if (toks.size() != 2) p.fail("SEED needs an integer");
      w.seed = static_cast<std::uint64_t>(p.to_int(toks[1]));
    } else if (kw == "MAXSCORE") {
      if (toks.size() != 2) p.fail("MAXSCORE needs an integer");
      declared_max = p.to_int(toks[1]);
    } else {
      p.fail("unknown directive '" + kw + "'");
    }
  }

  if (w.rooms.empty()) throw FormatError(source, p.line, "world has no rooms");
  for (const auto& r : w.rooms)
    if (r.label.empty()) throw FormatError(source, r.line, "room '" + r.id + "' has no LABEL");
  for (const auto& e : pending_exits)
    if (!w.room(e.target)) throw FormatError(source, e.line, "exit from '" + e.room + "' targets unknown room '" + e.target + "'");
  for (const auto& [id, line] : lose_lines)
    if (!w.room(id)) throw FormatError(source, line, "LOSE names unknown room '" + id + "'");
  if (w.win.room && !w.room(*w.win.room))
    throw FormatError(source, win_line, "WIN names unknown room '" + *w.win.room + "'");

  w.max_score = reachable_max_score(w);
  if (declared_max && *declared_max != w.max_score)
    throw FormatError(source, 0, "MAXSCORE " + std::to_string(*declared_max) +
                                     " disagrees with reachable score " + std::to_string(w.max_score));
  if (w.win.score && *w.win.score > w.max_score)
    throw FormatError(source, win_line, "WIN score exceeds the reachable maximum " + std::to_string(w.max_score));
  return w;
}

WorldSpec load_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), 0, "cannot open world file");
  std::stringstream ss;
  ss << in.rdbuf();
  auto w = parse_world(ss.str(), path.string());
  w.name = path.stem().string();
  return w;
}

int reachable_max_score(const WorldSpec& world) {
  std::set<std::string> seen{world.start_room().id};
  std::deque<std::string> queue{world.start_room().id};
  std::set<std::string> lose(world.lose_rooms.begin(), world.lose_rooms.end());
  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    if (lose.count(id)) continue;  // the game ends on entry
    for (const auto& [move, target] : world.room(id)->exits)
      if (seen.insert(target).second) queue.push_back(target);
  }
  int total = 0;
  for (const auto& r : world.rooms)
    if (seen.count(r.id) && r.id != world.start_room().id && !lose.count(r.id)) total += std::max(0, r.entry_score);
  for (const auto& o : world.objects)
    if (o.takeable && seen.count(o.location) && !lose.count(o.location)) total += std::max(0, o.take_score);
  for (const auto& e : world.enemies)
    if (seen.count(e.location) && !lose.count(e.location)) total += std::max(0, e.kill_score);
  return total;
}

}  // namespace golovin
