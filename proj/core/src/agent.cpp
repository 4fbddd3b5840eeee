#include "golovin/agent.hpp"

#include <algorithm>
#include <sstream>

#include "golovin/errors.hpp"
#include "golovin/moves.hpp"
#include "golovin/text.hpp"

namespace golovin {

// -------------------------------------------------------------------- config

void AgentConfig::validate() const {
  scoring.validate();
  if (gather_limit < 0 || item_command_limit < 0 || actions_before_move < 0 || battle_repeat < 0 ||
      battle_max_failures < 0 || death_suffix_length < 0 || finalize_margin < 0)
    throw UsageError("agent counts must be non-negative");
  if (!(battle_bias > 0.0)) throw UsageError("battle_bias must be positive");
  if (curiosity_move_weight < 0.0) throw UsageError("curiosity_move_weight must be non-negative");
}

void AgentConfig::apply(const KeyValueFile& f) {
  static const std::set<std::string> known{
      "synonyms",          "overlap_base",       "penalty_base",        "popularity_weight",
      "similarity_weight", "uniqueness_weight",  "importance_weight",   "gather_limit",
      "item_command_limit", "actions_before_move", "battle_repeat",      "battle_max_failures",
      "battle_bias",       "curiosity_move_weight", "death_suffix_length", "finalize_margin",
      "use_map",           "use_battle",         "acquisition_verbs",   "seed"};
  for (const auto& [k, v] : f.values())
    if (!known.count(k)) throw FormatError("config", 0, "unknown key '" + k + "'");

  auto int_field = [&](const char* key, int& out) {
    if (auto v = f.get_int(key)) out = static_cast<int>(*v);
  };
  auto dbl_field = [&](const char* key, double& out) {
    if (auto v = f.get_double(key)) out = *v;
  };
  if (auto v = f.get_int("synonyms")) scoring.synonyms = static_cast<std::size_t>(std::max(0LL, *v));
  dbl_field("overlap_base", scoring.overlap_base);
  dbl_field("penalty_base", scoring.penalty_base);
  dbl_field("popularity_weight", scoring.popularity_weight);
  dbl_field("similarity_weight", scoring.similarity_weight);
  dbl_field("uniqueness_weight", scoring.uniqueness_weight);
  dbl_field("importance_weight", scoring.importance_weight);
  int_field("gather_limit", gather_limit);
  int_field("item_command_limit", item_command_limit);
  int_field("actions_before_move", actions_before_move);
  int_field("battle_repeat", battle_repeat);
  int_field("battle_max_failures", battle_max_failures);
  dbl_field("battle_bias", battle_bias);
  dbl_field("curiosity_move_weight", curiosity_move_weight);
  int_field("death_suffix_length", death_suffix_length);
  int_field("finalize_margin", finalize_margin);
  if (auto v = f.get_bool("use_map")) use_map = *v;
  if (auto v = f.get_bool("use_battle")) use_battle = *v;
  if (auto v = f.get_list("acquisition_verbs")) acquisition_verbs = *v;
  if (auto v = f.get_int("seed")) seed = static_cast<std::uint64_t>(*v);
}

AgentConfig AgentConfig::from_file(const KeyValueFile& file) {
  AgentConfig c;
  c.apply(file);
  c.validate();
  return c;
}

std::string AgentConfig::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "synonyms = " << scoring.synonyms << "\n"
      << "overlap_base = " << scoring.overlap_base << "\n"
      << "penalty_base = " << scoring.penalty_base << "\n"
      << "popularity_weight = " << scoring.popularity_weight << "\n"
      << "similarity_weight = " << scoring.similarity_weight << "\n"
      << "uniqueness_weight = " << scoring.uniqueness_weight << "\n"
      << "importance_weight = " << scoring.importance_weight << "\n"
      << "gather_limit = " << gather_limit << "\n"
      << "item_command_limit = " << item_command_limit << "\n"
      << "actions_before_move = " << actions_before_move << "\n"
      << "battle_repeat = " << battle_repeat << "\n"
      << "battle_max_failures = " << battle_max_failures << "\n"
      << "battle_bias = " << battle_bias << "\n"
      << "curiosity_move_weight = " << curiosity_move_weight << "\n"
      << "death_suffix_length = " << death_suffix_length << "\n"
      << "finalize_margin = " << finalize_margin << "\n"
      << "use_map = " << (use_map ? "true" : "false") << "\n"
      << "use_battle = " << (use_battle ? "true" : "false") << "\n"
      << "acquisition_verbs = " << text::join(acquisition_verbs, ", ") << "\n"
      << "seed = " << seed << "\n";
  return out.str();
}

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::battle: return "battle";
    case Generator::gather: return "gather";
    case Generator::inventory: return "inventory";
    case Generator::general: return "general";
    case Generator::movement: return "movement";
    case Generator::fallback: return "fallback";
    case Generator::replay: return "replay";
    case Generator::restart: return "restart";
  }
  return "unknown";
}

std::vector<std::string> Trajectory::commands() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& [c, s] : steps) out.push_back(c);
  return out;
}

bool AgentState::blacklisted(const std::string& label, const std::string& command) const {
  auto it = blacklists.find(label);
  return it != blacklists.end() && it->second.count(command) != 0;
}

std::optional<std::string> move_of(std::string_view command) {
  auto toks = text::words(command);
  if (toks.size() == 1 && is_move_word(toks[0])) return toks[0];
  if (toks.size() == 2 && toks[0] == "go" && is_move_word(toks[1])) return toks[1];
  return std::nullopt;
}

// --------------------------------------------------------------------- agent

Agent::Agent(const Lexicon& lex, const CommandDB& db, AgentConfig config)
    : lex_(&lex), db_(&db), config_(std::move(config)), rng_(config_.seed) {
  config_.validate();
  filter_.stopwords = lex.stopwords;
  filter_.excluded = db.verbs();
  filter_.excluded.insert(lex.prepositions.begin(), lex.prepositions.end());
  const auto& fw = default_function_words();
  filter_.excluded.insert(fw.begin(), fw.end());
}

void Agent::begin(const Percept& opening) {
  state_ = AgentState();
  state_.map = MapGraph(opening.state_text());
  cache_.clear();
  rng_ = RouletteSelector(config_.seed);
}

void Agent::reset_life() {
  state_.battle.reset();
  state_.inventory.clear();
  state_.life = Trajectory{};
  state_.general_tried = 0;
  state_.gather_tried.clear();
  state_.pending_items.clear();
  state_.item_commands_done.clear();
  state_.planned_path.clear();
  cache_.clear();
}

void Agent::enter_area() {
  state_.general_tried = 0;
  state_.battle.reset();
  cache_.clear();
}

bool Agent::death_excluded(const std::string& command) const {
  const auto& steps = state_.life.steps;
  for (const auto& s : state_.death_suffixes) {
    const auto n = s.commands.size();
    if (n == 0 || s.commands.back() != command) continue;
    const auto prefix = n - 1;
    if (s.anchored ? steps.size() != prefix : steps.size() < prefix) continue;
    bool match = true;
    for (std::size_t i = 0; i < prefix && match; ++i) match = steps[steps.size() - prefix + i].first == s.commands[i];
    if (match) return true;
  }
  return false;
}

bool Agent::available(const std::string& label, const std::string& command) const {
  if (state_.blacklisted(label, command)) return false;
  return waive_death_ || !death_excluded(command);
}

bool Agent::wants_inventory(std::string_view command) const {
  auto toks = text::words(command);
  if (toks.empty()) return false;
  return std::find(config_.acquisition_verbs.begin(), config_.acquisition_verbs.end(), toks[0]) !=
         config_.acquisition_verbs.end();
}

const std::vector<CandidateCommand>& Agent::candidates(const Percept& p, const CandidateFilter& filter) {
  const std::string& st = p.state_text();
  if (st != cache_state_) {
    cache_.clear();
    cache_state_ = st;
  }
  CacheKey key{st, state_.inventory, filter.battle_only, filter.through.value_or(""), filter.battle_bias};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  auto ctx = ScoringContext::make(st, state_.inventory, filter_);
  std::vector<std::string> nouns = ctx.description_nouns;
  for (const auto& n : ctx.inventory_nouns)
    if (std::find(nouns.begin(), nouns.end(), n) == nouns.end()) nouns.push_back(n);
  auto synonyms = expand_synonyms(nouns, config_.scoring.synonyms, lex_->embeddings);
  auto cands = generate_candidates(nouns, synonyms, *db_, ctx, *lex_, config_.scoring, filter);
  return cache_.emplace(std::move(key), std::move(cands)).first->second;
}

std::optional<std::string> Agent::battle_generator(const Percept& p) {
  if (!config_.use_battle || !state_.battle) return std::nullopt;
  BattleMode& b = *state_.battle;
  const std::string label = label_of(p.state_text());
  if (b.repeats_left <= 0 || b.failures >= config_.battle_max_failures || !available(label, b.command)) {
    state_.battle.reset();
    return std::nullopt;
  }
  --b.repeats_left;
  return b.command;
}

std::optional<std::string> Agent::gather_generator(const Percept& p) {
  const std::string label = label_of(p.state_text());
  auto& tried = state_.gather_tried[label];
  if (static_cast<int>(tried.size()) >= config_.gather_limit) return std::nullopt;

  auto nouns = extract_nouns(p.state_text(), filter_);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < nouns.size(); ++i) {
    double w = lex_->importance.weight(nouns[i], p.state_text()) * uniqueness(nouns[i], lex_->frequencies);
    order.emplace_back(-w, i);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [neg_w, i] : order) {
    const auto& noun = nouns[i];
    if (tried.count(noun)) continue;
    if (std::find(state_.inventory.begin(), state_.inventory.end(), noun) != state_.inventory.end()) continue;
    std::string cmd = "take " + noun;
    if (!available(label, cmd)) continue;
    tried.insert(noun);
    return cmd;
  }
  return std::nullopt;
}

std::optional<std::string> Agent::inventory_generator(const Percept& p) {
  const std::string label = label_of(p.state_text());
  while (!state_.pending_items.empty()) {
    const std::string item = state_.pending_items.front();
    auto& done = state_.item_commands_done[item];
    if (static_cast<int>(done.size()) >= config_.item_command_limit) {
      state_.pending_items.pop_front();
      continue;
    }
    CandidateFilter f;
    f.through = item;
    const auto& cands = candidates(p, f);
    for (const auto& c : cands) {
      if (done.count(c.text) || !available(label, c.text) || wants_inventory(c.text)) continue;
      done.insert(c.text);
      return c.text;
    }
    state_.pending_items.pop_front();
  }
  return std::nullopt;
}

std::optional<std::string> Agent::general_generator(const Percept& p) {
  if (state_.general_tried >= config_.actions_before_move) return std::nullopt;
  const std::string label = label_of(p.state_text());
  CandidateFilter f;
  if (config_.use_battle) f.battle_bias = config_.battle_bias;
  const auto& all = candidates(p, f);
  std::vector<CandidateCommand> usable;
  for (const auto& c : all)
    if (!move_of(c.text) && available(label, c.text)) usable.push_back(c);
  if (usable.empty() && !waive_death_) {
    // Every candidate repeats a fatal suffix: allow them rather than stall.
    for (const auto& c : all)
      if (!move_of(c.text) && !state_.blacklisted(label, c.text)) usable.push_back(c);
  }
  if (usable.empty()) return std::nullopt;
  const CandidateCommand& chosen = rng_.select(usable);
  ++state_.general_tried;
  if (config_.use_battle && chosen.battle)
    state_.battle = BattleMode{chosen.text, config_.battle_repeat, 0};
  return chosen.text;
}

std::optional<std::string> Agent::try_movement(const Percept& p) {
  const std::string label = label_of(p.state_text());
  std::vector<std::string> options;
  for (auto m : kMoveWords)
    if (available(label, std::string(m))) options.emplace_back(m);

  if (!config_.use_map) {
    if (options.empty()) return std::nullopt;
    return options[rng_.uniform(options.size())];
  }

  MapGraph& map = state_.map;
  const MapNode& here = map.node(map.current());
  auto usable = [&](const std::string& m) { return std::find(options.begin(), options.end(), m) != options.end(); };

  std::vector<std::string> untested;
  for (const auto& m : options)
    if (here.untested_moves.count(m)) untested.push_back(m);
  if (!untested.empty()) {
    state_.planned_path.clear();
    return untested[rng_.uniform(untested.size())];
  }

  if (!state_.planned_path.empty()) {
    std::string next = state_.planned_path.front();
    if (map.move_by(here.id, next) && usable(next)) {
      state_.planned_path.erase(state_.planned_path.begin());
      return next;
    }
    state_.planned_path.clear();
  }

  if (auto dest = choose_destination(map, config_.curiosity_move_weight, map.current());
      dest && !dest->path.empty() && usable(dest->path.front())) {
    state_.planned_path.assign(dest->path.begin() + 1, dest->path.end());
    return dest->path.front();
  }

  std::vector<std::string> known;
  for (const auto& [m, target] : here.outgoing)
    if (usable(m)) known.push_back(m);
  if (!known.empty()) return known[rng_.uniform(known.size())];
  return std::nullopt;
}

std::string Agent::movement_generator(const Percept& p) {
  if (auto m = try_movement(p)) return *m;
  return "look";
}

Decision Agent::next_command(const Percept& p) {
  for (int pass = 0; pass < 2; ++pass) {
    waive_death_ = pass == 1;
    if (auto c = battle_generator(p)) return {*c, Generator::battle};
    if (auto c = gather_generator(p)) return {*c, Generator::gather};
    if (auto c = inventory_generator(p)) return {*c, Generator::inventory};
    if (auto c = general_generator(p)) return {*c, Generator::general};
    if (auto c = try_movement(p)) {
      remember_area_value(p);
      return {*c, Generator::movement};
    }
    if (state_.death_suffixes.empty()) break;
  }
  waive_death_ = false;
  // Nothing left to try here, not even looking around: start over.
  if (state_.blacklisted(label_of(p.state_text()), "look")) return {"restart", Generator::restart};
  return {"look", Generator::fallback};
}

void Agent::remember_area_value(const Percept& p) {
  if (!config_.use_map) return;
  const std::string label = label_of(p.state_text());
  double sum = 0;
  auto it = cache_.find(CacheKey{p.state_text(), state_.inventory, false, "", config_.use_battle ? config_.battle_bias : 1.0});
  if (it != cache_.end())
    for (const auto& c : it->second)
      if (!move_of(c.text) && !state_.blacklisted(label, c.text)) sum += c.score;
  state_.map.node(state_.map.current()).command_score = sum;
}

void Agent::observe(const Percept& prev, const std::string& command, const Percept& now,
                    const std::optional<std::vector<std::string>>& inventory) {
  waive_death_ = false;
  state_.life.steps.emplace_back(command, now.score);
  state_.life.final_score = now.score;
  state_.life.died = now.dead;

  const std::string& before = prev.state_text();
  const std::string& after = now.state_text();
  const std::string label = label_of(before);
  const bool changed = before != after;
  const auto move = move_of(command);
  const bool battle_turn = state_.battle && state_.battle->command == command;
  MapGraph& map = state_.map;
  const NodeId here = map.current();

  if (!changed) {
    if (battle_turn) {
      if (++state_.battle->failures >= config_.battle_max_failures) state_.blacklists[label].insert(command);
    } else {
      state_.blacklists[label].insert(command);
    }
  } else if (battle_turn) {
    state_.battle->failures = 0;
  }
  if (!move) ++map.node(here).tested_commands;

  if (inventory && *inventory != state_.inventory) {
    for (const auto& item : *inventory)
      if (std::find(state_.inventory.begin(), state_.inventory.end(), item) == state_.inventory.end())
        state_.pending_items.push_back(item);
    state_.inventory = *inventory;
    state_.blacklists.clear();
    cache_.clear();
  }

  if (move) map.mark_move_tested(here, *move);
  if (changed && !now.dead) {
    const std::string new_label = label_of(after);
    bool relocated = false;
    if (move) {
      map.record_transition(*move, after);
      relocated = true;
    } else if (new_label != label) {
      map.relocate(after);
      relocated = true;
    }
    if (relocated) {
      NodeId fresh = map.current();
      bool seen_label = false;
      for (NodeId id : map.node_ids())
        if (id != fresh && map.node(id).label == map.node(fresh).label) seen_label = true;
      if (seen_label) map = minimize(std::move(map));
      enter_area();
    }
  }

  if (now.score > state_.best.final_score) {
    state_.best = state_.life;
  }
}

Percept Agent::on_death(Environment& env) {
  const auto& steps = state_.life.steps;
  const auto len = static_cast<std::size_t>(std::max(0, config_.death_suffix_length));
  if (!steps.empty() && len > 0) {
    DeathSuffix s;
    s.anchored = steps.size() <= len;
    auto from = steps.size() > len ? steps.size() - len : 0;
    for (auto i = from; i < steps.size(); ++i) s.commands.push_back(steps[i].first);
    state_.death_suffixes.insert(std::move(s));
  }
  return restart(env);
}

Percept Agent::restart(Environment& env) {
  reset_life();
  ++state_.lives;
  Percept p = env.restart();
  state_.map.set_current(state_.map.start());
  return p;
}

std::pair<int, int> Agent::finalize(Environment& env, int remaining, std::ostream* transcript, int step_base) {
  reset_life();
  ++state_.lives;
  Percept p = env.restart();
  state_.map.set_current(state_.map.start());
  if (transcript) *transcript << step_base << "\trestart\trestart\t" << p.score << "\tnormal\n";
  int used = 0;
  for (const auto& cmd : state_.best.commands()) {
    if (used >= remaining || p.terminal()) break;
    p = env.step(cmd);
    ++used;
    state_.life.steps.emplace_back(cmd, p.score);
    state_.life.final_score = p.score;
    if (transcript) *transcript << step_base + used << "\treplay\t" << cmd << "\t" << p.score << "\tnormal\n";
  }
  return {p.score, used};
}

std::string Agent::mode_name() const { return state_.battle ? "battle" : "normal"; }

PlayResult Agent::play(Environment& env, int budget, std::ostream* transcript) {
  if (budget <= 0) throw UsageError("step budget must be positive");
  Percept p = env.start();
  begin(p);
  PlayResult result;
  int steps = 0;

  while (steps < budget) {
    const int remaining = budget - steps;
    const auto& best = state_.best;
    if (best.final_score > 0 && remaining <= static_cast<int>(best.size()) + config_.finalize_margin) {
      const auto& life = state_.life.steps;
      bool current_is_best = !p.dead && p.score == best.final_score && life.size() >= best.size() &&
                             std::equal(best.steps.begin(), best.steps.end(), life.begin(),
                                        [](const auto& a, const auto& b) { return a.first == b.first; });
      if (!current_is_best) {
        auto [score, used] = finalize(env, remaining, transcript, steps);
        steps += used;
        p = env.last();
        result.replayed = true;
      }
      break;
    }

    Decision d = next_command(p);
    if (d.generator == Generator::restart) {
      p = restart(env);
      ++steps;
      if (transcript) *transcript << steps << "\trestart\trestart\t" << p.score << "\tnormal\n";
      continue;
    }
    Percept np = env.step(d.command);
    ++steps;
    std::optional<std::vector<std::string>> inv;
    if (wants_inventory(d.command)) inv = env.query_inventory();
    const bool battle_turn = d.generator == Generator::battle || (state_.battle && state_.battle->command == d.command);
    observe(p, d.command, np, inv);
    if (transcript)
      *transcript << steps << "\t" << to_string(d.generator) << "\t" << d.command << "\t" << np.score << "\t"
                  << (battle_turn ? "battle" : "normal") << "\n";
    p = np;
    if (p.won) break;
    if (p.dead && steps < budget) {
      p = on_death(env);
      if (transcript) *transcript << steps << "\trestart\trestart\t" << p.score << "\tnormal\n";
    }
  }

  result.final_score = p.score;
  result.won = p.won;
  result.steps = steps;
  result.lives = state_.lives;
  return result;
}

}  // namespace golovin
