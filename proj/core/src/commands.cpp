#include "golovin/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "golovin/errors.hpp"
#include "golovin/text.hpp"

namespace golovin {

bool is_battle_verb(std::string_view w) {
  return std::find(kBattleVerbs.begin(), kBattleVerbs.end(), w) != kBattleVerbs.end();
}

std::string CommandPattern::text() const { return text::join(tokens, " "); }

const std::set<std::string, std::less<>>& default_function_words() {
  static const std::set<std::string, std::less<>> words{
      "a",    "about", "across", "after", "against", "all",  "along", "an",    "and",   "around", "at",
      "away", "back",  "behind", "below", "beneath", "by",   "down",  "for",   "from",  "in",     "inside",
      "into", "it",    "of",     "off",   "on",      "onto", "out",   "over",  "some",  "the",    "them",
      "then", "through", "to",   "toward", "towards", "under", "up",  "upon",  "using", "with",   "within"};
  return words;
}

// ------------------------------------------------------------------ database

void CommandDB::add(std::string_view line_text, long long count, bool battle) {
  auto toks = text::split_ws(text::to_lower(line_text));
  if (toks.empty()) throw UsageError("empty command pattern");
  if (count < 1) throw UsageError("pattern count must be positive");
  std::string key = text::join(toks, " ");
  if (auto it = by_text_.find(key); it != by_text_.end()) {
    auto& p = patterns_[it->second];
    p.count += count;
    p.battle = p.battle || battle;
    return;
  }
  CommandPattern p;
  p.tokens = std::move(toks);
  p.slots.assign(p.tokens.size(), false);
  const auto& fw = default_function_words();
  for (std::size_t i = 1; i < p.tokens.size(); ++i) p.slots[i] = fw.count(p.tokens[i]) == 0;
  p.count = count;
  p.battle = battle;

  std::size_t id = patterns_.size();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < p.tokens.size(); ++i)
    if (p.slots[i] && seen.insert(p.tokens[i]).second) index_[p.tokens[i]].push_back(id);
  by_text_.emplace(std::move(key), id);
  patterns_.push_back(std::move(p));
}

CommandDB CommandDB::parse(const std::string& contents, const std::string& source) {
  CommandDB db;
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) throw FormatError(source, lineno, "expected pattern<TAB>count[<TAB>battle]");
    auto pattern = text::trim(fields[0]);
    if (pattern.empty()) throw FormatError(source, lineno, "empty pattern");
    auto num = text::trim(fields[1]);
    long long count = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
    if (ec != std::errc() || ptr != num.data() + num.size()) throw FormatError(source, lineno, "count is not an integer: '" + num + "'");
    if (count < 1) throw FormatError(source, lineno, "count must be at least 1");
    bool battle = false;
    if (fields.size() == 3) {
      auto tag = text::trim(fields[2]);
      if (tag == "battle") {
        battle = true;
      } else if (!tag.empty()) {
        throw FormatError(source, lineno, "unknown tag '" + tag + "'");
      }
    }
    if (battle) {
      auto toks = text::split_ws(text::to_lower(pattern));
      if (std::none_of(toks.begin(), toks.end(), [](const std::string& t) { return is_battle_verb(t); }))
        throw FormatError(source, lineno, "battle pattern without a battle verb");
    }
    db.add(pattern, count, battle);
  }
  return db;
}

CommandDB CommandDB::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), 0, "cannot open command database");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const std::vector<std::size_t>& CommandDB::patterns_with(std::string_view noun) const {
  static const std::vector<std::size_t> none;
  auto it = index_.find(std::string(noun));
  return it == index_.end() ? none : it->second;
}

std::optional<std::size_t> CommandDB::find(std::string_view t) const {
  auto it = by_text_.find(text::join(text::split_ws(text::to_lower(t)), " "));
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string, std::less<>> CommandDB::verbs() const {
  std::set<std::string, std::less<>> out;
  for (const auto& p : patterns_) out.insert(p.verb());
  return out;
}

std::string CommandDB::dump() const {
  std::string out;
  for (const auto& p : patterns_) {
    out += p.text() + "\t" + std::to_string(p.count);
    if (p.battle) out += "\tbattle";
    out += "\n";
  }
  return out;
}

// ------------------------------------------------------------------- scoring

void ScoringParams::validate() const {
  if (!(overlap_base > 1.0)) throw UsageError("overlap base b must exceed 1");
  if (!(penalty_base > 1.0)) throw UsageError("penalty base p must exceed 1");
  if (!(popularity_weight > 0.0)) throw UsageError("popularity weight must be positive");
  if (similarity_weight < 0 || uniqueness_weight < 0 || importance_weight < 0)
    throw UsageError("factor weights must be non-negative");
}

double score_value(const ScoreFactors& f, const ScoringParams& params) {
  return std::pow(f.popularity, params.popularity_weight) * std::pow(f.similarity, params.similarity_weight) *
         std::pow(f.uniqueness, params.uniqueness_weight) * std::pow(f.importance, params.importance_weight) *
         std::pow(params.overlap_base, f.overlap) / std::pow(params.penalty_base, f.unsupported) * f.bias;
}

double score(const CandidateCommand& c, const ScoringParams& params) { return score_value(c.factors, params); }

std::string instantiate(const CommandPattern& pattern, const std::map<std::string, std::string>& binding) {
  std::vector<std::string> out;
  out.reserve(pattern.tokens.size());
  for (const auto& t : pattern.tokens) {
    auto it = binding.find(t);
    out.push_back(it == binding.end() ? t : it->second);
  }
  return text::join(out, " ");
}

ScoringContext ScoringContext::make(std::string_view description, const std::vector<std::string>& inventory,
                                    const NounFilter& filter) {
  ScoringContext ctx;
  ctx.description = std::string(description);
  ctx.description_nouns = extract_nouns(description, filter);
  for (const auto& item : inventory)
    for (auto& n : extract_nouns(item, filter))
      if (std::find(ctx.inventory_nouns.begin(), ctx.inventory_nouns.end(), n) == ctx.inventory_nouns.end())
        ctx.inventory_nouns.push_back(std::move(n));
  for (auto& w : text::words(description)) ctx.description_words.insert(std::move(w));
  return ctx;
}

SynonymMap expand_synonyms(const std::vector<std::string>& nouns, std::size_t n, const EmbeddingTable& table) {
  SynonymMap out;
  for (const auto& noun : nouns) {
    auto& list = out[noun];
    for (auto& [w, sim] : nearest(noun, n, table))
      if (sim > 0.0) list.emplace_back(std::move(w), sim);
  }
  return out;
}

namespace {

struct SlotOption {
  std::string word;       // what ends up in the command
  double similarity = 1;  // 1 when the slot word is kept
  bool bound = false;
};

constexpr std::size_t kMaxBindingsPerPattern = 64;

}  // namespace

std::vector<CandidateCommand> generate_candidates(const std::vector<std::string>& nouns, const SynonymMap& synonyms,
                                                  const CommandDB& db, const ScoringContext& ctx, const Lexicon& lex,
                                                  const ScoringParams& params, const CandidateFilter& filter) {
  std::set<std::string, std::less<>> originals(nouns.begin(), nouns.end());
  // synonym word -> (original, cosine)
  std::map<std::string, std::vector<std::pair<std::string, double>>> reverse;
  for (const auto& noun : nouns) {
    auto it = synonyms.find(noun);
    if (it == synonyms.end()) continue;
    for (const auto& [syn, sim] : it->second)
      if (!originals.count(syn)) reverse[syn].emplace_back(noun, sim);
  }

  std::set<std::size_t> pattern_ids;
  auto collect = [&](const std::string& key) {
    for (auto id : db.patterns_with(key)) pattern_ids.insert(id);
  };
  if (filter.through) {
    collect(*filter.through);
    if (auto it = synonyms.find(*filter.through); it != synonyms.end())
      for (const auto& [syn, sim] : it->second) collect(syn);
  } else {
    for (const auto& noun : nouns) collect(noun);
    for (const auto& [syn, origin] : reverse) collect(syn);
  }

  const auto& fw = default_function_words();
  std::set<std::string, std::less<>> desc_nouns(ctx.description_nouns.begin(), ctx.description_nouns.end());
  std::map<std::string, CandidateCommand> best;

  for (auto id : pattern_ids) {
    const CommandPattern& pat = db.patterns()[id];
    if (filter.battle_only && !pat.battle) continue;

    std::vector<std::vector<SlotOption>> options(pat.tokens.size());
    for (std::size_t i = 0; i < pat.tokens.size(); ++i) {
      const auto& tok = pat.tokens[i];
      if (!pat.slots[i]) {
        options[i].push_back({tok, 1.0, false});
      } else if (originals.count(tok)) {
        options[i].push_back({tok, 1.0, true});
      } else if (auto r = reverse.find(tok); r != reverse.end()) {
        for (const auto& [orig, sim] : r->second) options[i].push_back({orig, sim, true});
      } else {
        options[i].push_back({tok, 1.0, false});
      }
    }

    std::vector<std::size_t> pick(pat.tokens.size(), 0);
    for (std::size_t produced = 0; produced < kMaxBindingsPerPattern; ++produced) {
      std::vector<std::string> words;
      std::vector<std::string> bound;
      std::set<std::string> noun_words, unsupported;
      ScoreFactors f;
      f.popularity = static_cast<double>(pat.count);
      for (std::size_t i = 0; i < pat.tokens.size(); ++i) {
        const SlotOption& o = options[i][pick[i]];
        words.push_back(o.word);
        if (!pat.slots[i]) continue;
        noun_words.insert(o.word);
        if (o.bound) {
          if (o.word != pat.tokens[i]) f.similarity *= o.similarity;
          if (std::find(bound.begin(), bound.end(), o.word) == bound.end()) bound.push_back(o.word);
        } else {
          unsupported.insert(o.word);
        }
      }

      if (!bound.empty() &&
          (!filter.through || std::find(bound.begin(), bound.end(), *filter.through) != bound.end())) {
        std::vector<std::string> nw(noun_words.begin(), noun_words.end());
        f.uniqueness = uniqueness(nw, lex.frequencies);
        bool from_description = false;
        for (const auto& b : bound) {
          if (desc_nouns.count(b)) {
            f.importance *= lex.importance.weight(b, ctx.description);
            from_description = true;
          }
        }
        std::set<std::string> distinct(words.begin(), words.end());
        for (const auto& w : distinct)
          if (!fw.count(w) && ctx.description_words.count(w)) ++f.overlap;
        f.unsupported = static_cast<int>(unsupported.size());
        if (pat.battle && from_description) f.bias = filter.battle_bias;

        CandidateCommand c;
        c.text = text::join(words, " ");
        c.factors = f;
        c.score = score_value(f, params);
        c.pattern = id;
        c.battle = pat.battle;
        c.bound = std::move(bound);
        auto it = best.find(c.text);
        if (it == best.end() || c.score > it->second.score) best[c.text] = std::move(c);
      }

      // Next combination, odometer style.
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }

  std::vector<CandidateCommand> out;
  out.reserve(best.size());
  for (auto& [t, c] : best) out.push_back(std::move(c));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
  return out;
}

// ----------------------------------------------------------------- selection

double RouletteSelector::unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

std::size_t RouletteSelector::uniform(std::size_t n) {
  if (n == 0) throw UsageError("uniform choice from an empty range");
  auto i = static_cast<std::size_t>(unit() * static_cast<double>(n));
  return std::min(i, n - 1);
}

std::size_t RouletteSelector::pick(std::span<const double> weights) {
  if (weights.empty()) throw UsageError("roulette selection from an empty list");
  double total = 0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("roulette weights must be positive and finite");
    total += w;
  }
  double r = unit() * total;
  double acc = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

const CandidateCommand& RouletteSelector::select(std::span<const CandidateCommand> candidates) {
  std::vector<double> w;
  w.reserve(candidates.size());
  for (const auto& c : candidates) w.push_back(c.score);
  return candidates[pick(w)];
}

}  // namespace golovin
