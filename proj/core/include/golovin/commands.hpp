#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "golovin/lexicon.hpp"

namespace golovin {

// The verbs whose patterns may carry the battle tag.
inline constexpr std::array<std::string_view, 5> kBattleVerbs{"attack", "kill", "fight", "shoot", "punch"};

bool is_battle_verb(std::string_view w);

// A verb phrase with replaceable noun slots. The first token is the verb;
// every later token that is not a function word is a slot.
struct CommandPattern {
  std::vector<std::string> tokens;
  std::vector<bool> slots;
  long long count = 1;
  bool battle = false;

  std::string text() const;
  const std::string& verb() const { return tokens.front(); }
};

// Words that never form noun slots in a pattern.
const std::set<std::string, std::less<>>& default_function_words();

// Pattern database with a noun -> pattern index. Immutable once built.
class CommandDB {
 public:
  // Lines: `pattern-text<TAB>count[<TAB>battle]`, `#` comments.
  static CommandDB load(const std::filesystem::path& path);
  static CommandDB parse(const std::string& contents, const std::string& source = "<commands>");

  // Duplicate texts sum their counts; the battle tag is sticky.
  void add(std::string_view text, long long count, bool battle);

  const std::vector<CommandPattern>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }
  const std::vector<std::size_t>& patterns_with(std::string_view noun) const;
  std::optional<std::size_t> find(std::string_view text) const;

  // Leading tokens of all patterns.
  std::set<std::string, std::less<>> verbs() const;
  // Canonical file form, pattern order preserved.
  std::string dump() const;

 private:
  std::vector<CommandPattern> patterns_;
  std::unordered_map<std::string, std::size_t> by_text_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

struct ScoringParams {
  std::size_t synonyms = 3;    // n-best synonyms per noun
  double overlap_base = 2.0;   // b, reward b^k for k description words in the command
  double penalty_base = 3.0;   // p, penalty p^m for m unsupported words
  // Per-factor exponents.
  double popularity_weight = 1.0;
  double similarity_weight = 1.0;
  double uniqueness_weight = 1.0;
  double importance_weight = 1.0;

  // Throws UsageError when b <= 1, p <= 1 or any weight is negative.
  void validate() const;
};

struct ScoreFactors {
  double popularity = 1;   // pattern count
  double similarity = 1;   // product of cosines of the synonym substitutions
  double uniqueness = 1;   // geometric mean over the command's noun words
  double importance = 1;   // product over nouns bound from the description
  int overlap = 0;         // k
  int unsupported = 0;     // m
  double bias = 1;         // battle-evidence multiplier, 1 when not applied

  friend bool operator==(const ScoreFactors&, const ScoreFactors&) = default;
};

double score_value(const ScoreFactors& f, const ScoringParams& params);

struct CandidateCommand {
  std::string text;
  double score = 0;
  ScoreFactors factors;
  std::size_t pattern = 0;
  bool battle = false;
  std::vector<std::string> bound;  // original words placed into slots

  friend bool operator==(const CandidateCommand&, const CandidateCommand&) = default;
};

double score(const CandidateCommand& c, const ScoringParams& params);

// Replaces every bound word by its original; other tokens verbatim.
std::string instantiate(const CommandPattern& pattern, const std::map<std::string, std::string>& binding);

// What the current situation offers to the scorer.
struct ScoringContext {
  std::string description;
  std::vector<std::string> description_nouns;
  std::vector<std::string> inventory_nouns;
  std::set<std::string, std::less<>> description_words;

  static ScoringContext make(std::string_view description, const std::vector<std::string>& inventory,
                             const NounFilter& filter);
};

// original noun -> (synonym, cosine) with cosine > 0, best first.
using SynonymMap = std::map<std::string, std::vector<std::pair<std::string, double>>>;

SynonymMap expand_synonyms(const std::vector<std::string>& nouns, std::size_t n, const EmbeddingTable& table);

struct CandidateFilter {
  bool battle_only = false;
  // Restrict to patterns reached through this noun or its synonyms.
  std::optional<std::string> through;
  // Multiplier for battle patterns bound to a description noun.
  double battle_bias = 1.0;
};

// Candidates for all patterns that mention a noun or one of its synonyms,
// instantiated back to the original words, scored, deduplicated by text
// (highest score kept), sorted by score descending then text.
std::vector<CandidateCommand> generate_candidates(const std::vector<std::string>& nouns, const SynonymMap& synonyms,
                                                  const CommandDB& db, const ScoringContext& ctx, const Lexicon& lex,
                                                  const ScoringParams& params, const CandidateFilter& filter = {});

// Roulette-wheel (fitness proportionate) selection with its own seeded stream.
class RouletteSelector {
 public:
  explicit RouletteSelector(std::uint64_t seed = 0) : rng_(seed) {}

  // Index drawn with probability weight / sum. Throws UsageError on an empty
  // list or a non-positive weight.
  std::size_t pick(std::span<const double> weights);
  const CandidateCommand& select(std::span<const CandidateCommand> candidates);

  // Uniform index in [0, n).
  std::size_t uniform(std::size_t n);
  // Uniform real in [0, 1), identical across standard libraries.
  double unit();

 private:
  std::mt19937_64 rng_;
};

}  // namespace golovin
