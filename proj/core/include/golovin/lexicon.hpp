#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace golovin {

// Word -> dense vector, all of one dimension. Immutable after load.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dim_(dimension) {}

  // Plain-text word2vec format: header `V D`, then V lines `word v1 ... vD`.
  // A duplicate word replaces the earlier vector and records a warning.
  static EmbeddingTable load(const std::filesystem::path& path);
  static EmbeddingTable parse(const std::string& contents, const std::string& source = "<embeddings>");

  void insert(const std::string& word, std::span<const double> vec);

  std::size_t size() const { return words_.size(); }
  std::size_t dimension() const { return dim_; }
  bool contains(std::string_view word) const { return index_.count(std::string(word)) != 0; }

  // Out-of-vocabulary is a miss, not an error.
  std::optional<std::span<const double>> lookup(std::string_view word) const;
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend std::optional<double> cosine(std::string_view, std::string_view, const EmbeddingTable&);
  friend std::vector<std::pair<std::string, double>> nearest(std::string_view, std::size_t, const EmbeddingTable&);

  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> words_;
  std::vector<double> data_;   // row-major, size() * dim_
  std::vector<double> norms_;
  std::vector<std::string> warnings_;
};

// Cosine of the two word vectors; nullopt when either word is missing or
// has an all-zero vector.
std::optional<double> cosine(std::string_view a, std::string_view b, const EmbeddingTable& table);

// The n most similar vocabulary words other than `word`, similarity
// descending, ties broken lexicographically. Empty for unknown words.
std::vector<std::pair<std::string, double>> nearest(std::string_view word, std::size_t n, const EmbeddingTable& table);

// Corpus occurrence counts, `word<TAB>count` per line.
class FrequencyTable {
 public:
  static FrequencyTable load(const std::filesystem::path& path);
  static FrequencyTable parse(const std::string& contents, const std::string& source = "<frequencies>");

  void set(const std::string& word, long long count);
  std::optional<long long> count(std::string_view word) const;
  std::size_t size() const { return counts_.size(); }

 private:
  std::unordered_map<std::string, long long> counts_;
};

// 1 / count(word); words missing from the table count once.
double uniqueness(std::string_view word, const FrequencyTable& freq);
// Geometric mean of the per-word values; 1 for an empty phrase.
double uniqueness(std::span<const std::string> phrase, const FrequencyTable& freq);

// Word-in-context importance in (0, 1].
//
// The default provider squashes inverse corpus frequency: 1 / (1 + ln count),
// so unseen and single-occurrence words weigh 1. The static provider reads
// exported `word<TAB>weight` pairs and falls back to a fixed weight.
class ImportanceModel {
 public:
  struct InverseFrequency {
    FrequencyTable frequencies;
  };
  struct StaticWeights {
    std::unordered_map<std::string, double> weights;
    double fallback = 1.0;
  };

  ImportanceModel() : provider_(StaticWeights{}) {}
  static ImportanceModel inverse_frequency(FrequencyTable freq);
  static ImportanceModel static_weights(std::unordered_map<std::string, double> weights, double fallback = 1.0);
  static ImportanceModel load_static(const std::filesystem::path& path, double fallback = 1.0);

  std::string_view provider() const;
  double weight(std::string_view word, std::string_view description) const;

 private:
  explicit ImportanceModel(std::variant<InverseFrequency, StaticWeights> p) : provider_(std::move(p)) {}
  std::variant<InverseFrequency, StaticWeights> provider_;
};

double importance(std::string_view word, std::string_view description, const ImportanceModel& model);

// Words that never count as nouns: stopwords, verbs and prepositions of the
// command database, direction words.
struct NounFilter {
  std::set<std::string, std::less<>> stopwords;
  std::set<std::string, std::less<>> excluded;

  bool rejects(std::string_view word) const;
};

// Lowercased candidate nouns in order of first occurrence, without duplicates.
std::vector<std::string> extract_nouns(std::string_view description, const NounFilter& filter);

// One word per line, `#` comments, lowercased.
std::set<std::string, std::less<>> load_word_list(const std::filesystem::path& path);

// Everything the agent knows about words, loaded from one data directory:
//   embeddings.txt, frequencies.tsv, stopwords.txt, prepositions.txt,
//   and optionally importance.tsv (switches to the static provider).
struct Lexicon {
  EmbeddingTable embeddings;
  FrequencyTable frequencies;
  ImportanceModel importance;
  std::set<std::string, std::less<>> stopwords;
  std::set<std::string, std::less<>> prepositions;

  static Lexicon load_dir(const std::filesystem::path& dir);
};

}  // namespace golovin
