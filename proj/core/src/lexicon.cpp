#include "golovin/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "golovin/errors.hpp"
#include "golovin/moves.hpp"
#include "golovin/text.hpp"

namespace golovin {

namespace {

std::string slurp(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), 0, std::string("cannot open ") + what);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

// ---------------------------------------------------------------- embeddings

void EmbeddingTable::insert(const std::string& word, std::span<const double> vec) {
  if (dim_ == 0 && words_.empty()) dim_ = vec.size();
  if (vec.size() != dim_) throw UsageError("embedding for '" + word + "' has the wrong dimension");
  double norm = 0;
  for (double v : vec) norm += v * v;
  norm = std::sqrt(norm);
  if (auto it = index_.find(word); it != index_.end()) {
    std::copy(vec.begin(), vec.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    norms_[it->second] = norm;
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(word);
  data_.insert(data_.end(), vec.begin(), vec.end());
  norms_.push_back(norm);
}

EmbeddingTable EmbeddingTable::parse(const std::string& contents, const std::string& source) {
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  std::size_t expected_rows = 0;
  EmbeddingTable table;
  bool header = false;
  std::size_t rows = 0;
  std::vector<double> vec;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = text::split_ws(line);
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2) throw FormatError(source, lineno, "expected header 'V D'");
      long long v = 0, d = 0;
      auto r1 = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), v);
      auto r2 = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), d);
      if (r1.ec != std::errc() || r2.ec != std::errc() || v < 0 || d <= 0)
        throw FormatError(source, lineno, "bad header, expected 'V D'");
      expected_rows = static_cast<std::size_t>(v);
      table.dim_ = static_cast<std::size_t>(d);
      header = true;
      continue;
    }
    if (toks.size() != table.dim_ + 1)
      throw FormatError(source, lineno,
                        "expected " + std::to_string(table.dim_) + " components, found " + std::to_string(toks.size() - 1));
    vec.assign(table.dim_, 0.0);
    for (std::size_t i = 0; i < table.dim_; ++i)
      if (!parse_double(toks[i + 1], vec[i])) throw FormatError(source, lineno, "bad number '" + toks[i + 1] + "'");
    if (table.contains(toks[0]))
      table.warnings_.push_back(source + ":" + std::to_string(lineno) + ": duplicate word '" + toks[0] + "', last wins");
    table.insert(toks[0], vec);
    ++rows;
  }
  if (!header) throw FormatError(source, lineno, "missing header 'V D'");
  if (rows != expected_rows)
    throw FormatError(source, lineno,
                      "header declares " + std::to_string(expected_rows) + " rows, found " + std::to_string(rows));
  return table;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  return parse(slurp(path, "embedding file"), path.string());
}

std::optional<std::span<const double>> EmbeddingTable::lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

std::optional<double> cosine(std::string_view a, std::string_view b, const EmbeddingTable& table) {
  auto ia = table.index_.find(std::string(a));
  auto ib = table.index_.find(std::string(b));
  if (ia == table.index_.end() || ib == table.index_.end()) return std::nullopt;
  double na = table.norms_[ia->second], nb = table.norms_[ib->second];
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  const double* x = table.data_.data() + ia->second * table.dim_;
  const double* y = table.data_.data() + ib->second * table.dim_;
  double dot = 0;
  for (std::size_t i = 0; i < table.dim_; ++i) dot += x[i] * y[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<std::pair<std::string, double>> nearest(std::string_view word, std::size_t n, const EmbeddingTable& table) {
  std::vector<std::pair<std::string, double>> out;
  if (n == 0) return out;
  auto it = table.index_.find(std::string(word));
  if (it == table.index_.end() || table.norms_[it->second] == 0.0) return out;
  const std::size_t self = it->second;
  const double* x = table.data_.data() + self * table.dim_;
  const double nx = table.norms_[self];
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(table.size());
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (j == self || table.norms_[j] == 0.0) continue;
    const double* y = table.data_.data() + j * table.dim_;
    double dot = 0;
    for (std::size_t i = 0; i < table.dim_; ++i) dot += x[i] * y[i];
    scored.emplace_back(std::clamp(dot / (nx * table.norms_[j]), -1.0, 1.0), j);
  }
  auto better = [&](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first > r.first;
    return table.words_[l.second] < table.words_[r.second];
  };
  std::size_t k = std::min(n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), better);
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(table.words_[scored[i].second], scored[i].first);
  return out;
}

// --------------------------------------------------------------- frequencies

FrequencyTable FrequencyTable::parse(const std::string& contents, const std::string& source) {
  FrequencyTable t;
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw FormatError(source, lineno, "expected word<TAB>count");
    auto word = text::to_lower(text::trim(fields[0]));
    auto num = text::trim(fields[1]);
    long long count = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
    if (ec != std::errc() || ptr != num.data() + num.size() || count < 1)
      throw FormatError(source, lineno, "count must be a positive integer");
    t.counts_[word] = count;
  }
  return t;
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
  return parse(slurp(path, "frequency file"), path.string());
}

void FrequencyTable::set(const std::string& word, long long count) {
  if (count < 1) throw UsageError("frequency counts must be positive");
  counts_[word] = count;
}

std::optional<long long> FrequencyTable::count(std::string_view word) const {
  auto it = counts_.find(std::string(word));
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

double uniqueness(std::string_view word, const FrequencyTable& freq) {
  return 1.0 / static_cast<double>(freq.count(word).value_or(1));
}

double uniqueness(std::span<const std::string> phrase, const FrequencyTable& freq) {
  if (phrase.empty()) return 1.0;
  double log_sum = 0;
  for (const auto& w : phrase) log_sum += std::log(uniqueness(w, freq));
  return std::exp(log_sum / static_cast<double>(phrase.size()));
}

// ---------------------------------------------------------------- importance

ImportanceModel ImportanceModel::inverse_frequency(FrequencyTable freq) {
  return ImportanceModel(InverseFrequency{std::move(freq)});
}

ImportanceModel ImportanceModel::static_weights(std::unordered_map<std::string, double> weights, double fallback) {
  if (!(fallback > 0.0 && fallback <= 1.0)) throw UsageError("fallback weight must lie in (0, 1]");
  for (const auto& [w, v] : weights)
    if (!(v > 0.0 && v <= 1.0)) throw UsageError("importance weight for '" + w + "' outside (0, 1]");
  return ImportanceModel(StaticWeights{std::move(weights), fallback});
}

ImportanceModel ImportanceModel::load_static(const std::filesystem::path& path, double fallback) {
  auto contents = slurp(path, "importance file");
  std::unordered_map<std::string, double> weights;
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, '\t');
    double v = 0;
    if (fields.size() != 2 || !parse_double(text::trim(fields[1]), v))
      throw FormatError(path.string(), lineno, "expected word<TAB>weight");
    if (!(v > 0.0 && v <= 1.0)) throw FormatError(path.string(), lineno, "weight outside (0, 1]");
    weights[text::to_lower(text::trim(fields[0]))] = v;
  }
  return static_weights(std::move(weights), fallback);
}

std::string_view ImportanceModel::provider() const {
  return std::holds_alternative<InverseFrequency>(provider_) ? "inverse-frequency" : "static";
}

double ImportanceModel::weight(std::string_view word, std::string_view) const {
  if (const auto* inv = std::get_if<InverseFrequency>(&provider_)) {
    auto c = inv->frequencies.count(word);
    if (!c) return 1.0;
    return 1.0 / (1.0 + std::log(static_cast<double>(*c)));
  }
  const auto& st = std::get<StaticWeights>(provider_);
  auto it = st.weights.find(std::string(word));
  return it == st.weights.end() ? st.fallback : it->second;
}

double importance(std::string_view word, std::string_view description, const ImportanceModel& model) {
  return model.weight(word, description);
}

// --------------------------------------------------------------------- nouns

bool NounFilter::rejects(std::string_view word) const {
  if (word.size() < 2) return true;
  if (std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; })) return true;
  if (is_direction_word(word)) return true;
  return stopwords.count(word) != 0 || excluded.count(word) != 0;
}

std::vector<std::string> extract_nouns(std::string_view description, const NounFilter& filter) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (auto& w : text::words(description)) {
    if (filter.rejects(w)) continue;
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::set<std::string, std::less<>> load_word_list(const std::filesystem::path& path) {
  std::set<std::string, std::less<>> out;
  std::istringstream in(slurp(path, "word list"));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& w : text::split_ws(line)) out.insert(text::to_lower(w));
  }
  return out;
}

Lexicon Lexicon::load_dir(const std::filesystem::path& dir) {
  Lexicon lex;
  lex.embeddings = EmbeddingTable::load(dir / "embeddings.txt");
  lex.frequencies = FrequencyTable::load(dir / "frequencies.tsv");
  lex.stopwords = load_word_list(dir / "stopwords.txt");
  lex.prepositions = load_word_list(dir / "prepositions.txt");
  if (std::filesystem::exists(dir / "importance.tsv")) {
    lex.importance = ImportanceModel::load_static(dir / "importance.tsv");
  } else {
    lex.importance = ImportanceModel::inverse_frequency(lex.frequencies);
  }
  return lex;
}

}  // namespace golovin
