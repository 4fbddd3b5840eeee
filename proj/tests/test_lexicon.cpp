#include <cmath>

#include "doctest.h"
#include "golovin/errors.hpp"
#include "golovin/lexicon.hpp"

using namespace golovin;

namespace {

double oracle_cosine(std::vector<double> a, std::vector<double> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

const char* kTable = "5 3\ngun 1 0 0\npistol 0.9 0.1 0\nknife 0.8 0.3 0.1\ncloset 0 1 0\nzero 0 0 0\n";

}  // namespace

TEST_CASE("embedding table") {
  auto t = EmbeddingTable::parse(kTable, "emb");
  CHECK(t.size() == 5);
  CHECK(t.dimension() == 3);
  CHECK(t.contains("gun"));
  CHECK_FALSE(t.lookup("dragon").has_value());

  CHECK(*cosine("gun", "pistol", t) == doctest::Approx(oracle_cosine({1, 0, 0}, {0.9, 0.1, 0})));
  CHECK(*cosine("knife", "pistol", t) == doctest::Approx(oracle_cosine({0.8, 0.3, 0.1}, {0.9, 0.1, 0})));
  CHECK(*cosine("gun", "gun", t) == doctest::Approx(1.0));
  CHECK(*cosine("gun", "closet", t) == doctest::Approx(0.0));
  CHECK_FALSE(cosine("gun", "dragon", t).has_value());
  CHECK_FALSE(cosine("gun", "zero", t).has_value());

  auto nn = nearest("gun", 2, t);
  REQUIRE(nn.size() == 2);
  CHECK(nn[0].first == "pistol");
  CHECK(nn[1].first == "knife");
  CHECK(nearest("dragon", 3, t).empty());
  CHECK(nearest("gun", 0, t).empty());
}

TEST_CASE("embedding ties break lexicographically") {
  auto t = EmbeddingTable::parse("4 2\nbase 1 0\nzeta 1 1\nalpha 1 1\nmid 1 1\n");
  auto nn = nearest("base", 3, t);
  REQUIRE(nn.size() == 3);
  CHECK(nn[0].first == "alpha");
  CHECK(nn[1].first == "mid");
  CHECK(nn[2].first == "zeta");
}

TEST_CASE("embedding format errors") {
  SUBCASE("dimension mismatch names the line") {
    try {
      EmbeddingTable::parse("2 3\ngun 1 0 0\npistol 1 0\n", "emb");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 3);
    }
  }
  CHECK_THROWS_AS(EmbeddingTable::parse("gun 1 0 0\n"), FormatError);
  CHECK_THROWS_AS(EmbeddingTable::parse("3 1\na 1\nb 2\n"), FormatError);
  CHECK_THROWS_AS(EmbeddingTable::parse("1 1\na x\n"), FormatError);
  SUBCASE("duplicates warn, last wins") {
    auto t = EmbeddingTable::parse("2 2\na 1 0\na 0 1\n");
    CHECK(t.size() == 1);
    CHECK(t.warnings().size() == 1);
    CHECK((*t.lookup("a"))[1] == 1.0);
  }
}

TEST_CASE("frequencies and uniqueness") {
  auto f = FrequencyTable::parse("# c\ngun\t20\nfloor\t200\n", "freq");
  CHECK(f.count("gun") == 20);
  CHECK_FALSE(f.count("dragon").has_value());
  CHECK(uniqueness("gun", f) == doctest::Approx(1.0 / 20));
  CHECK(uniqueness("dragon", f) == 1.0);
  std::vector<std::string> phrase{"gun", "floor"};
  CHECK(uniqueness(phrase, f) == doctest::Approx(std::sqrt(1.0 / 20 * 1.0 / 200)));
  CHECK(uniqueness(std::vector<std::string>{}, f) == 1.0);
  CHECK_THROWS_AS(FrequencyTable::parse("gun\t0\n"), FormatError);
  CHECK_THROWS_AS(FrequencyTable::parse("gun\tmany\n"), FormatError);
  CHECK_THROWS_AS(FrequencyTable::parse("gun 3\n"), FormatError);
}

TEST_CASE("importance providers") {
  FrequencyTable f;
  f.set("gun", 20);
  auto inv = ImportanceModel::inverse_frequency(f);
  CHECK(importance("gun", "", inv) == doctest::Approx(1.0 / (1.0 + std::log(20.0))));
  CHECK(importance("unseen", "", inv) == 1.0);

  auto st = ImportanceModel::static_weights({{"gun", 0.9}}, 0.25);
  CHECK(importance("gun", "", st) == 0.9);
  CHECK(importance("floor", "", st) == 0.25);
  CHECK(inv.provider() != st.provider());
  CHECK_THROWS_AS(ImportanceModel::static_weights({{"gun", 1.5}}), UsageError);
  CHECK_THROWS_AS(ImportanceModel::static_weights({}, 0.0), UsageError);
}

TEST_CASE("noun extraction") {
  NounFilter filter;
  filter.stopwords = {"you", "are", "in", "a", "there", "is", "on", "the", "better", "it", "to", "go"};
  filter.excluded = {"get", "take"};
  auto nouns = extract_nouns("You are in a closet. There is a gun on the floor. Better get it. To exit, go east.", filter);
  CHECK(nouns == std::vector<std::string>{"closet", "gun", "floor", "exit"});
  CHECK(extract_nouns("gun gun GUN 42 x", filter) == std::vector<std::string>{"gun"});
  CHECK(filter.rejects("north"));
  CHECK_FALSE(filter.rejects("exit"));
}

TEST_CASE("bundled lexicon") {
  auto lex = Lexicon::load_dir(GOLOVIN_TEST_DATA_DIR);
  CHECK(lex.embeddings.size() > 0);
  CHECK(lex.stopwords.count("better"));
  CHECK(lex.prepositions.count("with"));
  CHECK(*cosine("gun", "pistol", lex.embeddings) > 0.5);
  CHECK(*cosine("gun", "closet", lex.embeddings) < *cosine("gun", "pistol", lex.embeddings));
  CHECK(*lex.frequencies.count("gun") < *lex.frequencies.count("closet"));
  CHECK_THROWS_AS(Lexicon::load_dir("/nonexistent"), FormatError);
}
