#include "doctest.h"
#include "golovin/config.hpp"
#include "golovin/errors.hpp"
#include "golovin/moves.hpp"
#include "golovin/text.hpp"

using namespace golovin;

TEST_CASE("text helpers") {
  CHECK(text::to_lower("Hello WORLD") == "hello world");
  CHECK(text::trim("  a b \t\n") == "a b");
  CHECK(text::collapse_whitespace("  a \n\n b\tc ") == "a b c");
  CHECK(text::split_ws(" a  b c ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(text::join({"x", "y", "z"}, "-") == "x-y-z");
  CHECK(text::words("You are in a closet. To exit, go east!") ==
        std::vector<std::string>{"you", "are", "in", "a", "closet", "to", "exit", "go", "east"});
  CHECK(text::starts_with_icase("Score: 10", "score"));
  CHECK_FALSE(text::starts_with_icase("Sc", "score"));
}

TEST_CASE("move vocabulary") {
  CHECK(kMoveWords.size() == 16);
  CHECK(is_move_word("exit"));
  CHECK(is_move_word("northeast"));
  CHECK_FALSE(is_direction_word("exit"));
  CHECK_FALSE(is_direction_word("enter"));
  CHECK(is_direction_word("up"));
  CHECK_FALSE(is_move_word("gun"));
}

TEST_CASE("key value files") {
  auto f = KeyValueFile::parse("# comment\nalpha = 3\nbeta=2.5\n\nflag = yes\nlist = a, b ,c\nname = some text\n", "cfg");
  CHECK(f.get_int("alpha") == 3);
  CHECK(f.get_double("beta") == doctest::Approx(2.5));
  CHECK(f.get_bool("flag") == true);
  CHECK(f.get_list("list") == std::vector<std::string>{"a", "b", "c"});
  CHECK(f.get("name") == "some text");
  CHECK_FALSE(f.get("missing").has_value());
  CHECK_FALSE(f.get_int("missing").has_value());

  SUBCASE("bad values name the line") {
    auto bad = KeyValueFile::parse("a = 1\nb = nope\n", "cfg");
    try {
      (void)bad.get_int("b");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
      CHECK(e.source() == "cfg");
    }
    CHECK_THROWS_AS((void)bad.get_bool("b"), FormatError);
    CHECK_THROWS_AS((void)bad.get_double("b"), FormatError);
  }
  SUBCASE("malformed lines") {
    CHECK_THROWS_AS(KeyValueFile::parse("just words\n"), FormatError);
    CHECK_THROWS_AS(KeyValueFile::parse(" = 3\n"), FormatError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/x.cfg"), FormatError); }
}
