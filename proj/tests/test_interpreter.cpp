#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "golovin/errors.hpp"
#include "golovin/harness.hpp"
#include "golovin/interpreter.hpp"

using namespace golovin;

namespace {

bool fake_available() {
  return std::getenv("GOLOVIN_SKIP_FAKE_INTERPRETER") == nullptr && std::filesystem::exists(GOLOVIN_FAKE_INTERPRETER);
}

InterpreterOptions fake(std::vector<std::string> args = {}) {
  InterpreterOptions o;
  o.program = "python3";
  o.args = {GOLOVIN_FAKE_INTERPRETER};
  o.args.insert(o.args.end(), args.begin(), args.end());
  o.timeout = std::chrono::milliseconds(3000);
  return o;
}

}  // namespace

TEST_CASE("output parsing") {
  Percept prev;
  prev.score = 3;
  prev.moves = 7;

  SUBCASE("labelled status line") {
    auto p = parse_interpreter_output(" West of House     Score: 5  Moves: 9\n\nTaken.\n\n> ", prev);
    CHECK(p.score == 5);
    CHECK(p.moves == 9);
    CHECK(p.description == "Taken.");
  }
  SUBCASE("score/moves pair") {
    auto p = parse_interpreter_output(" Forest Path                    12/40\n\nYou are on a path.\n>", prev);
    CHECK(p.score == 12);
    CHECK(p.moves == 40);
    CHECK(p.description == "You are on a path.");
  }
  SUBCASE("values carry forward") {
    auto p = parse_interpreter_output("Nothing happens.\n> ", prev);
    CHECK(p.score == 3);
    CHECK(p.moves == 7);
    CHECK_FALSE(p.dead);
  }
  SUBCASE("terminal markers") {
    CHECK(parse_interpreter_output("    *** You have died ***\n").dead);
    CHECK(parse_interpreter_output("    *** You have won ***\n").won);
    auto both = parse_interpreter_output("*** You have won *** ... *** You have died ***");
    CHECK(both.dead);
    CHECK_FALSE(both.won);
  }
  SUBCASE("idempotent on normalized text") {
    auto once = parse_interpreter_output(" Hall    Score: 1  Moves: 2\n\nA   dark\n room.\n> ");
    auto twice = parse_interpreter_output(once.description, once);
    CHECK(twice.description == once.description);
    CHECK(twice.score == once.score);
  }
}

TEST_CASE("inventory listing") {
  CHECK(parse_inventory_listing("You are carrying:\n  a brass lantern\n  the sword\n  an elvish dagger\n") ==
        std::vector<std::string>{"brass lantern", "sword", "elvish dagger"});
  CHECK(parse_inventory_listing("You are empty-handed.").empty());
}

TEST_CASE("interpreter resolution") {
  CHECK(resolve_interpreter("/usr/bin/explicit") == "/usr/bin/explicit");
}

TEST_CASE("interpreter adapter against a scripted game") {
  if (!fake_available()) return;

  SUBCASE("episode") {
    InterpreterEnv env(fake());
    auto p = env.start();
    CHECK(p.description.find("west of a white house") != std::string::npos);
    CHECK(p.score == 0);
    p = env.step("take leaflet");
    CHECK(p.description == "Taken.");
    CHECK(p.score == 5);
    CHECK(p.moves == 1);
    CHECK(env.query_inventory() == std::vector<std::string>{"leaflet"});
    CHECK(env.session().inventory_queries == 1);
    CHECK(env.session().steps == 1);
    for (int i = 0; i < 20; ++i) p = env.step(i % 2 ? "south" : "north");
    CHECK(p.moves == 21);
    p = env.step("jump off cliff");
    CHECK(p.dead);
    CHECK_THROWS_AS(env.step("look"), UsageError);
    p = env.restart();
    CHECK(p.score == 0);
    CHECK(env.session().episode == 1);
    CHECK(env.query_inventory().empty());
  }
  SUBCASE("pair status lines") {
    InterpreterEnv env(fake({"--pair"}));
    env.start();
    auto p = env.step("take leaflet");
    CHECK(p.score == 5);
    CHECK(p.moves == 1);
  }
  SUBCASE("unresponsive interpreter times out") {
    auto o = fake({"--hang-after", "1"});
    o.timeout = std::chrono::milliseconds(300);
    InterpreterEnv env(o);
    env.start();
    env.step("look");
    CHECK_THROWS_AS(env.step("look"), EnvironmentError);
  }
  SUBCASE("missing binary") {
    InterpreterOptions o;
    o.program = "/nonexistent/interpreter";
    InterpreterEnv env(o);
    CHECK_THROWS_AS(env.start(), EnvironmentError);
  }
  SUBCASE("interpreter exits at once") {
    auto o = fake({"--fail"});
    o.timeout = std::chrono::milliseconds(1000);
    InterpreterEnv env(o);
    CHECK_THROWS_AS(env.start(), EnvironmentError);
  }
}

TEST_CASE("agent episode through the interpreter adapter") {
  if (!fake_available()) return;
  auto lex = Lexicon::load_dir(GOLOVIN_TEST_DATA_DIR);
  auto db = CommandDB::load(std::filesystem::path(GOLOVIN_TEST_DATA_DIR) / "sample.db");
  EnvFactory factory = [](std::uint64_t) { return std::make_unique<InterpreterEnv>(fake()); };
  EpisodeOptions o;
  o.budget = 150;
  auto r = run_episode("fake", 10, factory, lex, db, AgentConfig{}, o);
  CHECK_FALSE(r.failed);
  CHECK(r.error.empty());
  CHECK(r.steps <= 150);
  CHECK(r.raw >= 0);
}
