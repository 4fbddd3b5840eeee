#include <filesystem>

#include "doctest.h"
#include "golovin/errors.hpp"
#include "golovin/simulator.hpp"
#include "golovin/world.hpp"

using namespace golovin;
namespace fs = std::filesystem;

namespace {

const char* kTwoRooms = R"(ROOM closet
LABEL You are in a closet.
DESC There is a gun on the floor.
EXIT east hall
OBJECT gun takeable score=10
OBJECT shelf
ROOM hall score=5
LABEL You are in a hall.
EXIT west closet
WIN score=15
)";

WorldSpec world_with_enemy(const std::string& enemy_line, const std::string& extra = "") {
  return parse_world("ROOM arena\nLABEL You are in an arena.\n" + enemy_line + "\n" + extra);
}

}  // namespace

TEST_CASE("world parsing") {
  auto w = parse_world(kTwoRooms, "two");
  REQUIRE(w.rooms.size() == 2);
  CHECK(w.start_room().id == "closet");
  CHECK(w.rooms[0].label == "You are in a closet.");
  CHECK(w.rooms[1].entry_score == 5);
  CHECK(w.objects.size() == 2);
  CHECK(w.objects[0].takeable);
  CHECK_FALSE(w.objects[1].takeable);
  CHECK(w.max_score == 15);
  CHECK(w.win.score == 15);

  SUBCASE("unknown exit target names the room and line") {
    try {
      parse_world("ROOM a\nLABEL A.\nEXIT north nowhere\n", "bad");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("nowhere") != std::string::npos);
    }
  }
  SUBCASE("structural errors") {
    CHECK_THROWS_AS(parse_world("ROOM a\nDESC no label\n"), FormatError);
    CHECK_THROWS_AS(parse_world(""), FormatError);
    CHECK_THROWS_AS(parse_world("ROOM a\nLABEL A.\nBOGUS x\n"), FormatError);
    CHECK_THROWS_AS(parse_world("ROOM a\nLABEL A.\nENEMY troll\n"), FormatError);
    CHECK_THROWS_AS(parse_world("ROOM a\nLABEL A.\nOBJECT gem takeable score=3\nMAXSCORE 4\n"), FormatError);
    CHECK_THROWS_AS(parse_world("ROOM a\nLABEL A.\nWIN score=1\n"), FormatError);
  }
  SUBCASE("unreachable score is not counted") {
    auto u = parse_world("ROOM a\nLABEL A.\nROOM b score=7\nLABEL B.\nOBJECT gem takeable score=2\n");
    CHECK(u.max_score == 0);
  }
  SUBCASE("bundled worlds load") {
    for (const auto& e : fs::directory_iterator(fs::path(GOLOVIN_TEST_DATA_DIR) / "worlds")) {
      auto loaded = load_world(e.path());
      CHECK(loaded.max_score > 0);
      CHECK(loaded.name == e.path().stem().string());
    }
  }
}

TEST_CASE("simulator basics") {
  Simulator sim(parse_world(kTwoRooms));
  Percept p = sim.start();
  CHECK(p.score == 0);
  CHECK(p.moves == 0);
  CHECK(p.view == "You are in a closet. There is a gun on the floor. You can see a gun here. You can see a shelf here.");
  CHECK(p.state_text() == p.view);

  p = sim.step("open closet");
  CHECK(p.description == Simulator::kRefusal);
  CHECK(p.moves == 1);

  p = sim.step("take shelf");
  CHECK(p.description == "That's fixed in place.");
  p = sim.step("get gun");
  CHECK(p.description == "Taken: gun.");
  CHECK(p.score == 10);
  CHECK(sim.query_inventory() == std::vector<std::string>{"gun"});
  CHECK(sim.session().inventory_queries == 1);
  CHECK(sim.session().steps == 3);
  CHECK(sim.step("take gun").description == "You already have that.");

  p = sim.step("north");
  CHECK(p.description == "You can't go that way.");
  p = sim.step("go east");
  CHECK(p.view == "You are in a hall.");
  CHECK(p.score == 15);
  CHECK(p.won);
  CHECK_THROWS_AS(sim.step("look"), UsageError);

  p = sim.restart();
  CHECK(p.score == 0);
  CHECK(sim.session().episode == 1);
  CHECK(sim.session().steps == 0);
  CHECK(sim.query_inventory().empty());
}

TEST_CASE("simulator inventory listing and examine") {
  Simulator sim(parse_world(kTwoRooms));
  sim.start();
  auto p = sim.step("inventory");
  REQUIRE(p.inventory_listing.has_value());
  CHECK(*p.inventory_listing == "You are empty-handed.");
  CHECK(sim.step("examine gun").description == "You see nothing special about the gun.");
  CHECK(sim.step("x dragon").description == "You can't see any such thing.");
}

TEST_CASE("simulator combat") {
  SUBCASE("three hits kill") {
    Simulator sim(world_with_enemy("ENEMY troll hp=3 score=20"));
    sim.start();
    CHECK(sim.step("kill troll").view.find("wounded (2/3)") != std::string::npos);
    CHECK(sim.step("attack troll with sword").view.find("wounded (1/3)") != std::string::npos);
    auto p = sim.step("hit troll");
    CHECK(p.description == "The troll is defeated!");
    CHECK(p.score == 20);
    CHECK(p.view == "You are in an arena.");
  }
  SUBCASE("regeneration between blows") {
    Simulator sim(world_with_enemy("ENEMY troll hp=3 score=20 regen"));
    auto start = sim.start();
    sim.step("kill troll");
    auto p = sim.step("look");
    CHECK(p.view == start.view);
  }
  SUBCASE("certain counterattack") {
    Simulator sim(world_with_enemy("ENEMY troll hp=3 lethal=1"));
    sim.start();
    auto p = sim.step("kill troll");
    CHECK(p.dead);
    CHECK(p.description.find("*** You have died ***") != std::string::npos);
    CHECK_THROWS_AS(sim.step("look"), UsageError);
  }
  SUBCASE("certain dodge leaves the view unchanged") {
    Simulator sim(world_with_enemy("ENEMY troll hp=2 dodge=1"));
    auto start = sim.start();
    auto p = sim.step("kill troll");
    CHECK(p.description == "The troll jumps nimbly aside.");
    CHECK(p.view == start.view);
  }
  SUBCASE("lose rooms") {
    Simulator sim(parse_world("ROOM a\nLABEL A.\nEXIT down pit\nROOM pit\nLABEL A pit.\nLOSE room=pit\n"));
    sim.start();
    CHECK(sim.step("down").dead);
  }
}

TEST_CASE("simulator is reproducible across restarts") {
  auto w = world_with_enemy("ENEMY troll hp=5 lethal=0.3 dodge=0.3");
  Simulator a(w, 42), b(w, 42);
  a.start();
  b.start();
  std::vector<std::string> first, second;
  for (int i = 0; i < 4 && !a.last().terminal(); ++i) first.push_back(a.step("kill troll").description);
  a.restart();
  for (int i = 0; i < 4 && !a.last().terminal(); ++i) second.push_back(a.step("kill troll").description);
  CHECK(first == second);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(b.step("kill troll").description == first[i]);
}
