#include "doctest.h"
#include "golovin/mapper.hpp"
#include "map_oracle.hpp"

using namespace golovin;

TEST_CASE("labels are first sentences") {
  CHECK(label_of("You are in a closet. There is a gun.") == "You are in a closet.");
  CHECK(label_of("Help! Fire.") == "Help!");
  CHECK(label_of("Mr.Smith is here") == "Mr.Smith is here");
  CHECK(label_of("No full stop") == "No full stop");
}

TEST_CASE("recording transitions") {
  MapGraph g("Closet. Dark.", {"north", "south", "east", "west"});
  CHECK(g.size() == 1);
  CHECK(g.node(g.start()).label == "Closet.");
  CHECK(g.node(g.start()).untested_moves.size() == 4);

  NodeId hall = g.record_transition("east", "Hall. Long.");
  CHECK(g.current() == hall);
  CHECK(g.move_by(g.start(), "east") == hall);
  CHECK(g.node(hall).label == "Hall.");

  g.set_current(g.start());
  CHECK(g.record_transition("east", "Hall. Changed.") == hall);
  CHECK(g.size() == 2);

  NodeId other = g.relocate("Garden.");
  CHECK(g.size() == 3);
  CHECK(g.node(hall).outgoing.empty());
  CHECK(g.current() == other);

  g.mark_move_tested(other, "north");
  CHECK_FALSE(g.node(other).untested_moves.count("north"));

  CHECK(g.dump() ==
        "0\tCloset.\teast\t1\n"
        "1\tHall.\t\t\n"
        "2\tGarden.\t\t\n");
}

TEST_CASE("merging folds the newer node into the older") {
  MapGraph g("Room.", {"north", "south"});
  NodeId a = g.start();
  NodeId b = g.add_node("Room.");
  NodeId c = g.add_node("Yard.");
  g.add_edge(a, "north", c);
  g.add_edge(c, "south", b);
  g.node(a).tested_commands = 2;
  g.node(b).tested_commands = 3;
  g.node(a).command_score = 1.5;
  g.node(b).command_score = 4.0;
  g.node(b).untested_moves = {"south"};

  MapGraph scratch = g;
  REQUIRE(merge_nodes(scratch, b, a));
  CHECK(scratch.size() == 2);
  CHECK(scratch.resolve(b) == a);
  const MapNode& m = scratch.node(a);
  CHECK(m.tested_commands == 5);
  CHECK(m.command_score == 4.0);
  CHECK(m.untested_moves == std::set<std::string>{"south"});
  CHECK(scratch.move_by(c, "south") == a);
}

TEST_CASE("inconsistent successors block a merge") {
  MapGraph g("Room.", {"north"});
  NodeId a = g.start();
  NodeId b = g.add_node("Room.");
  NodeId x = g.add_node("Yard.");
  NodeId y = g.add_node("Cellar.");
  g.add_edge(a, "north", x);
  g.add_edge(b, "north", y);
  MapGraph scratch = g;
  CHECK_FALSE(merge_nodes(scratch, a, b));
  CHECK(minimize(g).size() == 4);
}

TEST_CASE("minimize folds a revisited loop") {
  // A -e-> B -w-> A' where A' is a second copy of A.
  MapGraph g("A.", {"east", "west"});
  NodeId b = g.record_transition("east", "B.");
  NodeId a2 = g.record_transition("west", "A.");
  g.add_edge(a2, "east", g.add_node("B."));
  auto m = minimize(g);
  CHECK(m.size() == 2);
  CHECK(m.resolve(a2) == 0);
  CHECK(m.move_by(b, "west") == 0);
}

TEST_CASE("shortest paths and destinations") {
  // 0 -n-> 1 -n-> 2, 0 -e-> 3, 3 -w-> 0, 1 -s-> 0, 2 -s-> 1
  MapGraph g("Start.", {"north", "south", "east", "west"});
  NodeId n1 = g.add_node("One.");
  NodeId n2 = g.add_node("Two.");
  NodeId n3 = g.add_node("Three.");
  g.add_edge(0, "north", n1);
  g.add_edge(n1, "north", n2);
  g.add_edge(0, "east", n3);
  g.add_edge(n3, "west", 0);
  g.add_edge(n1, "south", 0);
  g.add_edge(n2, "south", n1);
  for (NodeId id : g.node_ids()) g.node(id).untested_moves.clear();

  CHECK(shortest_path(g, 0, n2) == std::vector<std::string>{"north", "north"});
  CHECK(shortest_path(g, n2, n3) == std::vector<std::string>{"south", "south", "east"});
  CHECK(shortest_path(g, 0, 0)->empty());
  CHECK_FALSE(shortest_path(g, n3, 42).has_value());

  CHECK_FALSE(choose_destination(g).has_value());

  // Two steps away with curiosity 2 and nothing tried: objective 2 + 0/2 = 2.
  g.node(n2).untested_moves = {"east", "west"};
  // One step away, curiosity 1, ten commands tried: objective 1 + 10/1 = 11.
  g.node(n3).untested_moves = {"north"};
  g.node(n3).tested_commands = 10;
  auto d = choose_destination(g, 1.0, 0);
  REQUIRE(d);
  CHECK(d->node == n2);
  CHECK(d->path == std::vector<std::string>{"north", "north"});
  CHECK(d->objective == doctest::Approx(2.0));

  g.node(n3).tested_commands = 0;
  d = choose_destination(g, 1.0, 0);
  REQUIRE(d);
  CHECK(d->node == n3);
  CHECK(d->objective == doctest::Approx(1.0));

  CHECK(curiosity(g.node(n2), 0.5) == doctest::Approx(1.0));
}

TEST_CASE("merges agree with the exhaustive reference") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> moves{"north", "south", "east", "west"};
  for (int i = 0; i < 100; ++i) {
    auto used = std::vector<std::string>(moves.begin(), moves.begin() + 1 + static_cast<long>(rng() % 4));
    auto g = oracle::random_graph(rng, used);
    auto r = oracle::check_graph(g, used, rng);
    INFO("graph " << i << ": " << r.why);
    CHECK(r.ok);
  }
}

TEST_CASE("partition enumeration counts Bell numbers") {
  const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 1; n <= 8; ++n) {
    std::vector<oracle::Partition> out;
    oracle::all_partitions(n, out);
    CHECK(static_cast<int>(out.size()) == bell[n]);
  }
}
