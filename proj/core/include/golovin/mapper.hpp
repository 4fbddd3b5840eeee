#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace golovin {

using NodeId = int;

struct MapNode {
  NodeId id = 0;
  std::string label;
  std::map<std::string, NodeId> outgoing;  // at most one target per move
  int tested_commands = 0;
  std::set<std::string> untested_moves;
  // Sum of scores of the commands still available here, as of the last visit.
  double command_score = 0;
};

// Prefix up to and including the first '.', '!' or '?' that is followed by
// whitespace or the end of text; the whole text when there is none.
std::string label_of(std::string_view description);

// Location graph labelled by first sentences, edges labelled by move words.
// Node ids are never reused; merged-away ids resolve to their survivor.
class MapGraph {
 public:
  explicit MapGraph(std::string_view start_description = "Start.", std::vector<std::string> moves = default_moves());

  static std::vector<std::string> default_moves();

  // Fresh node with every move untested.
  NodeId add_node(std::string label);
  // Sets from.move = to, replacing any previous target.
  void add_edge(NodeId from, const std::string& move, NodeId to);

  // A successful move from the current node. Creates a fresh node labelled
  // label_of(new_description) and an edge to it, unless the current node
  // already has an edge for `move` into a node with that label, in which
  // case the edge is followed. Returns the new current node.
  NodeId record_transition(const std::string& move, std::string_view new_description);
  // The location changed without a move word. Fresh node, no edge.
  NodeId relocate(std::string_view new_description);

  void mark_move_tested(NodeId id, const std::string& move);

  NodeId current() const { return resolve(current_); }
  void set_current(NodeId id) { current_ = resolve(id); }
  NodeId start() const { return resolve(start_); }

  NodeId resolve(NodeId id) const;
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  const MapNode& node(NodeId id) const;
  MapNode& node(NodeId id);
  std::optional<NodeId> move_by(NodeId id, const std::string& move) const;

  std::vector<NodeId> node_ids() const;
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& moves() const { return moves_; }

  // `node-id<TAB>label<TAB>move<TAB>target-id`, one line per edge; nodes
  // without edges get one line with empty move and target.
  std::string dump() const;

 private:
  friend bool merge_nodes(MapGraph& g, NodeId a, NodeId b);
  // Folds b into a (or a into b, the older id survives). Edges are joined,
  // incoming edges redirected, conflicting moves keep the survivor's target.
  NodeId join(NodeId a, NodeId b);

  std::vector<std::string> moves_;
  std::map<NodeId, MapNode> nodes_;
  std::map<NodeId, NodeId> merged_into_;
  NodeId start_ = 0;
  NodeId current_ = 0;
  NodeId next_id_ = 0;
};

// Recursive node merge on a scratch graph. True when a and b (and every pair
// of successors reached by a shared move) could be unified with equal labels.
// On false the scratch graph is in an unspecified state and must be dropped.
bool merge_nodes(MapGraph& scratch, NodeId a, NodeId b);

// Repeatedly merges same-label node pairs, oldest discovery first and then by
// graph distance, committing each successful scratch merge and discarding
// failed ones, until no pair merges.
MapGraph minimize(MapGraph g);

// Breadth-first shortest move sequence; empty when from == to.
std::optional<std::vector<std::string>> shortest_path(const MapGraph& g, NodeId from, NodeId to);

double curiosity(const MapNode& node, double move_weight);

struct Destination {
  NodeId node = 0;
  std::vector<std::string> path;
  double objective = 0;
};

// Minimizes distance + tested_commands / curiosity over reachable nodes with
// positive curiosity. Ties go to the shorter path, then the lower id.
std::optional<Destination> choose_destination(const MapGraph& g, double move_weight = 1.0,
                                              std::optional<NodeId> exclude = std::nullopt);

}  // namespace golovin
