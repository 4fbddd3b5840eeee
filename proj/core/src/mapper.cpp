#include "golovin/mapper.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <tuple>

#include "golovin/errors.hpp"
#include "golovin/moves.hpp"

namespace golovin {

std::string label_of(std::string_view description) {
  for (std::size_t i = 0; i < description.size(); ++i) {
    char c = description[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == description.size() || std::isspace(static_cast<unsigned char>(description[i + 1])))
      return std::string(description.substr(0, i + 1));
  }
  return std::string(description);
}

std::vector<std::string> MapGraph::default_moves() { return {kMoveWords.begin(), kMoveWords.end()}; }

MapGraph::MapGraph(std::string_view start_description, std::vector<std::string> moves) : moves_(std::move(moves)) {
  start_ = current_ = add_node(label_of(start_description));
}

NodeId MapGraph::add_node(std::string label) {
  if (label.empty()) label = "(unlabelled)";
  MapNode n;
  n.id = next_id_++;
  n.label = std::move(label);
  n.untested_moves.insert(moves_.begin(), moves_.end());
  NodeId id = n.id;
  nodes_.emplace(id, std::move(n));
  return id;
}

void MapGraph::add_edge(NodeId from, const std::string& move, NodeId to) {
  auto& n = node(from);
  if (!contains(resolve(to))) throw UsageError("edge to unknown node");
  n.outgoing[move] = resolve(to);
  n.untested_moves.erase(move);
}

NodeId MapGraph::record_transition(const std::string& move, std::string_view new_description) {
  NodeId here = current();
  std::string label = label_of(new_description);
  if (auto known = move_by(here, move); known && node(*known).label == label) {
    current_ = *known;
    return *known;
  }
  NodeId fresh = add_node(std::move(label));
  add_edge(here, move, fresh);
  current_ = fresh;
  return fresh;
}

NodeId MapGraph::relocate(std::string_view new_description) {
  current_ = add_node(label_of(new_description));
  return current_;
}

void MapGraph::mark_move_tested(NodeId id, const std::string& move) { node(id).untested_moves.erase(move); }

NodeId MapGraph::resolve(NodeId id) const {
  auto it = merged_into_.find(id);
  while (it != merged_into_.end()) {
    id = it->second;
    it = merged_into_.find(id);
  }
  return id;
}

const MapNode& MapGraph::node(NodeId id) const {
  auto it = nodes_.find(resolve(id));
  if (it == nodes_.end()) throw UsageError("unknown map node " + std::to_string(id));
  return it->second;
}

MapNode& MapGraph::node(NodeId id) {
  auto it = nodes_.find(resolve(id));
  if (it == nodes_.end()) throw UsageError("unknown map node " + std::to_string(id));
  return it->second;
}

std::optional<NodeId> MapGraph::move_by(NodeId id, const std::string& move) const {
  const auto& out = node(id).outgoing;
  auto it = out.find(move);
  if (it == out.end()) return std::nullopt;
  return resolve(it->second);
}

std::vector<NodeId> MapGraph::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) ids.push_back(id);
  return ids;
}

std::string MapGraph::dump() const {
  std::string out;
  for (const auto& [id, n] : nodes_) {
    if (n.outgoing.empty()) {
      out += std::to_string(id) + "\t" + n.label + "\t\t\n";
      continue;
    }
    for (const auto& [move, target] : n.outgoing)
      out += std::to_string(id) + "\t" + n.label + "\t" + move + "\t" + std::to_string(resolve(target)) + "\n";
  }
  return out;
}

NodeId MapGraph::join(NodeId a, NodeId b) {
  NodeId keep = std::min(a, b), gone = std::max(a, b);
  MapNode removed = std::move(nodes_.at(gone));
  nodes_.erase(gone);
  merged_into_[gone] = keep;

  MapNode& k = nodes_.at(keep);
  for (const auto& [move, target] : removed.outgoing) k.outgoing.emplace(move, target);
  k.tested_commands += removed.tested_commands;
  k.command_score = std::max(k.command_score, removed.command_score);
  std::set<std::string> untested;
  std::set_intersection(k.untested_moves.begin(), k.untested_moves.end(), removed.untested_moves.begin(),
                        removed.untested_moves.end(), std::inserter(untested, untested.end()));
  for (const auto& [move, target] : k.outgoing) untested.erase(move);
  k.untested_moves = std::move(untested);

  for (auto& [id, n] : nodes_)
    for (auto& [move, target] : n.outgoing)
      if (target == gone) target = keep;
  if (current_ == gone) current_ = keep;
  if (start_ == gone) start_ = keep;
  return keep;
}

bool merge_nodes(MapGraph& g, NodeId a, NodeId b) {
  a = g.resolve(a);
  b = g.resolve(b);
  if (a == b) return true;
  if (g.node(a).label != g.node(b).label) return false;

  std::vector<std::pair<NodeId, NodeId>> mergelist;
  for (const auto& m : g.moves_) {
    auto ta = g.move_by(a, m);
    auto tb = g.move_by(b, m);
    if (ta && tb) mergelist.emplace_back(*ta, *tb);
  }
  g.join(a, b);
  for (const auto& [x, y] : mergelist)
    if (!merge_nodes(g, x, y)) return false;
  return true;
}

namespace {

// Undirected hop distance; max int when disconnected.
int undirected_distance(const MapGraph& g, NodeId from, NodeId to) {
  if (from == to) return 0;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (NodeId id : g.node_ids()) {
    for (const auto& [move, target] : g.node(id).outgoing) {
      NodeId t = g.resolve(target);
      adj[id].push_back(t);
      adj[t].push_back(id);
    }
  }
  std::map<NodeId, int> dist{{from, 0}};
  std::deque<NodeId> queue{from};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (dist.count(v)) continue;
      dist[v] = dist[u] + 1;
      if (v == to) return dist[v];
      queue.push_back(v);
    }
  }
  return std::numeric_limits<int>::max();
}

}  // namespace

MapGraph minimize(MapGraph g) {
  for (;;) {
    auto ids = g.node_ids();
    std::vector<std::tuple<NodeId, int, NodeId>> pairs;  // (older, distance, newer)
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        if (g.node(ids[i]).label == g.node(ids[j]).label)
          pairs.emplace_back(ids[i], undirected_distance(g, ids[i], ids[j]), ids[j]);
    std::sort(pairs.begin(), pairs.end());

    bool merged = false;
    for (const auto& [a, dist, b] : pairs) {
      MapGraph scratch = g;
      if (merge_nodes(scratch, a, b)) {
        g = std::move(scratch);
        merged = true;
        break;
      }
    }
    if (!merged) return g;
  }
}

std::optional<std::vector<std::string>> shortest_path(const MapGraph& g, NodeId from, NodeId to) {
  from = g.resolve(from);
  to = g.resolve(to);
  if (!g.contains(from) || !g.contains(to)) return std::nullopt;
  if (from == to) return std::vector<std::string>{};
  std::map<NodeId, std::pair<NodeId, std::string>> parent;
  std::deque<NodeId> queue{from};
  parent[from] = {from, {}};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    // Moves in the fixed vocabulary order keep paths reproducible.
    for (const auto& m : g.moves()) {
      auto v = g.move_by(u, m);
      if (!v || parent.count(*v)) continue;
      parent[*v] = {u, m};
      if (*v == to) {
        std::vector<std::string> path;
        for (NodeId x = to; x != from; x = parent[x].first) path.push_back(parent[x].second);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(*v);
    }
  }
  return std::nullopt;
}

double curiosity(const MapNode& node, double move_weight) {
  return node.command_score + move_weight * static_cast<double>(node.untested_moves.size());
}

std::optional<Destination> choose_destination(const MapGraph& g, double move_weight, std::optional<NodeId> exclude) {
  std::optional<Destination> best;
  NodeId here = g.current();
  for (NodeId id : g.node_ids()) {
    if (exclude && g.resolve(*exclude) == id) continue;
    const MapNode& n = g.node(id);
    double cur = curiosity(n, move_weight);
    if (!(cur > 0.0)) continue;
    auto path = shortest_path(g, here, id);
    if (!path) continue;
    double objective = static_cast<double>(path->size()) + static_cast<double>(n.tested_commands) / cur;
    bool better = !best || objective < best->objective ||
                  (objective == best->objective && path->size() < best->path.size());
    if (better) best = Destination{id, std::move(*path), objective};
  }
  return best;
}

}  // namespace golovin
