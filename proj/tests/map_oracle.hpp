#pragma once

// Brute-force reference for node merging on small labelled graphs.
//
// A merge of nodes a and b is sound when some partition of the nodes puts a
// and b together, keeps labels apart, and is closed under shared moves
// (x ~ y and both have move m implies succ(x, m) ~ succ(y, m)). The finest
// such partition is the one a merge must produce. Partitions are enumerated
// exhaustively as restricted growth strings.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "golovin/mapper.hpp"

namespace oracle {

struct Graph {
  std::vector<std::string> labels;                // node index -> label
  std::vector<std::map<std::string, int>> edges;  // node index -> move -> node index
};

// Block index per element.
using Partition = std::vector<int>;

inline void all_partitions(int n, std::vector<Partition>& out) {
  Partition p(n, 0);
  std::vector<int> maxes(n, 0);
  for (;;) {
    out.push_back(p);
    int i = n - 1;
    while (i > 0 && p[i] == maxes[i - 1] + 1) --i;
    if (i <= 0) return;
    ++p[i];
    maxes[i] = std::max(maxes[i - 1], p[i]);
    for (int j = i + 1; j < n; ++j) {
      p[j] = 0;
      maxes[j] = maxes[i];
    }
  }
}

inline int block_count(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

// Quotient of g by a congruence given as node -> class.
inline bool closed(const Graph& g, const std::vector<int>& cls) {
  const int n = static_cast<int>(g.labels.size());
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (cls[x] != cls[y]) continue;
      if (g.labels[x] != g.labels[y]) return false;
      for (const auto& [m, tx] : g.edges[x]) {
        auto it = g.edges[y].find(m);
        if (it != g.edges[y].end() && cls[tx] != cls[it->second]) return false;
      }
    }
  return true;
}

// State of a greedy minimisation: the current classes of the original nodes.
struct Model {
  const Graph* g;
  std::vector<int> cls;  // node -> representative (smallest member)

  std::vector<int> reps() const {
    std::vector<int> r;
    for (int i = 0; i < static_cast<int>(cls.size()); ++i)
      if (cls[i] == i) r.push_back(i);
    return r;
  }
  // Successor class of class r under m, if any member has the move.
  std::optional<int> succ(int r, const std::string& m) const {
    for (int i = 0; i < static_cast<int>(cls.size()); ++i)
      if (cls[i] == r) {
        auto it = g->edges[i].find(m);
        if (it != g->edges[i].end()) return cls[it->second];
      }
    return std::nullopt;
  }
  int distance(int a, int b) const {
    if (a == b) return 0;
    std::map<int, std::vector<int>> adj;
    for (int i = 0; i < static_cast<int>(cls.size()); ++i)
      for (const auto& [m, t] : g->edges[i]) {
        adj[cls[i]].push_back(cls[t]);
        adj[cls[t]].push_back(cls[i]);
      }
    std::map<int, int> dist{{a, 0}};
    std::deque<int> q{a};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : adj[u]) {
        if (dist.count(v)) continue;
        dist[v] = dist[u] + 1;
        if (v == b) return dist[v];
        q.push_back(v);
      }
    }
    return std::numeric_limits<int>::max();
  }
};

// Finest sound coarsening of the model's classes that joins a and b.
inline std::optional<std::vector<int>> finest_merge(const Model& model, int a, int b) {
  auto reps = model.reps();
  const int k = static_cast<int>(reps.size());
  std::map<int, int> pos;
  for (int i = 0; i < k; ++i) pos[reps[i]] = i;
  std::vector<Partition> parts;
  all_partitions(k, parts);
  std::optional<std::vector<int>> best;
  int best_blocks = -1;
  for (const auto& p : parts) {
    if (p[pos[model.cls[a]]] != p[pos[model.cls[b]]]) continue;
    std::vector<int> cls(model.cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = p[pos[model.cls[i]]];
    if (!closed(*model.g, cls)) continue;
    int blocks = block_count(p);
    if (blocks > best_blocks) {
      best_blocks = blocks;
      best = cls;
    }
  }
  if (!best) return std::nullopt;
  // Relabel each block by its smallest member.
  std::map<int, int> smallest;
  for (int i = 0; i < static_cast<int>(best->size()); ++i) smallest.try_emplace((*best)[i], i);
  for (auto& c : *best) c = smallest[c];
  return best;
}

// Greedy minimisation in the documented order: older node first, then
// undirected distance, then newer node; repeat until nothing merges.
inline std::vector<int> minimize(const Graph& g) {
  Model m{&g, {}};
  for (int i = 0; i < static_cast<int>(g.labels.size()); ++i) m.cls.push_back(i);
  for (;;) {
    auto reps = m.reps();
    std::vector<std::tuple<int, int, int>> pairs;
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        if (g.labels[reps[i]] == g.labels[reps[j]]) pairs.emplace_back(reps[i], m.distance(reps[i], reps[j]), reps[j]);
    std::sort(pairs.begin(), pairs.end());
    bool merged = false;
    for (const auto& [a, d, b] : pairs) {
      if (auto next = finest_merge(m, a, b)) {
        m.cls = *next;
        merged = true;
        break;
      }
    }
    if (!merged) return m.cls;
  }
}

inline Graph random_graph(std::mt19937_64& rng, const std::vector<std::string>& moves) {
  const int n = 1 + static_cast<int>(rng() % 8);
  const int labels = 1 + static_cast<int>(rng() % 3);
  Graph g;
  for (int i = 0; i < n; ++i) g.labels.push_back(std::string(1, static_cast<char>('A' + rng() % labels)) + ".");
  g.edges.resize(n);
  for (int i = 0; i < n; ++i)
    for (const auto& m : moves)
      if (rng() % 100 < 55) g.edges[i][m] = static_cast<int>(rng() % n);
  return g;
}

// Node ids in the map equal the oracle's node indexes.
inline golovin::MapGraph to_map(const Graph& g, const std::vector<std::string>& moves) {
  golovin::MapGraph map(g.labels[0], moves);
  for (std::size_t i = 1; i < g.labels.size(); ++i) map.add_node(g.labels[i]);
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    for (const auto& [m, t] : g.edges[i]) map.add_edge(static_cast<int>(i), m, t);
  return map;
}

struct CheckResult {
  bool ok = true;
  std::string why;
};

// Compares the library against the reference on one graph: every single
// merge decision, the full minimisation, label preservation and trajectory
// replay.
inline CheckResult check_graph(const Graph& g, const std::vector<std::string>& moves, std::mt19937_64& rng) {
  const int n = static_cast<int>(g.labels.size());
  auto map = to_map(g, moves);
  Model identity{&g, {}};
  for (int i = 0; i < n; ++i) identity.cls.push_back(i);

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (g.labels[a] != g.labels[b]) continue;
      golovin::MapGraph scratch = map;
      bool ok = golovin::merge_nodes(scratch, a, b);
      auto expect = finest_merge(identity, a, b);
      if (ok != expect.has_value())
        return {false, "merge(" + std::to_string(a) + "," + std::to_string(b) + ") success differs"};
      if (ok)
        for (int i = 0; i < n; ++i)
          if (scratch.resolve(i) != (*expect)[i]) return {false, "merge partition differs"};
    }

  auto minimized = golovin::minimize(map);
  auto expect = minimize(g);
  for (int i = 0; i < n; ++i) {
    if (minimized.resolve(i) != expect[i]) return {false, "minimize partition differs"};
    if (minimized.node(minimized.resolve(i)).label != g.labels[i]) return {false, "label not preserved"};
  }

  for (int walk = 0; walk < 10; ++walk) {
    int at = static_cast<int>(rng() % n);
    int q = minimized.resolve(at);
    for (int step = 0; step < 12; ++step) {
      std::vector<std::string> out;
      for (const auto& [m, t] : g.edges[at]) out.push_back(m);
      if (out.empty()) break;
      const auto& m = out[rng() % out.size()];
      at = g.edges[at].at(m);
      auto next = minimized.move_by(q, m);
      if (!next) return {false, "trajectory edge missing after minimize"};
      q = minimized.resolve(*next);
      if (minimized.node(q).label != g.labels[at]) return {false, "trajectory label sequence differs"};
    }
  }

  // Nothing left to merge.
  Model final_model{&g, expect};
  for (int a : final_model.reps())
    for (int b : final_model.reps())
      if (a < b && g.labels[a] == g.labels[b] && finest_merge(final_model, a, b))
        return {false, "minimized graph still has a sound merge"};
  return {};
}

}  // namespace oracle
