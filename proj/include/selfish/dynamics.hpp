#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "selfish/analysis.hpp"
#include "selfish/error.hpp"
#include "selfish/game.hpp"

namespace selfish {

/// Better-response graph over joint strategies, nodes numbered by flat
/// (lexicographic) index. s -> (s'_i, s_-i) whenever player i strictly
/// improves; successors are listed by player, then strategy.
struct ImprovementGraph {
  std::vector<std::vector<std::size_t>> successors;

  std::size_t node_count() const { return successors.size(); }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& out : successors) m += out.size();
    return m;
  }
  /// Nodes without outgoing edges, i.e. the pure Nash equilibria.
  std::vector<std::size_t> sinks() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < successors.size(); ++v) {
      if (successors[v].empty()) out.push_back(v);
    }
    return out;
  }
  std::vector<std::vector<std::size_t>> predecessors() const {
    std::vector<std::vector<std::size_t>> in(successors.size());
    for (std::size_t v = 0; v < successors.size(); ++v) {
      for (auto w : successors[v]) in[w].push_back(v);
    }
    return in;
  }
};

inline ImprovementGraph improvement_graph(const Game& g, std::size_t cap = kDefaultCellCap) {
  if (g.cell_count() > cap) {
    throw Error(Errc::ExplosionGuard, std::to_string(g.cell_count()) + " joint strategies exceed the cap of " +
                                          std::to_string(cap));
  }
  const bool cost = g.orientation() == Orientation::CostMin;
  auto better = [cost](const Rational& next, const Rational& cur) { return cost ? next < cur : next > cur; };

  ImprovementGraph graph;
  graph.successors.resize(g.cell_count());
  std::size_t v = 0;
  for (const auto& s : g.profiles()) {
    JointStrategy t = s;
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      const Rational& cur = g.payoff(s, i);
      for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
        if (k == s[i]) continue;
        t[i] = k;
        if (better(g.payoff(t, i), cur)) graph.successors[v].push_back(g.flat_index(t));
      }
      t[i] = s[i];
    }
    ++v;
  }
  return graph;
}

namespace detail {

/// Kahn's algorithm; nothing when the graph has a cycle.
inline std::optional<std::vector<std::size_t>> topological_order(const ImprovementGraph& graph) {
  std::vector<std::size_t> indegree(graph.node_count());
  for (const auto& out : graph.successors) {
    for (auto w : out) ++indegree[w];
  }
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < indegree.size(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<std::size_t> order;
  order.reserve(graph.node_count());
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (auto w : graph.successors[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != graph.node_count()) return std::nullopt;
  return order;
}

}  // namespace detail

/// Finite improvement property: the improvement graph is acyclic.
inline bool has_fip(const ImprovementGraph& graph) { return detail::topological_order(graph).has_value(); }

inline bool has_fip(const Game& g, std::size_t cap = kDefaultCellCap) { return has_fip(improvement_graph(g, cap)); }

/// Every node reaches a sink. Backward search from all sinks at once.
inline bool is_weakly_acyclic(const ImprovementGraph& graph) {
  const auto in = graph.predecessors();
  std::vector<bool> reached(graph.node_count(), false);
  std::deque<std::size_t> frontier;
  for (auto v : graph.sinks()) {
    reached[v] = true;
    frontier.push_back(v);
  }
  std::size_t count = frontier.size();
  while (!frontier.empty()) {
    const auto w = frontier.front();
    frontier.pop_front();
    for (auto v : in[w]) {
      if (!reached[v]) {
        reached[v] = true;
        ++count;
        frontier.push_back(v);
      }
    }
  }
  return count == graph.node_count();
}

inline bool is_weakly_acyclic(const Game& g, std::size_t cap = kDefaultCellCap) {
  return is_weakly_acyclic(improvement_graph(g, cap));
}

/// A function over flat profile indices that strictly increases along every
/// improvement edge, or nothing when the graph has a cycle. Values are the
/// length of the longest improvement path ending at each node.
inline std::optional<std::vector<std::int64_t>> ordinal_potential_certificate(const ImprovementGraph& graph) {
  const auto order = detail::topological_order(graph);
  if (!order) return std::nullopt;
  std::vector<std::int64_t> potential(graph.node_count(), 0);
  for (auto v : *order) {
    for (auto w : graph.successors[v]) potential[w] = std::max(potential[w], potential[v] + 1);
  }
  return potential;
}

inline std::optional<std::vector<std::int64_t>> ordinal_potential_certificate(const Game& g,
                                                                              std::size_t cap = kDefaultCellCap) {
  return ordinal_potential_certificate(improvement_graph(g, cap));
}

/// Every edge of `graph` strictly increases `potential`.
inline bool certifies(const ImprovementGraph& graph, const std::vector<std::int64_t>& potential) {
  if (potential.size() != graph.node_count()) return false;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    for (auto w : graph.successors[v]) {
      if (potential[w] <= potential[v]) return false;
    }
  }
  return true;
}

}  // namespace selfish
