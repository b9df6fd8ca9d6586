#pragma once

// Shape checks shared by trees and decision diagrams.

#include "xplain/validation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace xplain::detail {

struct GraphShape {
  std::vector<std::uint32_t> indegree;
  std::vector<bool> reachable;
  /// Kahn order over the whole graph; shorter than the node count iff cyclic.
  std::vector<std::uint32_t> topological;
  bool acyclic() const { return topological.size() == indegree.size(); }
};

/// `children(v, out)` appends the successors of v.
template <class Children>
GraphShape analyze_graph(std::size_t n, std::uint32_t root, Children&& children) {
  GraphShape g;
  g.indegree.assign(n, 0);
  g.reachable.assign(n, false);
  std::vector<std::uint32_t> succ;
  for (std::uint32_t v = 0; v < n; ++v) {
    succ.clear();
    children(v, succ);
    for (auto w : succ) ++g.indegree[w];
  }

  std::vector<std::uint32_t> remaining = g.indegree;
  std::vector<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (remaining[v] == 0) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto v = queue[head];
    g.topological.push_back(v);
    succ.clear();
    children(v, succ);
    for (auto w : succ) {
      if (--remaining[w] == 0) queue.push_back(w);
    }
  }

  if (root < n) {
    std::vector<std::uint32_t> stack{root};
    g.reachable[root] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      succ.clear();
      children(v, succ);
      for (auto w : succ) {
        if (!g.reachable[w]) {
          g.reachable[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return g;
}

/// Reports cycles, nodes not reachable from the root, and (for trees) nodes
/// with more than one parent.
inline void report_shape(const GraphShape& g, std::uint32_t root, bool tree, ValidationReport& report) {
  const std::size_t n = g.indegree.size();
  if (root >= n) {
    report.add("root", "root reference out of range");
    return;
  }
  if (!g.acyclic()) report.add("cycle", "the node graph contains a cycle");
  if (g.indegree[root] != 0) report.add("root", "the root has a parent");
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!g.reachable[v]) report.add("unreachable", "node " + std::to_string(v) + " is not reachable from the root");
    if (tree && v != root && g.indegree[v] > 1) {
      report.add("multiple-parents", "node " + std::to_string(v) + " has " + std::to_string(g.indegree[v]) + " parents");
    }
  }
}

}  // namespace xplain::detail
