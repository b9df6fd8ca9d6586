#pragma once

#include "xplain/feature_space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xplain {

using NodeId = std::uint32_t;
using NodeSet = IndexSet;

/// Default cap on candidate sets examined by the exponential searches.
inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// H = (V, E) with V = {0, ..., n-1}. Edges are nonempty, deduplicated and
/// kept in first-occurrence order.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws InvalidArgument on an empty edge or an edge over the wrong universe.
  Hypergraph(std::size_t node_count, std::vector<NodeSet> edges);
  Hypergraph(std::vector<std::string> labels, std::vector<NodeSet> edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<NodeSet>& edges() const noexcept { return edges_; }
  const NodeSet& edge(std::size_t i) const { return edges_[i]; }

  /// Indices of the edges containing v.
  const std::vector<std::size_t>& incident(NodeId v) const { return incident_[v]; }
  std::size_t degree(NodeId v) const { return incident_[v].size(); }

  /// |V| + sum of edge sizes.
  std::size_t size() const;

  NodeSet empty_set() const { return NodeSet(node_count()); }
  NodeSet all_nodes() const { return NodeSet(node_count()).set(); }

 private:
  std::vector<std::string> labels_;
  std::vector<NodeSet> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Throws UnknownNode when `s` is not a subset of the nodes of `h`.
bool is_hitting_set(const Hypergraph& h, const NodeSet& s);

/// Hitting set whose every node has a private edge, i.e. no node can go.
bool is_minimal_hitting_set(const Hypergraph& h, const NodeSet& s);

/// Drops nodes from `s` in ascending id order while it still hits every
/// edge. Throws NotAHittingSet.
NodeSet minimize_hitting_set(const Hypergraph& h, const NodeSet& s);

/// A minimal hitting set containing `w`, found by choosing for every w in W
/// an edge that only w may hit. Throws BudgetExceeded after `budget`
/// witness choices.
std::optional<NodeSet> minimal_hitting_set_containing(const Hypergraph& h, const NodeSet& w,
                                                      std::uint64_t budget = kDefaultSearchBudget);

/// Up to k distinct minimal hitting sets containing v, in discovery order.
std::vector<NodeSet> k_minimal_hitting_sets_containing(const Hypergraph& h, NodeId v, std::size_t k,
                                                       std::uint64_t budget = kDefaultSearchBudget);

/// Keeps the inclusion-minimal edges.
Hypergraph remove_superset_edges(const Hypergraph& h);

/// Sorts by size, then lexicographically by members. Used to compare families.
void sort_family(std::vector<IndexSet>& family);

}  // namespace xplain
