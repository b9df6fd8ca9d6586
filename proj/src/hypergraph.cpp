#include "xplain/hypergraph.hpp"

#include "xplain/error.hpp"

#include <algorithm>
#include <set>

namespace xplain {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

void check_subset(const Hypergraph& h, const NodeSet& s) {
  if (s.size() != h.node_count()) fail(ErrorKind::UnknownNode, "node set does not match the hypergraph's nodes");
}

void check_node(const Hypergraph& h, NodeId v) {
  if (v >= h.node_count()) fail(ErrorKind::UnknownNode, "node " + std::to_string(v) + " is not in the hypergraph");
}

bool hits(const Hypergraph& h, const NodeSet& s) {
  return std::all_of(h.edges().begin(), h.edges().end(), [&](const NodeSet& b) { return b.intersects(s); });
}

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : left_(limit) {}
  void spend() {
    if (left_ == 0) fail(ErrorKind::BudgetExceeded, "hitting-set search exceeded its candidate budget");
    --left_;
  }

 private:
  std::uint64_t left_;
};

}  // namespace

Hypergraph::Hypergraph(std::size_t node_count, std::vector<NodeSet> edges)
    : Hypergraph(default_labels(node_count), std::move(edges)) {}

Hypergraph::Hypergraph(std::vector<std::string> labels, std::vector<NodeSet> edges)
    : labels_(std::move(labels)), incident_(labels_.size()) {
  std::set<NodeSet> seen;
  for (auto& b : edges) {
    if (b.size() != labels_.size()) fail(ErrorKind::InvalidArgument, "edge over a different node universe");
    if (b.none()) fail(ErrorKind::InvalidArgument, "hypergraph edges must be nonempty");
    if (!seen.insert(b).second) continue;
    for (auto v : members(b)) incident_[v].push_back(edges_.size());
    edges_.push_back(std::move(b));
  }
}

std::size_t Hypergraph::size() const {
  std::size_t n = node_count();
  for (const auto& b : edges_) n += b.count();
  return n;
}

bool is_hitting_set(const Hypergraph& h, const NodeSet& s) {
  check_subset(h, s);
  return hits(h, s);
}

bool is_minimal_hitting_set(const Hypergraph& h, const NodeSet& s) {
  if (!is_hitting_set(h, s)) return false;
  for (auto v : members(s)) {
    bool private_edge = false;
    for (auto i : h.incident(v)) {
      NodeSet rest = h.edge(i) & s;
      if (rest.count() == 1) {
        private_edge = true;
        break;
      }
    }
    if (!private_edge) return false;
  }
  return true;
}

NodeSet minimize_hitting_set(const Hypergraph& h, const NodeSet& s) {
  if (!is_hitting_set(h, s)) fail(ErrorKind::NotAHittingSet, "cannot minimize a set that misses an edge");
  NodeSet out = s;
  for (auto v : members(s)) {
    out.reset(v);
    bool still = std::all_of(h.incident(v).begin(), h.incident(v).end(),
                             [&](std::size_t i) { return h.edge(i).intersects(out); });
    if (!still) out.set(v);
  }
  return out;
}

std::optional<NodeSet> minimal_hitting_set_containing(const Hypergraph& h, const NodeSet& w, std::uint64_t budget) {
  check_subset(h, w);
  const auto ws = members(w);
  Budget left(budget);
  std::optional<NodeSet> found;

  // excluded = union of (B_w \ {w}) over the edges chosen so far.
  auto rec = [&](auto&& self, std::size_t depth, const NodeSet& excluded) -> bool {
    left.spend();
    if (depth == ws.size()) {
      NodeSet candidate = ~excluded;
      if (!hits(h, candidate)) return false;
      found = minimize_hitting_set(h, candidate);
      return true;
    }
    const NodeId v = ws[depth];
    if (excluded.test(v)) return false;
    for (auto i : h.incident(v)) {
      NodeSet others = h.edge(i);
      others.reset(v);
      if (others.intersects(w)) continue;
      if (self(self, depth + 1, excluded | others)) return true;
    }
    return false;
  };
  rec(rec, 0, h.empty_set());
  return found;
}

std::vector<NodeSet> k_minimal_hitting_sets_containing(const Hypergraph& h, NodeId v, std::size_t k,
                                                       std::uint64_t budget) {
  check_node(h, v);
  if (k == 0) fail(ErrorKind::InvalidArgument, "k must be positive");
  Budget left(budget);
  std::vector<NodeSet> out;

  // A new set must have a private edge B at v and miss some s_j of every
  // earlier S_j; both exclusions are removed from V before minimizing.
  auto next = [&]() -> std::optional<NodeSet> {
    std::optional<NodeSet> result;
    auto pick = [&](auto&& self, std::size_t j, const NodeSet& excluded) -> bool {
      left.spend();
      if (j == out.size()) {
        NodeSet candidate = ~excluded;
        if (!hits(h, candidate)) return false;
        result = minimize_hitting_set(h, candidate);
        return true;
      }
      for (auto s : members(out[j])) {
        if (s == v) continue;
        if (excluded.test(s)) return self(self, j + 1, excluded);
      }
      for (auto s : members(out[j])) {
        if (s == v) continue;
        NodeSet more = excluded;
        more.set(s);
        if (self(self, j + 1, more)) return true;
      }
      return false;
    };
    for (auto i : h.incident(v)) {
      NodeSet excluded = h.edge(i);
      excluded.reset(v);
      if (pick(pick, 0, excluded)) return result;
    }
    return std::nullopt;
  };

  while (out.size() < k) {
    auto s = next();
    if (!s) break;
    out.push_back(std::move(*s));
  }
  return out;
}

Hypergraph remove_superset_edges(const Hypergraph& h) {
  std::vector<NodeSet> kept;
  const auto& edges = h.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < edges.size() && !dominated; ++j) {
      dominated = j != i && edges[j].is_proper_subset_of(edges[i]);
    }
    if (!dominated) kept.push_back(edges[i]);
  }
  return Hypergraph(h.labels(), std::move(kept));
}

void sort_family(std::vector<IndexSet>& family) {
  std::sort(family.begin(), family.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return members(a) < members(b);
  });
}

}  // namespace xplain
