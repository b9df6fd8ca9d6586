#include "xplain/relevance.hpp"

#include "xplain/error.hpp"

#include <set>

namespace xplain {

namespace {

void check_feature(const Model& m, FeatureIndex x) {
  if (x >= space_of(m)->size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
}

}  // namespace

RelevanceAnswer is_relevant(const Model& m, const Entity& e, FeatureIndex x) {
  check_feature(m, x);
  const auto h = reason_hypergraph(m, e);
  RelevanceAnswer answer{x, false, std::nullopt};
  if (h.base.degree(x) == 0) return answer;
  NodeSet w = h.base.empty_set();
  w.set(x);
  answer.witness = minimal_hitting_set_containing(h.base, w);
  answer.relevant = answer.witness.has_value();
  return answer;
}

FeatureSet all_relevant(const Model& m, const Entity& e) {
  const auto h = remove_superset_edges(reason_hypergraph(m, e).base);
  FeatureSet out = h.empty_set();
  for (const auto& b : h.edges()) out |= b;
  return out;
}

std::optional<FeatureSet> sufficient_reason_containing(const Model& m, const Entity& e, const FeatureSet& y,
                                                       std::uint64_t budget) {
  const auto h = reason_hypergraph(m, e);
  if (y.size() != h.base.node_count()) fail(ErrorKind::UnknownFeature, "feature set does not match the feature space");
  return minimal_hitting_set_containing(h.base, y, budget);
}

CountOrMore count_sufficient_reasons_with(const Model& m, const Entity& e, FeatureIndex x, std::size_t k,
                                          std::uint64_t budget) {
  check_feature(m, x);
  const auto h = reason_hypergraph(m, e);
  CountOrMore out;
  out.reasons = k_minimal_hitting_sets_containing(h.base, x, k, budget);
  out.at_least_k = out.reasons.size() == k;
  return out;
}

CountOrMore sufficient_reasons(const Model& m, const Entity& e, std::size_t limit, std::uint64_t budget) {
  if (limit == 0) fail(ErrorKind::InvalidArgument, "limit must be positive");
  const auto h = reason_hypergraph(m, e);
  CountOrMore out;
  if (h.base.edges().empty()) {
    out.reasons.push_back(h.base.empty_set());
  } else {
    std::set<NodeSet> found;
    for (NodeId v = 0; v < h.base.node_count() && found.size() < limit; ++v) {
      if (h.base.degree(v) == 0) continue;
      for (auto& s : k_minimal_hitting_sets_containing(h.base, v, limit, budget)) found.insert(std::move(s));
    }
    out.reasons.assign(found.begin(), found.end());
  }
  sort_family(out.reasons);
  if (out.reasons.size() > limit) out.reasons.resize(limit);
  out.at_least_k = out.reasons.size() == limit;
  return out;
}

}  // namespace xplain
