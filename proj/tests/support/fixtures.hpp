#pragma once

#include "xplain/hypergraph.hpp"
#include "xplain/model.hpp"

#include <random>
#include <string>
#include <vector>

namespace xplain::testing {

struct Instance {
  SpacePtr space;
  Model model;
  Entity entity;
};

/// The five-variable CNF with e = (0,0,1,1,0).
Instance phi();
/// The movie-recommendation tree with e = (Dur 90, Rate 0.85, Year 2005, Hst 0).
Instance movies();

SpacePtr binary_space(std::size_t n, const std::string& prefix = "x");
FeatureSet features(const FeatureSpace& space, std::initializer_list<const char*> ids);
std::vector<std::vector<std::string>> named(const FeatureSpace& space, const std::vector<FeatureSet>& family);

/// Every entity of a categorical space, in mixed-radix order (first feature fastest).
std::vector<Entity> all_entities(const FeatureSpace& space);

using Rng = std::mt19937_64;

struct SpaceShape {
  std::size_t min_features = 1;
  std::size_t max_features = 5;
  std::size_t max_domain = 3;
  /// Chance that a feature is numerical.
  double numerical = 0.0;
};

/// Numerical features range over [0, 10] and are split on the grid {2,4,5,6,8}.
SpacePtr random_space(Rng& rng, const SpaceShape& shape);
const std::vector<Rational>& threshold_grid();

struct TreeShape {
  std::size_t max_nodes = 15;
  ClassLabel classes = 2;
  /// Chance of splitting a node while the budget allows.
  double split = 0.7;
};

DecisionTree random_tree(Rng& rng, const SpacePtr& space, const TreeShape& shape);
/// A uniformly drawn entity; numerical values come from the grid, the domain
/// bounds and points between them.
Entity random_entity(Rng& rng, const FeatureSpace& space);

/// A read-once diagram over the binary space, sharing subdiagrams where the
/// read-once property allows.
Fbdd random_fbdd(Rng& rng, const SpacePtr& space, std::size_t max_internal = 12);

Hypergraph random_hypergraph(Rng& rng, std::size_t nodes, std::size_t max_edges);

/// A full tree with `leaves` leaves over categorical features of the given
/// domain size; tests are singletons or small value sets.
DecisionTree wide_tree(Rng& rng, std::size_t features, std::size_t domain, std::size_t leaves);

/// A tree with about `nodes` nodes of bounded depth mixing numerical and
/// categorical tests.
DecisionTree large_mixed_tree(Rng& rng, std::size_t nodes);

}  // namespace xplain::testing
