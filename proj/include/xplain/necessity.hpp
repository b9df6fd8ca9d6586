#pragma once

#include "xplain/model.hpp"

#include <variant>
#include <vector>

namespace xplain {

/// Whether some value of x changes the prediction for e. Numerical features
/// are tried at one representative per threshold cell of the model.
bool is_necessary(const Model& m, const Entity& e, FeatureIndex x);

/// Counts node visits when passed to the routines below.
struct VisitCounter {
  std::size_t visits = 0;
};

/// T_v(e_{x=c}) = 1 for every c in the interval. `t` must be boolean.
bool taut_numeric(const DecisionTree& t, NodeRef v, const Entity& e, FeatureIndex x, const Interval& interval,
                  VisitCounter* counter = nullptr);

/// T_v(e_{x=b}) = 1 for every b in z. `t` must be boolean.
bool taut_categorical(const DecisionTree& t, NodeRef v, const Entity& e, FeatureIndex x, const ValueSet& z,
                      VisitCounter* counter = nullptr);

/// The values of x that leave e's path at `node` (an off-path child), or
/// that stay on it to the end (`node` is then e's leaf).
struct ConsistentValueSet {
  FeatureIndex feature = 0;
  NodeRef node = 0;
  std::variant<Interval, ValueSet> payload;
};

/// The partition of D_x induced along e's path, in path order.
std::vector<ConsistentValueSet> consistent_value_sets(const DecisionTree& t, const Entity& e, FeatureIndex x);

/// All necessary features in one pass over e's path plus one `taut` launch
/// per off-path child.
FeatureSet all_necessary_tree(const DecisionTree& t, const Entity& e, VisitCounter* counter = nullptr);

/// Necessary features of a read-once diagram: x = feature(v) on e's path is
/// necessary iff the two children of v disagree on e. Throws ReadOnceViolation.
FeatureSet all_necessary_fbdd(const Fbdd& d, const Entity& e);

/// Dispatches to the linear routines, or flips every feature for CNFs.
FeatureSet all_necessary(const Model& m, const Entity& e);

}  // namespace xplain
