#pragma once

#include "xplain/cnf.hpp"
#include "xplain/fbdd.hpp"
#include "xplain/tree.hpp"

#include <variant>

namespace xplain {

/// Any classifier the engine understands. All share `evaluate`.
using Model = std::variant<DecisionTree, Fbdd, CnfFormula>;

const SpacePtr& space_of(const Model& m);
ClassLabel class_count(const Model& m);
std::string_view kind_name(const Model& m);

ClassLabel evaluate(const Model& m, const Entity& e);
Model condition(const Model& m, FeatureIndex feature, const Value& value);
/// Trees and FBDDs only; throws NotBoolean / UnsupportedModel.
Model negate(const Model& m);
/// Both operands must be of the same kind.
Model disjoint_disjunction(const Model& m1, const Model& m2, FeatureIndex fresh);
ValidationReport validate(const Model& m);

bool tests_feature(const Model& m, FeatureIndex f);
std::vector<Rational> thresholds(const Model& m, FeatureIndex f);

/// One value per class of entities the model cannot tell apart along `f`:
/// every category, or one exact point per threshold-induced cell.
std::vector<Value> representatives(const Model& m, FeatureIndex f);

/// Cell representatives of a numerical feature given sorted thresholds.
std::vector<Value> cell_representatives(const FeatureSpace& space, FeatureIndex f,
                                        std::span<const Rational> thresholds);

/// Boolean decision tree for a 2-class model; FBDDs are unfolded and CNFs
/// compiled by case splitting. Throws BudgetExceeded past `max_nodes`.
DecisionTree as_tree(const Model& m, std::size_t max_nodes = 1u << 22);

}  // namespace xplain
