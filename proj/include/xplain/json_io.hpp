#pragma once

#include "xplain/hypergraph.hpp"
#include "xplain/model.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace xplain {

using Json = nlohmann::ordered_json;

/// Parse failures throw ParseError; domain errors keep their own kinds.
SpacePtr parse_feature_space(const Json& j);

/// Builds the model without structural validation, so that `validate` can
/// report every problem. Shared tree leaves are duplicated.
Model parse_model_unchecked(const Json& j, const SpacePtr& space);
/// As above, then throws ValidationError on the first violation.
Model parse_model(const Json& j, const SpacePtr& space);

Entity parse_entity(const Json& j, const FeatureSpace& space);
Hypergraph parse_hypergraph(const Json& j);

/// A model file: `{"feature_space": [...], "model": {...}, "entity": {...}?}`.
struct Document {
  SpacePtr space;
  Model model;
  std::optional<Entity> entity;
};

Document parse_document(const Json& j, bool validate_model = true);
Json read_json_file(const std::string& path);
Document load_document(const std::string& path, bool validate_model = true);

Json to_json(const FeatureSpace& space);
Json to_json(const Model& m);
Json to_json(const FeatureSpace& space, const Entity& e);
Json to_json(const Hypergraph& h);
Json document_to_json(const Document& d);

/// Feature ids of the members, in feature order.
Json feature_set_to_json(const FeatureSpace& space, const FeatureSet& s);
FeatureSet parse_feature_set(const Json& j, const FeatureSpace& space);

}  // namespace xplain
