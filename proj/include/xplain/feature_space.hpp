#pragma once

#include "xplain/numeric.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace xplain {

using FeatureIndex = std::uint32_t;
using CategoryIndex = std::uint32_t;
using ClassLabel = std::uint32_t;

/// Dense set over a contiguous index range: features, hypergraph nodes or
/// categorical values.
using IndexSet = boost::dynamic_bitset<>;
using FeatureSet = IndexSet;
using ValueSet = IndexSet;

std::vector<std::uint32_t> members(const IndexSet& set);
IndexSet make_set(std::size_t universe, std::initializer_list<std::uint32_t> items);
IndexSet make_set(std::size_t universe, const std::vector<std::uint32_t>& items);

struct CategoricalDomain {
  std::vector<std::string> values;
  friend bool operator==(const CategoricalDomain&, const CategoricalDomain&) = default;
};

struct NumericalDomain {
  ExtReal min;
  ExtReal max;
  friend bool operator==(const NumericalDomain&, const NumericalDomain&) = default;
};

struct FeatureDecl {
  std::string id;
  std::variant<CategoricalDomain, NumericalDomain> domain;

  bool categorical() const { return std::holds_alternative<CategoricalDomain>(domain); }
  bool binary() const { return categorical() && categories().size() == 2; }
  const CategoricalDomain& categorical_domain() const { return std::get<CategoricalDomain>(domain); }
  const std::vector<std::string>& categories() const { return categorical_domain().values; }
  const NumericalDomain& numerical_domain() const { return std::get<NumericalDomain>(domain); }

  friend bool operator==(const FeatureDecl&, const FeatureDecl&) = default;
};

/// Ordered feature universe. Immutable once built.
class FeatureSpace {
 public:
  /// Throws ValidationError on duplicate ids, categorical domains with fewer
  /// than two distinct values, or numerical bounds with min >= max.
  explicit FeatureSpace(std::vector<FeatureDecl> features);

  std::size_t size() const noexcept { return features_.size(); }
  const FeatureDecl& operator[](FeatureIndex i) const { return features_[i]; }
  const std::vector<FeatureDecl>& features() const noexcept { return features_; }

  /// Throws UnknownFeature.
  FeatureIndex index_of(std::string_view id) const;
  std::optional<FeatureIndex> find(std::string_view id) const;

  bool categorical(FeatureIndex i) const { return features_[i].categorical(); }
  bool all_categorical() const;
  std::size_t domain_size(FeatureIndex i) const { return features_[i].categories().size(); }
  std::optional<CategoryIndex> category(FeatureIndex i, std::string_view value) const;

  /// Product of categorical domain sizes. Precondition: all_categorical().
  Count entity_count() const;

  ValueSet full_values(FeatureIndex i) const { return ValueSet(domain_size(i)).set(); }
  Interval full_interval(FeatureIndex i) const {
    const auto& d = features_[i].numerical_domain();
    return Interval::domain(d.min, d.max);
  }

  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) { return a.features_ == b.features_; }

 private:
  std::vector<FeatureDecl> features_;
  std::unordered_map<std::string, FeatureIndex> by_id_;
};

using SpacePtr = std::shared_ptr<const FeatureSpace>;

/// Two spaces match when they are the same object or structurally equal.
bool same_space(const SpacePtr& a, const SpacePtr& b);

using Value = std::variant<CategoryIndex, Rational>;

/// Total assignment of in-domain values to every feature of a space.
class Entity {
 public:
  Entity() = default;

  /// Throws MissingFeature when the sizes differ, OutOfDomainValue when a
  /// value is of the wrong kind or outside its domain.
  Entity(const FeatureSpace& space, std::vector<Value> values);

  std::size_t size() const noexcept { return values_.size(); }
  const Value& operator[](FeatureIndex i) const { return values_[i]; }
  CategoryIndex category(FeatureIndex i) const { return std::get<CategoryIndex>(values_[i]); }
  const Rational& number(FeatureIndex i) const { return std::get<Rational>(values_[i]); }
  const std::vector<Value>& values() const noexcept { return values_; }

  /// e_{x=b}. The new value is checked against the space.
  Entity with_value(const FeatureSpace& space, FeatureIndex feature, Value value) const;
  /// e_{x=b} without a domain check, for callers that draw b from the domain.
  Entity with_value_unchecked(FeatureIndex feature, Value value) const;

  friend bool operator==(const Entity&, const Entity&) = default;

 private:
  std::vector<Value> values_;
};

/// Throws OutOfDomainValue unless `value` lies in the domain of `feature`.
void check_value(const FeatureSpace& space, FeatureIndex feature, const Value& value);

std::string value_to_string(const FeatureSpace& space, FeatureIndex feature, const Value& value);

}  // namespace xplain
