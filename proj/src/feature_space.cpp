#include "xplain/feature_space.hpp"

#include "xplain/error.hpp"

#include <set>

namespace xplain {

std::vector<std::uint32_t> members(const IndexSet& set) {
  std::vector<std::uint32_t> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != IndexSet::npos; i = set.find_next(i)) {
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

IndexSet make_set(std::size_t universe, std::initializer_list<std::uint32_t> items) {
  return make_set(universe, std::vector<std::uint32_t>(items));
}

IndexSet make_set(std::size_t universe, const std::vector<std::uint32_t>& items) {
  IndexSet s(universe);
  for (auto i : items) {
    if (i >= universe) fail(ErrorKind::InvalidArgument, "set member out of range");
    s.set(i);
  }
  return s;
}

FeatureSpace::FeatureSpace(std::vector<FeatureDecl> features) : features_(std::move(features)) {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const auto& f = features_[i];
    if (f.id.empty()) fail(ErrorKind::ValidationError, "feature with empty id");
    if (!by_id_.emplace(f.id, static_cast<FeatureIndex>(i)).second) {
      fail(ErrorKind::ValidationError, "duplicate feature id '" + f.id + "'");
    }
    if (f.categorical()) {
      const auto& values = f.categories();
      std::set<std::string> distinct(values.begin(), values.end());
      if (distinct.size() != values.size()) {
        fail(ErrorKind::ValidationError, "feature '" + f.id + "' repeats a domain value");
      }
      if (values.size() < 2) {
        fail(ErrorKind::ValidationError, "categorical feature '" + f.id + "' needs at least 2 values");
      }
    } else {
      const auto& d = f.numerical_domain();
      if (!(d.min < d.max) || d.min.is_pos_inf() || d.max.is_neg_inf()) {
        fail(ErrorKind::ValidationError, "numerical feature '" + f.id + "' needs min < max");
      }
    }
  }
}

FeatureIndex FeatureSpace::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  fail(ErrorKind::UnknownFeature, "unknown feature '" + std::string(id) + "'");
}

std::optional<FeatureIndex> FeatureSpace::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

bool FeatureSpace::all_categorical() const {
  for (const auto& f : features_) {
    if (!f.categorical()) return false;
  }
  return true;
}

std::optional<CategoryIndex> FeatureSpace::category(FeatureIndex i, std::string_view value) const {
  const auto& values = features_[i].categories();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == value) return static_cast<CategoryIndex>(k);
  }
  return std::nullopt;
}

Count FeatureSpace::entity_count() const {
  Count total = 1;
  for (const auto& f : features_) {
    if (!f.categorical()) fail(ErrorKind::NonCategoricalFeature, "feature '" + f.id + "' is numerical");
    total *= f.categories().size();
  }
  return total;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

void check_value(const FeatureSpace& space, FeatureIndex feature, const Value& value) {
  const auto& f = space[feature];
  if (f.categorical()) {
    const auto* c = std::get_if<CategoryIndex>(&value);
    if (c == nullptr || *c >= f.categories().size()) {
      fail(ErrorKind::OutOfDomainValue, "value outside the domain of '" + f.id + "'");
    }
    return;
  }
  const auto* r = std::get_if<Rational>(&value);
  const auto& d = f.numerical_domain();
  if (r == nullptr || ExtReal(*r) < d.min || d.max < ExtReal(*r)) {
    fail(ErrorKind::OutOfDomainValue, "value outside the domain of '" + f.id + "'");
  }
}

Entity::Entity(const FeatureSpace& space, std::vector<Value> values) : values_(std::move(values)) {
  if (values_.size() != space.size()) {
    fail(ErrorKind::MissingFeature, "entity assigns " + std::to_string(values_.size()) + " of " +
                                        std::to_string(space.size()) + " features");
  }
  for (FeatureIndex i = 0; i < values_.size(); ++i) check_value(space, i, values_[i]);
}

Entity Entity::with_value(const FeatureSpace& space, FeatureIndex feature, Value value) const {
  check_value(space, feature, value);
  return with_value_unchecked(feature, std::move(value));
}

Entity Entity::with_value_unchecked(FeatureIndex feature, Value value) const {
  Entity copy = *this;
  copy.values_[feature] = std::move(value);
  return copy;
}

std::string value_to_string(const FeatureSpace& space, FeatureIndex feature, const Value& value) {
  if (const auto* c = std::get_if<CategoryIndex>(&value)) return space[feature].categories().at(*c);
  return to_string(std::get<Rational>(value));
}

}  // namespace xplain
