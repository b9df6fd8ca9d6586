#include "xplain/error.hpp"

namespace xplain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingFeature: return "MissingFeature";
    case ErrorKind::UnknownFeature: return "UnknownFeature";
    case ErrorKind::OutOfDomainValue: return "OutOfDomainValue";
    case ErrorKind::NotBoolean: return "NotBoolean";
    case ErrorKind::FeatureSpaceMismatch: return "FeatureSpaceMismatch";
    case ErrorKind::FeatureNotFresh: return "FeatureNotFresh";
    case ErrorKind::BadClass: return "BadClass";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::NotAHittingSet: return "NotAHittingSet";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EntityRejected: return "EntityRejected";
    case ErrorKind::NonCategoricalFeature: return "NonCategoricalFeature";
    case ErrorKind::DuplicateEntity: return "DuplicateEntity";
    case ErrorKind::ReadOnceViolation: return "ReadOnceViolation";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace xplain
