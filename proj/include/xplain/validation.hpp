#pragma once

#include <string>
#include <vector>

namespace xplain {

struct Violation {
  std::string code;  ///< e.g. "cycle", "read-once", "test-set"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  bool has(const std::string& code) const {
    for (const auto& v : violations) {
      if (v.code == code) return true;
    }
    return false;
  }
  /// Throws ValidationError listing the first violation.
  void raise_if_failed(const std::string& what) const;
};

}  // namespace xplain
