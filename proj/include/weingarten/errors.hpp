#pragma once

#include <stdexcept>
#include <string>

namespace weingarten {

/// A mathematically invalid request: a pole, a non-invertible element,
/// a dimension outside an operation's domain, or a cost bound exceeded.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace weingarten
