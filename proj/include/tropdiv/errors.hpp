#pragma once

#include <stdexcept>
#include <string>

namespace tropdiv {

// Malformed input: bad file, unknown identifier, invalid length. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input outside an operation's domain. CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Two independent computations disagreed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tropdiv
