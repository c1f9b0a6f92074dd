#pragma once

#include <stdexcept>
#include <string>

namespace rfq {

/// Malformed language bias or conjunction (bad modes, fresh variables under negation).
class BiasError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid run configuration or learner parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulator misuse: illegal actions, empty action sets, unknown objects.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not follow one of the on-disk formats.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfq
