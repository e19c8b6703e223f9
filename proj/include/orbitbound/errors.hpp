#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitbound {

/// Malformed input text or file. Carries an optional character offset.
class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);

  explicit ParseError(const std::string& message, std::size_t position = kNoPosition)
      : std::runtime_error(position == kNoPosition
                               ? message
                               : message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a mathematical precondition
/// (cap exceeded, mismatched groups, non-invertible element, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitbound
