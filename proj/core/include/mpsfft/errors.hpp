#pragma once

#include <stdexcept>
#include <string>

namespace mpsfft {

/// Raised when an internal consistency check fails. The CLI maps this to
/// exit code 2, as opposed to input validation errors (std::invalid_argument,
/// exit code 1).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mpsfft
