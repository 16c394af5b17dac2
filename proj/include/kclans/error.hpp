#pragma once

#include <stdexcept>
#include <string>

namespace kclans {

// Raised for invalid input: malformed text, violated preconditions.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when two independent computations disagree. Always a bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace kclans
