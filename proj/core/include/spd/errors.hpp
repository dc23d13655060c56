#pragma once

#include <stdexcept>

namespace spd {

// Thrown when an operation would exceed a configured memory or size budget,
// or when a required file is missing or unreadable.  The message always
// states the budget or path involved.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a data file has the right location but the wrong contents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spd
