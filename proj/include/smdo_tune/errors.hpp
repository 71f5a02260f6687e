#pragma once

#include <stdexcept>
#include <string>

namespace smdo_tune {

// Invalid configuration, contract violation or malformed input.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem read/write failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smdo_tune
