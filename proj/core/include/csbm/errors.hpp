#pragma once

#include <stdexcept>
#include <string>

namespace csbm {

// Iterative special-function evaluation failed to converge, or an internal
// numeric consistency check tripped. The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration, malformed input file, or inconsistent run setup.
// The CLI maps this to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace csbm
