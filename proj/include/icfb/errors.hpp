#pragma once

#include <stdexcept>
#include <string>

namespace icfb {

// Malformed or schema-violating input (files, CLI arguments).
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (non-PD log-det argument, ill-conditioned solve).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace icfb
