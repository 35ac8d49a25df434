#pragma once

#include <stdexcept>
#include <string>

namespace mgw {

/// Malformed or out-of-contract input (bad letter, non-even permutation, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A search or recursion did not finish within its bound.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mgw
