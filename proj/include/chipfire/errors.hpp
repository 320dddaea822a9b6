#pragma once

#include <stdexcept>
#include <string>

namespace chipfire {

/// Invalid input or an out-of-domain request (CLI exit code 1).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A broken internal invariant (CLI exit code 2).
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chipfire
