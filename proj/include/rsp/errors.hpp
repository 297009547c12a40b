#pragma once

#include <stdexcept>
#include <string>

namespace rsp {

/// Malformed or inconsistent input: bad labels, wrong lengths, block sums
/// that are not exactly one, and so on. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A desk-scale cap was exceeded (enumeration, lifting or facet sizes).
/// The message names the combinatorial count that triggered the refusal.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a long-running enumeration observes a stop request.
class Cancelled : public std::runtime_error {
 public:
  explicit Cancelled(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rsp
