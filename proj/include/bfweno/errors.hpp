#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bfweno {

/// Invalid parameters supplied when building a grid, geometry or case.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input from the command line or misuse of an API shape.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unphysical or non-finite state encountered during a run.
class StateError : public std::runtime_error {
 public:
  StateError(const std::string& what, std::ptrdiff_t node, double time)
      : std::runtime_error(what + " (node " + std::to_string(node) +
                           ", t = " + std::to_string(time) + ")"),
        node_(node),
        time_(time) {}

  std::ptrdiff_t node() const noexcept { return node_; }
  double time() const noexcept { return time_; }

 private:
  std::ptrdiff_t node_;
  double time_;
};

/// Broken internal invariant (e.g. a frozen operator reused on the wrong state).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfweno
