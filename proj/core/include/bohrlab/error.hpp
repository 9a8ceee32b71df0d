#pragma once

#include <stdexcept>
#include <string>

namespace bohrlab {

// All library failures carry a short machine-readable name (stable across
// releases, used by the CLI and tests) plus a human-readable detail string.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

[[noreturn]] void fail(const std::string& name, const std::string& detail);

// Internal contract violations (postconditions that are supposed to be
// unreachable). Distinct from Error so tests can tell them apart.
class AssertionFailure : public std::logic_error {
 public:
  explicit AssertionFailure(const std::string& what)
      : std::logic_error("assertion failure: " + what) {}
};

void require(bool cond, const std::string& what);

}  // namespace bohrlab
