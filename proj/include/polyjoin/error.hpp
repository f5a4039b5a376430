#pragma once

#include <stdexcept>
#include <string>

namespace polyjoin {

/// Failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorKind {
  invalid_argument,  ///< precondition violated (unknown vertex, overlapping join, ...)
  parse,             ///< malformed JSON input
  guardrail,         ///< input exceeds a configured size bound
  divergence,        ///< two construction routes disagree (a bug, never expected)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::invalid_argument, what); }

}  // namespace polyjoin
