#pragma once

#include <stdexcept>
#include <string>

namespace adelharm {

// Error taxonomy shared by all modules.  The kind is stable API: the CLI
// maps schema errors to exit code 2 and resource-cap errors to exit code 3.
enum class ErrorKind {
  conductor,     // cyclotomic conductor mismatch
  parent,        // operands attached to different groups/objects
  compose,       // non-composable morphisms
  window,        // window not covered by a provider, or no common window
  morphism,      // ill-defined morphism (well-definedness or commutation)
  precondition,  // documented precondition violated
  degenerate,    // degenerate input (e.g. zero object where nonzero required)
  schema,        // scenario validation failure
  resource,      // configured resource cap exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline void require(bool cond, ErrorKind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

}  // namespace adelharm
