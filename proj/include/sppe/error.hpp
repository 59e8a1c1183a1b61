#pragma once

#include <stdexcept>
#include <string>

namespace sppe {

enum class ErrorKind {
  Parse,
  ShapeMismatch,
  NonPositiveBudget,
  NegativeValuation,
  DimensionMismatch,
  InconsistentState,
  UnknownWitness,
  GoodsLimitExceeded,
  NoEquilibriumFound,
  InternalInconsistency,
  InstanceTooLarge,
};

const char* to_string(ErrorKind kind);

// Every failure the library reports is an Error carrying its kind, so the
// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sppe
