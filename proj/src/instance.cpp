#include "sppe/instance.hpp"

#include <string>

#include "sppe/error.hpp"

namespace sppe {

Instance validate_instance(const RawInstance& raw) {
  if (raw.n == 0) throw Error(ErrorKind::ShapeMismatch, "instance needs at least one buyer");
  if (raw.valuations.size() != raw.n) {
    throw Error(ErrorKind::ShapeMismatch, "valuations has " + std::to_string(raw.valuations.size()) +
                                              " rows, expected n = " + std::to_string(raw.n));
  }
  if (raw.budgets.size() != raw.n) {
    throw Error(ErrorKind::ShapeMismatch, "budgets has " + std::to_string(raw.budgets.size()) +
                                              " entries, expected n = " + std::to_string(raw.n));
  }
  for (std::size_t i = 0; i < raw.n; ++i) {
    if (raw.valuations[i].size() != raw.m) {
      throw Error(ErrorKind::ShapeMismatch, "valuation row " + std::to_string(i + 1) + " has " +
                                                std::to_string(raw.valuations[i].size()) +
                                                " entries, expected m = " + std::to_string(raw.m));
    }
  }
  for (std::size_t i = 0; i < raw.n; ++i) {
    if (sgn(raw.budgets[i]) <= 0) {
      throw Error(ErrorKind::NonPositiveBudget, "NonPositiveBudget(" + std::to_string(i + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < raw.n; ++i) {
    for (std::size_t j = 0; j < raw.m; ++j) {
      if (sgn(raw.valuations[i][j]) < 0) {
        throw Error(ErrorKind::NegativeValuation,
                    "NegativeValuation(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return Instance{raw.n, raw.m, raw.valuations, raw.budgets};
}

}  // namespace sppe
