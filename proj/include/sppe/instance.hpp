#pragma once

#include <cstddef>

#include "sppe/rational.hpp"

namespace sppe {

// Unvalidated input as read from JSON or constructed by callers.
struct RawInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  RatMatrix valuations;  // n rows of m entries
  RatVector budgets;     // n entries
};

// A second-price pacing game: n buyers, m goods, valuations v[i][j] >= 0
// and budgets B[i] > 0. Only validate_instance produces one from raw data.
struct Instance {
  std::size_t n = 0;
  std::size_t m = 0;
  RatMatrix valuations;
  RatVector budgets;

  const Rat& value(std::size_t buyer, std::size_t good) const { return valuations[buyer][good]; }
};

// Errors (1-based indices in messages, matching the JSON contract):
// ShapeMismatch, NonPositiveBudget, NegativeValuation.
Instance validate_instance(const RawInstance& raw);

}  // namespace sppe
