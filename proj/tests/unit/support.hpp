#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "sppe/instance.hpp"
#include "sppe/rational.hpp"

namespace sppe::testing {

inline Rat q(const char* text) { return parse_rat(text); }

inline RatVector vec(std::initializer_list<const char*> items) {
  RatVector out;
  for (const char* s : items) out.push_back(parse_rat(s));
  return out;
}

inline Instance make_instance(std::initializer_list<std::initializer_list<const char*>> values,
                              std::initializer_list<const char*> budgets) {
  RawInstance raw;
  for (const auto& row : values) raw.valuations.push_back(vec(row));
  raw.budgets = vec(budgets);
  raw.n = raw.valuations.size();
  raw.m = raw.n == 0 ? 0 : raw.valuations[0].size();
  return validate_instance(raw);
}

}  // namespace sppe::testing
