#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sppe/instance.hpp"

namespace sppe {

// Random instances with bounded rational entries a/d, d <= max_denominator.
struct GeneratorConfig {
  std::size_t n = 2;
  std::size_t m = 1;
  // When set, exactly this many distinct valuation columns are spread
  // over the m goods (every type is used at least once; requires m >= types).
  std::optional<std::size_t> types;
  std::uint64_t seed = 1;
  long value_min = 1;
  long value_max = 100;
  long budget_min = 1;
  long budget_max = 50;
  unsigned max_denominator = 4;
  // Probability that a valuation is 0 (tests the v_ij = 0 paths).
  double zero_probability = 0.0;
};

// Deterministic for a fixed config. Throws Error(Parse) on invalid ranges.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace sppe
