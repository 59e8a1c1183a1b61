#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "sppe/rational.hpp"

namespace sppe {

// Witness index reserved for the dummy buyer whose paced bid is always 0.
inline constexpr std::size_t kDummyWitness = std::numeric_limits<std::size_t>::max();

// One second-price witness per good: a buyer index or kDummyWitness.
using WitnessTuple = std::vector<std::size_t>;

struct WinningCell {
  mpz_class state_index;             // canonical position of the winning cell state
  std::vector<std::size_t> regions;  // region index per axis for that state
  WitnessTuple witnesses;            // indices refer to the reduced instance's goods
  Rat delta;                         // optimal strictness slack of the winning system
};

struct Equilibrium {
  RatVector alpha;     // n
  RatMatrix x;         // n x m
  RatVector prices;    // m
  RatMatrix payments;  // n x m, payments[i][j] = x[i][j] * prices[j]
  RatVector lambda;    // m, highest paced bid per good
  WinningCell winning_cell;
  // Goods with an all-zero valuation column, reported at zero allocation
  // and zero price.
  std::vector<std::size_t> zero_value_goods;
};

}  // namespace sppe
