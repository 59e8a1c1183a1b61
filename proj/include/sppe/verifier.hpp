#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sppe/instance.hpp"
#include "sppe/rational.hpp"

namespace sppe {

// Result of one equilibrium condition: the first violating buyer (and good,
// where the condition is per cell of x) plus the exact quantities compared.
struct ConditionCheck {
  bool holds = true;
  std::optional<std::size_t> buyer;
  std::optional<std::size_t> good;
  std::string detail;
};

// Exact check of the four pacing-equilibrium conditions:
//   (a) x_ij > 0        =>  alpha_i v_ij = h_j
//   (b) h_j > 0         =>  sum_i x_ij = 1
//   (c) sum_j x_ij p_j  <=  B_i
//   (d) sum_j x_ij p_j < B_i  =>  alpha_i = 1
// h_j and p_j are recomputed here from alpha and the valuations alone.
struct VerificationReport {
  bool pass = false;
  ConditionCheck preconditions;  // shapes, alpha and x in [0,1], column sums <= 1
  ConditionCheck a, b, c, d;
  RatVector highest_bid;  // h_j
  RatVector price;        // p_j
  RatVector spend;        // per buyer

  // "precondition", "a", "b", "c", "d", or "" when everything holds.
  std::string first_failure() const;
};

// Second price under the dummy convention: the top bid if it is tied,
// otherwise the best losing bid, or 0 when nobody else bids.
Rat second_price(const RatVector& bids);

VerificationReport verify_equilibrium(const Instance& inst, const RatVector& alpha, const RatMatrix& x);

struct GridCandidate {
  RatVector alpha;
  RatMatrix x;
};

// Scans alpha over {0, 1/res, ..., 1}^n and, for each, the extreme
// allocations consistent with the top-bidder sets (plus the budget-split
// allocation for a single good). Returns the candidates that pass
// verify_equilibrium exactly. Limited to n <= 3 and m <= 2; throws
// InstanceTooLarge otherwise.
std::vector<GridCandidate> grid_oracle(const Instance& inst, unsigned resolution);

}  // namespace sppe
