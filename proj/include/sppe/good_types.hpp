#pragma once

#include <cstddef>
#include <vector>

#include "sppe/equilibrium.hpp"
#include "sppe/instance.hpp"

namespace sppe {

// Goods grouped by identical valuation column. Types are numbered in order
// of their first (lowest-index) member.
struct TypePartition {
  std::vector<std::vector<std::size_t>> types;  // S_tau, ascending good indices
  Instance aggregated;                          // one good per type, summed values
  std::size_t original_m = 0;

  const std::vector<std::size_t>& members(std::size_t type) const { return types[type]; }
};

TypePartition partition_good_types(const Instance& inst);

// Copies each aggregate allocation onto every member good. Prices,
// payments and lambda are split evenly over the |S_tau| members, so each
// buyer's total payment is unchanged. Throws DimensionMismatch when the
// aggregated equilibrium's shape disagrees with the partition.
Equilibrium expand_equilibrium(const TypePartition& part, const Equilibrium& agg_eq);

}  // namespace sppe
