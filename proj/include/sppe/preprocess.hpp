#pragma once

#include <cstddef>
#include <vector>

#include "sppe/equilibrium.hpp"
#include "sppe/instance.hpp"

namespace sppe {

struct PreprocessReport {
  Instance reduced;
  std::vector<std::size_t> removed_goods;    // original indices, ascending
  std::vector<std::size_t> good_index_map;   // reduced index -> original index
};

// Drops every good nobody values. The reduced instance keeps all buyers.
PreprocessReport preprocess(const Instance& inst);

// Lifts an equilibrium of report.reduced back to the original instance.
// Removed goods get zero allocation, zero price, zero payments and
// lambda = 0.
Equilibrium reinsert_removed_goods(const PreprocessReport& report, const Instance& original,
                                   const Equilibrium& reduced_eq);

}  // namespace sppe
