#include "sppe/good_types.hpp"

#include <algorithm>
#include <map>

#include "sppe/error.hpp"

namespace sppe {

TypePartition partition_good_types(const Instance& inst) {
  TypePartition part;
  part.original_m = inst.m;

  // Columns are compared exactly; the map key is the column itself.
  std::map<RatVector, std::size_t> type_of_column;
  for (std::size_t j = 0; j < inst.m; ++j) {
    RatVector column(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) column[i] = inst.value(i, j);
    auto [it, inserted] = type_of_column.try_emplace(std::move(column), part.types.size());
    if (inserted) part.types.emplace_back();
    part.types[it->second].push_back(j);
  }

  Instance& agg = part.aggregated;
  agg.n = inst.n;
  agg.m = part.types.size();
  agg.budgets = inst.budgets;
  agg.valuations = zero_matrix(inst.n, agg.m);
  for (std::size_t t = 0; t < agg.m; ++t) {
    for (std::size_t i = 0; i < inst.n; ++i) {
      for (std::size_t j : part.types[t]) agg.valuations[i][t] += inst.value(i, j);
    }
  }
  return part;
}

Equilibrium expand_equilibrium(const TypePartition& part, const Equilibrium& agg_eq) {
  const std::size_t n = part.aggregated.n;
  const std::size_t types = part.types.size();
  auto rows_ok = [&](const RatMatrix& mat) {
    return mat.size() == n && std::all_of(mat.begin(), mat.end(), [&](const RatVector& r) { return r.size() == types; });
  };
  if (agg_eq.alpha.size() != n || agg_eq.prices.size() != types || agg_eq.lambda.size() != types ||
      !rows_ok(agg_eq.x) || !rows_ok(agg_eq.payments)) {
    throw Error(ErrorKind::DimensionMismatch, "aggregated equilibrium does not match the type partition");
  }

  const std::size_t m = part.original_m;
  Equilibrium eq;
  eq.alpha = agg_eq.alpha;
  eq.x = zero_matrix(n, m);
  eq.payments = zero_matrix(n, m);
  eq.prices.assign(m, Rat(0));
  eq.lambda.assign(m, Rat(0));
  for (std::size_t t = 0; t < types; ++t) {
    const Rat size(static_cast<unsigned long>(part.types[t].size()));
    const Rat price = agg_eq.prices[t] / size;
    const Rat level = agg_eq.lambda[t] / size;
    for (std::size_t j : part.types[t]) {
      eq.prices[j] = price;
      eq.lambda[j] = level;
      for (std::size_t i = 0; i < n; ++i) {
        eq.x[i][j] = agg_eq.x[i][t];
        eq.payments[i][j] = agg_eq.payments[i][t] / size;
      }
    }
  }
  for (std::size_t t : agg_eq.zero_value_goods) {
    if (t >= types) throw Error(ErrorKind::DimensionMismatch, "zero-value good index out of range");
    eq.zero_value_goods.insert(eq.zero_value_goods.end(), part.types[t].begin(), part.types[t].end());
  }
  std::sort(eq.zero_value_goods.begin(), eq.zero_value_goods.end());
  eq.winning_cell = agg_eq.winning_cell;
  return eq;
}

}  // namespace sppe
