#include "sppe/preprocess.hpp"

#include "sppe/error.hpp"

namespace sppe {

PreprocessReport preprocess(const Instance& inst) {
  PreprocessReport report;
  for (std::size_t j = 0; j < inst.m; ++j) {
    bool valued = false;
    for (std::size_t i = 0; i < inst.n && !valued; ++i) valued = sgn(inst.value(i, j)) > 0;
    (valued ? report.good_index_map : report.removed_goods).push_back(j);
  }

  Instance& reduced = report.reduced;
  reduced.n = inst.n;
  reduced.m = report.good_index_map.size();
  reduced.budgets = inst.budgets;
  reduced.valuations.assign(inst.n, RatVector{});
  for (std::size_t i = 0; i < inst.n; ++i) {
    reduced.valuations[i].reserve(reduced.m);
    for (std::size_t j : report.good_index_map) reduced.valuations[i].push_back(inst.value(i, j));
  }
  return report;
}

Equilibrium reinsert_removed_goods(const PreprocessReport& report, const Instance& original,
                                   const Equilibrium& reduced_eq) {
  const std::size_t n = original.n;
  const std::size_t m = original.m;
  if (reduced_eq.alpha.size() != n || reduced_eq.x.size() != n || reduced_eq.payments.size() != n ||
      reduced_eq.prices.size() != report.reduced.m || reduced_eq.lambda.size() != report.reduced.m) {
    throw Error(ErrorKind::DimensionMismatch, "reduced equilibrium does not match the reduced instance");
  }

  Equilibrium eq;
  eq.alpha = reduced_eq.alpha;
  eq.x = zero_matrix(n, m);
  eq.payments = zero_matrix(n, m);
  eq.prices.assign(m, Rat(0));
  eq.lambda.assign(m, Rat(0));
  for (std::size_t k = 0; k < report.good_index_map.size(); ++k) {
    const std::size_t j = report.good_index_map[k];
    eq.prices[j] = reduced_eq.prices[k];
    eq.lambda[j] = reduced_eq.lambda[k];
    for (std::size_t i = 0; i < n; ++i) {
      eq.x[i][j] = reduced_eq.x[i][k];
      eq.payments[i][j] = reduced_eq.payments[i][k];
    }
  }
  eq.winning_cell = reduced_eq.winning_cell;
  eq.zero_value_goods = report.removed_goods;
  return eq;
}

}  // namespace sppe
