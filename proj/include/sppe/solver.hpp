#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sppe/equilibrium.hpp"
#include "sppe/geometry.hpp"
#include "sppe/instance.hpp"
#include "sppe/lp.hpp"

namespace sppe {

// R_j(F) per good, dummy first then buyers ascending, and the unique top
// bidder w_j when |T_j(F)| = 1.
struct WitnessSets {
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::optional<std::size_t>> sole_top_bidder;
};

// Work tallies. Every counter is exact.
struct WorkCounters {
  std::uint64_t lps_solved = 0;
  std::uint64_t lps_feasible = 0;
  std::uint64_t witness_tuples_tried = 0;
  std::uint64_t cells_with_nonempty_witness_sets = 0;

  WorkCounters& operator+=(const WorkCounters& other);
};

enum class WitnessCheck {
  // Cell rows plus dominance rows form a ratio system (every bid is a
  // constant or a multiple of one lambda_k); decided exactly by closure.
  RatioClosure,
  // The same rows as a FeasibilitySystem through the simplex; counted in
  // lps_solved. Slower, kept for cross-checking.
  LinearProgram,
};

// Second-price witness sets for a cell. nullopt when some R_j(F) is empty
// (the cell cannot hold an equilibrium).
std::optional<WitnessSets> witness_sets(const CellGeometry& geo, const CellState& state,
                                        const CellDerivation& derivation, WorkCounters* counters = nullptr,
                                        WitnessCheck check = WitnessCheck::RatioClosure);

// Canonical lexicographic product over R_j(F), dummy before buyers. Goods
// with |T_j(F)| >= 2 contribute only their smallest top bidder.
std::vector<WitnessTuple> enumerate_witness_tuples(const WitnessSets& ws);

// The complete linear system for one (cell, witness tuple) pair over
// lambda, y and delta. Throws UnknownWitness when a tuple entry is not in
// its witness set.
FeasibilitySystem build_system(const CellGeometry& geo, const CellState& state, const CellDerivation& derivation,
                               const WitnessSets& ws, const WitnessTuple& tuple);

// Turns a feasible outcome into (alpha, x, prices, payments, lambda).
// Throws InternalInconsistency if the payments do not add up to a price.
Equilibrium recover(const Instance& inst, const CellState& state, const CellDerivation& derivation,
                    const WitnessTuple& tuple, const FeasibilityOutcome& outcome);

struct SolverConfig {
  std::size_t max_goods = 4;
  std::size_t parallel = 1;   // worker threads; 1 runs inline
  std::size_t batch_size = 32;  // cells handed to the workers at a time
  // Skip cells and tuples whose budget rows are provably unsatisfiable
  // before building the equilibrium system. Off only to cross-check.
  bool budget_screens = true;
};

struct RunStats {
  mpz_class states_enumerated;  // canonical positions up to and including the winner
  std::uint64_t states_consistent = 0;
  WorkCounters work;
  double wall_time_ms = 0;
  std::optional<mpz_class> winning_state_index;
  std::optional<WitnessTuple> winning_tuple;
  std::size_t goods_after_preprocessing = 0;
};

struct SolveResult {
  Equilibrium equilibrium;
  RunStats stats;
};

// Errors: GoodsLimitExceeded when more than config.max_goods goods remain
// after removing unvalued goods; NoEquilibriumFound signals a bug.
SolveResult solve(const Instance& inst, const SolverConfig& config = {});

// Aggregates goods by valuation column, solves the aggregate and expands.
SolveResult solve_by_types(const Instance& inst, const SolverConfig& config = {});

}  // namespace sppe
