#include "sppe/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "sppe/error.hpp"
#include "sppe/good_types.hpp"
#include "sppe/preprocess.hpp"

namespace sppe {

WorkCounters& WorkCounters::operator+=(const WorkCounters& other) {
  lps_solved += other.lps_solved;
  lps_feasible += other.lps_feasible;
  witness_tuples_tried += other.witness_tuples_tried;
  cells_with_nonempty_witness_sets += other.cells_with_nonempty_witness_sets;
  return *this;
}

namespace {

// Adds high >= low; returns false once the system is infeasible.
bool add_dominance(RatioSystem& sys, const BidTerm& high, const BidTerm& low) {
  if (sgn(low.coef) == 0) return true;
  if (sgn(high.coef) == 0) return false;
  if (high.node == low.node) return high.coef >= low.coef;
  // low.coef * x_low <= high.coef * x_high
  return sys.bound(low.node, high.node, high.coef / low.coef, false);
}

bool candidate_by_closure(const RatioSystem& cell, const Instance& inst, const CellDerivation& d, std::size_t j,
                          std::size_t w, std::size_t r) {
  RatioSystem sys = cell;
  const BidTerm witness = r == kDummyWitness ? BidTerm{Rat(0), 0} : d.bid_term(inst, r, j);
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (i == w || i == r) continue;
    if (!add_dominance(sys, witness, d.bid_term(inst, i, j))) return false;
  }
  return true;
}

bool candidate_by_lp(const CellGeometry& geo, const CellState& state, const CellDerivation& d, std::size_t j,
                     std::size_t w, std::size_t r, WorkCounters* counters) {
  const Instance& inst = geo.instance();
  const AffineForm witness_bid =
      r == kDummyWitness ? AffineForm{Rat(0), RatVector(inst.m, Rat(0))} : d.bid_form(inst, r, j);
  FeasibilitySystem sys = geo.cell_system(state);
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (i == w || i == r) continue;
    const AffineForm f = witness_bid - d.bid_form(inst, i, j);
    sys.add_greater_equal(f.lambda_terms(), -f.constant, RowOrigin::Dominance);
  }
  const bool feasible = solve_feasibility(sys).feasible;
  if (counters) {
    ++counters->lps_solved;
    if (feasible) ++counters->lps_feasible;
  }
  return feasible;
}

}  // namespace

std::optional<WitnessSets> witness_sets(const CellGeometry& geo, const CellState& state, const CellDerivation& d,
                                        WorkCounters* counters, WitnessCheck check) {
  const Instance& inst = geo.instance();
  WitnessSets ws;
  ws.candidates.resize(inst.m);
  ws.sole_top_bidder.resize(inst.m);
  std::optional<RatioSystem> cell;

  for (std::size_t j = 0; j < inst.m; ++j) {
    const auto& top = d.top_bidders[j];
    if (top.empty()) return std::nullopt;
    if (top.size() >= 2) {
      ws.candidates[j] = top;
      continue;
    }
    const std::size_t w = top.front();
    ws.sole_top_bidder[j] = w;
    if (check == WitnessCheck::RatioClosure && !cell) cell = geo.ratio_system(state);

    std::vector<std::size_t> pool{kDummyWitness};
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (i != w) pool.push_back(i);
    }
    for (std::size_t r : pool) {
      const bool ok = check == WitnessCheck::RatioClosure ? candidate_by_closure(*cell, inst, d, j, w, r)
                                                          : candidate_by_lp(geo, state, d, j, w, r, counters);
      if (ok) ws.candidates[j].push_back(r);
    }
    if (ws.candidates[j].empty()) return std::nullopt;
  }
  if (counters) ++counters->cells_with_nonempty_witness_sets;
  return ws;
}

std::vector<WitnessTuple> enumerate_witness_tuples(const WitnessSets& ws) {
  const std::size_t m = ws.candidates.size();
  std::vector<std::vector<std::size_t>> choices(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (ws.candidates[j].empty()) return {};
    if (ws.sole_top_bidder[j]) {
      choices[j] = ws.candidates[j];
    } else {
      // Tied top bidders all price the good at lambda_j: one system.
      choices[j] = {*std::min_element(ws.candidates[j].begin(), ws.candidates[j].end())};
    }
  }
  std::vector<WitnessTuple> tuples;
  std::vector<std::size_t> pos(m, 0);
  for (;;) {
    WitnessTuple t(m);
    for (std::size_t j = 0; j < m; ++j) t[j] = choices[j][pos[j]];
    tuples.push_back(std::move(t));
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (++pos[j] < choices[j].size()) break;
      pos[j] = 0;
      if (j == 0) return tuples;
    }
    if (m == 0) return tuples;
  }
}

Equilibrium recover(const Instance& inst, const CellState& state, const CellDerivation& d, const WitnessTuple& tuple,
                    const FeasibilityOutcome& outcome) {
  if (!outcome.feasible) throw Error(ErrorKind::InternalInconsistency, "recover called on an infeasible outcome");
  const std::size_t n = inst.n;
  const std::size_t c = inst.m;
  const FeasibilitySystem layout(c, n);

  Equilibrium eq;
  eq.lambda.assign(outcome.point.begin(), outcome.point.begin() + static_cast<long>(c));
  eq.alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) eq.alpha[i] = d.alpha_form(i, c).evaluate(eq.lambda);
  eq.prices.assign(c, Rat(0));
  eq.x = zero_matrix(n, c);
  eq.payments = zero_matrix(n, c);

  for (std::size_t j = 0; j < c; ++j) {
    const auto& top = d.top_bidders[j];
    if (top.empty()) throw Error(ErrorKind::InternalInconsistency, "good without top bidder in a feasible cell");
    const Rat price = tuple[j] == kDummyWitness ? Rat(0) : d.bid_form(inst, tuple[j], j).evaluate(eq.lambda);
    Rat collected = 0;
    for (std::size_t i : top) collected += outcome.point[layout.payment(i, j)];
    if (collected != price) {
      throw Error(ErrorKind::InternalInconsistency,
                  "payments on good " + std::to_string(j + 1) + " do not sum to its price");
    }
    eq.prices[j] = price;
    if (sgn(price) > 0) {
      for (std::size_t i : top) eq.x[i][j] = outcome.point[layout.payment(i, j)] / price;
    } else {
      const Rat share = Rat(1) / Rat(static_cast<unsigned long>(top.size()));
      for (std::size_t i : top) eq.x[i][j] = share;
    }
    for (std::size_t i = 0; i < n; ++i) eq.payments[i][j] = eq.x[i][j] * price;
  }
  eq.winning_cell = WinningCell{state.index, state.regions, tuple, *outcome.optimal_delta};
  return eq;
}

namespace {

struct CellResult {
  std::optional<Equilibrium> equilibrium;
  bool consistent = false;
  WorkCounters work;
};

// Necessary conditions read off the budget and payment rows of the equilibrium system
// using only the coordinate bounds of the cell, lo_j <= lambda_j <= hi_j.
// A paced buyer spends B_i out of goods it ties for, each costing at most
// lambda_j; a tied good's price lambda_j is paid by its top bidders, none
// of whom spends more than its budget.
bool budget_screen(const CellGeometry& geo, const CellState& state, const CellDerivation& d) {
  const Instance& inst = geo.instance();
  const std::size_t m = inst.m;
  std::vector<std::optional<Rat>> hi(m);
  RatVector lo(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Axis& axis = geo.axis(j);
    const std::size_t r = state.regions[j];
    const std::size_t q = r / 2;
    if (q < axis.breakpoints.size()) hi[j] = axis.breakpoints[q];
    if (axis.is_point(r)) {
      lo[j] = axis.breakpoints[q];
    } else if (q > 0) {
      lo[j] = axis.breakpoints[q - 1];
    }
  }
  for (std::size_t i : d.paced) {
    Rat reach = 0;
    bool bounded = true;
    for (std::size_t j : d.minimizers[i]) {
      if (!hi[j]) {
        bounded = false;
        break;
      }
      reach += *hi[j];
    }
    if (bounded && reach < inst.budgets[i]) return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (d.top_bidders[j].size() < 2) continue;
    Rat cover = 0;
    for (std::size_t i : d.top_bidders[j]) cover += inst.budgets[i];
    if (cover < lo[j]) return false;
  }
  return true;
}

// Necessary conditions for the payment and budget rows of one (cell, tuple)
// system. The lambda-only rows (cell and witness) form a ratio system whose
// closure bounds every price p_j(lambda). Money then flows from goods to
// their top bidders: for any set G of goods, the prices in G must fit in
// the budgets of the buyers tied on G, and the paced buyers who can only
// be paid through G must be covered by the prices in G.
bool flow_screen(const Instance& inst, const CellDerivation& d, RatioSystem sys, const WitnessTuple& tuple) {
  const std::size_t m = inst.m;
  std::vector<BidTerm> price(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t r = tuple[j];
    price[j] = r == kDummyWitness ? BidTerm{Rat(0), 0} : d.bid_term(inst, r, j);
    if (d.top_bidders[j].size() != 1) continue;
    const std::size_t w = d.top_bidders[j].front();
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (i == w || i == r) continue;
      if (!add_dominance(sys, price[j], d.bid_term(inst, i, j))) return false;
    }
  }
  RatVector lo(m);
  std::vector<std::optional<Rat>> hi(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (price[j].node == 0) {
      lo[j] = price[j].coef;
      hi[j] = price[j].coef;
      continue;
    }
    const PositiveInterval range = sys.range(price[j].node, 0);
    lo[j] = price[j].coef * range.lo;
    if (range.hi) hi[j] = price[j].coef * *range.hi;
  }
  std::vector<unsigned> goods_of(inst.n, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i : d.top_bidders[j]) goods_of[i] |= 1u << j;
  }
  const std::vector<bool> paced = [&] {
    std::vector<bool> out(inst.n, false);
    for (std::size_t i : d.paced) out[i] = true;
    return out;
  }();
  for (unsigned G = 1; G < (1u << m); ++G) {
    Rat least = 0, capacity = 0, owed = 0, most = 0;
    bool bounded = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(G >> j & 1u)) continue;
      least += lo[j];
      if (hi[j]) {
        most += *hi[j];
      } else {
        bounded = false;
      }
    }
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (goods_of[i] & G) capacity += inst.budgets[i];
      if (paced[i] && (goods_of[i] & ~G) == 0) owed += inst.budgets[i];
    }
    if (least > capacity) return false;
    if (bounded && owed > most) return false;
  }
  return true;
}

// The cheap, LP-free part of a cell: consistency, derivation and the
// budget screen. derivation is set only when the cell survives.
struct Screened {
  bool consistent = false;
  std::optional<CellDerivation> derivation;
};

Screened screen_cell(const CellGeometry& geo, const CellState& state, bool budget_screens) {
  Screened out;
  if (!check_consistency(state, geo)) return out;
  out.consistent = true;
  CellDerivation d = detail::derive_consistent_cell(state, geo);
  if (!budget_screens || budget_screen(geo, state, d)) out.derivation = std::move(d);
  return out;
}

// Witness sets and the equilibrium systems of a screened cell; pure in its inputs.
CellResult evaluate_cell(const CellGeometry& geo, const CellState& state, const CellDerivation& d,
                         bool budget_screens) {
  CellResult out;
  out.consistent = true;
  const auto ws = witness_sets(geo, state, d, &out.work);
  if (!ws) return out;
  const RatioSystem cell = geo.ratio_system(state);
  for (const auto& tuple : enumerate_witness_tuples(*ws)) {
    ++out.work.witness_tuples_tried;
    if (budget_screens && !flow_screen(geo.instance(), d, cell, tuple)) continue;
    const auto outcome = solve_feasibility(build_system(geo, state, d, *ws, tuple));
    ++out.work.lps_solved;
    if (!outcome.feasible) continue;
    ++out.work.lps_feasible;
    out.equilibrium = recover(geo.instance(), state, d, tuple, outcome);
    return out;
  }
  return out;
}

struct PendingCell {
  CellState state;
  Screened screened;
};

Equilibrium unpaced_equilibrium(const Instance& reduced) {
  Equilibrium eq;
  eq.alpha.assign(reduced.n, Rat(1));
  eq.x.assign(reduced.n, RatVector{});
  eq.payments.assign(reduced.n, RatVector{});
  return eq;
}

}  // namespace

SolveResult solve(const Instance& inst, const SolverConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const PreprocessReport report = preprocess(inst);
  const Instance& reduced = report.reduced;
  if (reduced.m > config.max_goods) {
    throw Error(ErrorKind::GoodsLimitExceeded, std::to_string(reduced.m) + " valued goods exceed the limit of " +
                                                   std::to_string(config.max_goods));
  }

  SolveResult result;
  RunStats& stats = result.stats;
  stats.goods_after_preprocessing = reduced.m;

  std::optional<Equilibrium> found;
  if (reduced.m == 0) {
    // No valued goods: nobody pays, so no-unnecessary-pacing forces alpha = 1.
    found = unpaced_equilibrium(reduced);
    stats.states_enumerated = 1;
    stats.states_consistent = 1;
    stats.winning_state_index = mpz_class(0);
    stats.winning_tuple = WitnessTuple{};
  } else {
    const CellGeometry geo(reduced);
    auto account = [&](const CellState& state, const CellResult& r) {
      if (r.consistent) ++stats.states_consistent;
      stats.work += r.work;
      if (r.equilibrium) {
        stats.states_enumerated = state.index + 1;
        stats.winning_state_index = state.index;
        stats.winning_tuple = r.equilibrium->winning_cell.witnesses;
        found = r.equilibrium;
      }
    };

    if (config.parallel <= 1) {
      for_each_nonempty_state(geo, [&](const CellState& state, const PointSource&) {
        Screened sc = screen_cell(geo, state, config.budget_screens);
        CellResult r;
        r.consistent = sc.consistent;
        if (sc.derivation) r = evaluate_cell(geo, state, *sc.derivation, config.budget_screens);
        account(state, r);
        return !found;
      });
    } else {
      // Screened cells are handed out in canonical batches; within a batch
      // the smallest feasible index wins and later cells are discarded, so
      // the outcome and the tallies match the serial run exactly.
      std::vector<PendingCell> batch;
      auto flush = [&] {
        std::vector<CellResult> results(batch.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{batch.size()};
        auto worker = [&] {
          for (std::size_t k = next++; k < batch.size(); k = next++) {
            if (k > best.load()) continue;
            const PendingCell& cell = batch[k];
            results[k].consistent = cell.screened.consistent;
            if (!cell.screened.derivation) continue;
            results[k] = evaluate_cell(geo, cell.state, *cell.screened.derivation, config.budget_screens);
            if (results[k].equilibrium) {
              std::size_t seen = best.load();
              while (k < seen && !best.compare_exchange_weak(seen, k)) {
              }
            }
          }
        };
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < config.parallel; ++t) pool.emplace_back(worker);
        pool.clear();
        for (std::size_t k = 0; k < batch.size() && !found; ++k) account(batch[k].state, results[k]);
        batch.clear();
      };
      // Rejected cells ride along in order so the tallies stay canonical;
      // a batch is flushed once it holds enough cells needing LP work.
      const std::size_t batch_size = std::max<std::size_t>(config.batch_size, 1);
      std::size_t pending_work = 0;
      for_each_nonempty_state(geo, [&](const CellState& state, const PointSource&) {
        PendingCell cell{state, screen_cell(geo, state, config.budget_screens)};
        if (cell.screened.derivation) ++pending_work;
        batch.push_back(std::move(cell));
        if (pending_work >= batch_size) {
          flush();
          pending_work = 0;
        }
        return !found;
      });
      if (!found && !batch.empty()) flush();
    }
    if (!found) stats.states_enumerated = geo.state_count();
  }

  if (!found) {
    throw Error(ErrorKind::NoEquilibriumFound, "no (cell, witness tuple) pair was feasible");
  }
  result.equilibrium = reinsert_removed_goods(report, inst, *found);
  stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

SolveResult solve_by_types(const Instance& inst, const SolverConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const TypePartition part = partition_good_types(inst);
  SolveResult aggregate = solve(part.aggregated, config);
  SolveResult result{expand_equilibrium(part, aggregate.equilibrium), std::move(aggregate.stats)};
  result.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace sppe
