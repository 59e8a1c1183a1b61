#include "doctest.h"

#include <algorithm>

#include "sppe/error.hpp"
#include "sppe/generator.hpp"
#include "sppe/good_types.hpp"
#include "sppe/json_io.hpp"
#include "sppe/preprocess.hpp"
#include "sppe/solver.hpp"
#include "sppe/verifier.hpp"
#include "support.hpp"

using namespace sppe;
using sppe::testing::make_instance;
using sppe::testing::q;
using sppe::testing::vec;

namespace {

CellState state_of(const CellGeometry& geo, std::vector<std::size_t> regions) {
  mpz_class index = geo.index_of(regions);
  return CellState{std::move(regions), index};
}

Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = seed;
  cfg.zero_probability = 0.15;
  return generate_instance(cfg);
}

void check_verified(const Instance& inst, const Equilibrium& eq) {
  auto report = verify_equilibrium(inst, eq.alpha, eq.x);
  CHECK_MESSAGE(report.pass, io::report_to_json(report).dump());
}

}  // namespace

TEST_CASE("witness_sets") {
  SUBCASE("single buyer: only the dummy") {
    Instance inst = make_instance({{"2"}}, {"1"});
    CellGeometry geo(inst);
    CellState s = state_of(geo, {1});
    WorkCounters counters;
    auto ws = witness_sets(geo, s, derive_cell(s, geo), &counters);
    REQUIRE(ws);
    CHECK(ws->candidates[0] == std::vector<std::size_t>{kDummyWitness});
    CHECK(ws->sole_top_bidder[0] == std::size_t{0});
  }
  SUBCASE("tie keeps the top bidders, no LP") {
    Instance inst = make_instance({{"2"}, {"1"}, {"2"}}, {"1", "1", "1"});
    CellGeometry geo(inst);
    CellState s = state_of(geo, {3});  // lambda_1 = 2
    for (auto check : {WitnessCheck::RatioClosure, WitnessCheck::LinearProgram}) {
      WorkCounters counters;
      auto ws = witness_sets(geo, s, derive_cell(s, geo), &counters, check);
      REQUIRE(ws);
      CHECK(ws->candidates[0] == std::vector<std::size_t>{0, 2});
      CHECK_FALSE(ws->sole_top_bidder[0].has_value());
      CHECK(counters.lps_solved == 0);
    }
  }
  SUBCASE("nobody at the top") {
    Instance inst = make_instance({{"2"}}, {"1"});
    CellGeometry geo(inst);
    CellState s = state_of(geo, {2});
    CHECK_FALSE(witness_sets(geo, s, derive_cell(s, geo)).has_value());
  }
}

TEST_CASE("closure and LP witness checks agree") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = preprocess(random_instance(seed, 3 + seed % 2, 2)).reduced;
    CellGeometry geo(inst);
    std::size_t compared = 0;
    for_each_nonempty_state(geo, [&](const CellState& s, const PointSource&) {
      if (!check_consistency(s, geo)) return true;
      CellDerivation d = derive_cell(s, geo);
      auto a = witness_sets(geo, s, d, nullptr, WitnessCheck::RatioClosure);
      auto b = witness_sets(geo, s, d, nullptr, WitnessCheck::LinearProgram);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(a->candidates == b->candidates);
      return ++compared < 60;
    });
  }
}

TEST_CASE("enumerate_witness_tuples") {
  WitnessSets ws;
  ws.candidates = {{kDummyWitness, 1}, {2}};
  ws.sole_top_bidder = {std::size_t{0}, std::size_t{0}};
  auto tuples = enumerate_witness_tuples(ws);
  REQUIRE(tuples.size() == 2);
  CHECK(tuples[0] == WitnessTuple{kDummyWitness, 2});
  CHECK(tuples[1] == WitnessTuple{1, 2});

  WitnessSets tie;
  tie.candidates = {{0, 2}};
  tie.sole_top_bidder = {std::nullopt};
  CHECK(enumerate_witness_tuples(tie) == std::vector<WitnessTuple>{{0}});

  WitnessSets one;
  one.candidates = {{kDummyWitness}};
  one.sole_top_bidder = {std::size_t{0}};
  CHECK(enumerate_witness_tuples(one) == std::vector<WitnessTuple>{{kDummyWitness}});
}

TEST_CASE("build_system") {
  Instance inst = make_instance({{"2"}}, {"1"});
  CellGeometry geo(inst);
  CellState s = state_of(geo, {0});  // lambda_1 in (0, 2): buyer paced
  CellDerivation d = derive_cell(s, geo);
  auto ws = witness_sets(geo, s, d);
  REQUIRE(ws);
  FeasibilitySystem sys = build_system(geo, s, d, *ws, {kDummyWitness});
  bool upper = false;
  bool positive = false;
  for (const auto& row : sys.constraints()) {
    if (row.terms == LinearTerms{{0, 1}, {sys.delta(), 1}} && row.rhs == 2) upper = true;
    if (row.terms == LinearTerms{{0, -1}, {sys.delta(), 1}} && row.rhs == 0) positive = true;
  }
  CHECK(upper);
  CHECK(positive);
  CHECK_FALSE(solve_feasibility(sys).feasible);
  CHECK_THROWS_AS(build_system(geo, s, d, *ws, {0}), Error);
}

TEST_CASE("recover splits payments by price") {
  Instance inst = make_instance({{"5"}, {"5"}}, {"2", "3"});
  CellGeometry geo(inst);
  CellState s = state_of(geo, {0});
  CellDerivation d = derive_cell(s, geo);
  FeasibilitySystem sys(1, 2);
  FeasibilityOutcome out;
  out.feasible = true;
  out.optimal_delta = Rat(1);
  out.point = RatVector(sys.variable_count());
  out.point[sys.lambda(0)] = 5;
  out.point[sys.payment(0, 0)] = 2;
  out.point[sys.payment(1, 0)] = 3;
  out.point[sys.delta()] = 1;
  Equilibrium eq = recover(inst, s, d, {0}, out);
  CHECK(eq.prices[0] == 5);
  CHECK(eq.x[0][0] == q("2/5"));
  CHECK(eq.x[1][0] == q("3/5"));
}

TEST_CASE("recover with zero price") {
  Instance single = make_instance({{"2"}}, {"1"});
  CellGeometry g1(single);
  CellState s1 = state_of(g1, {1});
  FeasibilitySystem sys1(1, 1);
  FeasibilityOutcome out1;
  out1.feasible = true;
  out1.optimal_delta = Rat(1);
  out1.point = RatVector(sys1.variable_count());
  out1.point[0] = 2;
  Equilibrium e1 = recover(single, s1, derive_cell(s1, g1), {kDummyWitness}, out1);
  CHECK(e1.x[0][0] == 1);
  CHECK(e1.prices[0] == 0);
}

TEST_CASE("golden equilibria") {
  SUBCASE("single buyer") {
    Instance inst = make_instance({{"2"}}, {"1"});
    auto r = solve(inst);
    CHECK(r.equilibrium.alpha == vec({"1"}));
    CHECK(r.equilibrium.x[0] == vec({"1"}));
    CHECK(r.equilibrium.prices == vec({"0"}));
    CHECK(r.equilibrium.lambda == vec({"2"}));
    CHECK(r.stats.work.lps_feasible == 1);
    check_verified(inst, r.equilibrium);
  }
  SUBCASE("both unpaced") {
    Instance inst = make_instance({{"2"}, {"1"}}, {"10", "10"});
    auto r = solve(inst);
    CHECK(r.equilibrium.alpha == vec({"1", "1"}));
    CHECK(r.equilibrium.x[0] == vec({"1"}));
    CHECK(r.equilibrium.x[1] == vec({"0"}));
    CHECK(r.equilibrium.prices == vec({"1"}));
    CHECK(r.equilibrium.payments[0] == vec({"1"}));
    check_verified(inst, r.equilibrium);
  }
  SUBCASE("paced tie") {
    Instance inst = make_instance({{"2"}, {"1"}}, {"1/2", "10"});
    auto r = solve(inst);
    CHECK(r.equilibrium.alpha == vec({"1/2", "1"}));
    CHECK(r.equilibrium.x[0] == vec({"1/2"}));
    CHECK(r.equilibrium.x[1] == vec({"1/2"}));
    CHECK(r.equilibrium.prices == vec({"1"}));
    CHECK(r.equilibrium.payments[0] == vec({"1/2"}));
    CHECK(r.equilibrium.payments[1] == vec({"1/2"}));
    check_verified(inst, r.equilibrium);
  }
}

TEST_CASE("solver errors and edge cases") {
  GeneratorConfig cfg;
  cfg.n = 3;
  cfg.m = 5;
  Instance wide = generate_instance(cfg);
  try {
    solve(wide);
    FAIL("guard did not trip");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GoodsLimitExceeded);
  }
  SolverConfig loose;
  loose.max_goods = 2;
  CHECK_THROWS_AS(solve(make_instance({{"1", "2", "3"}}, {"1"}), loose), Error);

  Instance zero_col = make_instance({{"2", "0"}, {"1", "0"}}, {"1/2", "10"});
  auto r = solve(zero_col);
  CHECK(r.equilibrium.zero_value_goods == std::vector<std::size_t>{1});
  CHECK(r.equilibrium.prices == vec({"1", "0"}));
  check_verified(zero_col, r.equilibrium);

  Instance nothing = make_instance({{"0"}}, {"1"});
  auto r0 = solve(nothing);
  CHECK(r0.equilibrium.alpha == vec({"1"}));
  check_verified(nothing, r0.equilibrium);

  for (std::size_t m = 1; m <= 3; ++m) {
    GeneratorConfig one;
    one.n = 1;
    one.m = m;
    one.seed = 5;
    auto single = solve(generate_instance(one));
    CHECK(single.equilibrium.alpha == vec({"1"}));
    CHECK(single.stats.work.lps_feasible == 1);
  }
}

TEST_CASE("random instances verify") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = random_instance(seed, 2 + seed % 6, 1 + seed % 3);
    auto r = solve(inst);
    check_verified(inst, r.equilibrium);
    CHECK(r.stats.states_enumerated <= r.stats.winning_state_index.value() + 1);
    CHECK(r.stats.work.lps_feasible == 1);
  }
}

TEST_CASE("screens and parallel workers do not change the answer") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = random_instance(seed, 2 + seed % 4, 1 + seed % 2);
    auto base = solve(inst);
    SolverConfig plain;
    plain.budget_screens = false;
    auto unscreened = solve(inst, plain);
    SolverConfig par;
    par.parallel = 3;
    par.batch_size = 2;
    auto parallel = solve(inst, par);
    for (const auto* other : {&unscreened, &parallel}) {
      CHECK(io::equilibrium_to_json(other->equilibrium) == io::equilibrium_to_json(base.equilibrium));
      CHECK(other->stats.winning_state_index == base.stats.winning_state_index);
      CHECK(other->stats.winning_tuple == base.stats.winning_tuple);
      CHECK(other->stats.states_consistent == base.stats.states_consistent);
    }
    CHECK(parallel.stats.work.lps_solved == base.stats.work.lps_solved);
    CHECK(unscreened.stats.work.lps_solved >= base.stats.work.lps_solved);
  }
}

TEST_CASE("solve_by_types") {
  Instance four = make_instance({{"2", "2", "1", "1"}, {"1", "1", "3", "3"}}, {"1", "2"});
  auto part = partition_good_types(four);
  auto agg = solve(part.aggregated);
  auto full = solve_by_types(four);
  check_verified(four, full.equilibrium);
  for (std::size_t i = 0; i < four.n; ++i) {
    Rat a = 0;
    Rat b = 0;
    for (const auto& p : full.equilibrium.payments[i]) a += p;
    for (const auto& p : agg.equilibrium.payments[i]) b += p;
    CHECK(a == b);
  }

  Instance same = make_instance({{"3", "3", "3"}, {"2", "2", "2"}}, {"1", "5"});
  auto one = solve_by_types(same);
  CHECK(one.stats.goods_after_preprocessing == 1);
  check_verified(same, one.equilibrium);

  Instance distinct = make_instance({{"3", "1"}, {"2", "5"}}, {"1", "2"});
  CHECK(io::equilibrium_to_json(solve_by_types(distinct).equilibrium) ==
        io::equilibrium_to_json(solve(distinct).equilibrium));
}
