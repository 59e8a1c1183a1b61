#include "doctest.h"

#include <random>

#include "sppe/error.hpp"
#include "sppe/generator.hpp"
#include "sppe/geometry.hpp"
#include "sppe/preprocess.hpp"
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

// The state whose cell contains lambda.
CellState locate_point(const CellGeometry& geo, const RatVector& lambda) {
  std::vector<std::size_t> regions;
  for (std::size_t a = 0; a < geo.axis_count(); ++a) {
    const Axis& ax = geo.axis(a);
    Rat value = ax.kind == Axis::Kind::Coordinate ? lambda[ax.good] : Rat(lambda[ax.good] / lambda[ax.other_good]);
    regions.push_back(ax.locate(value));
  }
  return state_of(geo, regions);
}

Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m, double zero_probability = 0.2) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = seed;
  cfg.value_max = 9;
  cfg.max_denominator = 2;
  cfg.zero_probability = zero_probability;
  return preprocess(generate_instance(cfg)).reduced;
}

}  // namespace

TEST_CASE("build_axes") {
  SUBCASE("single coordinate axis") {
    Axes axes = build_axes(make_instance({{"2"}}, {"1"}));
    REQUIRE(axes.coordinates.size() == 1);
    CHECK(axes.coordinates[0].breakpoints == vec({"2"}));
    CHECK(axes.coordinates[0].region_count() == 3);
    CHECK(axes.ratios.empty());
  }
  SUBCASE("ratio axis") {
    Axes axes = build_axes(make_instance({{"2", "3"}}, {"1"}));
    REQUIRE(axes.ratios.size() == 1);
    CHECK(axes.ratios[0].good == 0);
    CHECK(axes.ratios[0].other_good == 1);
    CHECK(axes.ratios[0].breakpoints == vec({"2/3"}));
  }
  SUBCASE("duplicate breakpoints collapse") {
    Axes axes = build_axes(make_instance({{"2"}, {"2"}}, {"1", "1"}));
    CHECK(axes.coordinates[0].region_count() == 3);
  }
  SUBCASE("region bound") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Instance inst = random_instance(seed, 6, 3);
      Axes axes = build_axes(inst);
      for (const auto& ax : axes.coordinates) CHECK(ax.region_count() <= 2 * inst.n + 1);
      for (const auto& ax : axes.ratios) CHECK(ax.region_count() <= 2 * inst.n + 1);
    }
  }
}

TEST_CASE("axis regions tile the positive line") {
  Axis ax;
  ax.breakpoints = vec({"1", "3"});
  CHECK(ax.locate(q("1/2")) == 0);
  CHECK(ax.locate(q("1")) == 1);
  CHECK(ax.locate(q("2")) == 2);
  CHECK(ax.locate(q("3")) == 3);
  CHECK(ax.locate(q("100")) == 4);
  for (std::size_t r = 0; r < ax.region_count(); ++r) {
    CHECK(ax.locate(ax.representative(r)) == r);
    PositiveInterval iv = region_interval(ax, r);
    CHECK_FALSE(iv.empty());
    CHECK(ax.locate(iv.pick()) == r);
  }
}

TEST_CASE("enumerate_states") {
  CHECK(enumerate_states(CellGeometry(make_instance({{"2"}}, {"1"}))).size() == 3);
  Instance two = make_instance({{"2", "3"}}, {"1"});
  CellGeometry geo(two);
  auto states = enumerate_states(geo);
  REQUIRE(states.size() == 27);
  CHECK(geo.state_count() == 27);
  for (std::size_t k = 0; k < states.size(); ++k) CHECK(states[k].index == k);
  CHECK(states[1].regions == std::vector<std::size_t>{0, 0, 1});

  RawInstance raw{1, 0, {RatVector{}}, vec({"1"})};
  Instance empty = validate_instance(raw);
  CellGeometry none(empty);
  auto only = enumerate_states(none);
  REQUIRE(only.size() == 1);
  CHECK(only[0].regions.empty());
}

TEST_CASE("check_consistency") {
  Instance inst = make_instance({{"2", "3"}}, {"1"});
  CellGeometry geo(inst);
  // lambda_1/2 < 1 < lambda_2/3 < lambda_1/2
  CHECK_FALSE(check_consistency(state_of(geo, {0, 2, 2}), geo));
  CHECK_THROWS_AS(derive_cell(state_of(geo, {0, 2, 2}), geo), Error);
  // read off lambda = (1, 1)
  CHECK(check_consistency(locate_point(geo, vec({"1", "1"})), geo));

  Instance single = make_instance({{"2"}}, {"1"});
  CellGeometry g1(single);
  for (const auto& s : enumerate_states(g1)) CHECK(check_consistency(s, g1));
}

TEST_CASE("derive_cell on one buyer and one good") {
  Instance inst = make_instance({{"2"}}, {"1"});
  CellGeometry geo(inst);

  CellDerivation below = derive_cell(state_of(geo, {0}), geo);
  CHECK_FALSE(below.constant_minimizer[0]);
  CHECK(below.minimizers[0] == std::vector<std::size_t>{0});
  CHECK_FALSE(below.alpha[0].unpaced);
  CHECK(below.alpha[0].value == 2);
  CHECK(below.top_bidders[0] == std::vector<std::size_t>{0});
  CHECK(below.paced == std::vector<std::size_t>{0});
  CHECK(below.unpaced.empty());

  CellDerivation at = derive_cell(state_of(geo, {1}), geo);
  CHECK(at.constant_minimizer[0]);
  CHECK(at.minimizers[0] == std::vector<std::size_t>{0});
  CHECK(at.alpha[0].unpaced);
  CHECK(at.top_bidders[0] == std::vector<std::size_t>{0});
  CHECK(at.unpaced == std::vector<std::size_t>{0});

  CellDerivation above = derive_cell(state_of(geo, {2}), geo);
  CHECK(above.constant_minimizer[0]);
  CHECK(above.minimizers[0].empty());
  CHECK(above.top_bidders[0].empty());
}

TEST_CASE("derive_cell agrees with alpha(lambda) at points") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = random_instance(seed, 1 + seed % 4, 1 + seed % 3);
    CellGeometry geo(inst);
    for (int trial = 0; trial < 10; ++trial) {
      RatVector lambda(inst.m);
      for (auto& l : lambda) {
        l = Rat(static_cast<long>(1 + rng() % 20), static_cast<long>(1 + rng() % 3));
        l.canonicalize();
      }
      CellState s = locate_point(geo, lambda);
      REQUIRE(check_consistency(s, geo));
      CellDerivation d = derive_cell(s, geo);
      for (std::size_t i = 0; i < inst.n; ++i) {
        Rat alpha = 1;
        for (std::size_t j = 0; j < inst.m; ++j)
          if (inst.value(i, j) > 0) alpha = std::min(alpha, Rat(lambda[j] / inst.value(i, j)));
        CHECK(d.alpha_form(i, inst.m).evaluate(lambda) == alpha);
        CHECK((alpha == 1) == d.alpha[i].unpaced);
        for (std::size_t j = 0; j < inst.m; ++j) {
          bool top = inst.value(i, j) > 0 && alpha * inst.value(i, j) == lambda[j];
          bool listed = std::count(d.top_bidders[j].begin(), d.top_bidders[j].end(), i) > 0;
          CHECK(top == listed);
          CHECK(d.bid_form(inst, i, j).evaluate(lambda) == alpha * inst.value(i, j));
          BidTerm t = d.bid_term(inst, i, j);
          Rat node = t.node == 0 ? Rat(1) : lambda[t.node - 1];
          CHECK(t.coef * node == alpha * inst.value(i, j));
        }
      }
    }
  }
}

TEST_CASE("ratio closure") {
  RatioSystem sys(2);  // nodes: 0 = 1, 1 = lambda_0, 2 = lambda_1
  CHECK(sys.bound(1, 0, q("3"), true));   // lambda_0 < 3
  CHECK(sys.bound(0, 1, q("1/2"), false));  // lambda_0 >= 2
  CHECK(sys.bound(2, 1, q("1"), false));  // lambda_1 <= lambda_0
  PositiveInterval r = sys.range(2, 0);
  CHECK(r.hi == q("3"));
  CHECK_FALSE(r.hi_closed);
  RatVector p = sys.point();
  CHECK(p[0] >= 2);
  CHECK(p[0] < 3);
  CHECK(p[1] <= p[0]);
  CHECK_FALSE(sys.bound(0, 2, q("1/3"), false));  // lambda_1 >= 3 contradicts

  RatioSystem tight(1);
  CHECK(tight.bound(1, 0, q("2"), false));
  CHECK(tight.bound(0, 1, q("1/2"), false));
  CHECK(tight.point()[0] == 2);
  CHECK_FALSE(tight.bound(1, 0, q("2"), true));
}

TEST_CASE("nonempty walk matches per-state LPs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = random_instance(seed, 2 + seed % 2, 1 + seed % 3);
    CellGeometry geo(inst);
    std::vector<mpz_class> by_lp;
    for (const auto& s : enumerate_states(geo)) {
      bool lp = solve_feasibility(geo.cell_system(s)).feasible;
      CHECK(lp == cell_point(s, geo).has_value());
      if (lp) by_lp.push_back(s.index);
    }
    std::vector<mpz_class> walked;
    for_each_nonempty_state(geo, [&](const CellState& s, const PointSource& point) {
      walked.push_back(s.index);
      RatVector lambda = point();
      CHECK(locate_point(geo, lambda).regions == s.regions);
      return true;
    });
    CHECK(walked == by_lp);
  }
}
