#include "doctest.h"

#include <sstream>

#include "sppe/lp.hpp"
#include "support.hpp"

using namespace sppe;
using sppe::testing::q;

namespace {

LinearTerms terms(std::initializer_list<std::pair<std::size_t, long>> items) {
  LinearTerms out;
  for (auto [v, c] : items) out.emplace_back(v, Rat(c));
  return out;
}

}  // namespace

TEST_CASE("rows are stored sorted and merged") {
  FeasibilitySystem sys(2, 0);
  sys.add_less_equal(terms({{1, 2}, {0, 1}, {1, -2}}), 3, RowOrigin::Other);
  REQUIRE(sys.constraints().size() == 1);
  CHECK(sys.constraints()[0].terms == terms({{0, 1}}));
  sys.add_strict_greater(terms({{0, 1}}), 0, RowOrigin::Positivity);
  const auto& row = sys.constraints()[1];
  CHECK(row.relation == RowRelation::LessEqual);
  CHECK(row.terms == terms({{0, -1}, {sys.delta(), 1}}));
  CHECK(row.rhs == 0);
  std::ostringstream text;
  sys.write_lp_text(text);
  CHECK(text.str().find("delta") != std::string::npos);
}

TEST_CASE("solve_feasibility") {
  SUBCASE("slack only") {
    FeasibilitySystem sys(0, 0);
    sys.add_less_equal(terms({{sys.delta(), 1}}), 1, RowOrigin::Slack);
    auto out = solve_feasibility(sys);
    CHECK(out.feasible);
    CHECK(out.optimal_delta == Rat(1));
  }
  SUBCASE("open interval") {
    FeasibilitySystem sys(1, 0);
    sys.add_strict_less(terms({{0, 1}}), 2, RowOrigin::Cell);
    sys.add_strict_greater(terms({{0, 1}}), 0, RowOrigin::Positivity);
    sys.add_less_equal(terms({{sys.delta(), 1}}), 1, RowOrigin::Slack);
    auto out = solve_feasibility(sys);
    CHECK(out.feasible);
    CHECK(out.optimal_delta == Rat(1));
    CHECK(out.point[0] == 1);
    CHECK(satisfies(sys, out.point));
  }
  SUBCASE("contradictory strict pair") {
    FeasibilitySystem sys(1, 0);
    sys.add_strict_less(terms({{0, 1}}), 0, RowOrigin::Other);
    sys.add_strict_greater(terms({{0, 1}}), 0, RowOrigin::Other);
    sys.add_less_equal(terms({{sys.delta(), 1}}), 1, RowOrigin::Slack);
    auto out = solve_feasibility(sys);
    CHECK_FALSE(out.feasible);
    CHECK(out.optimal_delta == Rat(0));
  }
  SUBCASE("infeasible relaxation") {
    FeasibilitySystem sys(1, 0);
    sys.add_less_equal(terms({{0, 1}}), 1, RowOrigin::Other);
    sys.add_greater_equal(terms({{0, 1}}), 2, RowOrigin::Other);
    sys.add_less_equal(terms({{sys.delta(), 1}}), 1, RowOrigin::Slack);
    auto out = solve_feasibility(sys);
    CHECK_FALSE(out.feasible);
    CHECK_FALSE(out.optimal_delta.has_value());
  }
  SUBCASE("equality with fractions") {
    FeasibilitySystem sys(2, 0);
    sys.add_equal({{0, q("1/3")}, {1, q("2/7")}}, q("5/11"), RowOrigin::Other);
    sys.add_strict_greater(terms({{0, 1}, {1, -1}}), 0, RowOrigin::Other);
    sys.add_less_equal(terms({{sys.delta(), 1}}), 1, RowOrigin::Slack);
    auto out = solve_feasibility(sys);
    REQUIRE(out.feasible);
    CHECK(satisfies(sys, out.point));
    CHECK(out.point[0] / 3 + out.point[1] * 2 / 7 == q("5/11"));
  }
}

TEST_CASE("simplex core") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
  auto r = detail::maximize({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
  REQUIRE(r.status == detail::SimplexResult::Status::Optimal);
  CHECK(r.objective == q("14/5"));
  CHECK(detail::maximize({{-1}}, {-1}, {1}).status == detail::SimplexResult::Status::Unbounded);
  CHECK(detail::maximize({{1}}, {-1}, {1}).status == detail::SimplexResult::Status::Infeasible);
}
