#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sppe/rational.hpp"

namespace sppe {

// Sparse row: (variable, coefficient) pairs, sorted by variable, no zeros.
using LinearTerms = std::vector<std::pair<std::size_t, Rat>>;

enum class RowRelation { LessEqual, Equal };

// Which block of the equilibrium system produced a row. Used for debug
// dumps and tests; the solver ignores it.
enum class RowOrigin {
  Cell,
  Positivity,
  Consistency,
  Witness,
  Payment,
  Budget,
  Slack,
  Dominance,
  Other,
};

const char* to_string(RowOrigin origin);

struct LinearConstraint {
  LinearTerms terms;
  RowRelation relation = RowRelation::LessEqual;
  Rat rhs;
  RowOrigin origin = RowOrigin::Other;
};

// Variable layout: lambda_0..lambda_{c-1}, then y[i][j] row-major for
// n buyers, then the slack delta. Every variable is implicitly >= 0.
// Strict source rows a.z < b are stored as a.z + delta <= b.
class FeasibilitySystem {
 public:
  FeasibilitySystem(std::size_t goods, std::size_t buyers);

  std::size_t goods() const { return goods_; }
  std::size_t buyers() const { return buyers_; }
  std::size_t variable_count() const { return goods_ + buyers_ * goods_ + 1; }
  std::size_t lambda(std::size_t j) const { return j; }
  std::size_t payment(std::size_t i, std::size_t j) const { return goods_ + i * goods_ + j; }
  std::size_t delta() const { return goods_ + buyers_ * goods_; }
  std::string variable_name(std::size_t var) const;

  const std::vector<LinearConstraint>& constraints() const { return rows_; }
  void reserve(std::size_t rows) { rows_.reserve(rows); }

  // Terms need not be sorted or merged; zero coefficients are dropped.
  void add_less_equal(LinearTerms terms, Rat rhs, RowOrigin origin);
  void add_equal(LinearTerms terms, Rat rhs, RowOrigin origin);
  void add_greater_equal(LinearTerms terms, Rat rhs, RowOrigin origin);
  void add_strict_less(LinearTerms terms, Rat rhs, RowOrigin origin);
  void add_strict_greater(LinearTerms terms, Rat rhs, RowOrigin origin);

  // One constraint per line, e.g. "lambda_1 + delta <= 2   # cell".
  void write_lp_text(std::ostream& out) const;

 private:
  void add(LinearTerms terms, RowRelation relation, Rat rhs, RowOrigin origin);

  std::size_t goods_;
  std::size_t buyers_;
  std::vector<LinearConstraint> rows_;
};

struct FeasibilityOutcome {
  bool feasible = false;
  // Optimal slack; 0 when the weak relaxation is feasible but no point
  // satisfies the strict rows, empty when even the relaxation is infeasible.
  std::optional<Rat> optimal_delta;
  RatVector point;  // all variables, delta included; only set when feasible
};

// Maximizes delta exactly (delta <= 1 must be among the rows or implied)
// using a dictionary simplex with Bland's rule. feasible <=> delta* > 0.
FeasibilityOutcome solve_feasibility(const FeasibilitySystem& sys);

// True when point satisfies every stored row exactly.
bool satisfies(const FeasibilitySystem& sys, const RatVector& point);

namespace detail {

// max c.x  s.t.  A x <= b, x >= 0, solved exactly. Exposed for tests.
struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
  Rat objective;
  RatVector x;
};

SimplexResult maximize(const RatMatrix& A, const RatVector& b, const RatVector& c);

}  // namespace detail

}  // namespace sppe
