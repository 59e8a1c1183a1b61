// Assembly of the per-(cell, witness tuple) linear system: cell rows,
// consistency rows, second-price witness rows, payment and budget rows.
// alpha_i(lambda) is substituted by the cell's linear expression, so the
// system only mentions lambda, y and delta.

#include <algorithm>
#include <string>

#include "sppe/error.hpp"
#include "sppe/solver.hpp"

namespace sppe {

namespace {

enum class Rel { Less, Equal, Greater, LessEqual, GreaterEqual };

Rel to_rel(Cmp c) { return c == Cmp::Less ? Rel::Less : c == Cmp::Equal ? Rel::Equal : Rel::Greater; }

bool constant_holds(int s, Rel rel) {
  switch (rel) {
    case Rel::Less: return s < 0;
    case Rel::Equal: return s == 0;
    case Rel::Greater: return s > 0;
    case Rel::LessEqual: return s <= 0;
    case Rel::GreaterEqual: return s >= 0;
  }
  return false;
}

// Adds  terms + constant REL 0. A constant row is only recorded when it
// fails, so the solver sees the contradiction.
void add_row(FeasibilitySystem& sys, LinearTerms terms, const Rat& constant, Rel rel, RowOrigin origin) {
  if (terms.empty() && constant_holds(sgn(constant), rel)) return;
  Rat rhs = -constant;
  switch (rel) {
    case Rel::Less: sys.add_strict_less(std::move(terms), std::move(rhs), origin); break;
    case Rel::Equal: sys.add_equal(std::move(terms), std::move(rhs), origin); break;
    case Rel::Greater: sys.add_strict_greater(std::move(terms), std::move(rhs), origin); break;
    case Rel::LessEqual: sys.add_less_equal(std::move(terms), std::move(rhs), origin); break;
    case Rel::GreaterEqual: sys.add_greater_equal(std::move(terms), std::move(rhs), origin); break;
  }
}

// Adds  high - low REL 0  for two bids (or lambdas, or constants).
void add_difference(FeasibilitySystem& sys, const BidTerm& high, const BidTerm& low, Rel rel, RowOrigin origin) {
  LinearTerms terms;
  Rat constant = 0;
  if (high.node == 0) {
    constant += high.coef;
  } else {
    terms.emplace_back(sys.lambda(high.node - 1), high.coef);
  }
  if (low.node == 0) {
    constant -= low.coef;
  } else {
    terms.emplace_back(sys.lambda(low.node - 1), -low.coef);
  }
  add_row(sys, std::move(terms), constant, rel, origin);
}

BidTerm lambda_term(std::size_t j) { return BidTerm{Rat(1), j + 1}; }

}  // namespace

FeasibilitySystem build_system(const CellGeometry& geo, const CellState& state, const CellDerivation& d,
                               const WitnessSets& ws, const WitnessTuple& tuple) {
  const Instance& inst = geo.instance();
  const std::size_t n = inst.n;
  const std::size_t c = inst.m;
  if (tuple.size() != c || ws.candidates.size() != c) {
    throw Error(ErrorKind::DimensionMismatch, "witness tuple length does not match the number of goods");
  }
  for (std::size_t j = 0; j < c; ++j) {
    const auto& R = ws.candidates[j];
    const bool tied = d.top_bidders[j].size() >= 2;
    const bool known = std::find(R.begin(), R.end(), tuple[j]) != R.end();
    if (!known || (tied && tuple[j] == kDummyWitness)) {
      throw Error(ErrorKind::UnknownWitness, "witness for good " + std::to_string(j + 1) + " is not in R_j(F)");
    }
  }

  FeasibilitySystem sys(c, n);
  sys.reserve(n * (c * (c + 1) / 2 + 5 * c + 3) + 3 * c + 2);
  const BidTerm one{Rat(1), 0};
  const BidTerm zero{Rat(0), 0};

  // Cell rows: every hyperplane sign fixed by the state, and lambda > 0.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (sgn(inst.value(i, j)) <= 0) continue;
      add_difference(sys, lambda_term(j), BidTerm{inst.value(i, j), 0}, to_rel(geo.coordinate_sign(state, i, j)),
                     RowOrigin::Cell);
    }
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t k = j + 1; k < c; ++k) {
        if (sgn(inst.value(i, j)) <= 0 || sgn(inst.value(i, k)) <= 0) continue;
        add_difference(sys, BidTerm{inst.value(i, k), j + 1}, BidTerm{inst.value(i, j), k + 1},
                       to_rel(geo.ratio_sign(state, i, j, k)), RowOrigin::Cell);
      }
    }
  }
  for (std::size_t j = 0; j < c; ++j) add_difference(sys, lambda_term(j), zero, Rel::Greater, RowOrigin::Positivity);

  // Consistency between alpha(lambda) and lambda. alpha_i is the constant 1
  // for i in E(F), so its equality row is identically satisfied.
  std::vector<BidTerm> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaExpr& e = d.alpha[i];
    alpha[i] = e.unpaced ? one : BidTerm{1 / e.value, e.good + 1};
  }
  for (std::size_t i : d.unpaced) add_difference(sys, alpha[i], one, Rel::Equal, RowOrigin::Consistency);
  for (std::size_t i : d.paced) {
    add_difference(sys, alpha[i], zero, Rel::Greater, RowOrigin::Consistency);
    add_difference(sys, alpha[i], one, Rel::Less, RowOrigin::Consistency);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      add_difference(sys, lambda_term(j), d.bid_term(inst, i, j), Rel::GreaterEqual, RowOrigin::Consistency);
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i : d.top_bidders[j]) {
      add_difference(sys, lambda_term(j), d.bid_term(inst, i, j), Rel::Equal, RowOrigin::Consistency);
    }
  }

  // Second-price witness rows for goods with a unique top bidder.
  std::vector<BidTerm> price(c);
  for (std::size_t j = 0; j < c; ++j) {
    const std::size_t r = tuple[j];
    price[j] = r == kDummyWitness ? zero : d.bid_term(inst, r, j);
    if (d.top_bidders[j].size() != 1) continue;
    const std::size_t w = d.top_bidders[j].front();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == w || i == r) continue;
      add_difference(sys, price[j], d.bid_term(inst, i, j), Rel::GreaterEqual, RowOrigin::Witness);
    }
  }

  // Payments: only top bidders pay, and they pay the second price in total.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      sys.add_greater_equal({{sys.payment(i, j), Rat(1)}}, Rat(0), RowOrigin::Payment);
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    const auto& top = d.top_bidders[j];
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::binary_search(top.begin(), top.end(), i)) {
        sys.add_equal({{sys.payment(i, j), Rat(1)}}, Rat(0), RowOrigin::Payment);
      }
    }
    LinearTerms terms;
    Rat rhs = 0;
    if (price[j].node == 0) {
      rhs = price[j].coef;
    } else {
      terms.emplace_back(sys.lambda(price[j].node - 1), -price[j].coef);
    }
    for (std::size_t i : top) terms.emplace_back(sys.payment(i, j), Rat(1));
    sys.add_equal(std::move(terms), std::move(rhs), RowOrigin::Payment);
  }

  // Budgets: unpaced buyers may underspend, paced buyers spend exactly.
  auto spend = [&](std::size_t i) {
    LinearTerms terms;
    for (std::size_t j = 0; j < c; ++j) terms.emplace_back(sys.payment(i, j), Rat(1));
    return terms;
  };
  for (std::size_t i : d.unpaced) sys.add_less_equal(spend(i), inst.budgets[i], RowOrigin::Budget);
  for (std::size_t i : d.paced) sys.add_equal(spend(i), inst.budgets[i], RowOrigin::Budget);

  sys.add_greater_equal({{sys.delta(), Rat(1)}}, Rat(0), RowOrigin::Slack);
  sys.add_less_equal({{sys.delta(), Rat(1)}}, Rat(1), RowOrigin::Slack);
  return sys;
}

}  // namespace sppe
