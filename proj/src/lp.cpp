#include "sppe/lp.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "sppe/error.hpp"

namespace sppe {

const char* to_string(RowOrigin origin) {
  switch (origin) {
    case RowOrigin::Cell: return "cell";
    case RowOrigin::Positivity: return "positivity";
    case RowOrigin::Consistency: return "consistency";
    case RowOrigin::Witness: return "witness";
    case RowOrigin::Payment: return "payment";
    case RowOrigin::Budget: return "budget";
    case RowOrigin::Slack: return "slack";
    case RowOrigin::Dominance: return "dominance";
    case RowOrigin::Other: return "other";
  }
  return "other";
}

FeasibilitySystem::FeasibilitySystem(std::size_t goods, std::size_t buyers) : goods_(goods), buyers_(buyers) {}

std::string FeasibilitySystem::variable_name(std::size_t var) const {
  if (var < goods_) return "lambda_" + std::to_string(var + 1);
  if (var == delta()) return "delta";
  const std::size_t offset = var - goods_;
  return "y_" + std::to_string(offset / goods_ + 1) + "_" + std::to_string(offset % goods_ + 1);
}

void FeasibilitySystem::add(LinearTerms terms, RowRelation relation, Rat rhs, RowOrigin origin) {
  const auto by_var = [](const auto& a, const auto& b) { return a.first < b.first; };
  if (!std::is_sorted(terms.begin(), terms.end(), by_var)) std::sort(terms.begin(), terms.end(), by_var);
  // Merge repeated variables in place, then drop zero coefficients.
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (out > 0 && terms[out - 1].first == terms[k].first) {
      terms[out - 1].second += terms[k].second;
    } else {
      if (out != k) terms[out] = std::move(terms[k]);
      ++out;
    }
  }
  terms.resize(out);
  std::erase_if(terms, [](const auto& t) { return sgn(t.second) == 0; });
  rows_.push_back(LinearConstraint{std::move(terms), relation, std::move(rhs), origin});
}

void FeasibilitySystem::add_less_equal(LinearTerms terms, Rat rhs, RowOrigin origin) {
  add(std::move(terms), RowRelation::LessEqual, std::move(rhs), origin);
}

void FeasibilitySystem::add_equal(LinearTerms terms, Rat rhs, RowOrigin origin) {
  add(std::move(terms), RowRelation::Equal, std::move(rhs), origin);
}

void FeasibilitySystem::add_greater_equal(LinearTerms terms, Rat rhs, RowOrigin origin) {
  for (auto& t : terms) t.second = -t.second;
  add(std::move(terms), RowRelation::LessEqual, -rhs, origin);
}

void FeasibilitySystem::add_strict_less(LinearTerms terms, Rat rhs, RowOrigin origin) {
  terms.emplace_back(delta(), Rat(1));
  add(std::move(terms), RowRelation::LessEqual, std::move(rhs), origin);
}

void FeasibilitySystem::add_strict_greater(LinearTerms terms, Rat rhs, RowOrigin origin) {
  for (auto& t : terms) t.second = -t.second;
  add_strict_less(std::move(terms), -rhs, origin);
}

void FeasibilitySystem::write_lp_text(std::ostream& out) const {
  for (const auto& row : rows_) {
    if (row.terms.empty()) out << "0";
    bool first = true;
    for (const auto& [var, coef] : row.terms) {
      const bool negative = sgn(coef) < 0;
      if (first) {
        if (negative) out << "-";
      } else {
        out << (negative ? " - " : " + ");
      }
      const Rat magnitude = abs(coef);
      if (magnitude != 1) out << to_string(magnitude) << " ";
      out << variable_name(var);
      first = false;
    }
    out << (row.relation == RowRelation::Equal ? " = " : " <= ") << to_string(row.rhs) << "   # "
        << to_string(row.origin) << "\n";
  }
}

bool satisfies(const FeasibilitySystem& sys, const RatVector& point) {
  if (point.size() != sys.variable_count()) return false;
  if (std::any_of(point.begin(), point.end(), [](const Rat& v) { return sgn(v) < 0; })) return false;
  Rat lhs;
  for (const auto& row : sys.constraints()) {
    lhs = 0;
    for (const auto& [var, coef] : row.terms) lhs += coef * point[var];
    const int c = cmp(lhs, row.rhs);
    if (row.relation == RowRelation::Equal ? c != 0 : c > 0) return false;
  }
  return true;
}

namespace {

struct WorkRow {
  LinearTerms terms;
  RowRelation relation;
  Rat rhs;
};

// Substitutes fixed variables, pins variables forced by singleton rows,
// drops constant rows and merges rows with identical left-hand sides.
// Returns false when the weak relaxation is already proven infeasible.
bool presolve(std::vector<WorkRow>& rows, std::vector<std::optional<Rat>>& fixed) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<WorkRow> kept;
    kept.reserve(rows.size());
    for (auto& row : rows) {
      std::erase_if(row.terms, [&](const auto& t) {
        if (!fixed[t.first]) return false;
        row.rhs -= t.second * *fixed[t.first];
        return true;
      });
      if (row.terms.empty()) {
        const int s = sgn(row.rhs);
        if (row.relation == RowRelation::Equal ? s != 0 : s < 0) return false;
        continue;
      }
      if (row.terms.size() == 1) {
        const auto& [var, coef] = row.terms.front();
        const Rat bound = row.rhs / coef;
        if (row.relation == RowRelation::Equal) {
          if (sgn(bound) < 0) return false;
          fixed[var] = bound;
          changed = true;
          continue;
        }
        if (sgn(coef) > 0) {
          // coef * x <= rhs with x >= 0
          if (sgn(bound) < 0) return false;
          if (sgn(bound) == 0) {
            fixed[var] = Rat(0);
            changed = true;
            continue;
          }
        } else if (sgn(bound) <= 0) {
          continue;  // x >= nonpositive bound: implied by x >= 0
        }
      }
      kept.push_back(std::move(row));
    }
    rows = std::move(kept);
  }

  std::map<std::pair<RowRelation, LinearTerms>, std::size_t> seen;
  std::vector<WorkRow> unique;
  unique.reserve(rows.size());
  for (auto& row : rows) {
    auto [it, inserted] = seen.try_emplace({row.relation, row.terms}, unique.size());
    if (inserted) {
      unique.push_back(std::move(row));
      continue;
    }
    WorkRow& prior = unique[it->second];
    if (row.relation == RowRelation::Equal) {
      if (prior.rhs != row.rhs) return false;
    } else if (row.rhs < prior.rhs) {
      prior.rhs = row.rhs;
    }
  }
  rows = std::move(unique);
  return true;
}

}  // namespace

FeasibilityOutcome solve_feasibility(const FeasibilitySystem& sys) {
  const std::size_t vars = sys.variable_count();
  const std::size_t delta = sys.delta();

  std::vector<WorkRow> rows;
  rows.reserve(sys.constraints().size());
  for (const auto& c : sys.constraints()) rows.push_back(WorkRow{c.terms, c.relation, c.rhs});

  FeasibilityOutcome outcome;
  std::vector<std::optional<Rat>> fixed(vars);
  if (!presolve(rows, fixed)) return outcome;

  std::vector<long> column_of(vars, -1);
  std::vector<std::size_t> var_of_column;
  for (const auto& row : rows) {
    for (const auto& t : row.terms) {
      if (column_of[t.first] < 0) {
        column_of[t.first] = static_cast<long>(var_of_column.size());
        var_of_column.push_back(t.first);
      }
    }
  }
  const std::size_t cols = var_of_column.size();

  RatMatrix A;
  RatVector b;
  for (const auto& row : rows) {
    RatVector dense(cols, Rat(0));
    for (const auto& [var, coef] : row.terms) dense[column_of[var]] = coef;
    if (row.relation == RowRelation::Equal) {
      RatVector negated(cols);
      for (std::size_t k = 0; k < cols; ++k) negated[k] = -dense[k];
      A.push_back(std::move(negated));
      b.push_back(-row.rhs);
    }
    A.push_back(std::move(dense));
    b.push_back(row.rhs);
  }
  RatVector objective(cols, Rat(0));
  if (column_of[delta] >= 0) objective[column_of[delta]] = 1;

  const auto result = detail::maximize(A, b, objective);
  if (result.status == detail::SimplexResult::Status::Infeasible) return outcome;
  if (result.status == detail::SimplexResult::Status::Unbounded || (!fixed[delta] && column_of[delta] < 0)) {
    throw Error(ErrorKind::InternalInconsistency, "strictness slack is unbounded; the system lacks delta <= 1");
  }

  RatVector point(vars, Rat(0));
  for (std::size_t v = 0; v < vars; ++v) {
    if (fixed[v]) point[v] = *fixed[v];
  }
  for (std::size_t k = 0; k < cols; ++k) point[var_of_column[k]] = result.x[k];

  outcome.optimal_delta = point[delta];
  outcome.feasible = sgn(point[delta]) > 0;
  if (outcome.feasible) {
    if (!satisfies(sys, point)) {
      throw Error(ErrorKind::InternalInconsistency, "simplex point violates the system it solved");
    }
    outcome.point = std::move(point);
  }
  return outcome;
}

}  // namespace sppe
