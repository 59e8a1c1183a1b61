#include "sppe/verifier.hpp"

#include <algorithm>

#include "sppe/error.hpp"

namespace sppe {

namespace {

std::string idx(std::size_t k) { return std::to_string(k + 1); }

void fail(ConditionCheck& check, std::optional<std::size_t> buyer, std::optional<std::size_t> good,
          std::string detail) {
  if (!check.holds) return;  // keep the first violation
  check.holds = false;
  check.buyer = buyer;
  check.good = good;
  check.detail = std::move(detail);
}

bool in_unit_interval(const Rat& v) { return sgn(v) >= 0 && v <= 1; }

}  // namespace

std::string VerificationReport::first_failure() const {
  if (!preconditions.holds) return "precondition";
  if (!a.holds) return "a";
  if (!b.holds) return "b";
  if (!c.holds) return "c";
  if (!d.holds) return "d";
  return "";
}

Rat second_price(const RatVector& bids) {
  if (bids.empty()) return Rat(0);
  const Rat top = *std::max_element(bids.begin(), bids.end());
  std::size_t at_top = 0;
  Rat runner_up = 0;  // the dummy bidder always bids 0
  for (const Rat& b : bids) {
    if (b == top) {
      ++at_top;
    } else if (b > runner_up) {
      runner_up = b;
    }
  }
  return at_top >= 2 ? top : runner_up;
}

VerificationReport verify_equilibrium(const Instance& inst, const RatVector& alpha, const RatMatrix& x) {
  VerificationReport report;
  const std::size_t n = inst.n;
  const std::size_t m = inst.m;

  if (alpha.size() != n || x.size() != n ||
      std::any_of(x.begin(), x.end(), [&](const RatVector& row) { return row.size() != m; })) {
    fail(report.preconditions, std::nullopt, std::nullopt,
         "alpha must have n entries and x must be n x m");
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_unit_interval(alpha[i])) {
      fail(report.preconditions, i, std::nullopt, "alpha_" + idx(i) + " = " + to_string(alpha[i]) + " outside [0,1]");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!in_unit_interval(x[i][j])) {
        fail(report.preconditions, i, j,
             "x_" + idx(i) + "," + idx(j) + " = " + to_string(x[i][j]) + " outside [0,1]");
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    Rat column = 0;
    for (std::size_t i = 0; i < n; ++i) column += x[i][j];
    if (column > 1) {
      fail(report.preconditions, std::nullopt, j, "sum_i x_i," + idx(j) + " = " + to_string(column) + " > 1");
    }
  }

  report.highest_bid.assign(m, Rat(0));
  report.price.assign(m, Rat(0));
  report.spend.assign(n, Rat(0));
  RatVector bids(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) bids[i] = alpha[i] * inst.value(i, j);
    report.highest_bid[j] = *std::max_element(bids.begin(), bids.end());
    report.price[j] = second_price(bids);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (sgn(x[i][j]) <= 0) continue;
      const Rat bid = alpha[i] * inst.value(i, j);
      if (bid != report.highest_bid[j]) {
        fail(report.a, i, j,
             "x_" + idx(i) + "," + idx(j) + " = " + to_string(x[i][j]) + " > 0 but paced bid " + to_string(bid) +
                 " < h_" + idx(j) + " = " + to_string(report.highest_bid[j]));
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (sgn(report.highest_bid[j]) <= 0) continue;
    Rat column = 0;
    for (std::size_t i = 0; i < n; ++i) column += x[i][j];
    if (column != 1) {
      fail(report.b, std::nullopt, j,
           "h_" + idx(j) + " = " + to_string(report.highest_bid[j]) + " > 0 but sum_i x_i," + idx(j) + " = " +
               to_string(column));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) report.spend[i] += x[i][j] * report.price[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (report.spend[i] > inst.budgets[i]) {
      fail(report.c, i, std::nullopt,
           "buyer " + idx(i) + " spends " + to_string(report.spend[i]) + " > B = " + to_string(inst.budgets[i]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (report.spend[i] < inst.budgets[i] && alpha[i] != 1) {
      fail(report.d, i, std::nullopt,
           "buyer " + idx(i) + " spends " + to_string(report.spend[i]) + " < B = " + to_string(inst.budgets[i]) +
               " with alpha = " + to_string(alpha[i]));
    }
  }

  report.pass = report.preconditions.holds && report.a.holds && report.b.holds && report.c.holds && report.d.holds;
  return report;
}

namespace {

// Extreme allocations for one good given the paced bids.
std::vector<RatVector> column_options(const Instance& inst, const RatVector& alpha, std::size_t j) {
  const std::size_t n = inst.n;
  RatVector bids(n);
  for (std::size_t i = 0; i < n; ++i) bids[i] = alpha[i] * inst.value(i, j);
  const Rat top = *std::max_element(bids.begin(), bids.end());
  if (sgn(top) == 0) return {RatVector(n, Rat(0))};

  std::vector<std::size_t> winners;
  for (std::size_t i = 0; i < n; ++i) {
    if (bids[i] == top) winners.push_back(i);
  }
  std::vector<RatVector> options;
  for (std::size_t w : winners) {
    RatVector col(n, Rat(0));
    col[w] = 1;
    options.push_back(std::move(col));
  }

  const Rat price = second_price(bids);
  if (inst.m == 1 && winners.size() >= 2 && sgn(price) > 0) {
    // Paced winners spend exactly their budget; unpaced winners share the rest.
    RatVector col(n, Rat(0));
    Rat assigned = 0;
    std::vector<std::size_t> unpaced;
    for (std::size_t w : winners) {
      if (alpha[w] < 1) {
        col[w] = inst.budgets[w] / price;
        assigned += col[w];
      } else {
        unpaced.push_back(w);
      }
    }
    const Rat rest = 1 - assigned;
    if (sgn(rest) >= 0 && (!unpaced.empty() || sgn(rest) == 0)) {
      for (std::size_t w : unpaced) col[w] = rest / Rat(static_cast<unsigned long>(unpaced.size()));
      options.push_back(std::move(col));
    }
  }
  return options;
}

}  // namespace

std::vector<GridCandidate> grid_oracle(const Instance& inst, unsigned resolution) {
  if (inst.n > 3 || inst.m > 2) {
    throw Error(ErrorKind::InstanceTooLarge, "grid oracle is limited to n <= 3 and m <= 2");
  }
  if (resolution == 0) throw Error(ErrorKind::InstanceTooLarge, "grid resolution must be positive");

  std::vector<GridCandidate> found;
  std::vector<unsigned> steps(inst.n, 0);
  for (;;) {
    RatVector alpha(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) alpha[i] = Rat(steps[i], resolution);
    for (auto& a : alpha) a.canonicalize();

    std::vector<std::vector<RatVector>> options(inst.m);
    for (std::size_t j = 0; j < inst.m; ++j) options[j] = column_options(inst, alpha, j);
    std::vector<std::size_t> pick(inst.m, 0);
    for (;;) {
      RatMatrix x = zero_matrix(inst.n, inst.m);
      for (std::size_t j = 0; j < inst.m; ++j) {
        for (std::size_t i = 0; i < inst.n; ++i) x[i][j] = options[j][pick[j]][i];
      }
      if (verify_equilibrium(inst, alpha, x).pass) found.push_back(GridCandidate{alpha, std::move(x)});
      std::size_t j = 0;
      while (j < inst.m && ++pick[j] == options[j].size()) pick[j++] = 0;
      if (j == inst.m) break;
    }

    std::size_t i = 0;
    while (i < inst.n && ++steps[i] > resolution) steps[i++] = 0;
    if (i == inst.n) break;
  }
  return found;
}

}  // namespace sppe
