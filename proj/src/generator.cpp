#include "sppe/generator.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "sppe/error.hpp"

namespace sppe {

namespace {

Rat draw(std::mt19937_64& rng, long lo, long hi, unsigned max_den) {
  std::uniform_int_distribution<unsigned> den_dist(1, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
  Rat value(num_dist(rng), den);
  value.canonicalize();
  return value;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.n == 0) throw Error(ErrorKind::Parse, "n must be positive");
  if (cfg.value_min < 0 || cfg.value_min > cfg.value_max) throw Error(ErrorKind::Parse, "bad value range");
  if (cfg.budget_min <= 0 || cfg.budget_min > cfg.budget_max) throw Error(ErrorKind::Parse, "bad budget range");
  if (cfg.max_denominator == 0) throw Error(ErrorKind::Parse, "max denominator must be positive");
  if (cfg.zero_probability < 0 || cfg.zero_probability > 1) throw Error(ErrorKind::Parse, "bad zero probability");
  if (cfg.types && (*cfg.types == 0 || *cfg.types > cfg.m)) {
    throw Error(ErrorKind::Parse, "types must be between 1 and m");
  }

  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution zero(cfg.zero_probability);
  auto column = [&] {
    RatVector col(cfg.n);
    for (auto& v : col) v = zero(rng) ? Rat(0) : draw(rng, cfg.value_min, cfg.value_max, cfg.max_denominator);
    return col;
  };

  std::vector<RatVector> columns;
  if (cfg.types) {
    std::set<RatVector> distinct;
    std::vector<RatVector> prototypes;
    // Redraw on the (rare) collision so exactly `types` columns are distinct.
    for (int attempts = 0; prototypes.size() < *cfg.types; ++attempts) {
      if (attempts > 1000) throw Error(ErrorKind::Parse, "value range too narrow for the requested types");
      RatVector col = column();
      if (distinct.insert(col).second) prototypes.push_back(std::move(col));
    }
    std::vector<std::size_t> assignment(cfg.m);
    std::uniform_int_distribution<std::size_t> pick(0, *cfg.types - 1);
    for (std::size_t j = 0; j < cfg.m; ++j) assignment[j] = j < *cfg.types ? j : pick(rng);
    std::shuffle(assignment.begin(), assignment.end(), rng);
    for (std::size_t t : assignment) columns.push_back(prototypes[t]);
  } else {
    for (std::size_t j = 0; j < cfg.m; ++j) columns.push_back(column());
  }

  RawInstance raw;
  raw.n = cfg.n;
  raw.m = cfg.m;
  raw.valuations = zero_matrix(cfg.n, cfg.m);
  for (std::size_t j = 0; j < cfg.m; ++j) {
    for (std::size_t i = 0; i < cfg.n; ++i) raw.valuations[i][j] = columns[j][i];
  }
  raw.budgets.resize(cfg.n);
  for (auto& b : raw.budgets) b = draw(rng, cfg.budget_min, cfg.budget_max, cfg.max_denominator);
  return validate_instance(raw);
}

}  // namespace sppe
