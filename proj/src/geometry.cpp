#include "sppe/geometry.hpp"

#include <algorithm>
#include <string>

#include "sppe/error.hpp"

namespace sppe {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Axis make_axis(Axis::Kind kind, std::size_t good, std::size_t other, RatVector values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return Axis{kind, good, other, std::move(values)};
}

std::size_t position_of(const Axis& axis, const Rat& value) {
  auto it = std::lower_bound(axis.breakpoints.begin(), axis.breakpoints.end(), value);
  return static_cast<std::size_t>(it - axis.breakpoints.begin());
}

}  // namespace

std::size_t Axis::locate(const Rat& value) const {
  const std::size_t q = position_of(*this, value);
  if (q < breakpoints.size() && breakpoints[q] == value) return 2 * q + 1;
  return 2 * q;
}

Rat Axis::representative(std::size_t region) const {
  if (is_point(region)) return breakpoints[region / 2];
  const std::size_t q = region / 2;
  if (breakpoints.empty()) return Rat(1);
  if (q == 0) return breakpoints.front() / 2;
  if (q == breakpoints.size()) return breakpoints.back() + 1;
  return (breakpoints[q - 1] + breakpoints[q]) / 2;
}

Axes build_axes(const Instance& inst) {
  Axes axes;
  for (std::size_t j = 0; j < inst.m; ++j) {
    RatVector values;
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (sgn(inst.value(i, j)) > 0) values.push_back(inst.value(i, j));
    }
    axes.coordinates.push_back(make_axis(Axis::Kind::Coordinate, j, j, std::move(values)));
  }
  for (std::size_t j = 0; j < inst.m; ++j) {
    for (std::size_t k = j + 1; k < inst.m; ++k) {
      RatVector values;
      for (std::size_t i = 0; i < inst.n; ++i) {
        if (sgn(inst.value(i, j)) > 0 && sgn(inst.value(i, k)) > 0) {
          values.push_back(inst.value(i, j) / inst.value(i, k));
        }
      }
      axes.ratios.push_back(make_axis(Axis::Kind::Ratio, j, k, std::move(values)));
    }
  }
  return axes;
}

CellGeometry::CellGeometry(const Instance& inst) : inst_(&inst), grouped_(build_axes(inst)) {
  axes_ = grouped_.coordinates;
  axes_.insert(axes_.end(), grouped_.ratios.begin(), grouped_.ratios.end());

  coord_pos_.assign(inst.n, std::vector<std::size_t>(inst.m, npos));
  ratio_pos_.assign(inst.n, std::vector<std::size_t>(grouped_.ratios.size(), npos));
  terms_.assign(inst.n, std::vector<std::size_t>{0});
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.m; ++j) {
      if (sgn(inst.value(i, j)) > 0) terms_[i].push_back(j + 1);
    }
    for (std::size_t j = 0; j < inst.m; ++j) {
      if (sgn(inst.value(i, j)) > 0) coord_pos_[i][j] = position_of(grouped_.coordinates[j], inst.value(i, j));
    }
    for (std::size_t r = 0; r < grouped_.ratios.size(); ++r) {
      const Axis& ax = grouped_.ratios[r];
      const Rat& vj = inst.value(i, ax.good);
      const Rat& vk = inst.value(i, ax.other_good);
      if (sgn(vj) > 0 && sgn(vk) > 0) ratio_pos_[i][r] = position_of(ax, vj / vk);
    }
  }
}

std::size_t CellGeometry::ratio_axis(std::size_t j, std::size_t k) const {
  // pairs (0,1), (0,2), ..., (1,2), ...
  const std::size_t m = goods();
  return m + j * (2 * m - j - 1) / 2 + (k - j - 1);
}

mpz_class CellGeometry::state_count() const {
  mpz_class total = 1;
  for (const auto& ax : axes_) total *= static_cast<unsigned long>(ax.region_count());
  return total;
}

mpz_class CellGeometry::index_of(const std::vector<std::size_t>& regions) const {
  mpz_class index = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    index *= static_cast<unsigned long>(axes_[a].region_count());
    index += static_cast<unsigned long>(regions[a]);
  }
  return index;
}

Cmp CellGeometry::coordinate_sign(const CellState& s, std::size_t buyer, std::size_t j) const {
  return axes_[j].compare(s.regions[j], coord_pos_[buyer][j]);
}

Cmp CellGeometry::ratio_sign(const CellState& s, std::size_t buyer, std::size_t j, std::size_t k) const {
  const std::size_t a = ratio_axis(j, k);
  return axes_[a].compare(s.regions[a], ratio_pos_[buyer][a - goods()]);
}

Cmp CellGeometry::term_order(const CellState& s, std::size_t buyer, std::size_t a, std::size_t b) const {
  if (a == b) return Cmp::Equal;
  if (a == 0) return flip(coordinate_sign(s, buyer, b - 1));
  if (b == 0) return coordinate_sign(s, buyer, a - 1);
  // lambda_j / v_ij vs lambda_k / v_ik has the sign of v_ik lambda_j - v_ij lambda_k.
  if (a < b) return ratio_sign(s, buyer, a - 1, b - 1);
  return flip(ratio_sign(s, buyer, b - 1, a - 1));
}

void CellGeometry::add_region_rows(FeasibilitySystem& sys, std::size_t a, std::size_t region) const {
  const Axis& ax = axes_[a];
  // The axis quantity as a linear form that is compared against t:
  // lambda_j - t for coordinates, lambda_j - t lambda_k for ratios.
  auto form = [&](const Rat& t) {
    LinearTerms terms{{sys.lambda(ax.good), Rat(1)}};
    Rat rhs = 0;
    if (ax.kind == Axis::Kind::Coordinate) {
      rhs = t;
    } else {
      terms.emplace_back(sys.lambda(ax.other_good), -t);
    }
    return std::make_pair(std::move(terms), std::move(rhs));
  };
  if (ax.is_point(region)) {
    auto [terms, rhs] = form(ax.breakpoints[region / 2]);
    sys.add_equal(std::move(terms), std::move(rhs), RowOrigin::Cell);
    return;
  }
  const std::size_t q = region / 2;
  if (q > 0) {
    auto [terms, rhs] = form(ax.breakpoints[q - 1]);
    sys.add_strict_greater(std::move(terms), std::move(rhs), RowOrigin::Cell);
  }
  if (q < ax.breakpoints.size()) {
    auto [terms, rhs] = form(ax.breakpoints[q]);
    sys.add_strict_less(std::move(terms), std::move(rhs), RowOrigin::Cell);
  }
}

FeasibilitySystem CellGeometry::cell_system(const CellState& s) const {
  FeasibilitySystem sys(goods(), 0);
  for (std::size_t j = 0; j < goods(); ++j) {
    sys.add_strict_greater({{sys.lambda(j), Rat(1)}}, Rat(0), RowOrigin::Positivity);
  }
  for (std::size_t a = 0; a < axes_.size(); ++a) add_region_rows(sys, a, s.regions[a]);
  sys.add_less_equal({{sys.delta(), Rat(1)}}, Rat(1), RowOrigin::Slack);
  return sys;
}

StateEnumerator::StateEnumerator(const CellGeometry& geo)
    : geo_(&geo), current_(geo.axis_count(), 0), index_(0) {}

std::optional<CellState> StateEnumerator::next() {
  if (done_) return std::nullopt;
  CellState state{current_, index_};
  // Advance the mixed-radix counter, last axis fastest.
  std::size_t a = current_.size();
  while (a > 0) {
    --a;
    if (++current_[a] < geo_->axis(a).region_count()) break;
    current_[a] = 0;
    if (a == 0) done_ = true;
  }
  if (current_.empty()) done_ = true;
  index_ += 1;
  return state;
}

std::vector<CellState> enumerate_states(const CellGeometry& geo) {
  std::vector<CellState> states;
  StateEnumerator it(geo);
  while (auto s = it.next()) states.push_back(std::move(*s));
  return states;
}

bool check_consistency(const CellState& s, const CellGeometry& geo) {
  for (std::size_t i = 0; i < geo.buyers(); ++i) {
    const auto& terms = geo.terms(i);
    // The comparison table is complete and antisymmetric by construction;
    // what can fail is transitivity, i.e. a cycle through a strict edge.
    for (std::size_t a : terms) {
      for (std::size_t b : terms) {
        const Cmp ab = geo.term_order(s, i, a, b);
        if (ab == Cmp::Greater) continue;
        for (std::size_t c : terms) {
          const Cmp bc = geo.term_order(s, i, b, c);
          if (bc == Cmp::Greater) continue;
          const Cmp ac = geo.term_order(s, i, a, c);
          const bool strict = ab == Cmp::Less || bc == Cmp::Less;
          if (ac == Cmp::Greater || (strict && ac != Cmp::Less)) return false;
        }
      }
    }
  }
  return true;
}

std::optional<RatVector> cell_point(const CellState& s, const CellGeometry& geo) {
  const RatioSystem sys = geo.ratio_system(s);
  if (!sys.feasible()) return std::nullopt;
  return sys.point();
}

bool PositiveInterval::empty() const { return hi && (lo > *hi || (lo == *hi && !(lo_closed && hi_closed))); }

PositiveInterval PositiveInterval::intersect(const PositiveInterval& b) const {
  PositiveInterval out = *this;
  if (b.lo > out.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else if (b.lo == out.lo) {
    out.lo_closed = lo_closed && b.lo_closed;
  }
  if (b.hi && (!out.hi || *b.hi < *out.hi)) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else if (b.hi && *b.hi == *out.hi) {
    out.hi_closed = hi_closed && b.hi_closed;
  }
  return out;
}

Rat PositiveInterval::pick() const {
  if (!hi) return lo + 1;
  if (lo == *hi) return lo;
  return (lo + *hi) / 2;
}

PositiveInterval region_interval(const Axis& axis, std::size_t r) {
  const std::size_t q = r / 2;
  if (axis.is_point(r)) return PositiveInterval::point(axis.breakpoints[q]);
  PositiveInterval out;
  if (q > 0) out.lo = axis.breakpoints[q - 1];
  if (q < axis.breakpoints.size()) out.hi = axis.breakpoints[q];
  return out;
}

// Strict bounds sort below weak ones of the same value.
bool RatioSystem::Bound::operator<(const Bound& o) const {
  if (!finite) return false;
  if (!o.finite) return true;
  return value < o.value || (value == o.value && strict && !o.strict);
}

RatioSystem::Bound RatioSystem::Bound::operator*(const Bound& o) const {
  if (!finite || !o.finite) return Bound{};
  return Bound{true, value * o.value, strict || o.strict};
}

RatioSystem::RatioSystem(std::size_t goods) : size_(goods + 1), d_(size_ * size_) {
  for (std::size_t a = 0; a < size_; ++a) at(a, a) = Bound{true, Rat(1), false};
}

bool RatioSystem::bound(std::size_t a, std::size_t b, const Rat& w, bool strict) {
  if (feasible_) add(a, b, Bound{true, w, strict});
  return feasible_;
}

bool RatioSystem::restrict(std::size_t a, std::size_t b, const PositiveInterval& allowed) {
  if (allowed.hi) bound(a, b, *allowed.hi, !allowed.hi_closed);
  if (sgn(allowed.lo) > 0) bound(b, a, 1 / allowed.lo, !allowed.lo_closed);
  return feasible_;
}

PositiveInterval RatioSystem::range(std::size_t a, std::size_t b) const {
  PositiveInterval out;
  const Bound& up = at(a, b);
  if (up.finite) {
    out.hi = up.value;
    out.hi_closed = !up.strict;
  }
  const Bound& down = at(b, a);
  if (down.finite) {
    out.lo = 1 / down.value;
    out.lo_closed = !down.strict;
  }
  return out;
}

RatVector RatioSystem::point() const {
  RatioSystem work = *this;
  RatVector lambda(size_ - 1);
  for (std::size_t j = 1; j < size_; ++j) {
    lambda[j - 1] = work.range(j, 0).pick();
    work.restrict(j, 0, PositiveInterval::point(lambda[j - 1]));
  }
  return lambda;
}

void RatioSystem::add(std::size_t a, std::size_t b, const Bound& w) {
  if (!(w < at(a, b))) return;
  const Bound one{true, Rat(1), false};
  if (w * at(b, a) < one) {
    feasible_ = false;
    return;
  }
  // Only paths through the new bound can improve.
  std::vector<Bound> into(size_), from(size_);
  for (std::size_t x = 0; x < size_; ++x) {
    into[x] = at(x, a) * w;
    from[x] = at(b, x);
  }
  for (std::size_t x = 0; x < size_; ++x) {
    if (!into[x].finite) continue;
    for (std::size_t y = 0; y < size_; ++y) {
      if (!from[y].finite) continue;
      Bound via = into[x] * from[y];
      if (via < at(x, y)) at(x, y) = std::move(via);
    }
  }
}

RatioSystem CellGeometry::ratio_system(const CellState& s) const {
  RatioSystem sys(goods());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& ax = axes_[a];
    const std::size_t other = ax.kind == Axis::Kind::Coordinate ? 0 : ax.other_good + 1;
    if (!sys.restrict(ax.good + 1, other, region_interval(ax, s.regions[a]))) break;
  }
  return sys;
}

namespace {

class NonemptyWalk {
 public:
  NonemptyWalk(const CellGeometry& geo, const CellVisitor& visit)
      : geo_(geo), visit_(visit), regions_(geo.axis_count(), 0) {}

  void run() {
    if (geo_.axis_count() == 0) {
      visit_(CellState{{}, mpz_class(0)}, [] { return RatVector{}; });
      return;
    }
    descend(0, RatioSystem(geo_.goods()));
  }

 private:
  void descend(std::size_t a, const RatioSystem& closure) {
    const Axis& ax = geo_.axis(a);
    const bool coordinate = ax.kind == Axis::Kind::Coordinate;
    const std::size_t node_a = ax.good + 1;
    const std::size_t node_b = coordinate ? 0 : ax.other_good + 1;
    const PositiveInterval reach = closure.range(node_a, node_b);
    for (std::size_t r = 0; r < ax.region_count() && !stopped_; ++r) {
      const PositiveInterval allowed = reach.intersect(region_interval(ax, r));
      if (allowed.empty()) continue;
      regions_[a] = r;
      if (a + 1 == geo_.axis_count()) {
        const PointSource point = [&] {
          RatioSystem child = closure;
          child.restrict(node_a, node_b, region_interval(ax, r));
          return child.point();
        };
        if (!visit_(CellState{regions_, geo_.index_of(regions_)}, point)) stopped_ = true;
        continue;
      }
      RatioSystem child = closure;
      child.restrict(node_a, node_b, region_interval(ax, r));
      descend(a + 1, child);
    }
  }

  const CellGeometry& geo_;
  const CellVisitor& visit_;
  std::vector<std::size_t> regions_;
  bool stopped_ = false;
};

}  // namespace

void for_each_nonempty_state(const CellGeometry& geo, const CellVisitor& visit) {
  NonemptyWalk(geo, visit).run();
}

Rat AffineForm::evaluate(const RatVector& lambda) const {
  Rat total = constant;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (sgn(coef[j]) != 0) total += coef[j] * lambda[j];
  }
  return total;
}

AffineForm AffineForm::operator-(const AffineForm& other) const {
  AffineForm out{constant - other.constant, coef};
  for (std::size_t j = 0; j < coef.size(); ++j) out.coef[j] -= other.coef[j];
  return out;
}

LinearTerms AffineForm::lambda_terms() const {
  LinearTerms terms;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (sgn(coef[j]) != 0) terms.emplace_back(j, coef[j]);
  }
  return terms;
}

AffineForm CellDerivation::alpha_form(std::size_t buyer, std::size_t goods) const {
  AffineForm form{Rat(0), RatVector(goods, Rat(0))};
  const AlphaExpr& e = alpha[buyer];
  if (e.unpaced) {
    form.constant = 1;
  } else {
    form.coef[e.good] = 1 / e.value;
  }
  return form;
}

AffineForm CellDerivation::bid_form(const Instance& inst, std::size_t buyer, std::size_t good) const {
  AffineForm form = alpha_form(buyer, inst.m);
  const Rat& v = inst.value(buyer, good);
  form.constant *= v;
  for (auto& c : form.coef) c *= v;
  return form;
}

BidTerm CellDerivation::bid_term(const Instance& inst, std::size_t buyer, std::size_t good) const {
  const AlphaExpr& e = alpha[buyer];
  if (e.unpaced) return BidTerm{inst.value(buyer, good), 0};
  return BidTerm{inst.value(buyer, good) / e.value, e.good + 1};
}

CellDerivation derive_cell(const CellState& s, const CellGeometry& geo) {
  if (!check_consistency(s, geo)) {
    throw Error(ErrorKind::InconsistentState, "derive_cell called on an inconsistent state");
  }
  return detail::derive_consistent_cell(s, geo);
}

CellDerivation detail::derive_consistent_cell(const CellState& s, const CellGeometry& geo) {
  const Instance& inst = geo.instance();
  CellDerivation d;
  d.constant_minimizer.assign(inst.n, false);
  d.minimizers.assign(inst.n, {});
  d.alpha.assign(inst.n, AlphaExpr{});
  d.top_bidders.assign(inst.m, {});

  for (std::size_t i = 0; i < inst.n; ++i) {
    const auto& terms = geo.terms(i);
    for (std::size_t t : terms) {
      const bool minimal = std::none_of(terms.begin(), terms.end(),
                                        [&](std::size_t u) { return geo.term_order(s, i, t, u) == Cmp::Greater; });
      if (!minimal) continue;
      if (t == 0) {
        d.constant_minimizer[i] = true;
      } else {
        d.minimizers[i].push_back(t - 1);
        d.top_bidders[t - 1].push_back(i);
      }
    }
    if (d.constant_minimizer[i]) {
      d.unpaced.push_back(i);
      d.alpha[i] = AlphaExpr{true, 0, Rat(1)};
    } else {
      const std::size_t j = d.minimizers[i].front();
      d.paced.push_back(i);
      d.alpha[i] = AlphaExpr{false, j, inst.value(i, j)};
    }
  }
  return d;
}

}  // namespace sppe
