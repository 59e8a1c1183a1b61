#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sppe/instance.hpp"
#include "sppe/lp.hpp"
#include "sppe/rational.hpp"

namespace sppe {

// Outcome of comparing two quantities: sign(lhs - rhs).
enum class Cmp : std::int8_t { Less = -1, Equal = 0, Greater = 1 };

inline Cmp flip(Cmp c) { return static_cast<Cmp>(-static_cast<int>(c)); }

// A 1-D projection of the lambda-space arrangement. Coordinate axes carry
// lambda_j with breakpoints {v_ij > 0}; ratio axes carry lambda_j/lambda_k
// (j < k) with breakpoints {v_ij / v_ik : both > 0}. Regions tile (0, inf)
// left to right: region 2q is the open interval below breakpoint q, region
// 2q+1 is the breakpoint itself, region 2B is the unbounded tail.
struct Axis {
  enum class Kind { Coordinate, Ratio };

  Kind kind = Kind::Coordinate;
  std::size_t good = 0;
  std::size_t other_good = 0;  // ratio axes only
  RatVector breakpoints;       // sorted, distinct, positive

  std::size_t region_count() const { return 2 * breakpoints.size() + 1; }
  bool is_point(std::size_t region) const { return region % 2 == 1; }
  // sign(value - breakpoints[q]) for any value in the region.
  Cmp compare(std::size_t region, std::size_t q) const {
    const std::size_t at = 2 * q + 1;
    return region < at ? Cmp::Less : region == at ? Cmp::Equal : Cmp::Greater;
  }
  std::size_t locate(const Rat& value) const;
  // A point of the region (midpoint, the breakpoint, or just past the end).
  Rat representative(std::size_t region) const;
};

struct Axes {
  std::vector<Axis> coordinates;  // one per good
  std::vector<Axis> ratios;       // one per pair j < k, lexicographic
};

// Requires a preprocessed instance (every good valued by someone).
Axes build_axes(const Instance& inst);

// One region per axis, coordinates first, then ratio axes. The index is
// the state's position in canonical (mixed-radix, last axis fastest) order.
struct CellState {
  std::vector<std::size_t> regions;
  mpz_class index;
};

// An interval of positive reals; no upper end means +infinity.
struct PositiveInterval {
  Rat lo;  // 0 with lo_closed = false when unbounded below
  bool lo_closed = false;
  std::optional<Rat> hi;
  bool hi_closed = false;

  static PositiveInterval point(const Rat& v) { return PositiveInterval{v, true, v, true}; }
  bool empty() const;
  PositiveInterval intersect(const PositiveInterval& other) const;
  // Some member of a nonempty interval.
  Rat pick() const;
};

// The lambda values a region of an axis allows (for ratio axes, the values
// of lambda_j / lambda_k).
PositiveInterval region_interval(const Axis& axis, std::size_t region);

// Bounds lambda_a / lambda_b <= w (strict or weak) over nodes 0 (the
// constant 1) and j + 1 (lambda_j). Every cell row and every witness
// dominance row has this form. In log space these are difference
// constraints, so the system is kept path-closed: it is feasible iff no
// cycle multiplies to below 1 (or to exactly 1 through a strict bound), and
// the closure gives the exact range of any ratio.
class RatioSystem {
 public:
  explicit RatioSystem(std::size_t goods);

  bool feasible() const { return feasible_; }
  // lambda_a / lambda_b <= w. Returns feasible().
  bool bound(std::size_t a, std::size_t b, const Rat& w, bool strict);
  // lambda_a / lambda_b in `allowed`. Returns feasible().
  bool restrict(std::size_t a, std::size_t b, const PositiveInterval& allowed);
  // Exact range of lambda_a / lambda_b; requires feasible().
  PositiveInterval range(std::size_t a, std::size_t b) const;
  // An exact point, lambda_j per good; requires feasible().
  RatVector point() const;

 private:
  struct Bound {
    bool finite = false;
    Rat value;
    bool strict = false;
    bool operator<(const Bound& o) const;
    Bound operator*(const Bound& o) const;
  };
  Bound& at(std::size_t a, std::size_t b) { return d_[a * size_ + b]; }
  const Bound& at(std::size_t a, std::size_t b) const { return d_[a * size_ + b]; }
  void add(std::size_t a, std::size_t b, const Bound& w);

  std::size_t size_;
  std::vector<Bound> d_;
  bool feasible_ = true;
};

// Immutable per-instance context: the axes plus, for each buyer, where its
// own hyperplanes sit on them. Safe to share across threads.
class CellGeometry {
 public:
  explicit CellGeometry(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  std::size_t goods() const { return inst_->m; }
  std::size_t buyers() const { return inst_->n; }
  std::size_t axis_count() const { return axes_.size(); }
  const Axis& axis(std::size_t a) const { return axes_[a]; }
  const Axes& grouped_axes() const { return grouped_; }
  std::size_t ratio_axis(std::size_t j, std::size_t k) const;  // j < k

  // Product of region counts; the total number of states.
  mpz_class state_count() const;
  mpz_class index_of(const std::vector<std::size_t>& regions) const;

  // sign(lambda_j - v_ij); requires v_ij > 0.
  Cmp coordinate_sign(const CellState& s, std::size_t buyer, std::size_t j) const;
  // sign(v_ik lambda_j - v_ij lambda_k); requires j < k, v_ij > 0, v_ik > 0.
  Cmp ratio_sign(const CellState& s, std::size_t buyer, std::size_t j, std::size_t k) const;
  // sign(t_a - t_b) between buyer terms, where term 0 is the constant 1
  // and term j+1 is lambda_j / v_ij. Both terms must exist for the buyer.
  Cmp term_order(const CellState& s, std::size_t buyer, std::size_t a, std::size_t b) const;
  // The buyer's terms: 0, then j+1 for every good with v_ij > 0.
  const std::vector<std::size_t>& terms(std::size_t buyer) const { return terms_[buyer]; }

  // The region's defining rows over lambda (+ delta for strict sides).
  void add_region_rows(FeasibilitySystem& sys, std::size_t axis, std::size_t region) const;
  // lambda_j > 0 for every good, plus every region's rows and delta <= 1.
  FeasibilitySystem cell_system(const CellState& s) const;
  // The same cell as a ratio system.
  RatioSystem ratio_system(const CellState& s) const;

 private:
  const Instance* inst_;
  Axes grouped_;
  std::vector<Axis> axes_;
  // Per buyer: breakpoint position on each coordinate axis / ratio axis,
  // or npos when the buyer contributes no hyperplane there.
  std::vector<std::vector<std::size_t>> coord_pos_;
  std::vector<std::vector<std::size_t>> ratio_pos_;
  std::vector<std::vector<std::size_t>> terms_;
};

// Streams every state, in canonical order, as the full product of regions.
class StateEnumerator {
 public:
  explicit StateEnumerator(const CellGeometry& geo);
  std::optional<CellState> next();

 private:
  const CellGeometry* geo_;
  std::vector<std::size_t> current_;
  mpz_class index_;
  bool done_ = false;
};

std::vector<CellState> enumerate_states(const CellGeometry& geo);

// Per-buyer check that the sign tables induce a total preorder over the
// buyer's terms {1} u {lambda_j / v_ij}. Necessary, not sufficient, for the
// cell to be nonempty.
bool check_consistency(const CellState& s, const CellGeometry& geo);

// Exact nonemptiness: a point of the cell, or nullopt if the cell is empty.
std::optional<RatVector> cell_point(const CellState& s, const CellGeometry& geo);

// Visits the nonempty states in canonical order. Prefixes whose partial
// cell is empty are skipped as whole blocks. The visitor may call point()
// for an exact point inside the cell; return false to stop.
using PointSource = std::function<RatVector()>;
using CellVisitor = std::function<bool(const CellState&, const PointSource& point)>;
void for_each_nonempty_state(const CellGeometry& geo, const CellVisitor& visit);

// alpha_i(lambda) inside a cell: either the constant 1 or lambda_j / v_ij.
struct AlphaExpr {
  bool unpaced = true;
  std::size_t good = 0;
  Rat value;  // v_ij for the chosen good
};

// c + sum_j coef_j lambda_j, dense over goods.
struct AffineForm {
  Rat constant;
  RatVector coef;

  Rat evaluate(const RatVector& lambda) const;
  AffineForm operator-(const AffineForm& other) const;
  LinearTerms lambda_terms() const;  // non-zero coefficients as sparse terms
};

struct BidTerm {
  Rat coef;
  std::size_t node = 0;
};

struct CellDerivation {
  // M_i(F): whether the constant term is a minimizer, and which goods are.
  std::vector<bool> constant_minimizer;
  std::vector<std::vector<std::size_t>> minimizers;
  std::vector<AlphaExpr> alpha;
  std::vector<std::vector<std::size_t>> top_bidders;  // T_j(F), ascending
  std::vector<std::size_t> unpaced;                   // E(F)
  std::vector<std::size_t> paced;                     // L(F)

  AffineForm alpha_form(std::size_t buyer, std::size_t goods) const;
  // alpha_i(lambda) * v_ij
  AffineForm bid_form(const Instance& inst, std::size_t buyer, std::size_t good) const;
  // The same bid as coef * node, node 0 being the constant 1 and node k + 1
  // being lambda_k.
  BidTerm bid_term(const Instance& inst, std::size_t buyer, std::size_t good) const;
};

// Throws InconsistentState when check_consistency fails.
CellDerivation derive_cell(const CellState& s, const CellGeometry& geo);

namespace detail {
// derive_cell for a state already known to pass check_consistency.
CellDerivation derive_consistent_cell(const CellState& s, const CellGeometry& geo);
}  // namespace detail

}  // namespace sppe
