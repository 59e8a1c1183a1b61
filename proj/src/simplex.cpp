// Exact dictionary simplex (two-phase, Bland's rule).
//
// Dictionary convention, row i < m:  x_{basic[i]} = D(i, rhs) - sum_j D(i, j) x_{nonbasic[j]}.
// Row m holds the negated objective, row m + 1 the phase-one objective
// (maximize -x0 for the auxiliary variable x0, id -1).

#include <cstddef>
#include <vector>

#include "sppe/lp.hpp"

namespace sppe::detail {

namespace {

class Dictionary {
 public:
  Dictionary(const RatMatrix& A, const RatVector& b, const RatVector& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        cols_(n_ + 2),
        basic_(m_),
        nonbasic_(n_ + 1),
        D_(static_cast<std::size_t>(m_ + 2) * cols_) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = A[i][j];
      at(i, n_) = -1;
      at(i, n_ + 1) = b[i];
      basic_[i] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      at(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1;
  }

  SimplexResult solve() {
    SimplexResult result;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && sgn(at(r, n_ + 1)) < 0) {
      pivot(r, n_);
      if (!run(2) || sgn(at(m_ + 1, n_ + 1)) < 0) {
        result.status = SimplexResult::Status::Infeasible;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j) {
          if (sgn(at(i, j)) != 0 && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
        }
        if (s != -1) pivot(i, s);
      }
    }
    if (!run(1)) {
      result.status = SimplexResult::Status::Unbounded;
      return result;
    }
    result.status = SimplexResult::Status::Optimal;
    result.x.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) result.x[basic_[i]] = at(i, n_ + 1);
    }
    result.objective = at(m_, n_ + 1);
    return result;
  }

 private:
  Rat& at(int i, int j) { return D_[static_cast<std::size_t>(i) * cols_ + j]; }

  void pivot(int r, int s) {
    const Rat inv = 1 / at(r, s);
    Rat factor, scratch;
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || sgn(at(i, s)) == 0) continue;
      factor = at(i, s) * inv;
      for (int j = 0; j < n_ + 2; ++j) {
        if (j == s || sgn(at(r, j)) == 0) continue;
        scratch = at(r, j) * factor;
        at(i, j) -= scratch;
      }
      at(i, s) = -factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) at(r, j) *= inv;
    }
    at(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule: entering = smallest variable id with an improving
  // reduced cost; leaving = minimum ratio, ties to the smallest basic id.
  bool run(int phase) {
    const int obj = m_ + phase - 1;
    Rat lhs, rhs;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (sgn(at(obj, j)) < 0 && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (sgn(at(i, s)) <= 0) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        lhs = at(i, n_ + 1) * at(r, s);
        rhs = at(r, n_ + 1) * at(i, s);
        const int cmp = ::cmp(lhs, rhs);
        if (cmp < 0 || (cmp == 0 && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_, cols_;
  std::vector<int> basic_, nonbasic_;
  std::vector<Rat> D_;
};

}  // namespace

SimplexResult maximize(const RatMatrix& A, const RatVector& b, const RatVector& c) {
  return Dictionary(A, b, c).solve();
}

}  // namespace sppe::detail
