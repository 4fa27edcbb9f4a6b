#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "propeff/core.hpp"

namespace propeff {

// Dense two-phase simplex with Bland's anti-cycling rule. Instances in this
// library stay below ~50 variables, so no factorization machinery is needed;
// determinism of the returned vertex matters more than speed.

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class Rel { Le, Ge, Eq };

struct LinearConstraint {
  Vec coeffs;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

enum class Sense { Min, Max };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec point;       // primal solution
  Vec dual;        // one multiplier per constraint row (0 for redundant rows)
  double dual_value = 0.0;
};

namespace detail {

// Solves min c.x s.t. A x = b, x >= 0.
inline LpResult simplex_standard(Mat A, Vec b, Vec c) {
  const int m0 = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  std::vector<int> flip(m0, 1);
  for (int i = 0; i < m0; ++i) {
    if (b[i] < 0) {
      A.row(i) *= -1.0;
      b[i] *= -1.0;
      flip[i] = -1;
    }
  }

  // Tableau over original columns + m artificials.
  Mat T(m0, n + m0 + 1);
  T.setZero();
  T.block(0, 0, m0, n) = A;
  for (int i = 0; i < m0; ++i) T(i, n + i) = 1.0;
  T.col(n + m0) = b;
  std::vector<int> basis(m0);
  for (int i = 0; i < m0; ++i) basis[i] = n + i;
  std::vector<int> row_of_origin(m0);
  for (int i = 0; i < m0; ++i) row_of_origin[i] = i;

  const double pivot_tol = 1e-11;
  const long max_iters = 2000 + 50L * (m0 + n);
  long iters = 0;

  auto pivot = [&](int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < static_cast<int>(T.rows()); ++i) {
      if (i == row) continue;
      const double factor = T(i, col);
      if (factor != 0.0) T.row(i) -= factor * T.row(row);
    }
    basis[row] = col;
  };

  // Runs Bland's rule on the current tableau for objective `obj` restricted to
  // columns [0, ncols). Returns false when the problem is unbounded.
  auto run = [&](const Vec& obj, int ncols) -> bool {
    const int m = static_cast<int>(T.rows());
    for (;;) {
      if (++iters > max_iters)
        throw NumericalFailure("simplex: cycling guard exceeded");
      // Reduced costs r_j = c_j - c_B . B^{-1} A_j, read off the tableau.
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        double r = obj[j];
        for (int i = 0; i < m; ++i) r -= obj[basis[i]] * T(i, j);
        if (r < -kFeasTol) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (T(i, enter) > pivot_tol) {
          const double ratio = T(i, static_cast<int>(T.cols()) - 1) / T(i, enter);
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the sum of artificials.
  Vec phase1 = Vec::Zero(n + m0);
  for (int i = 0; i < m0; ++i) phase1[n + i] = 1.0;
  if (!run(phase1, n + m0))
    throw NumericalFailure("simplex: phase 1 unbounded");

  double art_sum = 0.0;
  for (int i = 0; i < static_cast<int>(T.rows()); ++i)
    if (basis[i] >= n) art_sum += T(i, static_cast<int>(T.cols()) - 1);
  LpResult res;
  if (art_sum > 1e-7) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (int i = static_cast<int>(T.rows()) - 1; i >= 0; --i) {
    if (basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot(i, col);
    } else {
      // Redundant constraint row.
      const int last = static_cast<int>(T.rows()) - 1;
      if (i != last) {
        T.row(i) = T.row(last);
        basis[i] = basis[last];
        row_of_origin[i] = row_of_origin[last];
      }
      T.conservativeResize(last, Eigen::NoChange);
      basis.pop_back();
      row_of_origin.pop_back();
    }
  }

  // Phase 2.
  Vec phase2 = Vec::Zero(n + m0);
  phase2.head(n) = c;
  if (!run(phase2, n)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  const int m = static_cast<int>(T.rows());
  Vec x = Vec::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T(i, static_cast<int>(T.cols()) - 1);

  res.status = LpStatus::Optimal;
  res.point = x;
  res.value = c.dot(x);

  // Duals: solve B^T y = c_B on the surviving rows of the normalized system
  // (A holds the flipped rows at this point), then undo row flips.
  Mat Bt(m, m);
  Vec cb(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) Bt(i, k) = A(row_of_origin[k], basis[i]);
    cb[i] = c[basis[i]];
  }
  Vec y = Bt.fullPivLu().solve(cb);
  res.dual = Vec::Zero(m0);
  for (int k = 0; k < m; ++k)
    res.dual[row_of_origin[k]] = y[k] * (flip[row_of_origin[k]] < 0 ? -1.0 : 1.0);
  // dual_value uses the caller's original rhs, reconstructed from the flips.
  double dv = 0.0;
  for (int i = 0; i < m0; ++i) dv += res.dual[i] * (flip[i] < 0 ? -b[i] : b[i]);
  res.dual_value = dv;
  return res;
}

}  // namespace detail

// Feasibility of A x = b, x >= 0. Returns a vertex solution when feasible.
inline std::optional<Vec> lp_feasible_point(const Mat& A, const Vec& b) {
  LpResult r = detail::simplex_standard(A, b, Vec::Zero(A.cols()));
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.point;
}

// min/max c.x s.t. A x = b, x >= 0.
inline LpResult lp_solve_standard(const Mat& A, const Vec& b, const Vec& c,
                                  Sense sense = Sense::Min) {
  if (sense == Sense::Min) return detail::simplex_standard(A, b, c);
  LpResult r = detail::simplex_standard(A, b, -c);
  if (r.status == LpStatus::Optimal) {
    r.value = -r.value;
    r.dual = -r.dual;
    r.dual_value = -r.dual_value;
  }
  return r;
}

// General LP over free variables: optimize objective.x subject to the given
// constraints. Internally x = u - v with u, v >= 0 plus slack columns.
inline LpResult lp_solve(const Vec& objective,
                         const std::vector<LinearConstraint>& constraints,
                         Sense sense = Sense::Min) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(constraints.size());
  int slacks = 0;
  for (const auto& con : constraints) {
    check_finite(con.coeffs);
    if (con.coeffs.size() != n) throw DimensionMismatch("lp_solve: constraint arity");
    if (con.rel != Rel::Eq) ++slacks;
  }
  check_finite(objective);

  Mat A = Mat::Zero(m, 2 * n + slacks);
  Vec b(m);
  int s = 0;
  for (int i = 0; i < m; ++i) {
    A.block(i, 0, 1, n) = constraints[i].coeffs.transpose();
    A.block(i, n, 1, n) = -constraints[i].coeffs.transpose();
    if (constraints[i].rel == Rel::Le) A(i, 2 * n + s++) = 1.0;
    if (constraints[i].rel == Rel::Ge) A(i, 2 * n + s++) = -1.0;
    b[i] = constraints[i].rhs;
  }
  Vec c = Vec::Zero(2 * n + slacks);
  c.head(n) = objective;
  c.segment(n, n) = -objective;

  LpResult r = lp_solve_standard(A, b, c, sense);
  if (r.status == LpStatus::Optimal) {
    Vec x = r.point.head(n) - r.point.segment(n, n);
    r.point = x;
  }
  return r;
}

}  // namespace propeff
