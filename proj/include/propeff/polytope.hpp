#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "propeff/core.hpp"
#include "propeff/linprog.hpp"

namespace propeff {

// A polytope as its vertex list. Canonical form keeps only extreme points.
struct Polytope {
  std::vector<Vec> vertices;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
};

// Is x a convex combination of `points`?
inline bool in_convex_hull(const Vec& x, const std::vector<Vec>& points,
                           double tol = kFeasTol) {
  if (points.empty()) return false;
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(points.size());
  Mat A(n + 1, k);
  for (int j = 0; j < k; ++j) {
    check_dim(points[j], n);
    A.block(0, j, n, 1) = points[j];
    A(n, j) = 1.0;
  }
  Vec b(n + 1);
  b.head(n) = x;
  b[n] = 1.0;
  auto sol = lp_feasible_point(A, b);
  if (!sol) return false;
  // Re-verify the combination within tolerance.
  Vec rec = Vec::Zero(n);
  for (int j = 0; j < k; ++j) rec += (*sol)[j] * points[j];
  return (rec - x).lpNorm<Eigen::Infinity>() <= std::max(tol, 1e-8);
}

inline bool polytope_contains(const Polytope& P, const Vec& x, double tol = kFeasTol) {
  return in_convex_hull(x, P.vertices, tol);
}

// Removes duplicates and points inside the hull of the others. Deterministic:
// scans from the last vertex down.
inline Polytope canonicalize_polytope(Polytope P) {
  if (P.vertices.empty()) throw ValidationError("polytope needs at least one vertex");
  const int n = static_cast<int>(P.vertices[0].size());
  for (const auto& v : P.vertices) {
    check_dim(v, n);
    check_finite(v);
  }
  std::vector<Vec> kept;
  for (const auto& v : P.vertices) {
    bool dup = false;
    for (const auto& w : kept)
      if (nearly_equal(v, w, kGeomTol)) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(v);
  }
  for (int i = static_cast<int>(kept.size()) - 1; i >= 0 && kept.size() > 1; --i) {
    std::vector<Vec> others;
    for (int j = 0; j < static_cast<int>(kept.size()); ++j)
      if (j != i) others.push_back(kept[j]);
    if (in_convex_hull(kept[i], others, kGeomTol))
      kept.erase(kept.begin() + i);
  }
  return Polytope{kept};
}

// ---------------------------------------------------------------------------
// Vertex enumeration of {x : A x <= b, E x = d} by brute force over active
// sets. Intended for the desk-scale systems produced by sphere sections.
// ---------------------------------------------------------------------------

struct HSystem {
  std::vector<Vec> ineq_normals;  // rows a with a.x <= rhs
  std::vector<double> ineq_rhs;
  std::vector<Vec> eq_normals;  // rows e with e.x = rhs
  std::vector<double> eq_rhs;

  void add_le(const Vec& a, double rhs) {
    ineq_normals.push_back(a);
    ineq_rhs.push_back(rhs);
  }
  void add_ge(const Vec& a, double rhs) { add_le(-a, -rhs); }
  void add_eq(const Vec& e, double rhs) {
    eq_normals.push_back(e);
    eq_rhs.push_back(rhs);
  }
};

inline std::vector<Vec> enumerate_vertices(const HSystem& sys, int dim,
                                           double feas_tol = 1e-9) {
  const int ne = static_cast<int>(sys.eq_normals.size());
  const int ni = static_cast<int>(sys.ineq_normals.size());
  std::vector<Vec> out;

  auto feasible = [&](const Vec& x) {
    for (int i = 0; i < ni; ++i)
      if (sys.ineq_normals[i].dot(x) > sys.ineq_rhs[i] + feas_tol) return false;
    for (int i = 0; i < ne; ++i)
      if (std::abs(sys.eq_normals[i].dot(x) - sys.eq_rhs[i]) > feas_tol) return false;
    return true;
  };

  // Choose `take` inequality rows to activate alongside all equalities.
  const int take = std::max(0, dim - ne);
  std::vector<int> idx(take);
  auto try_active_set = [&](const std::vector<int>& active) {
    Mat M(ne + static_cast<int>(active.size()), dim);
    Vec rhs(M.rows());
    for (int i = 0; i < ne; ++i) {
      M.row(i) = sys.eq_normals[i].transpose();
      rhs[i] = sys.eq_rhs[i];
    }
    for (int k = 0; k < static_cast<int>(active.size()); ++k) {
      M.row(ne + k) = sys.ineq_normals[active[k]].transpose();
      rhs[ne + k] = sys.ineq_rhs[active[k]];
    }
    Eigen::FullPivLU<Mat> lu(M);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim) return;
    Vec x = lu.solve(rhs);
    if ((M * x - rhs).lpNorm<Eigen::Infinity>() > 1e-7) return;
    if (!feasible(x)) return;
    for (const auto& v : out)
      if (nearly_equal(v, x, 1e-8)) return;
    out.push_back(x);
  };

  if (take == 0) {
    try_active_set({});
    return out;
  }
  if (take > ni) return out;
  // Iterative subset enumeration.
  for (int i = 0; i < take; ++i) idx[i] = i;
  for (;;) {
    try_active_set(idx);
    int pos = take - 1;
    while (pos >= 0 && idx[pos] == ni - take + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int k = pos + 1; k < take; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wolfe's min-norm-point algorithm over a finite point set. Exact at
// convergence; `support_min` certifies a lower bound on the hull distance to
// the origin: dist >= support_min when the direction is the returned point.
// ---------------------------------------------------------------------------

struct MinNormResult {
  Vec point;          // nearest point of the hull to the origin
  double norm = 0.0;  // |point|_2
  Vec direction;      // point / |point| (zero vector when norm ~ 0)
  double support_min = 0.0;  // min_p direction . p  (certified lower bound)
};

inline MinNormResult min_norm_point(const std::vector<Vec>& points,
                                    double tol = 1e-12) {
  if (points.empty()) throw ValidationError("min_norm_point: empty point set");
  const int n = static_cast<int>(points[0].size());

  int init = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i)
    if (points[i].squaredNorm() < points[init].squaredNorm()) init = i;

  std::vector<int> corral{init};
  std::vector<double> lambda{1.0};
  Vec x = points[init];

  auto affine_min = [&](std::vector<double>& alpha) -> Vec {
    const int k = static_cast<int>(corral.size());
    Mat M(k + 1, k + 1);
    Vec rhs = Vec::Zero(k + 1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M(i, j) = points[corral[i]].dot(points[corral[j]]);
    for (int i = 0; i < k; ++i) {
      M(i, k) = 1.0;
      M(k, i) = 1.0;
    }
    M(k, k) = 0.0;
    rhs[k] = 1.0;
    Vec sol = M.fullPivLu().solve(rhs);
    alpha.assign(sol.data(), sol.data() + k);
    Vec y = Vec::Zero(n);
    for (int i = 0; i < k; ++i) y += alpha[i] * points[corral[i]];
    return y;
  };

  const int cap = 2000;
  for (int iter = 0; iter < cap; ++iter) {
    if (x.squaredNorm() < 1e-28) break;
    int best = 0;
    double best_dot = x.dot(points[0]);
    for (int i = 1; i < static_cast<int>(points.size()); ++i) {
      const double d = x.dot(points[i]);
      if (d < best_dot - 1e-15) {
        best_dot = d;
        best = i;
      }
    }
    if (x.squaredNorm() - best_dot <= tol * std::max(1.0, x.squaredNorm())) break;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
    corral.push_back(best);
    lambda.push_back(0.0);

    for (int minor = 0; minor < cap; ++minor) {
      std::vector<double> alpha;
      Vec y = affine_min(alpha);
      double amin = *std::min_element(alpha.begin(), alpha.end());
      if (amin > -1e-12) {
        x = y;
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
        if (alpha[i] < lambda[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      for (int i = 0; i < static_cast<int>(lambda.size()); ++i)
        lambda[i] += theta * (alpha[i] - lambda[i]);
      x += theta * (y - x);
      for (int i = static_cast<int>(corral.size()) - 1; i >= 0; --i) {
        if (lambda[i] <= 1e-12) {
          corral.erase(corral.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
      }
    }
  }

  MinNormResult res;
  res.point = x;
  res.norm = x.norm();
  if (res.norm > 1e-13) {
    res.direction = x / res.norm;
    double sm = res.direction.dot(points[0]);
    for (const auto& p : points) sm = std::min(sm, res.direction.dot(p));
    res.support_min = sm;
  } else {
    res.direction = Vec::Zero(n);
    res.support_min = 0.0;
  }
  return res;
}

// Euclidean distance between two convex hulls + the separating data.
inline MinNormResult hull_distance_l2(const std::vector<Vec>& us,
                                      const std::vector<Vec>& vs) {
  std::vector<Vec> diffs;
  diffs.reserve(us.size() * vs.size());
  for (const auto& u : us)
    for (const auto& v : vs) diffs.push_back(u - v);
  return min_norm_point(diffs);
}

// Distance from y to conv(points) in the given norm. L1/Linf by LP, L2 by
// min-norm point over the shifted vertices.
inline double dist_to_polytope(const Vec& y, const std::vector<Vec>& points,
                               const SpaceSpec& space) {
  check_dim(y, space.dim);
  if (points.empty()) throw ValidationError("dist_to_polytope: empty polytope");
  const int n = space.dim;
  const int k = static_cast<int>(points.size());
  if (space.norm == Norm::L2) {
    std::vector<Vec> shifted;
    shifted.reserve(k);
    for (const auto& p : points) shifted.push_back(p - y);
    return min_norm_point(shifted).norm;
  }
  // Variables: theta (k), t (n for L1, 1 for Linf).
  const int nt = space.norm == Norm::L1 ? n : 1;
  const int nv = k + nt;
  std::vector<LinearConstraint> cons;
  auto unit = [&](int j) {
    Vec e = Vec::Zero(nv);
    e[j] = 1.0;
    return e;
  };
  Vec sum = Vec::Zero(nv);
  for (int j = 0; j < k; ++j) {
    cons.push_back({unit(j), Rel::Ge, 0.0});
    sum[j] = 1.0;
  }
  cons.push_back({sum, Rel::Eq, 1.0});
  for (int i = 0; i < n; ++i) {
    Vec row = Vec::Zero(nv);
    for (int j = 0; j < k; ++j) row[j] = points[j][i];
    const int tcol = k + (space.norm == Norm::L1 ? i : 0);
    Vec up = row, dn = -row;
    up[tcol] += 1.0;  // t_i + (P theta)_i >= y_i
    dn[tcol] += 1.0;  // t_i - (P theta)_i >= -y_i
    cons.push_back({up, Rel::Ge, y[i]});
    cons.push_back({dn, Rel::Ge, -y[i]});
  }
  Vec obj = Vec::Zero(nv);
  for (int t = 0; t < nt; ++t) obj[k + t] = 1.0;
  LpResult r = lp_solve(obj, cons, Sense::Min);
  if (r.status != LpStatus::Optimal)
    throw NumericalFailure("dist_to_polytope: LP failed");
  return std::max(0.0, r.value);
}

// Projection of w onto the standard simplex {theta >= 0, sum theta = 1}.
inline Vec project_simplex(Vec w) {
  const int k = static_cast<int>(w.size());
  std::vector<double> u(w.data(), w.data() + k);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double rho_val = 0.0;
  int rho = -1;
  double cum = 0.0;
  for (int i = 0; i < k; ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / (i + 1);
    if (u[i] - t > 0) {
      rho = i;
      rho_val = t;
    }
  }
  if (rho < 0) rho_val = (cum - 1.0) / k;
  for (int i = 0; i < k; ++i) w[i] = std::max(0.0, w[i] - rho_val);
  const double s = w.sum();
  if (s <= 0) {
    w.setConstant(1.0 / k);
  } else {
    w /= s;
  }
  return w;
}

}  // namespace propeff
