#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "propeff/core.hpp"
#include "propeff/linprog.hpp"
#include "propeff/polytope.hpp"

namespace propeff {

namespace detail {

// Reduced row echelon form. Unique for a given row space, which makes every
// derived basis canonical: two presentations of the same cone produce the
// same bases bit-for-bit (up to fp noise).
inline Mat rref(Mat M, double tol = 1e-10) {
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    for (int i = r + 1; i < rows; ++i)
      if (std::abs(M(i, c)) > std::abs(M(piv, c))) piv = i;
    if (std::abs(M(piv, c)) <= tol) continue;
    M.row(piv).swap(M.row(r));
    M.row(r) /= M(r, c);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = M(i, c);
      if (f != 0.0) M.row(i) -= f * M.row(r);
    }
    ++r;
  }
  return M.topRows(r);
}

inline Mat gram_schmidt_columns(const Mat& R) {
  // Orthonormalizes the rows of R, returned as columns.
  const int k = static_cast<int>(R.rows());
  const int n = static_cast<int>(R.cols());
  Mat out(n, k);
  int kept = 0;
  for (int i = 0; i < k; ++i) {
    Vec u = R.row(i).transpose();
    for (int j = 0; j < kept; ++j) u -= out.col(j).dot(u) * out.col(j);
    const double nu = u.norm();
    if (nu <= 1e-10) continue;
    out.col(kept++) = u / nu;
  }
  return out.leftCols(kept);
}

// Canonical orthonormal basis of span(vectors).
inline Mat canonical_span_basis(const std::vector<Vec>& vectors, int dim) {
  if (vectors.empty()) return Mat(dim, 0);
  Mat M(static_cast<int>(vectors.size()), dim);
  for (int i = 0; i < static_cast<int>(vectors.size()); ++i)
    M.row(i) = vectors[i].transpose();
  return gram_schmidt_columns(rref(std::move(M)));
}

// Canonical orthonormal basis of the orthogonal complement of the row space.
inline Mat canonical_nullspace_basis(const std::vector<Vec>& rows, int dim) {
  if (rows.empty()) return Mat::Identity(dim, dim);
  Mat R = rref([&] {
    Mat M(static_cast<int>(rows.size()), dim);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      M.row(i) = rows[i].transpose();
    return M;
  }());
  const int r = static_cast<int>(R.rows());
  std::vector<int> pivot_col(r, -1);
  std::vector<bool> is_pivot(dim, false);
  for (int i = 0; i < r; ++i) {
    for (int c = 0; c < dim; ++c)
      if (std::abs(R(i, c)) > 1e-9) {
        pivot_col[i] = c;
        is_pivot[c] = true;
        break;
      }
  }
  Mat basis(dim, 0);
  for (int f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    Vec x = Vec::Zero(dim);
    x[f] = 1.0;
    for (int i = 0; i < r; ++i)
      if (pivot_col[i] >= 0) x[pivot_col[i]] = -R(i, f);
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = x;
  }
  Mat rowsT = basis.transpose();
  return gram_schmidt_columns(rowsT);
}

inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-12) return true;
    if (a[i] > b[i] + 1e-12) return false;
  }
  return false;
}

}  // namespace detail

// Finitely generated cone, canonical after construction: generators are
// L2-normalized extreme rays, `facets` is a minimal inequality description
// (span-complement directions appear as +/- pairs), `pointed` is LP-decided.
class PolyhedralCone {
 public:
  static PolyhedralCone from_generators(const std::vector<Vec>& gens) {
    return PolyhedralCone(gens, /*require_nontrivial=*/true);
  }

  // Internal variant for cones derived from conic pieces, which may legally
  // fill the whole span.
  static PolyhedralCone from_generators_relaxed(const std::vector<Vec>& gens) {
    return PolyhedralCone(gens, /*require_nontrivial=*/false);
  }

  const std::vector<Vec>& generators() const { return gens_; }
  const std::vector<Vec>& facets() const { return facets_; }
  bool pointed() const { return pointed_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(span_.cols()); }
  bool full_dimensional() const { return rank() == dim_; }
  const Mat& span_basis() const { return span_; }

  PolyhedralCone negated() const {
    std::vector<Vec> g;
    for (const auto& v : gens_) g.push_back(-v);
    return PolyhedralCone::from_generators_relaxed(g);
  }

  // Membership via the facet description (exact for canonical cones).
  bool contains(const Vec& y, double tol = kFeasTol) const {
    check_dim(y, dim_);
    for (const auto& w : facets_)
      if (w.dot(y) < -tol) return false;
    return true;
  }

  // Interior membership; lower-dimensional cones have empty interior.
  bool contains_interior(const Vec& y, double tol = kGeomTol) const {
    check_dim(y, dim_);
    if (!full_dimensional()) return false;
    for (const auto& w : facets_)
      if (w.dot(y) < tol) return false;
    return true;
  }

  // Generators lying on the facet with normal w (they generate the facet).
  std::vector<Vec> facet_generators(const Vec& w, double tol = 1e-8) const {
    std::vector<Vec> out;
    for (const auto& g : gens_)
      if (std::abs(w.dot(g)) <= tol) out.push_back(g);
    return out;
  }

 private:
  PolyhedralCone(std::vector<Vec> gens, bool require_nontrivial) {
    if (gens.empty()) throw ValidationError("cone needs at least one generator");
    dim_ = static_cast<int>(gens[0].size());
    for (auto& g : gens) {
      check_dim(g, dim_);
      check_finite(g);
    }
    // Drop zeros, normalize, merge duplicate directions.
    for (const auto& g : gens) {
      const double n = g.norm();
      if (n <= kGeomTol) continue;
      Vec u = g / n;
      bool dup = false;
      for (const auto& h : gens_)
        if (u.dot(h) > 1.0 - 1e-12) {
          dup = true;
          break;
        }
      if (!dup) gens_.push_back(u);
    }
    if (gens_.empty()) throw ValidationError("cone has only zero generators");

    // Drop generators inside the cone of the others.
    for (int i = static_cast<int>(gens_.size()) - 1;
         i >= 0 && gens_.size() > 1; --i) {
      std::vector<Vec> others;
      for (int j = 0; j < static_cast<int>(gens_.size()); ++j)
        if (j != i) others.push_back(gens_[j]);
      if (in_conic_hull(gens_[i], others)) gens_.erase(gens_.begin() + i);
    }

    span_ = detail::canonical_span_basis(gens_, dim_);
    complement_ = detail::canonical_nullspace_basis(gens_, dim_);
    compute_facets();
    pointed_ = decide_pointed();
    if (require_nontrivial && facets_.empty())
      throw ValidationError("cone equals the whole space");

    // The lineality space C cap -C is the null space of the facet normals.
    // Rebuilding the generators as (+/- lineality basis) + extreme rays of the
    // projected pointed part makes the presentation canonical: equal cones get
    // equal generator lists regardless of how they were written down.
    Mat lin = detail::canonical_nullspace_basis(facets_, dim_);
    if (lin.cols() > 0) {
      std::vector<Vec> rebuilt;
      for (int j = 0; j < lin.cols(); ++j) {
        rebuilt.push_back(lin.col(j));
        rebuilt.push_back(-lin.col(j));
      }
      std::vector<Vec> projected;
      for (const auto& g : gens_) {
        Vec p = g - lin * (lin.transpose() * g);
        const double np = p.norm();
        if (np <= 1e-9) continue;
        p /= np;
        bool dup = false;
        for (const auto& q : projected)
          if (p.dot(q) > 1.0 - 1e-12) dup = true;
        if (!dup) projected.push_back(p);
      }
      for (int i = static_cast<int>(projected.size()) - 1;
           i >= 0 && projected.size() > 1; --i) {
        std::vector<Vec> others;
        for (int j = 0; j < static_cast<int>(projected.size()); ++j)
          if (j != i) others.push_back(projected[j]);
        if (in_conic_hull(projected[i], others))
          projected.erase(projected.begin() + i);
      }
      rebuilt.insert(rebuilt.end(), projected.begin(), projected.end());
      gens_ = std::move(rebuilt);
    }
    std::sort(gens_.begin(), gens_.end(), detail::lex_less);
    std::sort(facets_.begin(), facets_.end(), detail::lex_less);
  }

  static bool in_conic_hull(const Vec& y, const std::vector<Vec>& gens) {
    const int n = static_cast<int>(y.size());
    Mat A(n, static_cast<int>(gens.size()));
    for (int j = 0; j < static_cast<int>(gens.size()); ++j) A.col(j) = gens[j];
    auto sol = lp_feasible_point(A, y);
    if (!sol) return false;
    Vec rec = A * (*sol);
    return (rec - y).lpNorm<Eigen::Infinity>() <= 1e-8;
  }

  bool decide_pointed() const {
    // Pointed iff sum(lambda_i g_i) = 0, lambda >= 0, sum lambda = 1 infeasible.
    const int k = static_cast<int>(gens_.size());
    Mat A(dim_ + 1, k);
    for (int j = 0; j < k; ++j) {
      A.block(0, j, dim_, 1) = gens_[j];
      A(dim_, j) = 1.0;
    }
    Vec b = Vec::Zero(dim_ + 1);
    b[dim_] = 1.0;
    return !lp_feasible_point(A, b).has_value();
  }

  void compute_facets() {
    facets_.clear();
    for (int j = 0; j < complement_.cols(); ++j) {
      facets_.push_back(complement_.col(j));
      facets_.push_back(-complement_.col(j));
    }
    const int d = static_cast<int>(span_.cols());
    if (d == 1) {
      // Within the span the cone is either the half-line or the full line.
      bool has_plus = false, has_minus = false;
      Vec u = span_.col(0);
      for (const auto& g : gens_) (u.dot(g) > 0 ? has_plus : has_minus) = true;
      if (has_plus != has_minus) facets_.push_back(has_plus ? u : Vec(-u));
      return;
    }
    // Normals orthogonal to d-1 generators spanning a (d-1)-subspace, valid
    // on every generator. Works in span coordinates.
    std::vector<Vec> coords;
    for (const auto& g : gens_) coords.push_back(span_.transpose() * g);
    const int k = static_cast<int>(coords.size());
    std::vector<int> idx(d - 1);
    if (d - 1 > k) return;
    for (int i = 0; i < d - 1; ++i) idx[i] = i;
    for (;;) {
      Mat M(d - 1, d);
      for (int i = 0; i < d - 1; ++i) M.row(i) = coords[idx[i]].transpose();
      Eigen::FullPivLU<Mat> lu(M);
      lu.setThreshold(1e-10);
      if (lu.rank() == d - 1) {
        Mat null_space = lu.kernel();
        Vec w = null_space.col(0).normalized();
        bool ok_plus = true, ok_minus = true;
        for (const auto& c : coords) {
          const double dot = w.dot(c);
          if (dot < -1e-9) ok_plus = false;
          if (dot > 1e-9) ok_minus = false;
        }
        if (ok_plus != ok_minus) {
          Vec normal = span_ * (ok_plus ? w : Vec(-w));
          bool dup = false;
          for (const auto& f : facets_)
            if (normal.dot(f) > 1.0 - 1e-10) {
              dup = true;
              break;
            }
          if (!dup) facets_.push_back(normal);
        }
      }
      int pos = d - 2;
      while (pos >= 0 && idx[pos] == k - (d - 1) + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int t = pos + 1; t < d - 1; ++t) idx[t] = idx[t - 1] + 1;
    }
  }

  int dim_ = 0;
  std::vector<Vec> gens_;
  std::vector<Vec> facets_;
  Mat span_;
  Mat complement_;
  bool pointed_ = false;
};

// The polyhedral dual: facet normals of C generate C* and vice versa.
inline PolyhedralCone dual_cone(const PolyhedralCone& C) {
  if (C.facets().empty()) throw ValidationError("dual of the whole space is trivial");
  return PolyhedralCone::from_generators_relaxed(C.facets());
}

// ---------------------------------------------------------------------------
// Conic pieces: {sum mu_i p_i + sum nu_j r_j : mu, nu >= 0}. As a set this is
// the finitely generated cone over apex + recession directions, which also
// equals cl cone(conv(apex) + cone(recession)).
// ---------------------------------------------------------------------------

struct ConicPiece {
  std::vector<Vec> apexGenerators;
  std::vector<Vec> recessionGenerators;

  std::vector<Vec> generator_list() const {
    std::vector<Vec> out = apexGenerators;
    out.insert(out.end(), recessionGenerators.begin(), recessionGenerators.end());
    return out;
  }

  // Nonzero generator directions (apex entries may contain the zero vector).
  std::vector<Vec> nonzero_generators() const {
    std::vector<Vec> out;
    for (const auto& v : generator_list())
      if (v.norm() > kGeomTol) out.push_back(v);
    return out;
  }

  int dim() const {
    if (!apexGenerators.empty()) return static_cast<int>(apexGenerators[0].size());
    if (!recessionGenerators.empty())
      return static_cast<int>(recessionGenerators[0].size());
    return 0;
  }
};

struct ClosedConicUnion {
  std::vector<ConicPiece> pieces;
};

inline bool piece_member(const Vec& y, const ConicPiece& piece) {
  const int n = static_cast<int>(y.size());
  if (piece.dim() != n) throw DimensionMismatch("piece_member");
  auto gens = piece.generator_list();
  Mat A(n, static_cast<int>(gens.size()));
  for (int j = 0; j < static_cast<int>(gens.size()); ++j) A.col(j) = gens[j];
  auto sol = lp_feasible_point(A, y);
  if (!sol) return false;
  return (A * (*sol) - y).lpNorm<Eigen::Infinity>() <= 1e-8;
}

inline bool union_member(const Vec& y, const ClosedConicUnion& u) {
  for (const auto& p : u.pieces)
    if (piece_member(y, p)) return true;
  return false;
}

inline ConicPiece closed_conic_hull_of_polytope_plus_cone(const Polytope& P,
                                                          const PolyhedralCone& C) {
  if (P.vertices.empty()) throw ValidationError("empty polytope");
  if (!C.pointed()) throw NotPointed("conic hull requires a pointed cone");
  if (P.dim() != C.dim()) throw DimensionMismatch();
  return ConicPiece{P.vertices, C.generators()};
}

// ---------------------------------------------------------------------------
// Distance to a cone.
// ---------------------------------------------------------------------------

inline double dist_to_cone(const Vec& y, const PolyhedralCone& K,
                           const SpaceSpec& space) {
  check_dim(y, space.dim);
  if (K.dim() != space.dim) throw DimensionMismatch("dist_to_cone");
  const auto& gens = K.generators();
  const int m = static_cast<int>(gens.size());
  const int n = space.dim;

  if (space.norm == Norm::L2) {
    if (m > 8) throw FaceEnumerationOverflow();
    // Project onto the span of every generator subset; keep feasible
    // candidates. The optimal face's span is among them.
    double best = y.norm();  // empty subset -> origin
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> sel;
      for (int j = 0; j < m; ++j)
        if (mask & (1u << j)) sel.push_back(j);
      Mat B(n, static_cast<int>(sel.size()));
      for (int k = 0; k < static_cast<int>(sel.size()); ++k) B.col(k) = gens[sel[k]];
      Vec coef = B.colPivHouseholderQr().solve(y);
      Vec p = B * coef;
      if (K.contains(p, 1e-9)) best = std::min(best, (y - p).norm());
    }
    return best;
  }

  // L1 / Linf via one LP. Variables: nu (m) >= 0, t (n or 1).
  const int nt = space.norm == Norm::L1 ? n : 1;
  const int nv = m + nt;
  std::vector<LinearConstraint> cons;
  for (int j = 0; j < m; ++j) {
    Vec e = Vec::Zero(nv);
    e[j] = 1.0;
    cons.push_back({e, Rel::Ge, 0.0});
  }
  for (int i = 0; i < n; ++i) {
    Vec row = Vec::Zero(nv);
    for (int j = 0; j < m; ++j) row[j] = gens[j][i];
    const int tcol = m + (space.norm == Norm::L1 ? i : 0);
    Vec up = row, dn = -row;
    up[tcol] += 1.0;
    dn[tcol] += 1.0;
    cons.push_back({up, Rel::Ge, y[i]});
    cons.push_back({dn, Rel::Ge, -y[i]});
  }
  Vec obj = Vec::Zero(nv);
  for (int t = 0; t < nt; ++t) obj[m + t] = 1.0;
  LpResult r = lp_solve(obj, cons, Sense::Min);
  if (r.status != LpStatus::Optimal) throw NumericalFailure("dist_to_cone: LP failed");
  return std::max(0.0, r.value);
}

// ---------------------------------------------------------------------------
// Nonzero intersection of a conic piece with a pointed target cone.
// Normalizing the target-side coefficient sum to 1 excludes y = 0 exactly
// (a pointed cone admits no vanishing positive combination); the piece side
// may contain the zero vector among its apex generators.
// ---------------------------------------------------------------------------

struct MeetResult {
  bool meets = false;
  Vec witness;  // a nonzero point of piece  target, Linf-normalized
};

inline MeetResult piece_meets_cone_nontrivially(const ConicPiece& piece,
                                                const PolyhedralCone& target) {
  if (!target.pointed())
    throw NotPointed("nonzero-intersection test requires a pointed target cone");
  const int n = piece.dim();
  if (target.dim() != n) throw DimensionMismatch();
  auto pg = piece.generator_list();
  const auto& tg = target.generators();
  const int kp = static_cast<int>(pg.size());
  const int kt = static_cast<int>(tg.size());
  // sum mu p + sum kappa (-t) = 0, sum kappa = 1.
  Mat A(n + 1, kp + kt);
  for (int j = 0; j < kp; ++j) {
    A.block(0, j, n, 1) = pg[j];
    A(n, j) = 0.0;
  }
  for (int j = 0; j < kt; ++j) {
    A.block(0, kp + j, n, 1) = -tg[j];
    A(n, kp + j) = 1.0;
  }
  Vec b = Vec::Zero(n + 1);
  b[n] = 1.0;
  auto sol = lp_feasible_point(A, b);
  MeetResult res;
  if (!sol) return res;
  Vec y = Vec::Zero(n);
  for (int j = 0; j < kt; ++j) y += (*sol)[kp + j] * tg[j];
  const double scale = y.lpNorm<Eigen::Infinity>();
  if (scale <= kGeomTol) return res;  // numerically void; treat as no meet
  res.meets = true;
  res.witness = y / scale;
  return res;
}

// Farkas certificate for an empty nonzero intersection: phi <= 0 on the piece
// and >= 1 on the target generators. Exists iff the meet above is infeasible.
// Deterministic pick: the |phi|_1-minimal vertex.
inline std::optional<Vec> separating_functional(const ConicPiece& piece,
                                                const PolyhedralCone& target) {
  const int n = piece.dim();
  const int nv = 2 * n;  // phi plus |phi| bounds
  std::vector<LinearConstraint> cons;
  auto lift = [&](const Vec& a, Rel rel, double rhs) {
    Vec row = Vec::Zero(nv);
    row.head(n) = a;
    cons.push_back({row, rel, rhs});
  };
  for (const auto& p : piece.generator_list())
    if (p.norm() > kGeomTol) lift(p, Rel::Le, 0.0);
  for (const auto& g : target.generators()) lift(g, Rel::Ge, 1.0);
  for (int i = 0; i < n; ++i) {
    Vec up = Vec::Zero(nv), dn = Vec::Zero(nv);
    up[i] = -1.0;
    up[n + i] = 1.0;  // t_i - phi_i >= 0
    dn[i] = 1.0;
    dn[n + i] = 1.0;  // t_i + phi_i >= 0
    cons.push_back({up, Rel::Ge, 0.0});
    cons.push_back({dn, Rel::Ge, 0.0});
  }
  Vec obj = Vec::Zero(nv);
  obj.tail(n).setOnes();
  LpResult r = lp_solve(obj, cons, Sense::Min);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.point.head(n);
}

}  // namespace propeff
