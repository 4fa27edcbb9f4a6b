#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propeff/augdual.hpp"
#include "propeff/efficiency.hpp"
#include "propeff/separation.hpp"

namespace propeff {

// g_(f,alpha,x0)(x) = f(x - x0) + alpha |x - x0|.
inline double g_eval(const AugmentedFunctional& fa, const Vec& x0, const Vec& x,
                     const SpaceSpec& space) {
  if (x.size() != x0.size()) throw DimensionMismatch("g_eval");
  Vec z = x - x0;
  return fa.f.dot(z) + fa.alpha * norm_of(z, space);
}

struct ScalarProblem {
  AugmentedFunctional fa;  // must lie in C^{a#}_+
  Vec x0;
  FeasibleSet A;
  SpaceSpec space;
};

struct ScalarSolution {
  double minValue = 0.0;
  std::vector<std::pair<int, Vec>> minimizers;  // block index, attaining point
  bool uniqueAtX0 = false;
};

namespace detail {

struct BlockMin {
  double value = 0.0;  // best value found (upper bound)
  double lower = 0.0;  // certified lower bound
  Vec argmin;
};

// Exact block minimum under a polyhedral norm via one LP.
inline BlockMin block_min_lp(const Polytope& P, const Vec& f, double alpha,
                             const Vec& x0, const SpaceSpec& space) {
  const int n = space.dim;
  const int k = static_cast<int>(P.vertices.size());
  const int nt = space.norm == Norm::L1 ? n : 1;
  const int nv = k + nt;
  std::vector<LinearConstraint> cons;
  Vec simplex_row = Vec::Zero(nv);
  for (int j = 0; j < k; ++j) {
    Vec e = Vec::Zero(nv);
    e[j] = 1.0;
    cons.push_back({e, Rel::Ge, 0.0});
    simplex_row[j] = 1.0;
  }
  cons.push_back({simplex_row, Rel::Eq, 1.0});
  for (int i = 0; i < n; ++i) {
    Vec up = Vec::Zero(nv), dn = Vec::Zero(nv);
    for (int j = 0; j < k; ++j) {
      up[j] = -P.vertices[j][i];
      dn[j] = P.vertices[j][i];
    }
    const int tcol = k + (space.norm == Norm::L1 ? i : 0);
    up[tcol] += 1.0;  // t_i >=  (z)_i = (P theta - x0)_i
    dn[tcol] += 1.0;  // t_i >= -(z)_i
    cons.push_back({up, Rel::Ge, -x0[i]});
    cons.push_back({dn, Rel::Ge, x0[i]});
  }
  Vec obj = Vec::Zero(nv);
  for (int j = 0; j < k; ++j) obj[j] = f.dot(P.vertices[j]);
  for (int t = 0; t < nt; ++t) obj[k + t] = alpha;
  LpResult r = lp_solve(obj, cons, Sense::Min);
  if (r.status != LpStatus::Optimal)
    throw NumericalFailure("minimize_g: block LP failed");
  BlockMin bm;
  bm.value = r.value - f.dot(x0);
  bm.lower = bm.value;
  Vec p = Vec::Zero(n);
  for (int j = 0; j < k; ++j) p += r.point[j] * P.vertices[j];
  bm.argmin = p;
  return bm;
}

// Projected-subgradient descent over the block simplex for the L2 norm, with
// a cutting-plane lower bound from the visited subgradients.
inline BlockMin block_min_subgradient(const Polytope& P, const Vec& f, double alpha,
                                      const Vec& x0, int iters = 10000) {
  const int n = static_cast<int>(x0.size());
  const int k = static_cast<int>(P.vertices.size());
  Mat V(n, k);
  for (int j = 0; j < k; ++j) V.col(j) = P.vertices[j];

  BlockMin best;
  best.value = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();

  double scale = 1.0;
  for (int j = 0; j < k; ++j) scale = std::max(scale, (P.vertices[j] - x0).norm());
  const double step0 = scale / std::max(1.0, f.norm() + alpha);

  for (int start = 0; start < k; ++start) {
    Vec theta = Vec::Zero(k);
    theta[start] = 1.0;
    for (int t = 1; t <= iters; ++t) {
      Vec x_cur = V * theta;
      Vec z = x_cur - x0;
      const double nz = z.norm();
      const double val = f.dot(z) + alpha * nz;
      if (val < best.value) {
        best.value = val;
        best.argmin = x_cur;
      }
      Vec u = nz > 1e-15 ? Vec(z / nz) : Vec(Vec::Zero(n));
      Vec sub = f + alpha * u;
      // Cutting plane: g(x) >= val + sub.(x - x_cur); its block minimum sits
      // at a vertex.
      double cut = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j)
        cut = std::min(cut, val + sub.dot(P.vertices[j] - x_cur));
      lower = std::max(lower, cut);
      if (best.value - lower <= 1e-10) break;
      Vec grad = V.transpose() * sub;
      theta = project_simplex(Vec(theta - (step0 / std::sqrt(double(t))) * grad));
    }
    if (best.value - lower <= 1e-10) break;
  }
  best.lower = lower;
  return best;
}

inline BlockMin block_min(const Polytope& P, const Vec& f, double alpha,
                          const Vec& x0, const SpaceSpec& space) {
  if (space.norm != Norm::L2) return block_min_lp(P, f, alpha, x0, space);
  BlockMin bm = block_min_subgradient(P, f, alpha, x0);
  // Sanity bracket: the Linf and L1 problems enclose the L2 value.
  SpaceSpec lo = space, hi = space;
  lo.norm = Norm::Linf;
  hi.norm = Norm::L1;
  const double vlo = block_min_lp(P, f, alpha, x0, lo).value;
  const double vhi = block_min_lp(P, f, alpha, x0, hi).value;
  if (bm.value < vlo - 1e-6 || bm.lower > vhi + 1e-6)
    throw NumericalFailure("minimize_g: L2 descent escaped the norm bracket");
  bm.lower = std::max(bm.lower, vlo);
  return bm;
}

// Minimum of g over conv(P) + cone(rec). Exact LP under polyhedral norms
// (-inf reported as unbounded); under L2 the Linf value is a certified lower
// bound and a truncated descent supplies the upper estimate.
inline BlockMin block_min_rec(const Polytope& P, const std::vector<Vec>& rec,
                              const Vec& f, double alpha, const Vec& x0,
                              const SpaceSpec& space) {
  if (rec.empty()) return block_min(P, f, alpha, x0, space);
  const int n = space.dim;
  const int k = static_cast<int>(P.vertices.size());
  const int kr = static_cast<int>(rec.size());
  if (space.norm != Norm::L2) {
    const int nt = space.norm == Norm::L1 ? n : 1;
    const int nv = k + kr + nt;
    std::vector<LinearConstraint> cons;
    Vec simplex_row = Vec::Zero(nv);
    for (int j = 0; j < k + kr; ++j) {
      Vec e = Vec::Zero(nv);
      e[j] = 1.0;
      cons.push_back({e, Rel::Ge, 0.0});
      if (j < k) simplex_row[j] = 1.0;
    }
    cons.push_back({simplex_row, Rel::Eq, 1.0});
    for (int i = 0; i < n; ++i) {
      Vec up = Vec::Zero(nv), dn = Vec::Zero(nv);
      for (int j = 0; j < k; ++j) {
        up[j] = -P.vertices[j][i];
        dn[j] = P.vertices[j][i];
      }
      for (int j = 0; j < kr; ++j) {
        up[k + j] = -rec[j][i];
        dn[k + j] = rec[j][i];
      }
      const int tcol = k + kr + (space.norm == Norm::L1 ? i : 0);
      up[tcol] += 1.0;
      dn[tcol] += 1.0;
      cons.push_back({up, Rel::Ge, -x0[i]});
      cons.push_back({dn, Rel::Ge, x0[i]});
    }
    Vec obj = Vec::Zero(nv);
    for (int j = 0; j < k; ++j) obj[j] = f.dot(P.vertices[j]);
    for (int j = 0; j < kr; ++j) obj[k + j] = f.dot(rec[j]);
    for (int t = 0; t < nt; ++t) obj[k + kr + t] = alpha;
    LpResult r = lp_solve(obj, cons, Sense::Min);
    BlockMin bm;
    if (r.status == LpStatus::Unbounded) {
      bm.value = -std::numeric_limits<double>::infinity();
      bm.lower = bm.value;
      bm.argmin = x0;
      return bm;
    }
    if (r.status != LpStatus::Optimal)
      throw NumericalFailure("block_min_rec: LP failed");
    bm.value = r.value - f.dot(x0);
    bm.lower = bm.value;
    Vec p = Vec::Zero(n);
    for (int j = 0; j < k; ++j) p += r.point[j] * P.vertices[j];
    for (int j = 0; j < kr; ++j) p += r.point[k + j] * rec[j];
    bm.argmin = p;
    return bm;
  }
  // L2: certified lower bound from the Linf relaxation; truncated descent as
  // the upper estimate.
  SpaceSpec linf = space;
  linf.norm = Norm::Linf;
  BlockMin lower_bm = block_min_rec(P, rec, f, alpha, x0, linf);
  double scale = 1.0;
  for (const auto& v : P.vertices) scale = std::max(scale, (v - x0).norm());
  Polytope truncated = P;
  for (const auto& v : P.vertices)
    for (const auto& r : rec) truncated.vertices.push_back(v + 16.0 * scale * r);
  BlockMin bm = block_min_subgradient(truncated, f, alpha, x0);
  bm.lower = lower_bm.lower;
  return bm;
}

// Is g strictly positive on block \ {x0}? Decided on the unit sphere section
// of the local direction cone, where g restricts to f.d + alpha.
inline bool block_unique_at_x0(const Polytope& P, const Vec& f, double alpha,
                               const Vec& x0, const SpaceSpec& space) {
  if (!polytope_contains(P, x0)) return false;
  std::vector<Vec> dirs;
  for (const auto& v : P.vertices) {
    Vec w = v - x0;
    if (w.norm() > kGeomTol) dirs.push_back(w);
  }
  if (dirs.empty()) return true;  // block is {x0}
  auto local = PolyhedralCone::from_generators_relaxed(dirs);
  double cov = 0.0;
  auto section = detail::cone_section_points(local, space, cov);
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& d : section) mn = std::min(mn, f.dot(d) + alpha);
  const double margin = cov * f.norm();  // Lipschitz slack on the mesh
  return mn - margin > kGeomTol;
}

}  // namespace detail

inline ScalarSolution minimize_g(const ScalarProblem& problem) {
  if (problem.fa.classTag != AugClass::ASharpPlus)
    throw ValidationError("minimize_g requires (f, alpha) in C^{a#}_+");
  detail::require_in_set(problem.A, problem.x0);
  ScalarSolution sol;
  sol.minValue = std::numeric_limits<double>::infinity();
  std::vector<detail::BlockMin> mins;
  for (const auto& block : problem.A.blocks) {
    mins.push_back(detail::block_min(block, problem.fa.f, problem.fa.alpha,
                                     problem.x0, problem.space));
    sol.minValue = std::min(sol.minValue, mins.back().value);
  }
  for (int i = 0; i < static_cast<int>(mins.size()); ++i)
    if (mins[i].value <= sol.minValue + kGeomTol)
      sol.minimizers.push_back({i, mins[i].argmin});

  // Unique attainment at x0: the global minimum is 0 and every block is
  // either strictly positive or touches 0 only at x0 itself.
  bool unique = std::abs(sol.minValue) <= kGeomTol;
  for (int i = 0; unique && i < static_cast<int>(mins.size()); ++i) {
    if (mins[i].lower > kGeomTol) continue;  // strictly positive block
    if (!detail::block_unique_at_x0(problem.A.blocks[i], problem.fa.f,
                                    problem.fa.alpha, problem.x0, problem.space))
      unique = false;
  }
  sol.uniqueAtX0 = unique;
  return sol;
}

// ---------------------------------------------------------------------------
// Certificate search: SSP-driven candidate first, then seeded perturbations.
// ---------------------------------------------------------------------------

struct CertifySearchConfig {
  int budget = 64;
  std::uint64_t seed = 2718;
};

struct CertifyResult {
  enum class Outcome { Certificate, Refuted, Exhausted };
  Outcome outcome = Outcome::Exhausted;
  std::optional<AugmentedFunctional> certificate;
  std::optional<Vec> witness;  // refutation counterexample
  int tried = 0;
  std::string note;
};

namespace detail {

inline std::optional<PolyhedralCone> cone_from_piece(const ConicPiece& piece) {
  auto gens = piece.nonzero_generators();
  if (gens.empty()) return std::nullopt;
  return PolyhedralCone::from_generators_relaxed(gens);
}

inline std::vector<PolyhedralCone> cones_from_union(
    const std::vector<ConicPiece>& pieces) {
  std::vector<PolyhedralCone> out;
  for (const auto& p : pieces)
    if (auto c = cone_from_piece(p)) out.push_back(std::move(*c));
  return out;
}

// Shared search core: find (f, alpha) in C^{a#}_+ whose minimum over
// `minimize_over` is attained only at x0. The SSP pair is (-C, union of
// `ssp_cones`) and seeds the first candidate per the separation construction.
inline CertifyResult scalarization_search(const FeasibleSet& minimize_over,
                                          const std::vector<PolyhedralCone>& ssp_cones,
                                          const PolyhedralCone& C, const Vec& x0,
                                          const SpaceSpec& space,
                                          const CertifySearchConfig& config) {
  CertifyResult res;
  auto try_candidate = [&](const Vec& f, double alpha) -> bool {
    ++res.tried;
    AugmentedFunctional fa;
    try {
      fa = make_augmented(C, f, alpha, space);
    } catch (const ValidationError&) {
      return false;
    }
    if (fa.classTag != AugClass::ASharpPlus) return false;
    ScalarProblem prob{fa, x0, minimize_over, space};
    auto sol = minimize_g(prob);
    if (!sol.uniqueAtX0) return false;
    res.outcome = CertifyResult::Outcome::Certificate;
    res.certificate = fa;
    return true;
  };

  // (a) SSP-driven candidate.
  try {
    auto verdict = ssp_check_union({C.negated()}, ssp_cones, space);
    if (verdict.holds) {
      auto w = scalarization_witness(C, ssp_cones, space);
      const double amax = augmented_alpha_bound(C, w.f, space);
      const double lo = w.delta1;
      const double hi = std::min(w.delta2, amax);
      if (lo < hi && res.tried < config.budget &&
          try_candidate(w.f, 0.5 * (lo + hi)))
        return res;
      res.note = "ssp candidate rejected";
    } else {
      res.note = "ssp precondition absent";
    }
  } catch (const ValidationError&) {
    res.note = "ssp sections degenerate";
  }

  // (b) Seeded strictly positive functionals with the default alpha policy.
  auto fs = strictly_positive_functionals(C, config.budget, config.seed);
  for (const auto& f : fs) {
    if (res.tried >= config.budget) break;
    double amax;
    try {
      amax = augmented_alpha_bound(C, f, space);
    } catch (const ValidationError&) {
      continue;
    }
    if (try_candidate(f, amax / 2.0)) return res;
  }
  res.outcome = CertifyResult::Outcome::Exhausted;
  return res;
}

}  // namespace detail

inline CertifyResult certify_benson(const FeasibleSet& A, const PolyhedralCone& C,
                                    const Vec& x0, const SpaceSpec& space,
                                    const CertifySearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  if (!C.pointed()) throw NotPointed();
  auto be = is_benson(A, C, x0);
  if (be.status == Status::CertifiedNo) {
    CertifyResult res;
    res.outcome = CertifyResult::Outcome::Refuted;
    res.witness = be.counterexample;
    return res;
  }
  auto cones = detail::cones_from_union(benson_cone(A, C, x0).pieces);
  return detail::scalarization_search(A, cones, C, x0, space, config);
}

inline CertifyResult certify_ghe(const FeasibleSet& A, const PolyhedralCone& C,
                                 const Vec& x0, const SpaceSpec& space,
                                 const CertifySearchConfig& config = {}) {
  if (A.blocks.size() != 1) throw NotConvexData();
  auto res = certify_benson(A, C, x0, space, config);
  auto cones = detail::cones_from_union(benson_cone(A, C, x0).pieces);
  auto ssp = ssp_check_union({C.negated()}, cones, space);
  res.note += std::string(res.note.empty() ? "" : "; ") +
              "ssp(-C, cl cone(A+C-x0)) " + (ssp.holds ? "holds" : "fails") +
              "; certificate doubles for GHe (GHe = Be on convex A+C)";
  return res;
}

inline CertifyResult certify_tbo(const FeasibleSet& A, const PolyhedralCone& C,
                                 const Vec& x0, const SpaceSpec& space,
                                 const CertifySearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  if (A.blocks.size() > 1) {
    // Starshapedness of A + C at x0 on a sampled lambda grid.
    for (const auto& block : A.blocks) {
      for (const auto& v : block.vertices) {
        for (int s = 0; s <= 20; ++s) {
          const double lam = s / 20.0;
          Vec x = lam * v + (1.0 - lam) * x0;
          bool inside = false;
          for (const auto& other : A.blocks)
            if (detail::block_cone_meet(other, C, x).nonempty) {
              inside = true;
              break;
            }
          if (!inside)
            throw NotStarshaped("segment sample outside A + C at lambda = " +
                                std::to_string(lam));
        }
      }
    }
  }
  auto res = certify_benson(A, C, x0, space, config);
  if (!res.note.empty()) res.note += "; ";
  res.note += "certificate valid for TBo (A+C starshaped at x0)";
  return res;
}

}  // namespace propeff
