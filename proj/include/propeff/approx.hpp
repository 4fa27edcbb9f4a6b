#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propeff/scalarize.hpp"

namespace propeff {

// Approximation data: a set D (finite point list or polytope) away from the
// origin with cl cone(D) meeting -C only at 0, plus the scale eps >= 0.
struct ApproxSpec {
  std::vector<Vec> d_points;  // vertices of D (or the finite list itself)
  bool d_is_polytope = false;
  double eps = 1.0;
};

struct AMinQuery {
  AugmentedFunctional fa;
  Vec x0;
  double lambda = 0.0;
};

struct PreconditionFailed : ValidationError {
  using ValidationError::ValidationError;
};

namespace detail {

inline void validate_approx(const ApproxSpec& spec, const PolyhedralCone& C) {
  if (spec.d_points.empty()) throw ValidationError("D must be nonempty");
  if (spec.eps < 0) throw ValidationError("eps must be nonnegative");
  for (const auto& d : spec.d_points) {
    check_dim(d, C.dim());
    if (d.norm() <= kGeomTol) throw ValidationError("0 must not belong to D");
  }
  // H-bar membership: cl cone(D) cap (-C) = {0}.
  ConicPiece coneD{spec.d_points, {}};
  if (piece_meets_cone_nontrivially(coneD, C.negated()).meets) throw NotInHbar();
}

}  // namespace detail

// The effective approximation set D(eps): a scaled copy for eps > 0, the
// punctured cone over D at eps = 0.
struct EffectiveApprox {
  std::vector<Vec> points;  // eps D vertices (eps > 0)
  bool punctured_cone = false;  // eps = 0: cone(D) \ {0}
};

inline EffectiveApprox d_eps(const ApproxSpec& spec, const PolyhedralCone& C) {
  detail::validate_approx(spec, C);
  EffectiveApprox out;
  if (spec.eps == 0.0) {
    out.points = spec.d_points;
    out.punctured_cone = true;
    return out;
  }
  for (const auto& d : spec.d_points) out.points.push_back(spec.eps * d);
  return out;
}

// cl cone(A + D(eps) - x0) as conic pieces. For a finite D every (block, d)
// pair contributes an apex-only piece; a polytope D enters through the
// pairwise Minkowski vertex sums; at eps = 0 the D-directions become the
// recession part.
inline ClosedConicUnion approx_benson_cone(const FeasibleSet& A,
                                           const PolyhedralCone& C,
                                           const ApproxSpec& spec, const Vec& x0) {
  detail::validate_approx(spec, C);
  ClosedConicUnion u;
  for (const auto& block : A.blocks) {
    if (spec.eps == 0.0) {
      ConicPiece piece;
      for (const auto& v : block.vertices) piece.apexGenerators.push_back(v - x0);
      piece.recessionGenerators = spec.d_points;
      u.pieces.push_back(std::move(piece));
      continue;
    }
    if (spec.d_is_polytope) {
      ConicPiece piece;
      for (const auto& v : block.vertices)
        for (const auto& d : spec.d_points)
          piece.apexGenerators.push_back(v + spec.eps * d - x0);
      u.pieces.push_back(std::move(piece));
      continue;
    }
    for (const auto& d : spec.d_points) {
      ConicPiece piece;
      for (const auto& v : block.vertices)
        piece.apexGenerators.push_back(v + spec.eps * d - x0);
      u.pieces.push_back(std::move(piece));
    }
  }
  return u;
}

inline Verdict is_approx_benson(const FeasibleSet& A, const PolyhedralCone& C,
                                const ApproxSpec& spec, const Vec& x0,
                                const SpaceSpec& space) {
  (void)space;
  detail::require_setup(A, C, x0);
  return detail::pieces_avoid_negated_cone(approx_benson_cone(A, C, spec, x0).pieces,
                                           C, "approx-benson-farkas");
}

// Henig (D,eps)-efficiency via the finite-dimension equivalence when the SSP
// gate holds; otherwise an explicit dilation search from G(D), with the
// Benson refutation as the No side.
inline Verdict is_approx_henig(const FeasibleSet& A, const PolyhedralCone& C,
                               const ApproxSpec& spec, const Vec& x0,
                               const SpaceSpec& space,
                               const HenigSearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  auto union_pieces = approx_benson_cone(A, C, spec, x0).pieces;
  auto cones = detail::cones_from_union(union_pieces);
  auto be = is_approx_benson(A, C, spec, x0, space);
  auto ssp = ssp_check_union({C.negated()}, cones, space);
  if (ssp.holds && ssp.exact) {
    Verdict v = be;
    v.note += std::string(v.note.empty() ? "" : "; ") +
              "He(A,C,D,eps) = Be(A,C,D,eps): finite dimension + SSP";
    return v;
  }
  if (be.status == Status::CertifiedNo) {
    be.note += std::string(be.note.empty() ? "" : "; ") +
               "He(A,C,D,eps) is contained in Be(A,C,D,eps)";
    return be;
  }
  // Dilation search over G(D): V_eta(B)-style cones must avoid D.
  const auto ball = detail::ball_vertices(space);
  for (const auto& f :
       strictly_positive_functionals(C, config.functional_count, config.seed)) {
    ConeBase base = base_from_functional(C, f, space);
    for (int j = 1; j <= config.eps_levels; ++j) {
      const double eta = base.deltaB / std::pow(2.0, j);
      HenigDilation V(base, eta);
      bool in_gd = true;  // D cap (-C') must be empty
      for (const auto& d : spec.d_points)
        if (V.member_closure(Vec(-d))) in_gd = false;
      if (!in_gd) continue;
      bool avoided = true;
      for (const auto& piece : union_pieces) {
        if (!detail::piece_avoids_dilation(piece, C, base.f, eta, ball)) {
          avoided = false;
          break;
        }
      }
      if (avoided) {
        Certificate cert;
        cert.kind = "approx-henig-dilation";
        cert.base_functional = base.f;
        cert.eps = eta;
        cert.note = "member of G(D) avoiding cl cone(A + D(eps) - x0)";
        return Verdict::yes(std::move(cert));
      }
    }
  }
  return Verdict::unknown("SSP gate absent and dilation search exhausted");
}

// lambda = inf over D(eps) of f(d) + alpha |d|. Exact for finite D; polytope D
// goes through the block minimizer; at eps = 0 the infimum over the punctured
// cone is 0 when g >= 0 on D and -infinity otherwise.
inline double lambda_bound(const ApproxSpec& spec, const PolyhedralCone& C,
                           const AugmentedFunctional& fa, const SpaceSpec& space) {
  detail::validate_approx(spec, C);
  if (fa.classTag != AugClass::ASharpPlus)
    throw ValidationError("lambda_bound expects (f, alpha) in C^{a#}_+");
  Vec zero = Vec::Zero(space.dim);
  auto min_over_d = [&](double scale) {
    if (spec.d_is_polytope) {
      Polytope D;
      for (const auto& d : spec.d_points) D.vertices.push_back(scale * d);
      return detail::block_min(D, fa.f, fa.alpha, zero, space).value;
    }
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& d : spec.d_points) {
      Vec sd = scale * d;
      mn = std::min(mn, fa.f.dot(sd) + fa.alpha * norm_of(sd, space));
    }
    return mn;
  };
  if (spec.eps == 0.0) {
    const double at_unit = min_over_d(1.0);
    return at_unit >= -kGeomTol ? 0.0
                                : -std::numeric_limits<double>::infinity();
  }
  return min_over_d(spec.eps);
}

// x0 in AMin(g, A, lambda): g(x0) - lambda <= inf_A g, with g(x0) = 0.
inline bool is_amin(const FeasibleSet& A, const AMinQuery& query,
                    const SpaceSpec& space) {
  if (query.lambda < 0) throw ValidationError("lambda must be nonnegative");
  detail::require_in_set(A, query.x0);
  ScalarProblem prob{query.fa, query.x0, A, space};
  auto sol = minimize_g(prob);
  return -query.lambda <= sol.minValue + kGeomTol;
}

// ---------------------------------------------------------------------------
// Necessary conditions (scalarization over the augmented set + the AMin
// bound) and the sufficient condition (g >= 0 over A + D(eps)).
// ---------------------------------------------------------------------------

struct NecessaryConditionsReport {
  CertifyResult search;       // condition (i): min over (A + D(eps)) u {x0}
  bool amin_holds = false;    // condition (ii)
  double lambda = 0.0;
};

namespace detail {

// Minkowski sums A + D(eps) as polytope blocks; only defined for eps > 0
// (the eps = 0 set is unbounded and is handled through recession directions).
inline FeasibleSet augmented_set(const FeasibleSet& A, const ApproxSpec& spec,
                                 const Vec& x0) {
  if (spec.eps == 0.0)
    throw PreconditionFailed("the augmented scalar search needs eps > 0");
  FeasibleSet out;
  for (const auto& block : A.blocks) {
    if (spec.d_is_polytope) {
      Polytope sum;
      for (const auto& v : block.vertices)
        for (const auto& d : spec.d_points) sum.vertices.push_back(v + spec.eps * d);
      out.blocks.push_back(canonicalize_polytope(sum));
      continue;
    }
    for (const auto& d : spec.d_points) {
      Polytope shifted;
      for (const auto& v : block.vertices) shifted.vertices.push_back(v + spec.eps * d);
      out.blocks.push_back(shifted);
    }
  }
  out.blocks.push_back(Polytope{{x0}});
  return out;
}

}  // namespace detail

inline NecessaryConditionsReport approx_benson_necessary_conditions(
    const FeasibleSet& A, const PolyhedralCone& C, const ApproxSpec& spec,
    const Vec& x0, const SpaceSpec& space, const CertifySearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  auto be = is_approx_benson(A, C, spec, x0, space);
  if (be.status != Status::CertifiedYes)
    throw PreconditionFailed("x0 is not Benson (D,eps)-efficient");
  auto cones = detail::cones_from_union(approx_benson_cone(A, C, spec, x0).pieces);
  auto ssp = ssp_check_union({C.negated()}, cones, space);
  if (!ssp.holds)
    throw PreconditionFailed("SSP(-C, cl cone(A + D(eps) - x0)) does not hold");

  NecessaryConditionsReport report;
  report.search = detail::scalarization_search(detail::augmented_set(A, spec, x0),
                                               cones, C, x0, space, config);
  if (report.search.outcome == CertifyResult::Outcome::Certificate) {
    const auto& fa = *report.search.certificate;
    report.lambda = lambda_bound(spec, C, fa, space);
    report.amin_holds =
        report.lambda >= 0 && is_amin(A, {fa, x0, report.lambda}, space);
  }
  return report;
}

// Sufficient condition: if g >= 0 over A + D(eps) for some
// (f, alpha) in C^{a#}_+, then x0 is Benson (D,eps)-efficient.
inline Verdict approx_benson_sufficient_condition(const FeasibleSet& A, const PolyhedralCone& C,
                                       const ApproxSpec& spec, const Vec& x0,
                                       const AugmentedFunctional& fa,
                                       const SpaceSpec& space) {
  detail::validate_approx(spec, C);
  if (fa.classTag != AugClass::ASharpPlus)
    throw ValidationError("approx_benson_sufficient_condition expects C^{a#}_+ data");
  double mn = std::numeric_limits<double>::infinity();
  if (spec.eps == 0.0) {
    // g >= 0 on A + cone(D) \ {0} iff on its closure A + cone(D): blocks with
    // the D directions as recession part. The Linf lower bound keeps the L2
    // branch sound.
    for (const auto& block : A.blocks) {
      auto bm = detail::block_min_rec(block, spec.d_points, fa.f, fa.alpha, x0,
                                      space);
      mn = std::min(mn, space.norm == Norm::L2 ? bm.lower : bm.value);
    }
  } else {
    auto sum = detail::augmented_set(A, spec, x0);
    sum.blocks.pop_back();  // drop the adjoined {x0}: the bound is over A + D(eps)
    for (const auto& block : sum.blocks)
      mn = std::min(mn,
                    detail::block_min(block, fa.f, fa.alpha, x0, space).value);
  }
  if (mn >= -kGeomTol) {
    Certificate cert;
    cert.kind = "scalarization";
    cert.functionals.push_back(fa.f);
    cert.alpha = fa.alpha;
    cert.note = "g >= 0 over A + D(eps)";
    return Verdict::yes(std::move(cert));
  }
  return Verdict::unknown("bound fails at min g = " + std::to_string(mn) +
                          "; no conclusion");
}

}  // namespace propeff
