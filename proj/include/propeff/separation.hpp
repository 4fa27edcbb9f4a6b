#pragma once

#include <cmath>
#include <vector>

#include "propeff/augdual.hpp"
#include "propeff/cone.hpp"
#include "propeff/core.hpp"
#include "propeff/polytope.hpp"

namespace propeff {

// Convex hull of a cone-sphere intersection. Exact (vertex list) for the
// polyhedral norms; meshed for L2 with the covering radius recorded.
struct SphereSection {
  Polytope hull;
  std::vector<Vec> meshPoints;
  bool exact = true;
  double covering = 0.0;  // mesh covering radius; 0 on the exact path
};

struct SspVerdict {
  bool holds = false;
  double distance = 0.0;  // Euclidean distance between the two hulls
  bool exact = true;
  double lower = 0.0;  // certified bracket [lower, upper] around `distance`
  double upper = 0.0;
};

struct SspWitness {
  Vec f;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

enum class RelativePosition { InsideInt, InsideComplement };

namespace detail {

// Faces of the unit ball of a polyhedral norm as (equality, inequalities).
struct BallFace {
  Vec eq_normal;
  double eq_rhs = 1.0;
  std::vector<Vec> ineq_normals;  // rows a with a.x <= rhs
  std::vector<double> ineq_rhs;
};

inline std::vector<BallFace> ball_faces(int n, Norm norm) {
  std::vector<BallFace> faces;
  if (norm == Norm::Linf) {
    for (int k = 0; k < n; ++k) {
      for (double s : {1.0, -1.0}) {
        BallFace f;
        f.eq_normal = Vec::Zero(n);
        f.eq_normal[k] = s;
        for (int i = 0; i < n; ++i) {
          Vec e = Vec::Zero(n);
          e[i] = 1.0;
          f.ineq_normals.push_back(e);
          f.ineq_rhs.push_back(1.0);
          f.ineq_normals.push_back(-e);
          f.ineq_rhs.push_back(1.0);
        }
        faces.push_back(std::move(f));
      }
    }
    return faces;
  }
  if (norm == Norm::L1) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      BallFace f;
      f.eq_normal = Vec::Zero(n);
      for (int i = 0; i < n; ++i) {
        const double s = (mask & (1u << i)) ? -1.0 : 1.0;
        f.eq_normal[i] = s;
        Vec e = Vec::Zero(n);
        e[i] = -s;  // s * x_i >= 0
        f.ineq_normals.push_back(e);
        f.ineq_rhs.push_back(0.0);
      }
      faces.push_back(std::move(f));
    }
    return faces;
  }
  throw ValidationError("ball_faces: polyhedral norms only");
}

// Exact unit-sphere section of a cone given its facet inequalities.
inline std::vector<Vec> exact_cone_section(const PolyhedralCone& C,
                                           const SpaceSpec& space) {
  std::vector<Vec> pts;
  for (const auto& face : ball_faces(space.dim, space.norm)) {
    HSystem sys;
    sys.add_eq(face.eq_normal, face.eq_rhs);
    for (int i = 0; i < static_cast<int>(face.ineq_normals.size()); ++i)
      sys.add_le(face.ineq_normals[i], face.ineq_rhs[i]);
    for (const auto& w : C.facets()) sys.add_ge(w, 0.0);
    for (const auto& v : enumerate_vertices(sys, space.dim)) {
      bool dup = false;
      for (const auto& p : pts)
        if (nearly_equal(p, v, 1e-8)) dup = true;
      if (!dup) pts.push_back(v);
    }
  }
  return pts;
}

// L2 mesh of the cone-sphere intersection at the documented resolution
// (0.01 rad in ambient dimension 2, 0.05 otherwise), working inside the
// cone's span so lower-dimensional cones are sampled too.
inline std::vector<Vec> mesh_cone_section(const PolyhedralCone& C,
                                          const SpaceSpec& space, double& covering) {
  const double h = space.dim <= 2 ? 0.01 : 0.05;
  covering = 1.5 * h;  // conservative hull Hausdorff bound for the mesh
  std::vector<Vec> pts;
  auto push = [&](const Vec& u) {
    for (const auto& p : pts)
      if (nearly_equal(p, u, 1e-10)) return;
    pts.push_back(u);
  };
  for (const auto& g : C.generators()) push(g);  // generators are unit already
  const int d = C.rank();
  if (d == 1) return pts;
  if (d == 2) {
    Vec b1 = C.span_basis().col(0), b2 = C.span_basis().col(1);
    for (double t = 0.0; t < 2.0 * M_PI; t += h) {
      Vec u = std::cos(t) * b1 + std::sin(t) * b2;
      if (C.contains(u, 1e-9)) push(u);
    }
    return pts;
  }
  // Full-rank in R^3: Fibonacci lattice plus generator arcs.
  const int N = 8000;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < N; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / N;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden * i;
    Vec u = make_vec({r * std::cos(t), r * std::sin(t), z});
    if (C.contains(u, 1e-9)) push(u);
  }
  const auto& gens = C.generators();
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(gens.size()); ++j) {
      const double ang = std::acos(std::clamp(gens[i].dot(gens[j]), -1.0, 1.0));
      const int steps = std::max(2, static_cast<int>(ang / h) + 1);
      for (int s = 0; s <= steps; ++s) {
        Vec u = (1.0 - static_cast<double>(s) / steps) * gens[i] +
                (static_cast<double>(s) / steps) * gens[j];
        if (u.norm() > 1e-9) {
          u.normalize();
          if (C.contains(u, 1e-9)) push(u);
        }
      }
    }
  }
  return pts;
}

inline std::vector<Vec> cone_section_points(const PolyhedralCone& C,
                                            const SpaceSpec& space,
                                            double& covering) {
  if (C.dim() != space.dim) throw DimensionMismatch("cone section");
  covering = 0.0;
  if (space.norm == Norm::L2) return mesh_cone_section(C, space, covering);
  return exact_cone_section(C, space);
}

// Boundary pieces of a cone: the facet subcones when full-dimensional, the
// cone itself otherwise. bd of a union is covered by the union of piece
// boundaries; the superset only tightens an SSP verdict, never loosens it.
inline std::vector<PolyhedralCone> boundary_pieces(const PolyhedralCone& C) {
  if (!C.full_dimensional()) return {C};
  std::vector<PolyhedralCone> out;
  for (const auto& w : C.facets()) {
    auto tight = C.facet_generators(w);
    if (tight.empty()) continue;
    out.push_back(PolyhedralCone::from_generators_relaxed(tight));
  }
  return out;
}

}  // namespace detail

// C-wedge: co(C cap S_X).
inline SphereSection wedge_set(const PolyhedralCone& C, const SpaceSpec& space) {
  double covering = 0.0;
  auto pts = detail::cone_section_points(C, space, covering);
  SphereSection s;
  s.exact = space.norm != Norm::L2;
  s.covering = covering;
  if (s.exact) {
    s.hull = canonicalize_polytope(Polytope{pts});
  } else {
    s.hull = Polytope{pts};
    s.meshPoints = pts;
  }
  return s;
}

// K-vee: co((bd(K) cap S_X) adjoined with the origin).
inline SphereSection vee_set(const PolyhedralCone& K, const SpaceSpec& space) {
  std::vector<Vec> pts;
  double worst = 0.0;
  for (const auto& piece : detail::boundary_pieces(K)) {
    double c = 0.0;
    auto sec = detail::cone_section_points(piece, space, c);
    worst = std::max(worst, c);
    for (const auto& p : sec) {
      bool dup = false;
      for (const auto& q : pts)
        if (nearly_equal(p, q, 1e-10)) dup = true;
      if (!dup) pts.push_back(p);
    }
  }
  pts.push_back(Vec::Zero(space.dim));
  SphereSection s;
  s.exact = space.norm != Norm::L2;
  s.covering = worst;
  if (s.exact) {
    s.hull = canonicalize_polytope(Polytope{pts});
  } else {
    s.hull = Polytope{pts};
    s.meshPoints = pts;
  }
  return s;
}

namespace detail {

struct SectionPair {
  std::vector<Vec> wedge_pts;
  std::vector<Vec> vee_pts;
  bool exact = true;
  double covering = 0.0;
};

inline SectionPair collect_sections(const std::vector<PolyhedralCone>& Cs,
                                    const std::vector<PolyhedralCone>& Ks,
                                    const SpaceSpec& space) {
  SectionPair out;
  out.exact = space.norm != Norm::L2;
  for (const auto& C : Cs) {
    double c = 0.0;
    auto pts = cone_section_points(C, space, c);
    out.covering = std::max(out.covering, c);
    out.wedge_pts.insert(out.wedge_pts.end(), pts.begin(), pts.end());
  }
  for (const auto& K : Ks) {
    auto sec = vee_set(K, space);
    out.covering = std::max(out.covering, sec.covering);
    const auto& pts = sec.exact ? sec.hull.vertices : sec.meshPoints;
    out.vee_pts.insert(out.vee_pts.end(), pts.begin(), pts.end());
  }
  if (out.vee_pts.empty()) out.vee_pts.push_back(Vec::Zero(space.dim));
  return out;
}

inline SspVerdict verdict_from_sections(const SectionPair& sec) {
  if (sec.wedge_pts.empty())
    throw ValidationError("ssp_check: empty cone section");
  auto mnp = hull_distance_l2(sec.wedge_pts, sec.vee_pts);
  SspVerdict v;
  v.distance = mnp.norm;
  v.exact = sec.exact;
  v.upper = mnp.norm;
  v.lower = std::max(0.0, mnp.support_min - 2.0 * sec.covering);
  v.holds = v.lower > kGeomTol;
  return v;
}

// Separation witness from the two section hulls: f is the min-norm-point
// direction, margins come from exact support recomputation, and
// delta = beta + S with S = sup of f over the vee hull.
inline SspWitness witness_from_sections(const SectionPair& sec) {
  auto mnp = hull_distance_l2(sec.wedge_pts, sec.vee_pts);
  if (mnp.norm <= kGeomTol) throw SspDoesNotHold();
  Vec f = mnp.direction;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : sec.wedge_pts)
    for (const auto& k : sec.vee_pts) m = std::min(m, f.dot(c - k));
  if (m <= kGeomTol) throw SspDoesNotHold("separation margin vanished");
  double S = -std::numeric_limits<double>::infinity();
  for (const auto& k : sec.vee_pts) S = std::max(S, f.dot(k));
  SspWitness w;
  w.f = f;
  w.delta1 = S + m / 3.0;
  w.delta2 = S + 2.0 * m / 3.0;
  return w;
}

}  // namespace detail

inline SspVerdict ssp_check_union(const std::vector<PolyhedralCone>& Cs,
                                  const std::vector<PolyhedralCone>& Ks,
                                  const SpaceSpec& space) {
  return detail::verdict_from_sections(detail::collect_sections(Cs, Ks, space));
}

inline SspVerdict ssp_check(const PolyhedralCone& C, const PolyhedralCone& K,
                            const SpaceSpec& space) {
  return ssp_check_union({C}, {K}, space);
}

inline SspWitness ssp_witness_union(const std::vector<PolyhedralCone>& Cs,
                                    const std::vector<PolyhedralCone>& Ks,
                                    const SpaceSpec& space) {
  auto sec = detail::collect_sections(Cs, Ks, space);
  auto verdict = detail::verdict_from_sections(sec);
  if (!verdict.holds) throw SspDoesNotHold();
  return detail::witness_from_sections(sec);
}

inline SspWitness ssp_witness(const PolyhedralCone& C, const PolyhedralCone& K,
                              const SpaceSpec& space) {
  return ssp_witness_union({C}, {K}, space);
}

// Witness oriented for the scalarization route: separates C-wedge from the
// REFLECTED K-vee, i.e. the pair (C, Q_0) with Q = -(X \ K). The inequalities
// f(x) + a|x| < 0 on -co(C) \ {0} and > 0 on K \ {0} follow for a in
// (delta1, delta2), and (f, a) lands in C^{a#}_+.
inline SspWitness scalarization_witness(const PolyhedralCone& C,
                                        const std::vector<PolyhedralCone>& Ks,
                                        const SpaceSpec& space) {
  auto sec = detail::collect_sections({C}, Ks, space);
  for (auto& k : sec.vee_pts) k = -k;
  auto verdict = detail::verdict_from_sections(sec);
  if (!verdict.holds) throw SspDoesNotHold();
  return detail::witness_from_sections(sec);
}

// Dichotomy for an SSP pair: cl co(C) \ {0} lies either in
// int(K) or in int(X \ K). A violation signals an internal bug.
inline RelativePosition relative_position(const PolyhedralCone& C,
                                          const PolyhedralCone& K,
                                          const SpaceSpec& space) {
  auto verdict = ssp_check(C, K, space);
  if (!verdict.holds) throw SspDoesNotHold();
  Vec sample = Vec::Zero(C.dim());
  for (const auto& g : C.generators()) sample += g;
  if (sample.norm() <= kGeomTol)
    throw SspDoesNotHold("cone with lineality cannot have SSP");
  sample.normalize();

  auto classify = [&](const Vec& x) -> int {
    if (K.contains_interior(x, kGeomTol)) return 1;
    if (!K.contains(x, kGeomTol)) return -1;
    return 0;  // on the boundary
  };
  const int cls = classify(sample);
  if (cls == 0)
    throw DichotomyViolated("sample point landed on bd(K) under SSP");
  for (const auto& g : C.generators())
    if (classify(g) != cls)
      throw DichotomyViolated("generators straddle bd(K) under SSP");
  return cls > 0 ? RelativePosition::InsideInt : RelativePosition::InsideComplement;
}

}  // namespace propeff
