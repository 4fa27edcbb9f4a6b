#pragma once

#include <optional>
#include <vector>

#include "propeff/cone.hpp"
#include "propeff/core.hpp"
#include "propeff/linprog.hpp"
#include "propeff/polytope.hpp"

namespace propeff {

// A strictly positive functional on C: f(g) >= 1 on every canonical
// generator, picked deterministically by minimizing |f|_1.
inline Vec strictly_positive_functional(const PolyhedralCone& C) {
  const int n = C.dim();
  std::vector<LinearConstraint> cons;
  for (const auto& g : C.generators()) cons.push_back({g, Rel::Ge, 1.0});
  // |f|_1 via auxiliary bounds: minimize sum t, -t <= f <= t.
  const int nv = 2 * n;
  std::vector<LinearConstraint> lifted;
  for (auto& c : cons) {
    Vec row = Vec::Zero(nv);
    row.head(n) = c.coeffs;
    lifted.push_back({row, c.rel, c.rhs});
  }
  for (int i = 0; i < n; ++i) {
    Vec up = Vec::Zero(nv), dn = Vec::Zero(nv);
    up[i] = -1.0;
    up[n + i] = 1.0;  // t_i - f_i >= 0
    dn[i] = 1.0;
    dn[n + i] = 1.0;  // t_i + f_i >= 0
    lifted.push_back({up, Rel::Ge, 0.0});
    lifted.push_back({dn, Rel::Ge, 0.0});
  }
  Vec obj = Vec::Zero(nv);
  obj.tail(n).setOnes();
  LpResult r = lp_solve(obj, lifted, Sense::Min);
  if (r.status != LpStatus::Optimal)
    throw NotPointed("no strictly positive functional exists");
  return r.point.head(n);
}

// k witnesses in C#: the LP witness plus seeded perturbations of scale 0.1,
// re-verified and rescaled so min_g f(g) = 1.
inline std::vector<Vec> strictly_positive_functionals(const PolyhedralCone& C, int k,
                                                      std::uint64_t seed = 12345) {
  Vec f0 = strictly_positive_functional(C);
  std::vector<Vec> out{f0};
  SplitMix64 rng(seed);
  int attempts = 0;
  while (static_cast<int>(out.size()) < k && attempts < 50 * k) {
    ++attempts;
    Vec f = f0;
    for (int i = 0; i < f.size(); ++i) f[i] += 0.1 * rng.uniform(-1.0, 1.0) * f0.lpNorm<Eigen::Infinity>();
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& g : C.generators()) mn = std::min(mn, f.dot(g));
    if (mn <= kGeomTol) continue;
    f /= mn;
    out.push_back(f);
  }
  return out;
}

// Base B = {x in C : f(x) = 1}; vertices are g / f(g) over the extreme rays.
struct ConeBase {
  Vec f;
  Polytope polytope;
  double deltaB = 0.0;  // min vertex norm in the active norm
  SpaceSpec space;
};

inline ConeBase base_from_functional(const PolyhedralCone& C, const Vec& f,
                                     const SpaceSpec& space) {
  check_dim(f, C.dim());
  std::vector<Vec> verts;
  for (const auto& g : C.generators()) {
    const double fg = f.dot(g);
    if (fg <= kGeomTol) throw NotStrictlyPositive();
    verts.push_back(g / fg);
  }
  ConeBase base;
  base.f = f;
  base.polytope = Polytope{verts};
  base.space = space;
  base.deltaB = std::numeric_limits<double>::infinity();
  for (const auto& v : verts) base.deltaB = std::min(base.deltaB, norm_of(v, space));
  return base;
}

// Largest admissible alpha: on the ray through base point b,
// f(tb) - alpha |tb| = t (1 - alpha |b|), and max_B |.| is attained at a
// vertex, so alpha_max = 1 / max vertex norm. Every 0 < alpha < alpha_max
// gives (f, alpha) in C^{a#}_+, and alpha = alpha_max lands in C^{a*}_+.
inline double augmented_alpha_bound(const PolyhedralCone& C, const Vec& f,
                                    const SpaceSpec& space) {
  ConeBase base = base_from_functional(C, f, space);
  double mx = 0.0;
  for (const auto& v : base.polytope.vertices) mx = std::max(mx, norm_of(v, space));
  return 1.0 / mx;
}

enum class AugClass { AStar, ASharp, AStarPlus, ASharpPlus };

inline std::string aug_class_name(AugClass c) {
  switch (c) {
    case AugClass::AStar:
      return "a*";
    case AugClass::ASharp:
      return "a#";
    case AugClass::AStarPlus:
      return "a*+";
    case AugClass::ASharpPlus:
      return "a#+";
  }
  return "a*";
}

// The scalarizer data (f, alpha) with its augmented-dual class.
struct AugmentedFunctional {
  Vec f;
  double alpha = 0.0;
  AugClass classTag = AugClass::ASharp;
  double alpha_max = 0.0;
};

inline AugmentedFunctional make_augmented(const PolyhedralCone& C, const Vec& f,
                                          double alpha, const SpaceSpec& space) {
  if (alpha < 0) throw ValidationError("alpha must be nonnegative");
  const double amax = augmented_alpha_bound(C, f, space);
  AugmentedFunctional fa;
  fa.f = f;
  fa.alpha = alpha;
  fa.alpha_max = amax;
  if (alpha > amax + 1e-12)
    throw ValidationError("alpha outside admissible range (0, " +
                          std::to_string(amax) + "]");
  if (alpha == 0.0) {
    fa.classTag = AugClass::ASharp;
  } else if (alpha < amax - 1e-12) {
    fa.classTag = AugClass::ASharpPlus;
  } else {
    fa.classTag = AugClass::AStarPlus;
  }
  return fa;
}

// Default interior pick: alpha = alpha_max / 2.
inline AugmentedFunctional default_augmented(const PolyhedralCone& C, const Vec& f,
                                             const SpaceSpec& space) {
  return make_augmented(C, f, augmented_alpha_bound(C, f, space) / 2.0, space);
}

// ---------------------------------------------------------------------------
// Henig dilation V_eta(B) = cone(B + eta B_X^o). Membership in the closure is
// decided by the 1-D convex minimization  min_{mu >= 0} dist(mu y, B) <= eta;
// the open set itself is not floating-point decidable, so callers get the
// closure plus a strictness flag.
// ---------------------------------------------------------------------------

class HenigDilation {
 public:
  HenigDilation(ConeBase base, double eta)
      : base_(std::move(base)), eta_(eta) {
    if (!(eta > 0.0) || !(eta < base_.deltaB)) throw EtaOutOfRange();
    for (const auto& v : base_.polytope.vertices)
      scale_ = std::max(scale_, norm_of(v, base_.space));
  }

  const ConeBase& base() const { return base_; }
  double eta() const { return eta_; }

  // min over mu >= 0 of dist(mu y, B); convex in mu, ternary search.
  double min_scaled_distance(const Vec& y) const {
    const double ny = norm_of(y, base_.space);
    if (ny <= kGeomTol) return dist_to_polytope(Vec(Vec::Zero(y.size())),
                                                base_.polytope.vertices, base_.space);
    double lo = 0.0;
    double hi = (scale_ + eta_ + 1.0) / ny;
    auto h = [&](double mu) {
      return dist_to_polytope(Vec(mu * y), base_.polytope.vertices, base_.space);
    };
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (h(m1) <= h(m2))
        hi = m2;
      else
        lo = m1;
    }
    return h(0.5 * (lo + hi));
  }

  bool member_closure(const Vec& y) const {
    return min_scaled_distance(y) <= eta_ + kFeasTol;
  }

  bool member_strict(const Vec& y) const {
    return min_scaled_distance(y) < eta_ - kGeomTol;
  }

 private:
  ConeBase base_;
  double eta_;
  double scale_ = 0.0;
};

inline HenigDilation henig_dilation(const ConeBase& base, double eta) {
  return HenigDilation(base, eta);
}

// Hartley cone C(eps) = {x : d(x, C) < eps d(x, -C)}.
inline bool hartley_cone_member(const Vec& y, const PolyhedralCone& C, double eps,
                                const SpaceSpec& space) {
  if (!(eps > 0)) throw ValidationError("hartley cone needs eps > 0");
  const double dc = dist_to_cone(y, C, space);
  const double dnc = dist_to_cone(y, C.negated(), space);
  return dc < eps * dnc - kGeomTol;
}

}  // namespace propeff
