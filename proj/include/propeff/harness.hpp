#pragma once

#include <string>
#include <vector>

#include "propeff/approx.hpp"
#include "propeff/efficiency.hpp"
#include "propeff/scalarize.hpp"
#include "propeff/separation.hpp"

namespace propeff {

// ---------------------------------------------------------------------------
// Seeded instance generation. Coordinates are integers and halves in [-4, 4],
// cones are rejection-sampled until pointed and non-trivial, and identical
// seeds regenerate identical instances bit for bit (SplitMix64 streams only).
// ---------------------------------------------------------------------------

struct InstanceSeed {
  std::uint64_t seed = 1;
  int dim = 2;
  int blockCount = 2;
  int verticesPerBlock = 2;
  int coneGenerators = 2;
};

struct Instance {
  FeasibleSet A;
  PolyhedralCone C;
  SpaceSpec space;
};

inline Instance generate_instance(const InstanceSeed& is) {
  if (is.dim < 2 || is.dim > 3 || is.blockCount < 1 || is.blockCount > 4 ||
      is.verticesPerBlock < 1 || is.verticesPerBlock > 4 ||
      is.coneGenerators < 1 || is.coneGenerators > 4)
    throw ValidationError("instance seed fields out of range");
  SplitMix64 rng(is.seed * 0x9e3779b97f4a7c15ULL + 0xc0ffee);
  auto coord = [&] { return rng.uniform_int(-8, 8) / 2.0; };

  SpaceSpec space;
  space.dim = is.dim;
  space.norm = static_cast<Norm>(rng.uniform_int(0, 2));

  // Pointed non-trivial cone by rejection.
  std::optional<PolyhedralCone> cone;
  for (int attempt = 0; !cone; ++attempt) {
    if (attempt > 500) throw NumericalFailure("cone rejection loop stalled");
    std::vector<Vec> gens;
    const int k = static_cast<int>(rng.uniform_int(1, is.coneGenerators));
    for (int i = 0; i < k; ++i) {
      Vec g(is.dim);
      for (int j = 0; j < is.dim; ++j) g[j] = coord();
      if (g.norm() > 1e-9) gens.push_back(g);
    }
    if (gens.empty()) continue;
    try {
      auto C = PolyhedralCone::from_generators(gens);
      if (C.pointed()) cone = std::move(C);
    } catch (const ValidationError&) {
      continue;
    }
  }

  FeasibleSet A;
  for (int b = 0; b < is.blockCount; ++b) {
    Polytope P;
    const int kv = static_cast<int>(rng.uniform_int(1, is.verticesPerBlock));
    for (int v = 0; v < kv; ++v) {
      Vec p(is.dim);
      for (int j = 0; j < is.dim; ++j) p[j] = coord();
      P.vertices.push_back(p);
    }
    A.blocks.push_back(canonicalize_polytope(P));
  }
  return Instance{std::move(A), std::move(*cone), space};
}

// ---------------------------------------------------------------------------
// Oracle-side machinery, independent of the classifier path. The defining
// feasibility questions become nonnegative least-squares problems, solved
// globally by a Lawson-Hanson active set; definitional and free of the
// simplex code the classifiers run on.
// ---------------------------------------------------------------------------

namespace detail {

// Lawson-Hanson nonnegative least squares: min |Ax - b| over x >= 0.
// Active-set with finite termination; the inner solves go through Eigen's
// column-pivoted QR. This is the oracles' whole numeric engine.
inline Vec nnls(const Mat& A, const Vec& b, int max_outer = 400) {
  const int n = static_cast<int>(A.cols());
  std::vector<bool> passive(n, false);
  Vec x = Vec::Zero(n);

  auto solve_passive = [&](Vec& z_full) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (passive[i]) idx.push_back(i);
    Mat Ap(A.rows(), static_cast<int>(idx.size()));
    for (int c = 0; c < static_cast<int>(idx.size()); ++c) Ap.col(c) = A.col(idx[c]);
    Vec z = Ap.colPivHouseholderQr().solve(b);
    z_full = Vec::Zero(n);
    for (int c = 0; c < static_cast<int>(idx.size()); ++c) z_full[idx[c]] = z[c];
  };

  for (int outer = 0; outer < max_outer; ++outer) {
    Vec grad = A.transpose() * (b - A * x);
    int enter = -1;
    double best = 1e-10 * std::max(1.0, b.norm());
    for (int i = 0; i < n; ++i)
      if (!passive[i] && grad[i] > best) {
        best = grad[i];
        enter = i;
      }
    if (enter < 0) break;
    passive[enter] = true;
    for (int inner = 0; inner < 4 * n + 8; ++inner) {
      Vec z;
      solve_passive(z);
      double zmin = 0.0;
      for (int i = 0; i < n; ++i)
        if (passive[i]) zmin = std::min(zmin, z[i]);
      if (zmin > -1e-12) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (int i = 0; i < n; ++i)
        if (passive[i] && z[i] <= 1e-12 && x[i] > z[i])
          alpha = std::min(alpha, x[i] / (x[i] - z[i]));
      x += alpha * (z - x);
      for (int i = 0; i < n; ++i)
        if (passive[i] && x[i] <= 1e-12) {
          passive[i] = false;
          x[i] = 0.0;
        }
    }
  }
  for (int i = 0; i < n; ++i) x[i] = std::max(0.0, x[i]);
  return x;
}

struct ConeMeetScan {
  double residual = std::numeric_limits<double>::infinity();
  Vec direction;  // -C side of the witness, normalized
};

// Residual of "sum w_i d_i + sum kappa_j g_j = 0, kappa on the unit simplex":
// zero exactly when cone(dirs) meets -cone(gens) outside the origin (the
// kappa normalization excludes 0 because the generator cone is pointed).
inline ConeMeetScan oracle_cone_meet(const std::vector<Vec>& dirs,
                                     const std::vector<Vec>& gens) {
  ConeMeetScan out;
  if (gens.empty()) return out;
  const int n = static_cast<int>(gens[0].size());
  const int kd = static_cast<int>(dirs.size());
  const int kg = static_cast<int>(gens.size());
  const double rho = 1e4;
  Mat A = Mat::Zero(n + 1, kd + kg);
  for (int j = 0; j < kd; ++j) {
    const double nn = dirs[j].norm();
    if (nn > 1e-12) A.block(0, j, n, 1) = dirs[j] / nn;
  }
  for (int j = 0; j < kg; ++j) {
    A.block(0, kd + j, n, 1) = gens[j].normalized();
    A(n, kd + j) = rho;
  }
  Vec b = Vec::Zero(n + 1);
  b[n] = rho;
  Vec x = nnls(A, b);
  double mass = 0.0;
  Vec y = Vec::Zero(n);
  for (int j = 0; j < kg; ++j) {
    mass += x[kd + j];
    y += x[kd + j] * gens[j].normalized();
  }
  if (std::abs(mass - 1.0) > 1e-6) return out;  // constraint not met: no meet
  out.residual = (A.topRows(n) * x).norm();
  if (y.norm() > 1e-12) out.direction = -y.normalized();
  return out;
}

// Residual of "anchor in conv(points) + cone(gens)", again by NNLS with the
// convex-weight normalization on the points side.
inline double oracle_affine_meet(const std::vector<Vec>& points,
                                 const std::vector<Vec>& gens, const Vec& anchor) {
  const int n = static_cast<int>(anchor.size());
  const int kp = static_cast<int>(points.size());
  const int kg = static_cast<int>(gens.size());
  const double rho = 1e4;
  Mat A = Mat::Zero(n + 1, kp + kg);
  for (int j = 0; j < kp; ++j) {
    A.block(0, j, n, 1) = points[j];
    A(n, j) = rho;
  }
  for (int j = 0; j < kg; ++j) A.block(0, kp + j, n, 1) = gens[j];
  Vec b(n + 1);
  b.head(n) = anchor;
  b[n] = rho;
  Vec x = nnls(A, b);
  double mass = 0.0;
  for (int j = 0; j < kp; ++j) mass += x[j];
  if (std::abs(mass - 1.0) > 1e-6) return std::numeric_limits<double>::infinity();
  return (A.topRows(n) * x - anchor).norm();
}

inline std::vector<Vec> negated_generators(const PolyhedralCone& C) {
  std::vector<Vec> out;
  for (const auto& g : C.generators()) out.push_back(-g);
  return out;
}

}  // namespace detail

// Tolerance at which the oracles flag a sampled direction as touching
// -C \ {0}. The scan is definitional but finite, so the flag threshold is
// resolution-calibrated rather than kGeomTol (see the polish rounds above).
inline constexpr double kOracleFlagTol = 1e-6;

struct OracleVerdict {
  bool efficient = true;  // no forbidden direction found
  Vec witness_direction;
};

// Definitional recomputation of the Benson condition: scan directions of
// cone(block - x0 + C) for near-members of -C \ {0}.
inline OracleVerdict oracle_benson(const Instance& inst, const Vec& x0) {
  OracleVerdict v;
  for (const auto& block : inst.A.blocks) {
    std::vector<Vec> dirs;
    for (const auto& vert : block.vertices) dirs.push_back(vert - x0);
    for (const auto& g : inst.C.generators()) dirs.push_back(g);
    auto scan = detail::oracle_cone_meet(dirs, inst.C.generators());
    if (scan.residual <= kOracleFlagTol) {
      v.efficient = false;
      v.witness_direction = scan.direction;
      return v;
    }
  }
  return v;
}

inline OracleVerdict oracle_borwein(const Instance& inst, const Vec& x0) {
  OracleVerdict v;
  for (const auto& block : inst.A.blocks) {
    std::vector<Vec> dirs;
    for (const auto& vert : block.vertices) dirs.push_back(vert - x0);
    auto scan = detail::oracle_cone_meet(dirs, inst.C.generators());
    if (scan.residual <= kOracleFlagTol) {
      v.efficient = false;
      v.witness_direction = scan.direction;
      return v;
    }
  }
  return v;
}

inline OracleVerdict oracle_hurwicz(const Instance& inst, const Vec& x0) {
  std::vector<Vec> dirs;
  for (const auto& block : inst.A.blocks)
    for (const auto& vert : block.vertices) dirs.push_back(vert - x0);
  for (const auto& g : inst.C.generators()) dirs.push_back(g);
  auto scan = detail::oracle_cone_meet(dirs, inst.C.generators());
  OracleVerdict v;
  if (scan.residual <= kOracleFlagTol) {
    v.efficient = false;
    v.witness_direction = scan.direction;
  }
  return v;
}

// A dominating point p of a polytope block satisfies p - x0 in -C \ {0};
// on polyhedral blocks that is exactly a nonzero -C direction of
// cone(block - x0).
inline OracleVerdict oracle_min(const Instance& inst, const Vec& x0) {
  OracleVerdict v;
  for (const auto& block : inst.A.blocks) {
    std::vector<Vec> dirs;
    for (const auto& vert : block.vertices) {
      Vec w = vert - x0;
      if (w.norm() > 1e-9) dirs.push_back(w);
    }
    if (dirs.empty()) continue;  // the block is {x0}
    auto scan = detail::oracle_cone_meet(dirs, inst.C.generators());
    if (scan.residual <= kOracleFlagTol) {
      v.efficient = false;
      v.witness_direction = scan.direction;
      return v;
    }
  }
  return v;
}

inline OracleVerdict oracle_tbo(const Instance& inst, const Vec& x0) {
  OracleVerdict v;
  for (const auto& block : inst.A.blocks) {
    // Activity: x0 in block + C, i.e. x0 = p + c for a block point p.
    if (detail::oracle_affine_meet(block.vertices, inst.C.generators(), x0) >
        kOracleFlagTol)
      continue;
    std::vector<Vec> dirs;
    for (const auto& vert : block.vertices) dirs.push_back(vert - x0);
    for (const auto& g : inst.C.generators()) dirs.push_back(g);
    auto scan = detail::oracle_cone_meet(dirs, inst.C.generators());
    if (scan.residual <= kOracleFlagTol) {
      v.efficient = false;
      v.witness_direction = scan.direction;
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Witness inequality oracle: the strict separation inequalities plus the
// extension to the complement of int(-K).
// ---------------------------------------------------------------------------

struct SepOracleStats {
  long checked = 0;
  long violations = 0;
};

inline SepOracleStats oracle_sep_inequalities(const SspWitness& w,
                                              const PolyhedralCone& C,
                                              const PolyhedralCone& K,
                                              const SpaceSpec& space,
                                              int sampleCount = 10000,
                                              int alphaCount = 10,
                                              std::uint64_t seed = 0x5e9) {
  SepOracleStats stats;
  SplitMix64 rng(seed);
  auto boundary = detail::boundary_pieces(K);
  for (int ai = 1; ai <= alphaCount; ++ai) {
    const double alpha =
        w.delta1 + (w.delta2 - w.delta1) * ai / (alphaCount + 1.0);
    for (int t = 0; t < sampleCount; ++t) {
      // x in -co(C) \ {0}.
      Vec x = Vec::Zero(space.dim);
      for (const auto& g : C.generators()) x -= rng.uniform(0.0, 2.0) * g;
      if (norm_of(x, space) > 1e-9) {
        ++stats.checked;
        if (w.f.dot(x) + alpha * norm_of(x, space) >= kGeomTol) ++stats.violations;
      }
      // y in bd(-K) \ {0} = -(bd K).
      const auto& piece = boundary[t % boundary.size()];
      Vec y = Vec::Zero(space.dim);
      for (const auto& g : piece.generators()) y -= rng.uniform(0.0, 2.0) * g;
      if (norm_of(y, space) > 1e-9) {
        ++stats.checked;
        if (w.f.dot(y) + alpha * norm_of(y, space) <= -kGeomTol) ++stats.violations;
      }
    }
  }
  return stats;
}

// The extension: f + alpha|.| stays positive on X \ int(-K) when
// co(C) cap K != {0}.
inline SepOracleStats oracle_sep_extension(const SspWitness& w,
                                           const PolyhedralCone& K,
                                           const SpaceSpec& space,
                                           int sampleCount = 10000,
                                           std::uint64_t seed = 0xa11) {
  SepOracleStats stats;
  SplitMix64 rng(seed);
  auto negK = K.negated();
  const double alpha = 0.5 * (w.delta1 + w.delta2);
  while (stats.checked < sampleCount) {
    Vec y(space.dim);
    for (int i = 0; i < space.dim; ++i) y[i] = rng.uniform(-4.0, 4.0);
    if (norm_of(y, space) < 1e-6) continue;
    if (negK.contains_interior(y, kGeomTol)) continue;
    ++stats.checked;
    if (w.f.dot(y) + alpha * norm_of(y, space) <= -kGeomTol) ++stats.violations;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Suite runners shared by the acceptance binary and the CLI selftest.
// ---------------------------------------------------------------------------

struct SuiteStats {
  long instances = 0;
  long checks = 0;
  long violations = 0;
  std::vector<std::string> failures;

  void fail(const std::string& msg) {
    ++violations;
    if (failures.size() < 10) failures.push_back(msg);
  }
};

inline InstanceSeed seed_for(std::uint64_t i) {
  InstanceSeed is;
  is.seed = i;
  SplitMix64 rng(i * 77 + 13);
  is.dim = 2 + static_cast<int>(rng.uniform_int(0, 1));
  is.blockCount = static_cast<int>(rng.uniform_int(1, 4));
  is.verticesPerBlock = static_cast<int>(rng.uniform_int(1, 4));
  is.coneGenerators = static_cast<int>(rng.uniform_int(1, 4));
  return is;
}

// Criterion-2 style: inclusion chains over seeded instances.
inline SuiteStats run_inclusion_suite(int count, std::uint64_t seed0 = 1) {
  SuiteStats stats;
  for (int i = 0; i < count; ++i) {
    Instance inst = generate_instance(seed_for(seed0 + i));
    Vec x0 = inst.A.blocks[0].vertices[0];
    auto rep = classify(inst.A, inst.C, x0, inst.space,
                        {Notion::Min, Notion::Pos, Notion::Hu, Notion::Be,
                         Notion::Ha, Notion::Bo, Notion::GHe, Notion::He,
                         Notion::SE, Notion::TBo});
    ++stats.instances;
    auto yes = [&](Notion n) {
      return rep.verdicts[n].status == Status::CertifiedYes;
    };
    auto no = [&](Notion n) {
      return rep.verdicts[n].status == Status::CertifiedNo;
    };
    auto imply = [&](Notion a, Notion b) {
      ++stats.checks;
      if (yes(a) && no(b))
        stats.fail("instance " + std::to_string(seed0 + i) + ": " +
                   notion_name(a) + " yes but " + notion_name(b) + " no");
    };
    imply(Notion::Pos, Notion::Hu);
    imply(Notion::Hu, Notion::Be);
    imply(Notion::Be, Notion::Bo);
    imply(Notion::SE, Notion::Ha);
    imply(Notion::Ha, Notion::Be);
    imply(Notion::SE, Notion::GHe);
    imply(Notion::GHe, Notion::Be);
    imply(Notion::SE, Notion::He);
    imply(Notion::Be, Notion::Min);
  }
  return stats;
}

// Criterion-3: every emitted certificate re-validates; sufficient-condition
// certifications agree with the exact approx-Benson classifier.
inline SuiteStats run_certificate_soundness(int count, std::uint64_t seed0 = 1) {
  SuiteStats stats;
  for (int i = 0; i < count; ++i) {
    Instance inst = generate_instance(seed_for(seed0 + i));
    Vec x0 = inst.A.blocks[0].vertices[0];
    ++stats.instances;
    auto be = is_benson(inst.A, inst.C, x0);
    if (be.status == Status::CertifiedYes) {
      auto res = certify_benson(inst.A, inst.C, x0, inst.space, {16, 99});
      if (res.outcome == CertifyResult::Outcome::Certificate) {
        ++stats.checks;
        auto sol = minimize_g({*res.certificate, x0, inst.A, inst.space});
        if (!sol.uniqueAtX0)
          stats.fail("certificate failed re-validation on instance " +
                     std::to_string(seed0 + i));
      }
      if (res.outcome == CertifyResult::Outcome::Refuted)
        stats.fail("certify refuted a Benson-yes instance " +
                   std::to_string(seed0 + i));
    }
    // Sufficient-condition side: a default (f, alpha) and a generator-based D.
    ApproxSpec spec{{inst.C.generators()[0]}, false, 1.0};
    try {
      Vec f = strictly_positive_functional(inst.C);
      auto fa = default_augmented(inst.C, f, inst.space);
      auto suff = approx_benson_sufficient_condition(inst.A, inst.C, spec, x0, fa, inst.space);
      if (suff.status == Status::CertifiedYes) {
        ++stats.checks;
        if (is_approx_benson(inst.A, inst.C, spec, x0, inst.space).status !=
            Status::CertifiedYes)
          stats.fail("approx_benson_sufficient_condition disagreed on instance " +
                     std::to_string(seed0 + i));
      }
    } catch (const ValidationError&) {
      // degenerate D or functional; skip
    }
  }
  return stats;
}

// Criterion-8: classifier vs brute-force oracle agreement.
inline SuiteStats run_oracle_agreement(int count, std::uint64_t seed0 = 1) {
  SuiteStats stats;
  for (int i = 0; i < count; ++i) {
    Instance inst = generate_instance(seed_for(seed0 + i));
    Vec x0 = inst.A.blocks[0].vertices[0];
    ++stats.instances;
    auto compare = [&](const char* name, const Verdict& v, const OracleVerdict& o) {
      if (v.status == Status::Unknown) return;
      ++stats.checks;
      const bool classifier_yes = v.status == Status::CertifiedYes;
      if (classifier_yes != o.efficient)
        stats.fail(std::string(name) + " disagreement on instance " +
                   std::to_string(seed0 + i));
    };
    compare("Min", is_min(inst.A, inst.C, x0), oracle_min(inst, x0));
    compare("Be", is_benson(inst.A, inst.C, x0), oracle_benson(inst, x0));
    compare("Bo", is_borwein(inst.A, inst.C, x0), oracle_borwein(inst, x0));
    compare("Hu", is_hurwicz(inst.A, inst.C, x0), oracle_hurwicz(inst, x0));
    compare("TBo", is_tbo(inst.A, inst.C, x0), oracle_tbo(inst, x0));
  }
  return stats;
}

// Generates SSP-holding cone pairs under Linf (the exact path).
inline std::vector<std::pair<PolyhedralCone, PolyhedralCone>> generate_ssp_pairs(
    int count, std::uint64_t seed0, SpaceSpec space) {
  std::vector<std::pair<PolyhedralCone, PolyhedralCone>> out;
  SplitMix64 rng(seed0);
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < count * 400) {
    ++attempts;
    const int dim = space.dim;
    auto sample_cone = [&](int max_gens) -> std::optional<PolyhedralCone> {
      std::vector<Vec> gens;
      const int k = static_cast<int>(rng.uniform_int(1, max_gens));
      for (int i = 0; i < k; ++i) {
        Vec g(dim);
        for (int j = 0; j < dim; ++j) g[j] = rng.uniform_int(-8, 8) / 2.0;
        if (g.norm() > 1e-9) gens.push_back(g);
      }
      if (gens.empty()) return std::nullopt;
      try {
        return PolyhedralCone::from_generators(gens);
      } catch (const ValidationError&) {
        return std::nullopt;
      }
    };
    auto C = sample_cone(3);
    auto K = sample_cone(3);
    if (!C || !K) continue;
    if (!C->pointed()) continue;  // the witness lives in C^{a#}_+
    try {
      if (ssp_check(*C, *K, space).holds) out.push_back({*C, *K});
    } catch (const ValidationError&) {
      continue;
    }
  }
  return out;
}

// Criterion-5: witness inequalities with zero sampled violations.
inline SuiteStats run_witness_suite(int pairs, int samples_per_side,
                                    std::uint64_t seed0 = 7,
                                    SpaceSpec space = {2, Norm::Linf}) {
  SuiteStats stats;
  auto list = generate_ssp_pairs(pairs, seed0, space);
  for (const auto& [C, K] : list) {
    ++stats.instances;
    auto w = ssp_witness(C, K, space);
    auto s = oracle_sep_inequalities(w, C, K, space, samples_per_side, 10,
                                     seed0 + stats.instances);
    stats.checks += s.checked;
    stats.violations += s.violations;
    // The complement-side extension applies when co(C) cap K != {0}; the meet
    // runs with the pointed cone as the normalized side.
    ConicPiece kpiece{{}, K.generators()};
    if (piece_meets_cone_nontrivially(kpiece, C).meets) {
      auto e = oracle_sep_extension(w, K, space, samples_per_side,
                                    seed0 + 31 * stats.instances);
      stats.checks += e.checked;
      stats.violations += e.violations;
    }
  }
  return stats;
}

// Criterion-6: the relative-position dichotomy never trips.
inline SuiteStats run_dichotomy_suite(int pairs, std::uint64_t seed0 = 21,
                                      SpaceSpec space = {2, Norm::Linf}) {
  SuiteStats stats;
  for (const auto& [C, K] : generate_ssp_pairs(pairs, seed0, space)) {
    ++stats.instances;
    ++stats.checks;
    try {
      (void)relative_position(C, K, space);
    } catch (const DichotomyViolated&) {
      stats.fail("dichotomy violated on pair " + std::to_string(stats.instances));
    }
  }
  return stats;
}

// Criterion-9: negation and convex-hull symmetries of ssp_check.
inline SuiteStats run_symmetry_suite(int pairs, std::uint64_t seed0 = 33,
                                     SpaceSpec space = {2, Norm::Linf}) {
  SuiteStats stats;
  SplitMix64 rng(seed0);
  while (stats.instances < pairs) {
    auto sample_dirs = [&](int max_gens) {
      std::vector<Vec> gens;
      const int k = static_cast<int>(rng.uniform_int(1, max_gens));
      for (int i = 0; i < k; ++i) {
        Vec g(space.dim);
        for (int j = 0; j < space.dim; ++j) g[j] = rng.uniform_int(-8, 8) / 2.0;
        if (g.norm() > 1e-9) gens.push_back(g);
      }
      return gens;
    };
    auto dirs = sample_dirs(3);
    auto kdirs = sample_dirs(3);
    if (dirs.empty() || kdirs.empty()) continue;
    std::optional<PolyhedralCone> Chull, K;
    try {
      Chull = PolyhedralCone::from_generators(dirs);
      K = PolyhedralCone::from_generators(kdirs);
    } catch (const ValidationError&) {
      continue;
    }
    ++stats.instances;
    auto a = ssp_check(*Chull, *K, space);
    ++stats.checks;
    auto b = ssp_check(Chull->negated(), K->negated(), space);
    if (a.holds != b.holds) stats.fail("ssp(C,K) != ssp(-C,-K)");
    // co-hull identity over the ray union.
    std::vector<PolyhedralCone> rays;
    for (const auto& d : dirs) rays.push_back(PolyhedralCone::from_generators({d}));
    ++stats.checks;
    auto u = ssp_check_union(rays, {*K}, space);
    if (a.holds != u.holds) stats.fail("ssp(coC,K) != ssp(union,K)");
  }
  return stats;
}

// Criterion-7: strong monotonicity of the scalarization.
inline SuiteStats run_monotonicity_suite(int count, int pairs_per_instance,
                                         std::uint64_t seed0 = 55) {
  SuiteStats stats;
  for (int i = 0; i < count; ++i) {
    Instance inst = generate_instance(seed_for(seed0 + i));
    ++stats.instances;
    Vec f;
    try {
      f = strictly_positive_functional(inst.C);
    } catch (const NotPointed&) {
      continue;
    }
    auto fa = default_augmented(inst.C, f, inst.space);
    SplitMix64 rng(seed0 + 1000 + i);
    Vec zero = Vec::Zero(inst.space.dim);
    for (int t = 0; t < pairs_per_instance; ++t) {
      Vec x(inst.space.dim);
      for (int j = 0; j < inst.space.dim; ++j) x[j] = rng.uniform(-4, 4);
      Vec c = Vec::Zero(inst.space.dim);
      for (const auto& g : inst.C.generators()) c += rng.uniform(0.0, 2.0) * g;
      if (norm_of(c, inst.space) < 1e-9) continue;
      ++stats.checks;
      if (g_eval(fa, zero, x, inst.space) >= g_eval(fa, zero, Vec(x + c), inst.space))
        stats.fail("monotonicity violated on instance " + std::to_string(seed0 + i));
    }
  }
  return stats;
}

// Criterion-4: scalarization necessity on the exact path. Returns stats where
// `instances` counts curated instances and `violations` counts certify
// failures.
inline SuiteStats run_necessity_suite(int target, std::uint64_t seed0 = 71,
                                      int budget = 64) {
  SuiteStats stats;
  std::uint64_t i = 0;
  while (stats.instances < target && i < 4000) {
    InstanceSeed is = seed_for(seed0 + i++);
    Instance inst = generate_instance(is);
    inst.space.norm = Norm::Linf;  // curated exact path
    Vec x0 = inst.A.blocks[0].vertices[0];
    if (is_benson(inst.A, inst.C, x0).status != Status::CertifiedYes) continue;
    auto cones =
        detail::cones_from_union(benson_cone(inst.A, inst.C, x0).pieces);
    if (!ssp_check_union({inst.C.negated()}, cones, inst.space).holds) continue;
    ++stats.instances;
    ++stats.checks;
    auto res = certify_benson(inst.A, inst.C, x0, inst.space,
                              {budget, seed0 + 17 * i});
    if (res.outcome != CertifyResult::Outcome::Certificate)
      stats.fail("no certificate within budget on curated instance " +
                 std::to_string(i));
  }
  return stats;
}

}  // namespace propeff
