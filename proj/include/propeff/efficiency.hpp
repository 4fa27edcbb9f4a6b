#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "propeff/augdual.hpp"
#include "propeff/cone.hpp"
#include "propeff/core.hpp"
#include "propeff/linprog.hpp"
#include "propeff/polytope.hpp"

namespace propeff {

// The set A as a finite union of polytopes; isolated points are singleton
// blocks.
struct FeasibleSet {
  std::vector<Polytope> blocks;

  int dim() const { return blocks.empty() ? 0 : blocks[0].dim(); }

  bool contains(const Vec& x) const {
    for (const auto& b : blocks)
      if (polytope_contains(b, x)) return true;
    return false;
  }
};

enum class Notion { Min, Pos, Hu, Be, Ha, Bo, GHe, He, SE, TBo };

inline std::string notion_name(Notion n) {
  switch (n) {
    case Notion::Min: return "Min";
    case Notion::Pos: return "Pos";
    case Notion::Hu: return "Hu";
    case Notion::Be: return "Be";
    case Notion::Ha: return "Ha";
    case Notion::Bo: return "Bo";
    case Notion::GHe: return "GHe";
    case Notion::He: return "He";
    case Notion::SE: return "SE";
    case Notion::TBo: return "TBo";
  }
  return "?";
}

enum class Status { CertifiedYes, CertifiedNo, Unknown };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::CertifiedYes: return "CertifiedYes";
    case Status::CertifiedNo: return "CertifiedNo";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

struct Certificate {
  std::string kind;
  std::vector<Vec> functionals;  // per-piece separating functionals, or {f}
  Vec base_functional;           // Henig base data
  double eps = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  std::string note;
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Vec> counterexample;
  std::string note;

  static Verdict yes(Certificate c) {
    Verdict v;
    v.status = Status::CertifiedYes;
    v.certificate = std::move(c);
    return v;
  }
  static Verdict no(Vec witness, std::string note = "") {
    Verdict v;
    v.status = Status::CertifiedNo;
    v.counterexample = std::move(witness);
    v.note = std::move(note);
    return v;
  }
  static Verdict unknown(std::string reason) {
    Verdict v;
    v.status = Status::Unknown;
    v.note = std::move(reason);
    return v;
  }
};

struct EfficiencyReport {
  Vec point;
  std::map<Notion, Verdict> verdicts;
};

namespace detail {

inline void require_in_set(const FeasibleSet& A, const Vec& x0) {
  if (!A.contains(x0)) throw PointNotInSet();
}

inline void require_setup(const FeasibleSet& A, const PolyhedralCone& C,
                          const Vec& x0) {
  if (A.blocks.empty()) throw ValidationError("empty feasible set");
  if (A.dim() != C.dim() || x0.size() != C.dim()) throw DimensionMismatch();
  require_in_set(A, x0);
}

// Feasible region {theta, kappa >= 0 : V theta + G kappa = x0, sum theta = 1},
// i.e. points p of the block with x0 - p in cone(G) ... written as p + c = x0.
// Returns nullopt when empty; otherwise the point p attaining the largest
// |coordinate| of p - x0 (zero vector when the intersection is {x0} alone).
struct BlockConeMeet {
  bool nonempty = false;
  double max_excursion = 0.0;
  Vec farthest;  // block point p with the largest |(p - x0)_k|
};

inline BlockConeMeet block_cone_meet(const Polytope& P, const PolyhedralCone& C,
                                     const Vec& x0) {
  const int n = static_cast<int>(x0.size());
  const int kv = static_cast<int>(P.vertices.size());
  const int kg = static_cast<int>(C.generators().size());
  Mat A(n + 1, kv + kg);
  for (int j = 0; j < kv; ++j) {
    A.block(0, j, n, 1) = P.vertices[j];
    A(n, j) = 1.0;
  }
  for (int j = 0; j < kg; ++j) {
    A.block(0, kv + j, n, 1) = C.generators()[j];
    A(n, kv + j) = 0.0;
  }
  Vec b(n + 1);
  b.head(n) = x0;
  b[n] = 1.0;

  BlockConeMeet res;
  if (!lp_feasible_point(A, b)) return res;
  res.nonempty = true;
  res.farthest = x0;
  for (int k = 0; k < n; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec c = Vec::Zero(kv + kg);
      for (int j = 0; j < kv; ++j) c[j] = sgn * P.vertices[j][k];
      LpResult r = lp_solve_standard(A, b, c, Sense::Max);
      if (r.status != LpStatus::Optimal)
        throw NumericalFailure("block_cone_meet: bounded LP failed");
      const double excursion = r.value - sgn * x0[k];
      if (excursion > res.max_excursion) {
        res.max_excursion = excursion;
        Vec p = Vec::Zero(n);
        for (int j = 0; j < kv; ++j) p += r.point[j] * P.vertices[j];
        res.farthest = p;
      }
    }
  }
  return res;
}

inline std::string piece_label(int i) { return "piece[" + std::to_string(i) + "]"; }

// Runs the nonzero-intersection test of every piece against -C. Returns a
// CertifiedNo verdict on the first meet, otherwise a CertifiedYes with one
// Farkas separating functional per piece.
inline Verdict pieces_avoid_negated_cone(const std::vector<ConicPiece>& pieces,
                                         const PolyhedralCone& C,
                                         const std::string& kind) {
  auto negC = C.negated();
  Certificate cert;
  cert.kind = kind;
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    auto meet = piece_meets_cone_nontrivially(pieces[i], negC);
    if (meet.meets)
      return Verdict::no(meet.witness, piece_label(i) + " meets -C");
    auto psi = separating_functional(pieces[i], negC);
    if (!psi)
      throw NumericalFailure("Farkas separator missing for an avoided piece");
    cert.functionals.push_back(*psi);
  }
  return Verdict::yes(std::move(cert));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Min and the cone unions behind Benson / Borwein / Hurwicz / TBo.
// ---------------------------------------------------------------------------

inline Verdict is_min(const FeasibleSet& A, const PolyhedralCone& C, const Vec& x0) {
  detail::require_setup(A, C, x0);
  for (const auto& block : A.blocks) {
    auto meet = detail::block_cone_meet(block, C, x0);
    if (meet.nonempty && meet.max_excursion > kGeomTol)
      return Verdict::no(meet.farthest, "dominating point of A");
  }
  Certificate c;
  c.kind = "exact-emptiness";
  c.note = "(x0 - C) cap A = {x0} by per-block coordinate LPs";
  return Verdict::yes(std::move(c));
}

inline ClosedConicUnion benson_cone(const FeasibleSet& A, const PolyhedralCone& C,
                                    const Vec& x0) {
  if (A.dim() != C.dim() || x0.size() != C.dim()) throw DimensionMismatch();
  ClosedConicUnion u;
  for (const auto& block : A.blocks) {
    ConicPiece piece;
    for (const auto& v : block.vertices) piece.apexGenerators.push_back(v - x0);
    piece.recessionGenerators = C.generators();
    u.pieces.push_back(std::move(piece));
  }
  return u;
}

inline ClosedConicUnion borwein_cone(const FeasibleSet& A, const Vec& x0) {
  ClosedConicUnion u;
  for (const auto& block : A.blocks) {
    ConicPiece piece;
    for (const auto& v : block.vertices) piece.apexGenerators.push_back(v - x0);
    u.pieces.push_back(std::move(piece));
  }
  return u;
}

inline ConicPiece hurwicz_cone(const FeasibleSet& A, const PolyhedralCone& C,
                               const Vec& x0) {
  ConicPiece piece;
  for (const auto& block : A.blocks)
    for (const auto& v : block.vertices) piece.apexGenerators.push_back(v - x0);
  piece.recessionGenerators = C.generators();
  return piece;
}

// Contingent cone of A + C at x0: the union over blocks containing x0 in
// block + C of (vertices - x0) + C; polyhedra are locally conical.
inline ClosedConicUnion tangent_cone(const FeasibleSet& A, const PolyhedralCone& C,
                                     const Vec& x0) {
  ClosedConicUnion u;
  for (const auto& block : A.blocks) {
    if (!detail::block_cone_meet(block, C, x0).nonempty) continue;  // inactive
    ConicPiece piece;
    for (const auto& v : block.vertices) piece.apexGenerators.push_back(v - x0);
    piece.recessionGenerators = C.generators();
    u.pieces.push_back(std::move(piece));
  }
  return u;
}

inline Verdict is_benson(const FeasibleSet& A, const PolyhedralCone& C,
                         const Vec& x0) {
  detail::require_setup(A, C, x0);
  return detail::pieces_avoid_negated_cone(benson_cone(A, C, x0).pieces, C,
                                           "benson-farkas");
}

inline Verdict is_borwein(const FeasibleSet& A, const PolyhedralCone& C,
                          const Vec& x0) {
  detail::require_setup(A, C, x0);
  return detail::pieces_avoid_negated_cone(borwein_cone(A, x0).pieces, C,
                                           "borwein-farkas");
}

inline Verdict is_hurwicz(const FeasibleSet& A, const PolyhedralCone& C,
                          const Vec& x0) {
  detail::require_setup(A, C, x0);
  return detail::pieces_avoid_negated_cone({hurwicz_cone(A, C, x0)}, C,
                                           "hurwicz-farkas");
}

inline Verdict is_tbo(const FeasibleSet& A, const PolyhedralCone& C, const Vec& x0) {
  detail::require_setup(A, C, x0);
  return detail::pieces_avoid_negated_cone(tangent_cone(A, C, x0).pieces, C,
                                           "tbo-farkas");
}

// ---------------------------------------------------------------------------
// Positive proper efficiency: one exact LP over (f in C#, f(v - x0) >= 0).
// ---------------------------------------------------------------------------

inline Verdict is_pos(const FeasibleSet& A, const PolyhedralCone& C, const Vec& x0) {
  detail::require_setup(A, C, x0);
  if (!C.pointed()) throw NotPointed();
  const int n = C.dim();
  const int nv = 2 * n;  // f plus |f| bounds for a deterministic pick
  std::vector<LinearConstraint> cons;
  auto lift = [&](const Vec& a, Rel rel, double rhs) {
    Vec row = Vec::Zero(nv);
    row.head(n) = a;
    cons.push_back({row, rel, rhs});
  };
  for (const auto& g : C.generators()) lift(g, Rel::Ge, 1.0);
  for (const auto& block : A.blocks)
    for (const auto& v : block.vertices) lift(Vec(v - x0), Rel::Ge, 0.0);
  for (int i = 0; i < n; ++i) {
    Vec up = Vec::Zero(nv), dn = Vec::Zero(nv);
    up[i] = -1.0;
    up[n + i] = 1.0;
    dn[i] = 1.0;
    dn[n + i] = 1.0;
    cons.push_back({up, Rel::Ge, 0.0});
    cons.push_back({dn, Rel::Ge, 0.0});
  }
  Vec obj = Vec::Zero(nv);
  obj.tail(n).setOnes();
  LpResult r = lp_solve(obj, cons, Sense::Min);
  if (r.status != LpStatus::Optimal) {
    Verdict v;
    v.status = Status::CertifiedNo;
    v.note = "no f in C# attains its minimum over A at x0 (LP infeasible)";
    return v;
  }
  Certificate cert;
  cert.kind = "positive-functional";
  cert.functionals.push_back(r.point.head(n));
  return Verdict::yes(std::move(cert));
}

// ---------------------------------------------------------------------------
// Hartley via the Q-minimal characterization with Q = C(eps).
// ---------------------------------------------------------------------------

inline Verdict is_hartley(const FeasibleSet& A, const PolyhedralCone& C,
                          const Vec& x0, const SpaceSpec& space) {
  detail::require_setup(A, C, x0);
  // Exact refutation: a point of A \ {x0} inside x0 - C violates every eps.
  for (const auto& block : A.blocks) {
    auto meet = detail::block_cone_meet(block, C, x0);
    if (meet.nonempty && meet.max_excursion > kGeomTol)
      return Verdict::no(meet.farthest, "a - x0 in -C \\ {0}");
  }
  auto negC = C.negated();
  double eps_star = std::numeric_limits<double>::infinity();
  bool sampled_only = false;
  double min_dist_neg = std::numeric_limits<double>::infinity();

  auto account = [&](const Vec& y) {
    if (norm_of(y, space) <= kGeomTol) return;
    const double dc = dist_to_cone(y, C, space);
    if (dc <= kGeomTol) return;  // y in C: fine for every eps
    const double dn = dist_to_cone(y, negC, space);
    min_dist_neg = std::min(min_dist_neg, dn);
    eps_star = std::min(eps_star, dn / dc);
  };

  for (const auto& block : A.blocks) {
    if (block.vertices.size() == 1) {
      account(Vec(block.vertices[0] - x0));
      continue;
    }
    sampled_only = true;
    for (const auto& v : block.vertices) account(Vec(v - x0));
    // Deterministic barycentric grid.
    const int k = static_cast<int>(block.vertices.size());
    const int steps = 6;
    std::vector<int> bars(k, 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
      if (idx == k - 1) {
        bars[idx] = remaining;
        Vec p = Vec::Zero(space.dim);
        for (int j = 0; j < k; ++j)
          p += (static_cast<double>(bars[j]) / steps) * block.vertices[j];
        account(Vec(p - x0));
        return;
      }
      for (int t = 0; t <= remaining; ++t) {
        bars[idx] = t;
        rec(idx + 1, remaining - t);
      }
    };
    rec(0, steps);
  }

  const double eps_cert =
      std::isfinite(eps_star) ? std::min(eps_star / 2.0, 0.5) : 0.5;
  if (!sampled_only) {
    Certificate cert;
    cert.kind = "hartley-eps";
    cert.eps = eps_cert;
    return Verdict::yes(std::move(cert));
  }
  if (std::isfinite(min_dist_neg) && min_dist_neg < 10.0 * kGeomTol)
    return Verdict::unknown(
        "polytope blocks approach -C within the sampling margin");
  Certificate cert;
  cert.kind = "hartley-eps";
  cert.eps = eps_cert;
  cert.note = "polytope blocks certified by vertex+grid sampling";
  return Verdict::yes(std::move(cert));
}

// ---------------------------------------------------------------------------
// Henig via base dilations cl cone(B + eps * ball). The ball is the unit ball
// of the active norm for L1/Linf and the circumscribed cube for L2, which
// keeps CertifiedYes sound (avoiding the larger dilation implies avoiding the
// Euclidean one).
// ---------------------------------------------------------------------------

struct HenigSearchConfig {
  int functional_count = 5;
  int eps_levels = 12;
  std::uint64_t seed = 777;
};

namespace detail {

inline std::vector<Vec> ball_vertices(const SpaceSpec& space) {
  std::vector<Vec> out;
  const int n = space.dim;
  if (space.norm == Norm::L1) {
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      out.push_back(e);
      out.push_back(-e);
    }
    return out;
  }
  // Linf exactly; cube as a circumscribed outer body for L2.
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask & (1u << i)) ? 1.0 : -1.0;
    out.push_back(v);
  }
  return out;
}

// Does cone(conv(apex)) avoid -cl cone(B + eps * conv(ball)) outside 0?
// Exact LP: the dilation is {w + eps s : w in C, s in f(w) * conv(ball)}.
inline bool piece_avoids_dilation(const ConicPiece& piece, const PolyhedralCone& C,
                                  const Vec& f, double eps,
                                  const std::vector<Vec>& ball) {
  const int n = piece.dim();
  const auto& W = piece.apexGenerators;
  const auto& G = C.generators();
  const int kw = static_cast<int>(W.size());
  const int kg = static_cast<int>(G.size());
  const int kb = static_cast<int>(ball.size());
  // Columns: theta (kw), kappa (kg), sigma (kb).
  Mat A(n + 2, kw + kg + kb);
  A.setZero();
  for (int j = 0; j < kw; ++j) {
    A.block(0, j, n, 1) = W[j];
    A(n, j) = 1.0;  // sum theta = 1
  }
  for (int j = 0; j < kg; ++j) {
    A.block(0, kw + j, n, 1) = G[j];
    A(n + 1, kw + j) = -f.dot(G[j]);  // sum sigma = f(w)
  }
  for (int j = 0; j < kb; ++j) {
    A.block(0, kw + kg + j, n, 1) = eps * ball[j];
    A(n + 1, kw + kg + j) = 1.0;
  }
  Vec b = Vec::Zero(n + 2);
  b[n] = 1.0;
  if (!lp_feasible_point(A, b)) return true;  // conv(apex) misses -dilation
  // Intersection nonempty: avoided only if it is exactly {0}.
  for (int k = 0; k < n; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec c = Vec::Zero(kw + kg + kb);
      for (int j = 0; j < kw; ++j) c[j] = sgn * W[j][k];
      LpResult r = lp_solve_standard(A, b, c, Sense::Max);
      if (r.status != LpStatus::Optimal)
        throw NumericalFailure("henig avoidance LP failed");
      if (r.value > kGeomTol) return false;
    }
  }
  return true;
}

}  // namespace detail

inline Verdict is_henig(const FeasibleSet& A, const PolyhedralCone& C,
                        const Vec& x0, const SpaceSpec& space,
                        const HenigSearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  if (!C.pointed()) throw NotPointed();
  auto bo = is_borwein(A, C, x0);
  if (bo.status == Status::CertifiedNo) {
    bo.note = "Borwein fails, and He implies Bo";
    return bo;
  }
  auto pieces = borwein_cone(A, x0).pieces;
  const auto ball = detail::ball_vertices(space);
  for (const auto& f :
       strictly_positive_functionals(C, config.functional_count, config.seed)) {
    ConeBase base = base_from_functional(C, f, space);
    for (int j = 1; j <= config.eps_levels; ++j) {
      const double eps = base.deltaB / std::pow(2.0, j);
      bool all = true;
      for (const auto& piece : pieces) {
        if (!detail::piece_avoids_dilation(piece, C, base.f, eps, ball)) {
          all = false;
          break;
        }
      }
      if (all) {
        Certificate cert;
        cert.kind = "henig-base-eps";
        cert.base_functional = base.f;
        cert.eps = eps;
        if (space.norm == Norm::L2)
          cert.note = "dilation checked against the circumscribed cube";
        return Verdict::yes(std::move(cert));
      }
    }
  }
  return Verdict::unknown("searched bases and eps grid exhausted");
}

// ---------------------------------------------------------------------------
// Super efficiency. On finitely generated conic data the recession cone of
// B_X - C is -C, so boundedness of cl cone(A - x0) cap (B_X - C) is exactly
// the Borwein condition; rho comes from coordinate LPs over the cube bound.
// ---------------------------------------------------------------------------

inline Verdict is_super(const FeasibleSet& A, const PolyhedralCone& C,
                        const Vec& x0, const SpaceSpec& space) {
  detail::require_setup(A, C, x0);
  auto bo = is_borwein(A, C, x0);
  if (bo.status == Status::CertifiedNo) {
    bo.note = "unbounded direction of cl cone(A - x0) inside B_X - C";
    return bo;
  }
  const int n = space.dim;
  double rho_inf = 0.0;
  for (const auto& piece : borwein_cone(A, x0).pieces) {
    const auto& W = piece.apexGenerators;
    const int kw = static_cast<int>(W.size());
    const int kg = static_cast<int>(C.generators().size());
    // Variables: mu (kw) >= 0, kappa (kg) >= 0, u free (|u_i| <= 1).
    // y = sum mu w = u - sum kappa g.
    const int nv = kw + kg + n;
    std::vector<LinearConstraint> cons;
    for (int j = 0; j < kw + kg; ++j) {
      Vec e = Vec::Zero(nv);
      e[j] = 1.0;
      cons.push_back({e, Rel::Ge, 0.0});
    }
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(nv);
      e[kw + kg + i] = 1.0;
      cons.push_back({e, Rel::Le, 1.0});
      cons.push_back({e, Rel::Ge, -1.0});
    }
    for (int i = 0; i < n; ++i) {
      Vec row = Vec::Zero(nv);
      for (int j = 0; j < kw; ++j) row[j] = W[j][i];
      for (int j = 0; j < kg; ++j) row[kw + j] = C.generators()[j][i];
      row[kw + kg + i] = -1.0;
      cons.push_back({row, Rel::Eq, 0.0});  // sum mu w + sum kappa g - u = 0
    }
    for (int k = 0; k < n; ++k) {
      for (double sgn : {1.0, -1.0}) {
        Vec obj = Vec::Zero(nv);
        for (int j = 0; j < kw; ++j) obj[j] = sgn * W[j][k];
        LpResult r = lp_solve(obj, cons, Sense::Max);
        if (r.status == LpStatus::Unbounded)
          throw NumericalFailure("super: unbounded despite Borwein certificate");
        if (r.status == LpStatus::Optimal) rho_inf = std::max(rho_inf, r.value);
      }
    }
  }
  const double factor = space.norm == Norm::L1   ? n
                        : space.norm == Norm::L2 ? std::sqrt(double(n))
                                                 : 1.0;
  Certificate cert;
  cert.kind = "super-radius";
  cert.rho = factor * rho_inf;
  cert.note = "SE coincides with Bo on finitely generated conic data";
  cert.functionals = bo.certificate ? bo.certificate->functionals
                                    : std::vector<Vec>{};
  return Verdict::yes(std::move(cert));
}

// ---------------------------------------------------------------------------
// Henig global proper efficiency.
// ---------------------------------------------------------------------------

inline Verdict is_ghe(const FeasibleSet& A, const PolyhedralCone& C, const Vec& x0,
                      const SpaceSpec& space,
                      const HenigSearchConfig& config = {}) {
  detail::require_setup(A, C, x0);
  if (A.blocks.size() == 1) {
    auto v = is_benson(A, C, x0);
    v.note = "A + C convex: GHe equals Be (compact base in finite dimension)";
    return v;
  }
  auto he = is_henig(A, C, x0, space, config);
  if (he.status == Status::CertifiedYes) {
    he.note = "He certificate; cl cone(B + eps B_X) is a convex dilation";
    return he;
  }
  auto be = is_benson(A, C, x0);
  if (be.status == Status::CertifiedNo) {
    be.note = "Benson fails, and GHe is contained in Be";
    return be;
  }
  return Verdict::unknown("Henig search exhausted and Benson holds");
}

// ---------------------------------------------------------------------------
// Generic Q-minimality.
// ---------------------------------------------------------------------------

class OpenConeHandle {
 public:
  virtual ~OpenConeHandle() = default;
  virtual std::string name() const = 0;
  // Strict membership of y in Q (open-cone semantics with a tolerance margin).
  virtual bool member(const Vec& y) const = 0;

  enum class BlockState { Meets, Clean, Undecided };
  struct BlockResult {
    BlockState state = BlockState::Undecided;
    Vec witness;
  };
  // Does (P - x0) meet -Q?
  virtual BlockResult block_meets_negation(const Polytope& P, const Vec& x0) const {
    BlockResult res;
    // Default: vertex + barycentric sampling, decisive only for hits.
    std::vector<Vec> samples = P.vertices;
    SplitMix64 rng(4242ULL);
    for (int t = 0; t < 200; ++t) {
      Vec w(P.vertices.size());
      for (int i = 0; i < w.size(); ++i) w[i] = rng.uniform();
      w /= w.sum();
      Vec p = Vec::Zero(P.dim());
      for (int i = 0; i < w.size(); ++i) p += w[i] * P.vertices[i];
      samples.push_back(p);
    }
    for (const auto& p : samples) {
      Vec z = p - x0;
      if (z.norm() <= kGeomTol) continue;
      if (member(Vec(-z))) {
        res.state = BlockState::Meets;
        res.witness = p;
        return res;
      }
    }
    res.state = P.vertices.size() == 1 ? BlockState::Clean : BlockState::Undecided;
    return res;
  }
};

// Q = {x : f(x) > 0}.
class HalfspaceQ final : public OpenConeHandle {
 public:
  explicit HalfspaceQ(Vec f) : f_(std::move(f)) {}
  std::string name() const override { return "halfspace"; }
  bool member(const Vec& y) const override { return f_.dot(y) > kGeomTol; }
  BlockResult block_meets_negation(const Polytope& P, const Vec& x0) const override {
    BlockResult res;
    // -Q = {f < 0}; the minimum over the block sits at a vertex.
    double best = std::numeric_limits<double>::infinity();
    Vec arg;
    for (const auto& v : P.vertices) {
      const double val = f_.dot(v - x0);
      if (val < best) {
        best = val;
        arg = v;
      }
    }
    if (best < -kGeomTol) {
      res.state = BlockState::Meets;
      res.witness = arg;
    } else {
      res.state = BlockState::Clean;
    }
    return res;
  }

 private:
  Vec f_;
};

// Q = C(eps), the Hartley cone.
class HartleyQ final : public OpenConeHandle {
 public:
  HartleyQ(PolyhedralCone C, double eps, SpaceSpec space)
      : C_(std::move(C)), eps_(eps), space_(space) {}
  std::string name() const override { return "hartley"; }
  bool member(const Vec& y) const override {
    return hartley_cone_member(y, C_, eps_, space_);
  }

 private:
  PolyhedralCone C_;
  double eps_;
  SpaceSpec space_;
};

// Q = V_eta(B), a Henig dilation.
class DilationQ final : public OpenConeHandle {
 public:
  explicit DilationQ(HenigDilation dilation) : dilation_(std::move(dilation)) {}
  std::string name() const override { return "dilation"; }
  bool member(const Vec& y) const override { return dilation_.member_strict(y); }

 private:
  HenigDilation dilation_;
};

inline Verdict q_min(const FeasibleSet& A, const Vec& x0, const OpenConeHandle& Q) {
  detail::require_in_set(A, x0);
  bool undecided = false;
  for (const auto& block : A.blocks) {
    if (block.vertices.size() == 1) {
      Vec z = block.vertices[0] - x0;
      if (z.norm() <= kGeomTol) continue;
      if (Q.member(Vec(-z)))
        return Verdict::no(block.vertices[0], "a - x0 in -Q");
      continue;
    }
    auto res = Q.block_meets_negation(block, x0);
    if (res.state == OpenConeHandle::BlockState::Meets)
      return Verdict::no(res.witness, "block point in x0 - Q");
    if (res.state == OpenConeHandle::BlockState::Undecided) undecided = true;
  }
  if (undecided)
    return Verdict::unknown("polytope blocks not decidable for this Q (" +
                            Q.name() + ")");
  Certificate cert;
  cert.kind = "q-minimal";
  cert.note = "Q = " + Q.name();
  return Verdict::yes(std::move(cert));
}

// Full report over a list of notions.
inline EfficiencyReport classify(const FeasibleSet& A, const PolyhedralCone& C,
                                 const Vec& x0, const SpaceSpec& space,
                                 const std::vector<Notion>& notions,
                                 const HenigSearchConfig& config = {}) {
  EfficiencyReport report;
  report.point = x0;
  for (Notion n : notions) {
    switch (n) {
      case Notion::Min: report.verdicts[n] = is_min(A, C, x0); break;
      case Notion::Pos: report.verdicts[n] = is_pos(A, C, x0); break;
      case Notion::Hu: report.verdicts[n] = is_hurwicz(A, C, x0); break;
      case Notion::Be: report.verdicts[n] = is_benson(A, C, x0); break;
      case Notion::Ha: report.verdicts[n] = is_hartley(A, C, x0, space); break;
      case Notion::Bo: report.verdicts[n] = is_borwein(A, C, x0); break;
      case Notion::GHe: report.verdicts[n] = is_ghe(A, C, x0, space, config); break;
      case Notion::He: report.verdicts[n] = is_henig(A, C, x0, space, config); break;
      case Notion::SE: report.verdicts[n] = is_super(A, C, x0, space); break;
      case Notion::TBo: report.verdicts[n] = is_tbo(A, C, x0); break;
    }
  }
  return report;
}

}  // namespace propeff
