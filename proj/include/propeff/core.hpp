#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace propeff {

// Ambient vectors. Entries must stay finite; dimension is checked against the
// active SpaceSpec at operation boundaries.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// LP feasibility tolerance.
inline constexpr double kFeasTol = 1e-9;
// Geometric strictness tolerance (membership margins, canonicalization).
inline constexpr double kGeomTol = 1e-7;

enum class Norm { L1, L2, Linf };

struct SpaceSpec {
  int dim = 2;
  Norm norm = Norm::L2;
};

// ---------------------------------------------------------------------------
// Errors. Each declared error condition from the operation contracts gets its
// own type so callers and the CLI can map them to exit codes.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : Error {
  using Error::Error;
};
struct DimensionMismatch : ValidationError {
  explicit DimensionMismatch(const std::string& what = "dimension mismatch")
      : ValidationError(what) {}
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct NotPointed : ValidationError {
  explicit NotPointed(const std::string& what = "cone is not pointed")
      : ValidationError(what) {}
};
struct NotStrictlyPositive : ValidationError {
  explicit NotStrictlyPositive(
      const std::string& what = "functional is not strictly positive on the cone")
      : ValidationError(what) {}
};
struct EtaOutOfRange : ValidationError {
  explicit EtaOutOfRange(const std::string& what = "eta outside (0, deltaB)")
      : ValidationError(what) {}
};
struct PointNotInSet : ValidationError {
  explicit PointNotInSet(const std::string& what = "query point is not in the set")
      : ValidationError(what) {}
};
struct SspDoesNotHold : ValidationError {
  explicit SspDoesNotHold(const std::string& what = "pair does not have SSP")
      : ValidationError(what) {}
};
// Signals an internal bug: the dichotomy is guaranteed for SSP pairs.
struct DichotomyViolated : Error {
  using Error::Error;
};
struct UnsupportedQ : ValidationError {
  using ValidationError::ValidationError;
};
struct NotConvexData : ValidationError {
  explicit NotConvexData(const std::string& what = "set has more than one block")
      : ValidationError(what) {}
};
struct NotStarshaped : ValidationError {
  using ValidationError::ValidationError;
};
struct FaceEnumerationOverflow : ValidationError {
  explicit FaceEnumerationOverflow(
      const std::string& what = "too many generators for exact L2 projection")
      : ValidationError(what) {}
};
struct NotInHbar : ValidationError {
  explicit NotInHbar(const std::string& what = "cl cone(D) meets -C outside the origin")
      : ValidationError(what) {}
};

// ---------------------------------------------------------------------------
// Small vector helpers.
// ---------------------------------------------------------------------------

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline void check_dim(const Vec& v, int dim) {
  if (v.size() != dim) throw DimensionMismatch();
}

inline void check_finite(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) throw ValidationError("non-finite coordinate");
}

inline double norm_of(const Vec& v, const SpaceSpec& space) {
  check_dim(v, space.dim);
  switch (space.norm) {
    case Norm::L1:
      return v.lpNorm<1>();
    case Norm::L2:
      return v.norm();
    case Norm::Linf:
      return v.lpNorm<Eigen::Infinity>();
  }
  return v.norm();
}

// Dual norm on functionals: L1 <-> Linf, L2 self-dual.
inline double dual_norm_of(const Vec& f, const SpaceSpec& space) {
  SpaceSpec dual = space;
  dual.norm = space.norm == Norm::L1 ? Norm::Linf
              : space.norm == Norm::Linf ? Norm::L1
                                         : Norm::L2;
  return norm_of(f, dual);
}

inline bool nearly_equal(const Vec& a, const Vec& b, double tol = 1e-12) {
  return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

inline std::string norm_name(Norm n) {
  switch (n) {
    case Norm::L1:
      return "l1";
    case Norm::L2:
      return "l2";
    case Norm::Linf:
      return "linf";
  }
  return "l2";
}

// Deterministic 64-bit generator used by all seeded searches. splitmix64 is
// platform-stable, unlike the standard distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace propeff
