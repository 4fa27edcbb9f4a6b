#include <catch2/catch_amalgamated.hpp>

#include "propeff/separation.hpp"

using namespace propeff;

namespace {

const SpaceSpec kLinf{2, Norm::Linf};
const SpaceSpec kL2{2, Norm::L2};

PolyhedralCone orthant2() {
  return PolyhedralCone::from_generators({make_vec({1, 0}), make_vec({0, 1})});
}
PolyhedralCone ray(double x, double y) {
  return PolyhedralCone::from_generators({make_vec({x, y})});
}

bool hull_has(const Polytope& P, const Vec& v) {
  for (const auto& w : P.vertices)
    if (nearly_equal(w, v, 1e-8)) return true;
  return false;
}

// Samples x in -co(C)\{0} and y in bd(-K)\{0} and checks the witness
// inequalities for alphas across (delta1, delta2).
void check_witness(const SspWitness& w, const PolyhedralCone& C,
                   const PolyhedralCone& K, const SpaceSpec& space,
                   std::uint64_t seed, int samples = 2000) {
  SplitMix64 rng(seed);
  REQUIRE(w.delta1 > 0.0);
  REQUIRE(w.delta2 > w.delta1);
  for (int ai = 1; ai <= 5; ++ai) {
    const double alpha = w.delta1 + (w.delta2 - w.delta1) * ai / 6.0;
    for (int t = 0; t < samples; ++t) {
      Vec x = Vec::Zero(space.dim);
      for (const auto& g : C.generators()) x -= rng.uniform(0.0, 2.0) * g;
      if (norm_of(x, space) > 1e-9)
        CHECK(w.f.dot(x) + alpha * norm_of(x, space) < kGeomTol);
    }
    for (const auto& piece : detail::boundary_pieces(K)) {
      for (int t = 0; t < samples / 4; ++t) {
        Vec y = Vec::Zero(space.dim);
        for (const auto& g : piece.generators()) y -= rng.uniform(0.0, 2.0) * g;
        if (norm_of(y, space) > 1e-9)
          CHECK(w.f.dot(y) + alpha * norm_of(y, space) > -kGeomTol);
      }
    }
  }
}

}  // namespace

TEST_CASE("wedge sets under Linf") {
  auto w1 = wedge_set(ray(1, 1), kLinf);
  REQUIRE(w1.exact);
  REQUIRE(w1.hull.vertices.size() == 1);
  CHECK(hull_has(w1.hull, make_vec({1, 1})));

  auto w2 = wedge_set(orthant2(), kLinf);
  REQUIRE(w2.hull.vertices.size() == 3);
  CHECK(hull_has(w2.hull, make_vec({1, 0})));
  CHECK(hull_has(w2.hull, make_vec({1, 1})));
  CHECK(hull_has(w2.hull, make_vec({0, 1})));
}

TEST_CASE("wedge of a single ray under L2") {
  auto w = wedge_set(ray(1, 0), kL2);
  CHECK_FALSE(w.exact);
  REQUIRE(w.meshPoints.size() == 1);
  CHECK(nearly_equal(w.meshPoints[0], make_vec({1, 0})));
}

TEST_CASE("vee sets under Linf") {
  auto v1 = vee_set(orthant2(), kLinf);
  REQUIRE(v1.hull.vertices.size() == 3);
  CHECK(hull_has(v1.hull, make_vec({1, 0})));
  CHECK(hull_has(v1.hull, make_vec({0, 1})));
  CHECK(hull_has(v1.hull, make_vec({0, 0})));

  auto half = PolyhedralCone::from_generators(
      {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1})});
  auto v2 = vee_set(half, kLinf);
  REQUIRE(v2.hull.vertices.size() == 2);  // segment; origin is interior
  CHECK(hull_has(v2.hull, make_vec({1, 0})));
  CHECK(hull_has(v2.hull, make_vec({-1, 0})));
  CHECK(polytope_contains(v2.hull, make_vec({0, 0})));

  // The origin is always a hull member.
  for (const auto& K : {orthant2(), ray(1, 1), ray(-1, 2)})
    CHECK(polytope_contains(vee_set(K, kLinf).hull, make_vec({0, 0})));
}

TEST_CASE("ssp check on the golden pairs") {
  auto v1 = ssp_check(ray(1, 1), orthant2(), kLinf);
  CHECK(v1.holds);
  CHECK(v1.exact);
  CHECK(v1.distance == Catch::Approx(std::sqrt(2.0) / 2.0).margin(1e-9));

  auto v2 = ssp_check(orthant2(), orthant2(), kLinf);
  CHECK_FALSE(v2.holds);
  CHECK(v2.distance == Catch::Approx(0.0).margin(1e-9));

  auto v3 = ssp_check(ray(1, 1), ray(1, 1), kLinf);
  CHECK_FALSE(v3.holds);
  CHECK(v3.distance == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("ssp check under L2 carries an honest bracket") {
  auto v = ssp_check(ray(1, 1), orthant2(), kL2);
  CHECK_FALSE(v.exact);
  CHECK(v.holds);
  CHECK(v.lower <= v.distance + 1e-12);
  CHECK(v.distance <= v.upper + 1e-12);
  // True hulls: {(1,1)/sqrt(2)} vs conv{(1,0),(0,1),0}.
  const double truth =
      hull_distance_l2({make_vec({1, 1}).normalized()},
                       {make_vec({1, 0}), make_vec({0, 1}), make_vec({0, 0})})
          .norm;
  CHECK(v.lower <= truth + 1e-9);
  CHECK(truth <= v.upper + 1e-9);
}

TEST_CASE("ssp witness separates the golden pair") {
  auto C = ray(1, 1);
  auto K = orthant2();
  auto w = ssp_witness(C, K, kLinf);
  check_witness(w, C, K, kLinf, 2024ULL);
  // f should point along (1,1).
  CHECK(w.f.normalized().dot(make_vec({1, 1}).normalized()) > 0.99);
}

TEST_CASE("ssp witness for a cone against its opposite") {
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  auto K = ray(-1, -1);
  auto verdict = ssp_check(C, K, kLinf);
  REQUIRE(verdict.holds);
  auto w = ssp_witness(C, K, kLinf);
  check_witness(w, C, K, kLinf, 7ULL);
}

TEST_CASE("ssp witness requires SSP") {
  CHECK_THROWS_AS(ssp_witness(orthant2(), orthant2(), kLinf), SspDoesNotHold);
}

TEST_CASE("relative position dichotomy") {
  CHECK(relative_position(ray(1, 1), orthant2(), kLinf) ==
        RelativePosition::InsideInt);
  CHECK(relative_position(ray(-1, -1), orthant2(), kLinf) ==
        RelativePosition::InsideComplement);
  CHECK_THROWS_AS(relative_position(orthant2(), orthant2(), kLinf), SspDoesNotHold);
}

TEST_CASE("remark symmetry: ssp(C,K) == ssp(-C,-K)") {
  SplitMix64 rng(404ULL);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec> gc, gk;
    for (int i = 0, k = static_cast<int>(rng.uniform_int(1, 3)); i < k; ++i) {
      Vec g(2);
      g[0] = rng.uniform_int(-4, 4);
      g[1] = rng.uniform_int(-4, 4);
      if (g.norm() > 0) gc.push_back(g);
    }
    for (int i = 0, k = static_cast<int>(rng.uniform_int(1, 3)); i < k; ++i) {
      Vec g(2);
      g[0] = rng.uniform_int(-4, 4);
      g[1] = rng.uniform_int(-4, 4);
      if (g.norm() > 0) gk.push_back(g);
    }
    if (gc.empty() || gk.empty()) continue;
    std::optional<PolyhedralCone> C, K;
    try {
      C = PolyhedralCone::from_generators(gc);
      K = PolyhedralCone::from_generators(gk);
    } catch (const ValidationError&) {
      continue;
    }
    auto a = ssp_check(*C, *K, kLinf);
    auto b = ssp_check(C->negated(), K->negated(), kLinf);
    CHECK(a.holds == b.holds);
    CHECK(a.distance == Catch::Approx(b.distance).margin(1e-9));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("ssp(C,K) == ssp(co-hull C, K) for unions of rays") {
  SplitMix64 rng(808ULL);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Vec> dirs;
    for (int i = 0, k = static_cast<int>(rng.uniform_int(2, 3)); i < k; ++i) {
      Vec g(2);
      g[0] = rng.uniform_int(-4, 4);
      g[1] = rng.uniform_int(-4, 4);
      if (g.norm() > 0) dirs.push_back(g);
    }
    Vec gk(2);
    gk[0] = rng.uniform_int(-4, 4);
    gk[1] = rng.uniform_int(-4, 4);
    if (dirs.size() < 2 || gk.norm() == 0) continue;
    std::optional<PolyhedralCone> hull;
    try {
      hull = PolyhedralCone::from_generators(dirs);
    } catch (const ValidationError&) {
      continue;
    }
    auto K = PolyhedralCone::from_generators({gk});
    std::vector<PolyhedralCone> rays;
    for (const auto& d : dirs) rays.push_back(PolyhedralCone::from_generators({d}));
    auto union_verdict = ssp_check_union(rays, {K}, kLinf);
    auto hull_verdict = ssp_check(*hull, K, kLinf);
    CHECK(union_verdict.holds == hull_verdict.holds);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("witness stays positive outside int(-K) when co(C) meets K") {
  auto C = ray(1, 1);
  auto K = orthant2();  // co(C) cap K != {0}
  auto w = ssp_witness(C, K, kLinf);
  SplitMix64 rng(11ULL);
  auto negK = K.negated();
  for (int ai = 1; ai <= 5; ++ai) {
    const double alpha = w.delta1 + (w.delta2 - w.delta1) * ai / 6.0;
    for (int t = 0; t < 4000; ++t) {
      Vec y(2);
      y[0] = rng.uniform(-4, 4);
      y[1] = rng.uniform(-4, 4);
      if (negK.contains_interior(y, kGeomTol)) continue;
      if (norm_of(y, kLinf) < 1e-6) continue;
      CHECK(w.f.dot(y) + alpha * norm_of(y, kLinf) > -kGeomTol);
    }
  }
}

TEST_CASE("meshed ssp in three dimensions") {
  SpaceSpec l2{3, Norm::L2}, li{3, Norm::Linf};
  auto C = PolyhedralCone::from_generators({make_vec({1, 1, 1})});
  auto K = PolyhedralCone::from_generators(
      {make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1})});
  auto mesh = ssp_check(C, K, l2);
  auto exact = ssp_check(C, K, li);
  CHECK_FALSE(mesh.exact);
  CHECK(exact.exact);
  CHECK(mesh.holds == exact.holds);
  CHECK(mesh.lower <= mesh.distance + 1e-12);
  CHECK(mesh.distance <= mesh.upper + 1e-12);

  // A genuinely failing pair stays failing under the mesh.
  auto bad = ssp_check(K, K, l2);
  CHECK_FALSE(bad.holds);
}

TEST_CASE("meshed witness in three dimensions passes the sampled oracle") {
  SpaceSpec l2{3, Norm::L2};
  auto C = PolyhedralCone::from_generators({make_vec({1, 1, 1}), make_vec({2, 1, 1})});
  auto K = PolyhedralCone::from_generators({make_vec({-1, -1, -1})});
  auto verdict = ssp_check(C, K, l2);
  REQUIRE(verdict.holds);
  auto w = ssp_witness(C, K, l2);
  check_witness(w, C, K, l2, 5150ULL, 800);
}

TEST_CASE("sections under the L1 ball") {
  SpaceSpec l1{2, Norm::L1};
  auto w = wedge_set(orthant2(), l1);
  REQUIRE(w.exact);
  REQUIRE(w.hull.vertices.size() == 2);  // the simplex face is flat
  CHECK(hull_has(w.hull, make_vec({1, 0})));
  CHECK(hull_has(w.hull, make_vec({0, 1})));

  auto v = vee_set(orthant2(), l1);
  REQUIRE(v.hull.vertices.size() == 3);
  CHECK(hull_has(v.hull, make_vec({0, 0})));
}

TEST_CASE("three-dimensional Linf wedge of the octant") {
  SpaceSpec li{3, Norm::Linf};
  auto C = PolyhedralCone::from_generators(
      {make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1})});
  auto w = wedge_set(C, li);
  REQUIRE(w.exact);
  CHECK(w.hull.vertices.size() == 7);  // positive-face corners of the cube
  for (const auto& v : w.hull.vertices)
    CHECK(norm_of(v, li) == Catch::Approx(1.0).margin(1e-9));
}
