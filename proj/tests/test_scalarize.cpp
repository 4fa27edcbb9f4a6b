#include <catch2/catch_amalgamated.hpp>

#include "propeff/scalarize.hpp"

using namespace propeff;

namespace {

const SpaceSpec kL2{2, Norm::L2};
const SpaceSpec kLinf{2, Norm::Linf};

PolyhedralCone orthant2() {
  return PolyhedralCone::from_generators({make_vec({1, 0}), make_vec({0, 1})});
}

FeasibleSet points(std::initializer_list<Vec> pts) {
  FeasibleSet A;
  for (const auto& p : pts) A.blocks.push_back(Polytope{{p}});
  return A;
}

}  // namespace

TEST_CASE("g_eval") {
  auto ray = PolyhedralCone::from_generators({make_vec({1, 1})});
  // alpha_max for the ray with f=(1,1) under L2: base vertex (1,1)/2 has norm
  // sqrt(2)/2, so alpha_max = sqrt(2) > 4/3; (f, 4/3) is admissible.
  auto fa = make_augmented(ray, make_vec({1, 1}), 4.0 / 3.0, kL2);
  CHECK(fa.classTag == AugClass::ASharpPlus);
  // The running golden evaluation: g((-1,0)) = -1 + 4/3 = 1/3.
  CHECK(g_eval(fa, make_vec({0, 0}), make_vec({-1, 0}), kL2) ==
        Catch::Approx(1.0 / 3.0).margin(1e-12));
  CHECK(g_eval(fa, make_vec({0, 0}), make_vec({0, 0}), kL2) == 0.0);

  auto fa2 = make_augmented(orthant2(), make_vec({1, 1}), 0.5, kL2);
  CHECK(g_eval(fa2, make_vec({1, 0}), make_vec({0, 1}), kL2) ==
        Catch::Approx(0.5 * std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("minimize_g on point sets") {
  auto C = orthant2();
  auto fa = make_augmented(C, make_vec({1, 1}), 0.5, kL2);
  auto A = points({make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})});
  ScalarProblem prob{fa, make_vec({1, 0}), A, kL2};
  auto sol = minimize_g(prob);
  CHECK(sol.minValue == Catch::Approx(0.0).margin(1e-9));
  CHECK(sol.uniqueAtX0);
  // Direct evaluation: the other two points give ~0.7071 and 1.5.
  CHECK(g_eval(fa, make_vec({1, 0}), make_vec({0, 1}), kL2) ==
        Catch::Approx(std::sqrt(2.0) / 2.0).margin(1e-9));
  CHECK(g_eval(fa, make_vec({1, 0}), make_vec({1, 1}), kL2) ==
        Catch::Approx(1.5).margin(1e-9));
}

TEST_CASE("minimize_g on the golden segment") {
  // A = [(-1,0),(0,0)], f = (1,1), alpha = 4/3: g(x,0) = -x/3 >= 0 on the
  // segment with the minimum 0 attained only at the origin.
  auto ray = PolyhedralCone::from_generators({make_vec({1, 1})});
  auto fa = make_augmented(ray, make_vec({1, 1}), 4.0 / 3.0, kL2);
  FeasibleSet seg{{Polytope{{make_vec({-1, 0}), make_vec({0, 0})}}}};
  ScalarProblem prob{fa, make_vec({0, 0}), seg, kL2};
  auto sol = minimize_g(prob);
  CHECK(sol.minValue == Catch::Approx(0.0).margin(1e-7));
  CHECK(sol.uniqueAtX0);
}

TEST_CASE("minimize_g trivial singleton") {
  auto C = orthant2();
  auto fa = default_augmented(C, make_vec({1, 1}), kL2);
  auto A = points({make_vec({2, 3})});
  auto sol = minimize_g({fa, make_vec({2, 3}), A, kL2});
  CHECK(sol.minValue == 0.0);
  CHECK(sol.uniqueAtX0);
}

TEST_CASE("minimize_g under polyhedral norms is exact") {
  auto C = orthant2();
  FeasibleSet A;
  A.blocks.push_back(Polytope{{make_vec({1, 0}), make_vec({0, 1})}});  // segment
  auto fa = make_augmented(C, make_vec({2, 1}), 0.25, kLinf);
  ScalarProblem prob{fa, make_vec({1, 0}), A, kLinf};
  auto sol = minimize_g(prob);
  // Dense direct scan over the segment as the oracle.
  double oracle = 1e9;
  for (double t = 0; t <= 1.0; t += 1e-4) {
    Vec x = t * make_vec({0, 1}) + (1 - t) * make_vec({1, 0});
    oracle = std::min(oracle, g_eval(fa, make_vec({1, 0}), x, kLinf));
  }
  CHECK(sol.minValue == Catch::Approx(oracle).margin(1e-4));
  CHECK_FALSE((sol.uniqueAtX0 && sol.minValue < -kGeomTol));
}

TEST_CASE("uniqueness fails when another point attains zero") {
  // C = cone{(2,1),(1,2)}, f = (1,1): alpha_max under Linf is 3/2. With
  // alpha = 1 the point z = (-1,0) has g = -1 + 1 = 0, tying with x0.
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  auto fa = make_augmented(C, make_vec({1, 1}), 1.0, kLinf);
  REQUIRE(fa.classTag == AugClass::ASharpPlus);
  auto A = points({make_vec({0, 0}), make_vec({-1, 0})});
  auto sol = minimize_g({fa, make_vec({0, 0}), A, kLinf});
  CHECK(sol.minValue == Catch::Approx(0.0).margin(1e-9));
  CHECK_FALSE(sol.uniqueAtX0);
  CHECK(sol.minimizers.size() == 2);
}

TEST_CASE("strong monotonicity of g on sampled ordered pairs") {
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  SplitMix64 rng(5150ULL);
  for (Norm nrm : {Norm::L1, Norm::L2, Norm::Linf}) {
    SpaceSpec space{2, nrm};
    Vec f = strictly_positive_functional(C);
    auto fa = default_augmented(C, f, space);
    for (int t = 0; t < 3000; ++t) {
      Vec x = make_vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      Vec c = rng.uniform(0.0, 2.0) * C.generators()[0] +
              rng.uniform(0.0, 2.0) * C.generators()[1];
      if (norm_of(c, space) < 1e-9) continue;
      Vec y = x + c;
      CHECK(g_eval(fa, make_vec({0, 0}), x, space) <
            g_eval(fa, make_vec({0, 0}), y, space));
    }
  }
}

TEST_CASE("sublinearity of g about the anchor") {
  auto C = orthant2();
  auto fa = default_augmented(C, make_vec({1, 1}), kL2);
  SplitMix64 rng(31ULL);
  Vec zero = make_vec({0, 0});
  for (int t = 0; t < 2000; ++t) {
    Vec u = make_vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    Vec v = make_vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const double lam = rng.uniform(0, 3);
    CHECK(g_eval(fa, zero, Vec(u + v), kL2) <=
          g_eval(fa, zero, u, kL2) + g_eval(fa, zero, v, kL2) + 1e-10);
    CHECK(g_eval(fa, zero, Vec(lam * u), kL2) ==
          Catch::Approx(lam * g_eval(fa, zero, u, kL2)).margin(1e-9));
  }
}

TEST_CASE("certify_benson finds a certificate on the orthant demo") {
  auto C = orthant2();
  auto A = points({make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})});
  auto res = certify_benson(A, C, make_vec({1, 0}), kLinf);
  REQUIRE(res.outcome == CertifyResult::Outcome::Certificate);
  // Soundness: the certificate re-validates through minimize_g and agrees
  // with the exact Benson classifier.
  auto sol = minimize_g({*res.certificate, make_vec({1, 0}), A, kLinf});
  CHECK(sol.uniqueAtX0);
  CHECK(is_benson(A, C, make_vec({1, 0})).status == Status::CertifiedYes);
}

TEST_CASE("certify_benson refutes dominated points") {
  auto C = orthant2();
  auto A = points({make_vec({1, 0}), make_vec({0, 0})});
  auto res = certify_benson(A, C, make_vec({1, 0}), kLinf);
  CHECK(res.outcome == CertifyResult::Outcome::Refuted);
  REQUIRE(res.witness.has_value());
}

TEST_CASE("certify_benson trivial singleton") {
  auto C = orthant2();
  auto A = points({make_vec({1, 2})});
  auto res = certify_benson(A, C, make_vec({1, 2}), kL2);
  REQUIRE(res.outcome == CertifyResult::Outcome::Certificate);
  CHECK(res.certificate->classTag == AugClass::ASharpPlus);
}

TEST_CASE("certify_ghe gates on convexity") {
  auto C = PolyhedralCone::from_generators({make_vec({1, 1})});
  FeasibleSet seg{{Polytope{{make_vec({-1, 0}), make_vec({0, 0})}}}};
  auto res = certify_ghe(seg, C, make_vec({0, 0}), kL2);
  CHECK(res.outcome == CertifyResult::Outcome::Certificate);
  CHECK(res.note.find("GHe") != std::string::npos);

  auto multi = points({make_vec({1, 0}), make_vec({0, 1})});
  CHECK_THROWS_AS(certify_ghe(multi, orthant2(), make_vec({1, 0}), kL2),
                  NotConvexData);
}

TEST_CASE("certify_tbo gates on starshapedness") {
  auto C = orthant2();
  // All other points dominate x0, so every sampled segment stays in A + C.
  auto A = points({make_vec({1, 0}), make_vec({2, 0}), make_vec({1, 1})});
  auto res = certify_tbo(A, C, make_vec({1, 0}), kLinf);
  CHECK(res.outcome == CertifyResult::Outcome::Certificate);

  // An incomparable isolated point: the lambda-grid finds a segment sample
  // outside A + C.
  auto bad = points({make_vec({1, 0}), make_vec({0, 1})});
  CHECK_THROWS_AS(certify_tbo(bad, C, make_vec({1, 0}), kLinf), NotStarshaped);

  // Single blocks pass the gate automatically.
  FeasibleSet seg{{Polytope{{make_vec({-1, 0}), make_vec({0, 0})}}}};
  auto ray = PolyhedralCone::from_generators({make_vec({1, 1})});
  auto res2 = certify_tbo(seg, ray, make_vec({0, 0}), kL2);
  CHECK(res2.outcome == CertifyResult::Outcome::Certificate);
}

TEST_CASE("a flat zero direction breaks uniqueness along a segment") {
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  auto fa = make_augmented(C, make_vec({1, 1}), 1.0, kLinf);
  FeasibleSet A{{Polytope{{make_vec({0, 0}), make_vec({-1, 0})}}}};
  auto sol = minimize_g({fa, make_vec({0, 0}), A, kLinf});
  CHECK(sol.minValue == Catch::Approx(0.0).margin(1e-9));
  CHECK_FALSE(sol.uniqueAtX0);
}

TEST_CASE("segment uniqueness certifies through the L2 mesh margin") {
  auto C = orthant2();
  auto fa = make_augmented(C, make_vec({1, 1}), 0.5, kL2);
  FeasibleSet A{{Polytope{{make_vec({0, 0}), make_vec({1, 0})}}}};
  auto sol = minimize_g({fa, make_vec({0, 0}), A, kL2});
  CHECK(sol.minValue == Catch::Approx(0.0).margin(1e-7));
  CHECK(sol.uniqueAtX0);
}
