#include <catch2/catch_amalgamated.hpp>

#include "propeff/augdual.hpp"

using namespace propeff;

namespace {

PolyhedralCone orthant2() {
  return PolyhedralCone::from_generators({make_vec({1, 0}), make_vec({0, 1})});
}

bool has_direction(const std::vector<Vec>& gens, const Vec& dir) {
  Vec u = dir.normalized();
  for (const auto& g : gens)
    if (g.normalized().dot(u) > 1.0 - 1e-9) return true;
  return false;
}

// Seeded samples from the cone, biased away from zero.
std::vector<Vec> sample_cone(const PolyhedralCone& C, int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Vec> out;
  const auto& gens = C.generators();
  while (static_cast<int>(out.size()) < count) {
    Vec x = Vec::Zero(C.dim());
    for (const auto& g : gens) x += rng.uniform(0.0, 2.0) * g;
    if (x.norm() > 1e-6) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("dual cone of the orthant is the orthant") {
  auto D = dual_cone(orthant2());
  CHECK(D.generators().size() == 2);
  CHECK(has_direction(D.generators(), make_vec({1, 0})));
  CHECK(has_direction(D.generators(), make_vec({0, 1})));
}

TEST_CASE("dual cone of a ray is the halfplane") {
  auto D = dual_cone(PolyhedralCone::from_generators({make_vec({1, 1})}));
  CHECK(has_direction(D.generators(), make_vec({1, -1})));
  CHECK(has_direction(D.generators(), make_vec({-1, 1})));
  CHECK(has_direction(D.generators(), make_vec({1, 1})));
  // Sampled points of the dual act nonnegatively on the primal generator.
  SplitMix64 rng(3ULL);
  for (int t = 0; t < 200; ++t) {
    Vec f = Vec::Zero(2);
    for (const auto& g : D.generators()) f += rng.uniform(0.0, 2.0) * g;
    CHECK(f.dot(make_vec({1, 1})) >= -1e-9);
  }
}

TEST_CASE("dual cone facet-normal example") {
  auto D = dual_cone(
      PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})}));
  CHECK(D.generators().size() == 2);
  CHECK(has_direction(D.generators(), make_vec({2, -1})));
  CHECK(has_direction(D.generators(), make_vec({-1, 2})));
}

TEST_CASE("dual of dual recovers the cone") {
  SplitMix64 rng(41ULL);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_int(0, 1));
    std::vector<Vec> gens;
    for (int i = 0, k = static_cast<int>(rng.uniform_int(2, 4)); i < k; ++i) {
      Vec g(dim);
      for (int j = 0; j < dim; ++j) g[j] = rng.uniform_int(-4, 4);
      if (g.norm() > 0) gens.push_back(g);
    }
    if (gens.empty()) continue;
    std::optional<PolyhedralCone> C;
    try {
      C = PolyhedralCone::from_generators(gens);
    } catch (const ValidationError&) {
      continue;  // cone degenerated to the whole space
    }
    auto DD = dual_cone(dual_cone(*C));
    REQUIRE(DD.generators().size() == C->generators().size());
    for (const auto& g : C->generators()) CHECK(has_direction(DD.generators(), g));
  }
}

TEST_CASE("strictly positive functional") {
  Vec f = strictly_positive_functional(orthant2());
  CHECK(f[0] == Catch::Approx(1.0));
  CHECK(f[1] == Catch::Approx(1.0));

  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  Vec f2 = strictly_positive_functional(C);
  for (const auto& g : C.generators()) CHECK(f2.dot(g) >= 1.0 - 1e-9);

  auto line = PolyhedralCone::from_generators({make_vec({1, 0}), make_vec({-1, 0})});
  CHECK_THROWS_AS(strictly_positive_functional(line), NotPointed);
}

TEST_CASE("perturbed witnesses stay strictly positive") {
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  auto fs = strictly_positive_functionals(C, 5, 99);
  CHECK(fs.size() == 5);
  for (const auto& f : fs)
    for (const auto& g : C.generators()) CHECK(f.dot(g) >= 1.0 - 1e-9);
}

TEST_CASE("base from functional") {
  SpaceSpec l2{2, Norm::L2};

  SECTION("orthant with the all-ones functional") {
    auto B = base_from_functional(orthant2(), make_vec({1, 1}), l2);
    REQUIRE(B.polytope.vertices.size() == 2);
    for (const auto& v : B.polytope.vertices)
      CHECK(B.f.dot(v) == Catch::Approx(1.0).margin(1e-9));
    CHECK(B.deltaB == Catch::Approx(1.0));
  }

  SECTION("slanted cone") {
    auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
    auto B = base_from_functional(C, make_vec({1, 1}), l2);
    // Vertices are (2/3,1/3) and (1/3,2/3); both have norm sqrt(5)/3.
    CHECK(B.deltaB == Catch::Approx(std::sqrt(5.0) / 3.0).margin(1e-12));
  }

  SECTION("unequal weights") {
    auto B = base_from_functional(orthant2(), make_vec({1, 2}), l2);
    CHECK(B.deltaB == Catch::Approx(0.5));
  }

  SECTION("non-positive functional rejected") {
    CHECK_THROWS_AS(base_from_functional(orthant2(), make_vec({1, -1}), l2),
                    NotStrictlyPositive);
  }
}

TEST_CASE("augmented alpha bound with sphere-sampling oracle") {
  SpaceSpec l2{2, Norm::L2}, l1{2, Norm::L1};

  CHECK(augmented_alpha_bound(orthant2(), make_vec({1, 1}), l2) == Catch::Approx(1.0));
  CHECK(augmented_alpha_bound(orthant2(), make_vec({1, 1}), l1) == Catch::Approx(1.0));

  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  const double amax = augmented_alpha_bound(C, make_vec({1, 1}), l2);
  CHECK(amax == Catch::Approx(3.0 / std::sqrt(5.0)).margin(1e-12));

  // Oracle: alpha_max = inf over unit x in C of f(x).
  double inf_f = std::numeric_limits<double>::infinity();
  for (const auto& x : sample_cone(C, 10000, 17ULL))
    inf_f = std::min(inf_f, make_vec({1, 1}).dot(x) / x.norm());
  CHECK(amax == Catch::Approx(inf_f).margin(1e-3));
}

TEST_CASE("augmented functional class tags") {
  SpaceSpec l2{2, Norm::L2};
  auto C = orthant2();
  Vec f = make_vec({1, 1});

  CHECK(make_augmented(C, f, 0.5, l2).classTag == AugClass::ASharpPlus);
  CHECK(make_augmented(C, f, 1.0, l2).classTag == AugClass::AStarPlus);
  CHECK(make_augmented(C, f, 0.0, l2).classTag == AugClass::ASharp);
  CHECK_THROWS_AS(make_augmented(C, f, 1.5, l2), ValidationError);
  CHECK(default_augmented(C, f, l2).alpha == Catch::Approx(0.5));
}

TEST_CASE("augmented positivity on sampled cone points") {
  SpaceSpec l2{2, Norm::L2};
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  Vec f = strictly_positive_functional(C);
  const double amax = augmented_alpha_bound(C, f, l2);
  for (double alpha : {amax / 4, amax / 2, amax * 0.9}) {
    for (const auto& x : sample_cone(C, 2500, 23ULL))
      CHECK(f.dot(x) - alpha * norm_of(x, l2) > 0.0);
  }
}

TEST_CASE("henig dilation membership with mu-grid oracle") {
  SpaceSpec l2{2, Norm::L2};
  auto B = base_from_functional(orthant2(), make_vec({1, 1}), l2);
  HenigDilation V(B, 0.5);

  auto grid_min = [&](const Vec& y) {
    double best = std::numeric_limits<double>::infinity();
    for (double mu = 0.0; mu <= 5.0; mu += 0.0005)
      best = std::min(best, dist_to_polytope(Vec(mu * y), B.polytope.vertices, l2));
    return best;
  };

  CHECK(V.member_closure(make_vec({1, 1})));  // y/2 lies on the base

  Vec away = make_vec({-1, 0});
  CHECK_FALSE(V.member_closure(away));
  CHECK(V.min_scaled_distance(away) == Catch::Approx(grid_min(away)).margin(1e-3));
  CHECK(V.min_scaled_distance(away) == Catch::Approx(std::sqrt(0.5)).margin(1e-6));

  Vec near = make_vec({1, -0.3});
  CHECK(V.member_closure(near));
  CHECK(V.min_scaled_distance(near) == Catch::Approx(grid_min(near)).margin(1e-3));

  CHECK_THROWS_AS(HenigDilation(B, 1.5), EtaOutOfRange);
  CHECK_THROWS_AS(HenigDilation(B, 0.0), EtaOutOfRange);
}

TEST_CASE("dilation contains the punctured cone") {
  SpaceSpec l2{2, Norm::L2};
  auto C = PolyhedralCone::from_generators({make_vec({2, 1}), make_vec({1, 2})});
  auto B = base_from_functional(C, strictly_positive_functional(C), l2);
  HenigDilation V(B, B.deltaB / 2);
  for (const auto& x : sample_cone(C, 500, 31ULL)) CHECK(V.member_closure(x));
}

TEST_CASE("hartley cone membership") {
  SpaceSpec l2{2, Norm::L2};
  auto C = orthant2();

  CHECK(hartley_cone_member(make_vec({1, 1}), C, 0.25, l2));
  CHECK_FALSE(hartley_cone_member(make_vec({0, 0}), C, 0.5, l2));
  // d((-1,1), C) = 1 = d((-1,1), -C): 1 < 0.5 * 1 fails.
  CHECK_FALSE(hartley_cone_member(make_vec({-1, 1}), C, 0.5, l2));

  for (const auto& x : sample_cone(C, 300, 77ULL)) {
    CHECK(hartley_cone_member(x, C, 0.3, l2));
    CHECK_FALSE(hartley_cone_member(Vec(-x), C, 0.3, l2));
  }
}
