#include <doctest.h>

#include <cmath>
#include <random>

#include "cuspgeo/errors.hpp"
#include "cuspgeo/flat_torus.hpp"
#include "oracles.hpp"

using namespace cuspgeo;

namespace {

FlatTorusLattice random_lattice(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.05, 5.0), shift(-3.0, 3.0), ratio(0.05, 3.0);
  const double a1 = len(rng);
  return FlatTorusLattice::well_oriented(a1, shift(rng) * a1, ratio(rng) * a1);
}

}  // namespace

TEST_SUITE("flat_torus") {

TEST_CASE("well-oriented construction and degeneracy") {
  const auto lat = FlatTorusLattice::well_oriented(2.0, 0.5, 3.0);
  CHECK(lat.area() == doctest::Approx(6.0));
  CHECK_THROWS_AS(FlatTorusLattice::well_oriented(1.0, 0.0, 0.0), DegenerateLatticeError);
  CHECK_THROWS_AS(FlatTorusLattice::well_oriented(-1.0, 0.0, 1.0), DegenerateLatticeError);
  CHECK_THROWS_AS(FlatTorusLattice::from_generators({1.0, 1.0}, {2.0, 2.0}), DegenerateLatticeError);
  CHECK_THROWS_AS(FlatTorusLattice::from_generators({1.0, 0.0}, {5.0, 1e-13}),
                  DegenerateLatticeError);
}

TEST_CASE("from_generators rotates into well-oriented form") {
  const auto lat = FlatTorusLattice::from_generators({0.0, 2.0}, {1.0, 0.0});
  CHECK(lat.a1() == doctest::Approx(2.0));
  CHECK(lat.b2() > 0.0);
  CHECK(lat.area() == doctest::Approx(2.0));
}

TEST_CASE("reduce_basis examples") {
  const auto sq = reduce_basis(FlatTorusLattice::well_oriented(1.0, 0.0, 1.0));
  CHECK(sq.a1() == doctest::Approx(1.0));
  CHECK(std::abs(sq.a2()) < 1e-15);
  CHECK(sq.b2() == doctest::Approx(1.0));

  const auto skew = reduce_basis(FlatTorusLattice::well_oriented(1.0, 0.9, 0.1));
  CHECK(skew.a1() == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
  CHECK(skew.a1() == doctest::Approx(oracle::brute_systole({1.0, 0.0}, {0.9, 0.1})).epsilon(1e-12));

  const auto thin = reduce_basis(FlatTorusLattice::well_oriented(22.3835, 11.1918, 0.0370));
  const double brute = oracle::brute_systole({22.3835, 0.0}, {11.1918, 0.0370}, 1000);
  CHECK(thin.a1() == doctest::Approx(brute).epsilon(1e-12));
  // 11.1918 is not exactly half of 22.3835, so the short vector is 2 v2 - v1.
  CHECK(thin.a1() == doctest::Approx(std::hypot(0.0001, 0.0740)).epsilon(1e-9));
}

TEST_CASE("systole examples") {
  CHECK(systole(FlatTorusLattice::well_oriented(1.0, 0.0, 1.0)) == doctest::Approx(1.0));
  CHECK(systole(FlatTorusLattice::well_oriented(1.0, 0.5, std::sqrt(3.0) / 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(systole(FlatTorusLattice::well_oriented(22.3835, 0.0, 0.0370)) ==
        doctest::Approx(0.0370).epsilon(1e-14));
}

TEST_CASE("diameter examples") {
  CHECK(diameter(FlatTorusLattice::well_oriented(1.0, 0.0, 1.0)) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(diameter(FlatTorusLattice::well_oriented(1.0, 0.5, std::sqrt(3.0) / 2.0)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(diameter(FlatTorusLattice::well_oriented(4.0, 0.0, 2.0)) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(oracle::brute_covering_radius({4.0, 0.0}, {0.0, 2.0}) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("deep hole realizes the covering radius") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto lat = random_lattice(rng);
    const Vec2 p = deep_hole(lat);
    CHECK(oracle::brute_distance(p, lat.v1(), lat.v2(), 40) ==
          doctest::Approx(diameter(lat)).epsilon(1e-9));
  }
}

TEST_CASE("random lattices against brute-force oracles") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto lat = random_lattice(rng);
    const auto red = reduce_basis(lat);
    const double sys = systole(lat);
    const double diam = diameter(lat);
    CAPTURE(lat.a1());
    CAPTURE(lat.a2());
    CAPTURE(lat.b2());
    // Reduced-basis conditions.
    CHECK(norm(red.v1()) <= norm(red.v2()) * (1 + 1e-12));
    CHECK(std::abs(dot(red.v1(), red.v2())) <= 0.5 * dot(red.v1(), red.v1()) * (1 + 1e-12));
    CHECK(red.area() == doctest::Approx(lat.area()).epsilon(1e-10));
    // Same lattice: each reduced vector is an integer combination of the input.
    CHECK(sys == doctest::Approx(norm(red.v1())).epsilon(1e-14));
    CHECK(sys == doctest::Approx(oracle::brute_systole(lat.v1(), lat.v2(), 200)).epsilon(1e-10));
    CHECK(diam ==
          doctest::Approx(oracle::brute_covering_radius(red.v1(), red.v2())).epsilon(1e-9));
    CHECK(norm(red.v1()) <= 2.0 * diam);
    CHECK(norm(red.v2()) <= 2.0 * diam);
    CHECK(sys <= 2.0 * diam);
  }
}

TEST_CASE("invariance under reduction, rotation and scaling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), lambda(0.1, 10.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto lat = random_lattice(rng);
    const double th = angle(rng);
    auto rot = [&](Vec2 v) {
      return Vec2{std::cos(th) * v.x - std::sin(th) * v.y, std::sin(th) * v.x + std::cos(th) * v.y};
    };
    const auto rotated = FlatTorusLattice::from_generators(rot(lat.v1()), rot(lat.v2()));
    const auto red = reduce_basis(lat);
    CHECK(systole(rotated) == doctest::Approx(systole(lat)).epsilon(1e-12));
    CHECK(diameter(rotated) == doctest::Approx(diameter(lat)).epsilon(1e-10));
    CHECK(systole(red) == doctest::Approx(systole(lat)).epsilon(1e-12));
    CHECK(diameter(red) == doctest::Approx(diameter(lat)).epsilon(1e-10));
    CHECK(isometric(lat, rotated, 1e-9));
    const double l = lambda(rng);
    CHECK(systole(lat.scaled(l)) == doctest::Approx(l * systole(lat)).epsilon(1e-12));
    CHECK(diameter(lat.scaled(l)) == doctest::Approx(l * diameter(lat)).epsilon(1e-10));
  }
}

TEST_CASE("isometric distinguishes different lattices") {
  const auto a = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);
  CHECK(isometric(a, FlatTorusLattice::well_oriented(1.0, 1.0, 1.0), 1e-12));
  CHECK_FALSE(isometric(a, FlatTorusLattice::well_oriented(1.0, 0.0, 1.01), 1e-6));
}

}
