#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cuspgeo/errors.hpp"
#include "cuspgeo/filler.hpp"
#include "cuspgeo/sweepout.hpp"
#include "cuspgeo/tube_geometry.hpp"

using namespace cuspgeo;

namespace {

const FlatTorusLattice kSquare = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);

FormalCurrent single(const std::string& id, double area, long long mult = 1) {
  return FormalCurrent({{id, mult, area}});
}

}  // namespace

TEST_SUITE("sweepout") {

TEST_CASE("grid distance examples") {
  CHECK(grid_distance(make_vertex(2, 4), make_vertex(2, 4)) == 0);
  CHECK(grid_distance(make_vertex(1, 0), make_vertex(1, 3)) == 3);
  CHECK(grid_distance(make_vertex(2, 1), make_vertex(2, 3)) == 2);
  CHECK(grid_distance(Vertex2{1, 0, 0}, Vertex2{1, 2, 3}) == 5);
  CHECK_THROWS_AS(grid_distance(make_vertex(1, 0), make_vertex(2, 0)), DomainError);
  CHECK_THROWS_AS(make_vertex(1, 4), DomainError);
  CHECK_THROWS_AS(pow3(39), DomainError);
  CHECK(pow3(38) == 1350851717672992089LL);
}

TEST_CASE("grid distance is a metric") {
  for (int j = 0; j <= 3; ++j) {
    const long long n = pow3(j);
    for (long long a = 0; a <= n; ++a)
      for (long long b = 0; b <= n; ++b) {
        const auto x = make_vertex(j, a), y = make_vertex(j, b);
        CHECK((grid_distance(x, y) == 0) == (a == b));
        CHECK(grid_distance(x, y) == grid_distance(y, x));
        for (long long c = 0; c <= n; ++c)
          CHECK(grid_distance(x, y) <= grid_distance(x, make_vertex(j, c)) +
                                           grid_distance(make_vertex(j, c), y));
      }
  }
  for (int j = 0; j <= 2; ++j) {
    const long long n = pow3(j);
    for (long long a1 = 0; a1 <= n; ++a1)
      for (long long a2 = 0; a2 <= n; ++a2)
        for (long long b1 = 0; b1 <= n; ++b1)
          for (long long b2 = 0; b2 <= n; ++b2) {
            const Vertex2 x{j, a1, a2}, y{j, b1, b2}, z{j, (a1 + b2) % (n + 1), b1};
            CHECK(grid_distance(x, y) <= grid_distance(x, z) + grid_distance(z, y));
          }
  }
}

TEST_CASE("projection examples") {
  CHECK(project_vertex(make_vertex(1, 2), 1).index == 2);
  CHECK(project_vertex(make_vertex(2, 4), 1).index == 1);
  CHECK(project_vertex(make_vertex(2, 4), 1).level == 1);
  CHECK(project_vertex(make_vertex(2, 5), 1).index == 2);
  CHECK(project_vertex(make_vertex(1, 1), 0).index == 0);
  CHECK(project_vertex(make_vertex(1, 2), 0).index == 1);
  const auto p2 = project_vertex(Vertex2{2, 4, 8}, 1);
  CHECK(p2.i1 == 1);
  CHECK(p2.i2 == 3);
  CHECK_THROWS_AS(project_vertex(make_vertex(1, 0), 2), DomainError);
}

TEST_CASE("projection is nearest and composes") {
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= i; ++j) {
      const long long r = pow3(i - j);
      for (long long x = 0; x <= pow3(i); ++x) {
        const auto p = project_vertex(make_vertex(i, x), j);
        // No level-j vertex is closer, and no level-j vertex ties.
        for (long long y = 0; y <= pow3(j); ++y) {
          if (y == p.index) continue;
          CHECK(std::llabs(x - y * r) > std::llabs(x - p.index * r));
        }
        for (int k = 0; k <= j; ++k)
          CHECK(project_vertex(p, k).index == project_vertex(make_vertex(i, x), k).index);
      }
    }
}

TEST_CASE("formal currents") {
  const FormalCurrent c({{"b", 2, 1.5}, {"a", -1, 2.0}});
  CHECK(c.patches().front().id == "a");
  CHECK(c.mass() == doctest::Approx(5.0));
  CHECK(c.refined(4).mass() == doctest::Approx(5.0));
  CHECK(c.refined(4).patches().size() == 8);
  CHECK_THROWS_AS(FormalCurrent({{"a", 1, 1.0}, {"a", 1, 1.0}}), DomainError);
  CHECK_THROWS_AS(FormalCurrent({{"a", 1, -1.0}}), DomainError);
  CHECK(mass_difference(single("a", 2.0), single("b", 3.0)) == doctest::Approx(5.0));
  CHECK(mass_difference(single("a", 2.0, 3), single("a", 2.0, 1)) == doctest::Approx(4.0));
  CHECK_THROWS_AS(mass_difference(single("a", 2.0), single("a", 3.0)), DomainError);
}

TEST_CASE("fineness examples") {
  DiscreteFamily constant{1, std::vector<FormalCurrent>(4, single("t", 2.0))};
  CHECK(fineness(constant) == 0.0);
  CHECK(max_mass(constant) == 2.0);
  const double A = 1.25, B = 0.75;
  DiscreteFamily jump{0, {single("a", A), single("b", B)}};
  CHECK(fineness(jump) == doctest::Approx(A + B));
  CHECK_THROWS_AS(fineness(DiscreteFamily{1, {single("a", A), single("b", B)}}), DomainError);
}

TEST_CASE("patch interpolation") {
  const double A = 1.25, B = 0.75;
  const auto a = single("a", A), b = single("b", B);
  const auto one = interpolate_patches(a, b, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].mass() == A);
  CHECK(one[1].mass() == B);
  CHECK_THROWS_AS(interpolate_patches(a, b, 0), DomainError);
  for (int k : {2, 3, 7, 9, 20}) {
    const auto chain = interpolate_patches(a, b, k);
    REQUIRE(chain.size() == std::size_t(k) + 1);
    double total = 0.0, worst = 0.0;
    for (int m = 0; m < k; ++m) {
      const double step = mass_difference(chain[m], chain[m + 1]);
      total += step;
      worst = std::max(worst, step);
    }
    CHECK(total == doctest::Approx(mass_difference(a, b)).epsilon(1e-14));
    CHECK(worst <= mass_difference(a, b) / k + std::max(A, B));
    CHECK(mass_difference(chain.front(), a.refined(k)) == 0.0);
    int level = 0;
    while (pow3(level) < k) ++level;
    const auto fam = chain_family(chain, level);
    CHECK(fam.values.size() == std::size_t(pow3(level)) + 1);
    CHECK(fineness(fam) <= (A + B) / k * (1 + 1e-12));
  }
  CHECK_THROWS_AS(chain_family(interpolate_patches(a, b, 5), 1), DomainError);
}

TEST_CASE("fineness decays like 1/k") {
  const auto a = single("a", 1.0), b = single("b", 2.0);
  std::vector<double> lk, lf;
  for (int k = 4; k <= 256; k *= 2) {
    int level = 0;
    while (pow3(level) < k) ++level;
    lk.push_back(std::log(double(k)));
    lf.push_back(std::log(fineness(chain_family(interpolate_patches(a, b, k), level))));
  }
  const double n = double(lk.size());
  const double mk = std::accumulate(lk.begin(), lk.end(), 0.0) / n;
  const double mf = std::accumulate(lf.begin(), lf.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lk.size(); ++i) {
    num += (lk[i] - mk) * (lf[i] - mf);
    den += (lk[i] - mk) * (lk[i] - mk);
  }
  const double slope = num / den;
  CHECK(slope >= -1.2);
  CHECK(slope <= -0.8);
}

TEST_CASE("cusp and tube profiles") {
  const auto cusp = cusp_profile({kSquare, 0.0, 4.0}, 41);
  CHECK(cusp.samples.front().area == 1.0);
  CHECK(cusp.width_upper_bound == 1.0);
  for (std::size_t i = 1; i < cusp.samples.size(); ++i) {
    CHECK(cusp.samples[i].area < cusp.samples[i - 1].area);
    CHECK(cusp.samples[i].t > cusp.samples[i - 1].t);
  }
  const auto tube = tube_profile({0.01, 0.0, std::nullopt}, 101);
  CHECK(tube.samples.back().parameter == meyerhoff_radius(0.01));
  CHECK(max_mass(tube) == doctest::Approx(0.828201594068102482).epsilon(1e-13));
  CHECK(max_mass(tube) == tube.samples.back().area);
  for (const auto& s : tube.samples)
    CHECK(std::abs(s.area - slice_area(0.01, s.parameter)) <= 1e-12 * std::max(1.0, s.area));
  CHECK_THROWS_AS(tube_profile({0.01, 0.0, 3.0}, 10), DomainError);
  CHECK_THROWS_AS(cusp_profile({kSquare, 1.0, 1.0}, 10), DomainError);
  CHECK_THROWS_AS(cusp_profile({kSquare, 0.0, 1.0}, 1), DomainError);
}

TEST_CASE("concatenation") {
  const auto a = cusp_profile({kSquare, 0.0, 4.0}, 11);
  const auto b = tube_profile({0.01, 0.0, std::nullopt}, 11);
  const auto c = concatenate({a, b});
  CHECK(c.samples.size() == 22);
  CHECK(max_mass(c) == std::max(max_mass(a), max_mass(b)));
  for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(c.samples[i].t > c.samples[i - 1].t);
}

TEST_CASE("filler-extended profile") {
  ManifoldDescription m;
  m.cusps.push_back({kSquare, 0.0, 4.0});
  m.fillers.push_back({"cusp:0", 20.0, std::nullopt});
  const auto p = profile(m, 51);
  CHECK(p.samples.front().segment == "fillers");
  CHECK(p.samples.front().area == 0.0);
  double filler_max = 0.0;
  for (const auto& s : p.samples)
    if (s.segment == "fillers") filler_max = std::max(filler_max, s.area);
  CHECK(filler_max == doctest::Approx(kSquare.area()).epsilon(1e-15));
  const Filler F(20.0, kSquare);
  for (const auto& s : p.samples)
    if (s.segment == "fillers" && s.parameter < 21.0)
      CHECK(std::abs(s.area - F.level_area(s.parameter)) <= 1e-12);
  CHECK(p.width_upper_bound == doctest::Approx(1.0));
}

TEST_CASE("gluing checks") {
  ManifoldDescription m;
  m.tubes.push_back({0.01, 0.2, std::nullopt});
  const auto boundary = end_boundary_lattice(m, "tube:0");
  CHECK(boundary.area() == doctest::Approx(slice_area(0.01, meyerhoff_radius(0.01))).epsilon(1e-12));
  m.fillers.push_back({"tube:0", 12.0, boundary});
  CHECK_NOTHROW(profile(m, 11));
  m.fillers[0].lattice = boundary.stretched(1.0, 1.001);
  CHECK_THROWS_AS(profile(m, 11), DomainError);
  m.fillers[0] = {"cusp:0", 12.0, std::nullopt};
  CHECK_THROWS_AS(profile(m, 11), DomainError);
  CHECK_THROWS_AS(profile(ManifoldDescription{}, 11), DomainError);
}

}
