#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "cuspgeo/errors.hpp"
#include "cuspgeo/tube_geometry.hpp"
#include "cuspgeo/warped_metric.hpp"

using namespace cuspgeo;

namespace {

const FlatTorusLattice kSquare = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);

// Non-diagonal cusp-like metric with constant coefficients relative to the
// warping e^{-t}: a11 = a22 = e^{-2t}, a12 = 0.3 e^{-2t}, a13 = 0.2 e^{-t}, a33 = 1.
WarpedMetricSpec sheared_cusp(Interval iv, double off12 = 0.3, double off13 = 0.2) {
  CoefficientField field = [off12, off13](const Point3& p) {
    MetricJet m;
    auto put = [&](int k, int l, double c, double rate) {
      const double e = c * std::exp(rate * p.x3);
      const double d[4] = {e, rate * e, rate * rate * e, rate * rate * rate * e};
      m.a[k][l] = m.a[l][k] = d[0];
      m.d1[2][k][l] = m.d1[2][l][k] = d[1];
      m.d2[2][2][k][l] = m.d2[2][2][l][k] = d[2];
      m.d3[2][2][2][k][l] = m.d3[2][2][2][l][k] = d[3];
    };
    put(0, 0, 1.0, -2.0);
    put(1, 1, 1.0, -2.0);
    put(0, 1, off12, -2.0);
    put(0, 2, off13, -1.0);
    put(2, 2, 1.0, 0.0);
    return m;
  };
  return WarpedMetricSpec::general("sheared", kSquare, iv, 1.0, exponential_profile(1.0, -1.0),
                                   field);
}

int direct_count(const std::vector<int>& idx) {
  int n = 0;
  for (int k : idx) n += (k == 1 || k == 2);
  return n;
}

}  // namespace

TEST_SUITE("warped_metric") {

TEST_CASE("tangential counts") {
  const std::array<int, 2> a{3, 3}, b{1, 2};
  const std::array<int, 5> c{1, 2, 3, 1, 2};
  CHECK(tangential_count(a) == 0);
  CHECK(tangential_count(b) == 2);
  CHECK(tangential_count(c) == 4);
  for (int p = 1; p <= 5; ++p) {
    int total = 1;
    for (int i = 0; i < p; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      std::vector<int> idx;
      for (int i = 0, r = code; i < p; ++i, r /= 3) idx.push_back(r % 3 + 1);
      CHECK(tangential_count(idx) == direct_count(idx));
    }
  }
  const std::array<int, 1> bad{4};
  CHECK_THROWS_AS(tangential_count(bad), DomainError);
}

TEST_CASE("cusp hypotheses") {
  const auto rep = check_hypotheses(cusp_spec(kSquare, {0.0, 4.0}), 16);
  CHECK(rep.a_h1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.a_h2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.h_monotone);
  CHECK(rep.mean_convex);
  CHECK(rep.min_mean_curvature == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::isfinite(rep.a_h3));
  CHECK(rep.a_h3_by_order[0] == doctest::Approx(1.0));
  CHECK(rep.a_h3_by_order[1] == doctest::Approx(2.0));
  CHECK(rep.a_h3_by_order[2] == doctest::Approx(4.0));
  CHECK(rep.a_h3_by_order[3] == doctest::Approx(8.0));
  CHECK(rep.grid_points == 16);
}

TEST_CASE("flat hypotheses") {
  const auto rep = check_hypotheses(flat_spec(kSquare, {-1.0, 1.0}), 8);
  CHECK(rep.a_h1 == 1.0);
  CHECK(rep.a_h2 == 0.0);
  CHECK(rep.h_monotone);
  CHECK(rep.min_mean_curvature == 0.0);
  CHECK(rep.mean_convex);
}

TEST_CASE("tube hypotheses on [0, R - 1/2]") {
  const auto spec = tube_as_warped({0.05, 0.0, 5.0});
  const auto rep = check_hypotheses(spec, 64);
  CHECK(rep.a_h2 == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-13));
  CHECK(rep.a_h2 == doctest::Approx(2.16395341373865285).epsilon(1e-13));
  CHECK(rep.a_h2_argmax == doctest::Approx(4.5));
  CHECK(rep.h_monotone);
  CHECK(rep.mean_convex);
  CHECK(rep.a_h1 >= 1.0);
}

TEST_CASE("hypothesis errors") {
  CHECK_THROWS_AS(check_hypotheses(cusp_spec(kSquare, {0.0, 1.0}), 7), DomainError);
  CHECK_THROWS_AS(check_hypotheses(cusp_spec(kSquare, {0.0, 1.0}), 8, Interval{0.5, 2.0}),
                  DomainError);
  // a12 = 1.5 a11 is indefinite.
  try {
    check_hypotheses(sheared_cusp({0.0, 1.0}, 1.5), 8);
    FAIL("indefinite metric accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("positive definite") != std::string::npos);
  }
}

TEST_CASE("blow-up of the flat metric is flat") {
  const auto flat = flat_spec(kSquare, {0.0, 2.0});
  for (double lambda : {0.5, 1.0, 3.0}) {
    const auto b = blowup_rescale(flat, 1.0, lambda);
    const auto c = b.coefficients({0.1, 0.2, 0.3});
    CHECK(c[0][0] == doctest::Approx(lambda * lambda));
    CHECK(c[2][2] == 1.0);
    const auto n = b.normalized_coefficients({0.1, 0.2, 0.3});
    CHECK(n[0][0] == doctest::Approx(1.0));
    CHECK(n[1][1] == doctest::Approx(1.0));
    const auto rep = check_hypotheses(b, 8);
    CHECK(rep.a_h1 == doctest::Approx(1.0));
    CHECK(rep.a_h2 == 0.0);
    CHECK(b.interval().lo == doctest::Approx(-lambda));
    CHECK(b.interval().hi == doctest::Approx(lambda));
  }
}

TEST_CASE("blow-up of the tube at its level") {
  const TubeParams p{0.05, 0.0, 12.0};
  const auto spec = tube_as_warped(p, Interval{0.0, 11.0});
  const double s = 2.0;
  const auto b = blowup_rescale(spec, s, 1.0 / spec.warping(s).v);
  const auto n = b.normalized_coefficients({0.0, 0.0, 0.0});
  CHECK(n[0][0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.warping(0.0).v == doctest::Approx(1.0));
  CHECK(b.reference_scale() == doctest::Approx(spec.reference_scale()).epsilon(1e-14));

  // Far from the core the radial model approaches e^{2 rho} / 4 (dx1^2 + dx2^2).
  const auto radial = tube_radial_as_warped(p, Interval{1.0, 11.0});
  const auto rb = blowup_rescale(radial, 10.0, 1.0 / radial.warping(10.0).v);
  const auto c = rb.coefficients({0.0, 0.0, 0.0});
  const double expect = std::pow(std::cosh(10.0) * std::exp(-10.0), 2);
  CHECK(c[1][1] == doctest::Approx(expect).epsilon(1e-14));
  CHECK(c[1][1] == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(c[0][0] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("blow-up shrinks the cusp first-derivative constant by h(s)") {
  const auto spec = cusp_spec(kSquare, {0.0, 8.0});
  const double A1 = check_hypotheses(spec, 16).a_h3_by_order[1];
  for (double s : {1.0, 3.0, 5.0}) {
    const double hs = spec.warping(s).v;
    const auto b = blowup_rescale(spec, s, 1.0 / hs);
    const auto rep = check_hypotheses(b, 16, Interval{-0.5, 0.5});
    CAPTURE(s);
    CHECK(rep.a_h3_by_order[1] <= A1 * hs * (1 + 1e-12));
    CHECK(rep.a_h3_by_order[1] == doctest::Approx(2.0 * std::exp(-s)).epsilon(1e-12));
  }
  CHECK(2.0 * std::exp(-5.0) == doctest::Approx(1.3475893998e-2).epsilon(1e-9));
}

TEST_CASE("H1 constant is invariant under blow-up") {
  const auto spec = sheared_cusp({0.0, 4.0});
  const auto whole = check_hypotheses(spec, 12);
  CHECK(whole.a_h1 > 1.0);
  for (double lambda : {0.5, 2.0, std::exp(2.0)}) {
    const auto b = blowup_rescale(spec, 2.0, lambda);
    const auto rep = check_hypotheses(b, 12);
    CHECK(rep.a_h1 == doctest::Approx(whole.a_h1).epsilon(1e-12));
  }
  // Diagonal case: compare on matching windows.
  const auto tube = tube_as_warped({0.05, 0.0, 6.0});
  const double s = 2.0, lambda = 3.0;
  const auto orig = check_hypotheses(tube, 9, Interval{1.0, 3.0});
  const auto blown = check_hypotheses(blowup_rescale(tube, s, lambda), 9,
                                      Interval{lambda * (1.0 - s), lambda * (3.0 - s)});
  CHECK(blown.a_h1 == doctest::Approx(orig.a_h1).epsilon(1e-12));
}

TEST_CASE("blow-up errors") {
  const auto spec = cusp_spec(kSquare, {0.0, 1.0});
  CHECK_THROWS_AS(blowup_rescale(spec, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(blowup_rescale(spec, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(blowup_rescale(cusp_spec(kSquare, {1.0, 1.0}), 1.0, 1.0), DomainError);
}

TEST_CASE("level-torus mean curvature") {
  CHECK(level_torus_mean_curvature(flat_spec(kSquare, {0.0, 1.0}), 0.5) == 0.0);
  const auto cusp = cusp_spec(kSquare, {0.0, 3.0});
  for (double s : {0.0, 1.0, 2.5}) CHECK(level_torus_mean_curvature(cusp, s) == doctest::Approx(1.0));
  const auto tube = tube_as_warped({0.05, 0.2, 5.0});
  CHECK(level_torus_mean_curvature(tube, 4.0) ==
        doctest::Approx(slice_mean_curvature(1.0)).epsilon(1e-14));
  CHECK(level_torus_mean_curvature(tube, 4.0) ==
        doctest::Approx(1.03731472072754810).epsilon(1e-14));
  CHECK_THROWS_AS(level_torus_mean_curvature(sheared_cusp({0.0, 1.0}), 0.5), UnsupportedError);
  CHECK_THROWS_AS(level_torus_mean_curvature(cusp, 4.0), DomainError);
}

TEST_CASE("mean curvature is minus half the log-derivative of slice area") {
  const auto tube = tube_as_warped({0.05, 0.2, 5.0});
  auto area = [&](double s) {
    return tube.a1(s).v * tube.a2(s).v * tube.lattice().area();
  };
  for (double s : {0.5, 1.5, 3.0, 4.2}) {
    const double eps = 1e-5;
    const double fd = (area(s + eps) - area(s - eps)) / (2 * eps) / area(s);
    CHECK(level_torus_mean_curvature(tube, s) == doctest::Approx(-0.5 * fd).epsilon(1e-6));
    CHECK(level_set_mean_curvature(tube, {0.3, 0.1, s}) ==
          doctest::Approx(level_torus_mean_curvature(tube, s)).epsilon(1e-12));
  }
}

TEST_CASE("sampled spec follows its samples") {
  std::vector<double> knots, h, a1, a2;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.1 * i;
    knots.push_back(t);
    h.push_back(std::exp(-t));
    a1.push_back(std::exp(-t));
    a2.push_back(std::exp(-t));
  }
  const auto spec = sampled_spec(kSquare, {0.0, 4.0}, 1.0, knots, h, a1, a2);
  CHECK_FALSE(spec.closed_form());
  CHECK(spec.kind() == "custom");
  CHECK(spec.a1(1.05).v == doctest::Approx(std::exp(-1.05)).epsilon(1e-5));
  CHECK(level_torus_mean_curvature(spec, 2.0) == doctest::Approx(1.0).epsilon(1e-4));
  const auto rep = check_hypotheses(spec, 16, Interval{0.5, 3.5});
  CHECK(rep.a_h1 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(sampled_spec(kSquare, {0.0, 5.0}, 1.0, knots, h, a1, a2), DomainError);
}

}
