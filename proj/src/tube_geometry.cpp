#include "cuspgeo/tube_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;
using std::numbers::sqrt3;

const double kScaleSq = 4.0 * pi / sqrt3;  // s = sqrt(kScaleSq * l)
const double kSMax = std::asinh(1.0);      // ln(1 + sqrt2)

void check_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("geodesic length must be positive");
  // The limit itself is accepted (radius 0); anything beyond it is not.
  if (length > max_tube_length() * (1.0 + 1e-12))
    throw DomainError("geodesic length exceeds the embedded-tube limit");
}

}  // namespace

double max_tube_length() { return sqrt3 / (4.0 * pi) * kSMax * kSMax; }

double meyerhoff_radius(double length) {
  check_length(length);
  length = std::min(length, max_tube_length());
  // k = 2 sinh^2(s/2); write k = k0 + dk with k0 = sqrt2 - 1 the value at the
  // limit. Then 1 - 2k = k0^2 - 2 dk and
  //   sqrt(1-2k)/k - 1 = -dk (2 + 2 k0 + dk) / (k (sqrt(k0^2 - 2 dk) + k)).
  const double s = std::sqrt(kScaleSq * length);
  const double sh = std::sinh(0.5 * s);
  const double k = 2.0 * sh * sh;
  const double k0 = sqrt2 - 1.0;
  const double diff = kScaleSq * (length - max_tube_length()) / (s + kSMax);  // s - s_max
  const double dk = 2.0 * std::sinh(0.5 * (s + kSMax)) * std::sinh(0.5 * diff);
  const double q = -dk * (2.0 + 2.0 * k0 + dk) / (k * (std::sqrt(k0 * k0 - 2.0 * dk) + k));
  return std::asinh(std::sqrt(std::max(0.0, 0.5 * q)));
}

double meyerhoff_radius_by_root(double length) {
  check_length(length);
  length = std::min(length, max_tube_length());
  const double sh = std::sinh(0.5 * std::sqrt(kScaleSq * length));
  const double k = 2.0 * sh * sh;  // cosh s - 1 without cancellation
  auto f = [k](double r) {
    const double c = std::cosh(2.0 * r);
    return 1.0 / (1.0 + std::sqrt(1.0 + c * c)) - k;
  };
  if (f(0.0) <= 0.0) return 0.0;
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  boost::uintmax_t iters = 200;
  const auto [lo, up] =
      boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(),
                                        iters);
  return 0.5 * (lo + up);
}

double slice_area(double length, double r) {
  if (!(length > 0.0)) throw DomainError("geodesic length must be positive");
  if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
  return pi * length * std::sinh(2.0 * r);
}

double slice_mean_curvature(double r) {
  if (!(r > 0.0)) throw DomainError("mean curvature of the core circle is undefined (r = 0)");
  return 0.5 * (std::tanh(r) + 1.0 / std::tanh(r));
}

FlatTorusLattice boundary_lattice(const TubeParams& p, double r) {
  if (!(r > 0.0)) throw DomainError("boundary torus radius must be positive");
  if (!(p.length > 0.0)) throw DomainError("geodesic length must be positive");
  if (p.radius > 0.0 && r > p.radius) throw DomainError("radius exceeds the tube radius");
  const double sh = std::sinh(r);
  return FlatTorusLattice::well_oriented(2.0 * pi * sh, p.twist * sh, p.length * std::cosh(r));
}

WarpedMetricSpec tube_as_warped(const TubeParams& p, std::optional<Interval> interval) {
  if (!(p.radius > 0.0) || !(p.length > 0.0)) throw DomainError("tube needs R > 0 and l > 0");
  const double R = p.radius;
  const Interval iv = interval.value_or(Interval{0.0, R - 0.5});
  if (!(iv.hi < R) || !(iv.lo >= 0.0) || !(iv.lo <= iv.hi))
    throw DomainError("tube interval must lie in [0, R)");
  const double shR = std::sinh(R);
  return WarpedMetricSpec::diagonal(
      "tube", FlatTorusLattice::well_oriented(2.0 * pi, p.twist, p.length), iv, shR,
      sinh_profile(1.0 / shR, R, -1.0), sinh_profile(1.0, R, -1.0), cosh_profile(1.0, R, -1.0));
}

WarpedMetricSpec tube_radial_as_warped(const TubeParams& p, Interval r_range) {
  if (!(p.length > 0.0)) throw DomainError("geodesic length must be positive");
  if (!(r_range.lo > 0.0)) throw DomainError("radial range must stay off the core");
  return WarpedMetricSpec::diagonal(
      "tube-radial", FlatTorusLattice::well_oriented(2.0 * pi, p.twist, p.length), r_range, 0.5,
      exponential_profile(1.0, 1.0), sinh_profile(1.0, 0.0, 1.0), cosh_profile(1.0, 0.0, 1.0));
}

WarpedMetricSpec cusp_as_warped(const CuspParams& c) {
  if (!(c.depth_lo < c.depth_hi)) throw DomainError("cusp depth range must satisfy t0 < t1");
  auto s = cusp_spec(c.lattice, Interval{c.depth_lo, c.depth_hi});
  return s;
}

}  // namespace cuspgeo
