#pragma once

#include <optional>

#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/warped_metric.hpp"

namespace cuspgeo {

/// Margulis tube around a closed geodesic of length `length`, with twist
/// angle `twist` and radius `radius`. The universal cover of the tube minus
/// its core carries dr^2 + sinh^2 r dtheta^2 + cosh^2 r dz^2, and the deck
/// group is generated by (theta, z) -> (theta + 2 pi, z) and
/// (theta + twist, z + length).
struct TubeParams {
  double length = 0.0;
  double twist = 0.0;
  double radius = 0.0;
};

/// Cusp end T x [depth_lo, depth_hi] with metric e^{-2t} dsigma^2 + dt^2.
struct CuspParams {
  FlatTorusLattice lattice = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);
  double depth_lo = 0.0;
  double depth_hi = 1.0;
};

/// Largest geodesic length for which an embedded tube is guaranteed:
/// (sqrt3 / 4 pi) ln^2(1 + sqrt2) = 0.10706...
double max_tube_length();

/// Radius of the embedded tube around a geodesic of length l:
/// sinh^2 R = (sqrt(1 - 2k)/k - 1) / 2 with k = cosh sqrt(4 pi l / sqrt3) - 1.
/// Evaluated with cancellation-free arithmetic, so l = max_tube_length()
/// returns 0. Throws DomainError for l <= 0 or l > max_tube_length().
double meyerhoff_radius(double length);

/// Same radius obtained by root finding on R (k as a function of R is
/// 1 / (1 + sqrt(1 + cosh^2 2R))). Used for cross-validation.
double meyerhoff_radius_by_root(double length);

/// Area pi l sinh 2r of the torus at distance r from the core.
double slice_area(double length, double r);

/// (tanh r + coth r) / 2: mean curvature of the distance-r torus toward the
/// core. Throws for r <= 0.
double slice_mean_curvature(double r);

/// Lattice of the flat torus at distance r in orthonormal coordinates:
/// v1 = (2 pi sinh r, 0), v2 = (twist sinh r, length cosh r).
FlatTorusLattice boundary_lattice(const TubeParams& p, double r);

/// Tube in depth coordinates t = R - r: a1 = sinh(R - t), a2 = cosh(R - t),
/// warping sinh(R - t) / sinh R, reference scale sinh R. The lattice is
/// generated by (2 pi, 0) and (twist, length). Default interval [0, R - 1/2];
/// the interval must stay below R.
WarpedMetricSpec tube_as_warped(const TubeParams& p, std::optional<Interval> interval = {});

/// Tube in radial coordinates x3 = r: a1 = sinh r, a2 = cosh r, warping e^r
/// with reference scale 1/2 (the large-r model e^{2r}/4 (dx1^2 + dx2^2)).
WarpedMetricSpec tube_radial_as_warped(const TubeParams& p, Interval r_range);

WarpedMetricSpec cusp_as_warped(const CuspParams& c);

}  // namespace cuspgeo
