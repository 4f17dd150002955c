#pragma once

#include "cuspgeo/flat_torus.hpp"

namespace cuspgeo {

/// Area 2 pi (cosh R - 1) of a hyperbolic disk of radius R.
double parallel_disk_area(double R);
/// Same area by adaptive quadrature of 2 pi sinh r over [0, R].
double parallel_disk_area_quadrature(double R);

struct ProjectionReport {
  double max_singular = 0.0;  // over all grid points and directions
  double min_nonzero_singular = 0.0;
  double max_z_singular = 0.0;  // image length of the unit z-direction
  int grid_points = 0;
};

/// Singular values of the projection (z, theta, r) -> (z0, theta, r) from the
/// tube metric dr^2 + sinh^2 r dtheta^2 + cosh^2 r dz^2 to the disk metric
/// dr^2 + sinh^2 r dtheta^2, on an n_r x n_theta grid of (0, R] x [0, 2 pi).
ProjectionReport projection_contraction_check(double R, int n_r, int n_theta);

/// Annulus band between the tori at distances rho1 <= rho2 in a tube of
/// radius R_l, for a systole lower bound sys0 <= 1.
struct BandEstimate {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double sys0 = 1.0;
  double tube_radius = 0.0;
};

struct BandBound {
  double difference_form = 0.0;  // (sys0 / sinh R_l)(sinh rho2 - sinh rho1)
  double product_form = 0.0;     // (2 sys0 / sinh R_l) cosh((rho1+rho2)/2) sinh((rho2-rho1)/2)
};

/// Upper bound for the area of the band swept radially by a curve of length
/// sys0 on the outer torus.
BandBound annulus_band_bound(const BandEstimate& e);

/// Exact area of the radial band over the straight curve with direction
/// (dz, dtheta), scaled to have length sys0 on the torus at R_l, computed
/// by quadrature of (cosh^2 r z'^2 + sinh^2 r theta'^2)^{1/2} over [rho1, rho2].
double band_curve_area(const BandEstimate& e, double dz, double dtheta);

struct CrossingBound {
  double chain = 0.0;       // (pi / (8 k2)) (sys0 / cosh R_l)(cosh R - cosh 3/2)
  double simplified = 0.0;  // k3 sys0 e^{R - R_l}
  double k2 = 1.0;
  double k3 = 0.0;
};

/// Lower-bound constant for the simplified form: the chain divided by
/// sys0 e^{R - R_l} is smallest at R = 3, giving
/// k3 = (pi / (8 k2)) (cosh 3 - cosh 3/2) e^{-3}.
double crossing_simplified_constant(double k2 = 1.0);

/// The chain value without the R >= 3 precondition.
double crossing_chain(double R, double tube_radius, double sys0, double k2 = 1.0);

/// Requires 3 <= R <= R_l and 0 < sys0.
CrossingBound crossing_lower_bound(double R, double tube_radius, double sys0, double k2 = 1.0);

/// 2 pi (cosh eps - 1).
double margulis_area_bound(double eps);
/// The numeric constant quoted for the Margulis number, exposed as is.
inline constexpr double kMargulisConstant = 0.104;

}  // namespace cuspgeo
