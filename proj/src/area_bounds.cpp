#include "cuspgeo/area_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

namespace {

using std::numbers::pi;

void check_band(const BandEstimate& e) {
  if (!(e.rho1 >= 0.0 && e.rho1 <= e.rho2 && e.rho2 <= e.tube_radius))
    throw DomainError("band radii must satisfy 0 <= rho1 <= rho2 <= R_l");
  if (!(e.sys0 > 0.0 && e.sys0 <= 1.0)) throw DomainError("systole bound must lie in (0, 1]");
}

}  // namespace

double parallel_disk_area(double R) {
  if (!(R >= 0.0)) throw DomainError("disk radius must be non-negative");
  // cosh R - 1 = 2 sinh^2(R/2) avoids cancellation for small R.
  const double s = std::sinh(0.5 * R);
  return 4.0 * pi * s * s;
}

double parallel_disk_area_quadrature(double R) {
  if (!(R >= 0.0)) throw DomainError("disk radius must be non-negative");
  if (R == 0.0) return 0.0;
  auto f = [](double r) { return 2.0 * pi * std::sinh(r); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, R, 15, 1e-14);
}

ProjectionReport projection_contraction_check(double R, int n_r, int n_theta) {
  if (!(R > 0.0)) throw DomainError("tube radius must be positive");
  if (n_r < 1 || n_theta < 1) throw DomainError("projection grid must be nonempty");
  ProjectionReport rep;
  rep.min_nonzero_singular = std::numeric_limits<double>::infinity();
  // Differential in coordinates: rows (r, theta) of the target, columns
  // (r, theta, z) of the source.
  Eigen::Matrix<double, 2, 3> J;
  J << 1, 0, 0, 0, 1, 0;
  for (int i = 1; i <= n_r; ++i) {
    const double r = R * i / n_r;
    for (int k = 0; k < n_theta; ++k) {
      // The metrics do not depend on theta; the sample is kept so the grid is
      // the full n_r x n_theta set the report claims.
      [[maybe_unused]] const double theta = 2.0 * pi * k / n_theta;
      const Eigen::Vector2d tgt(1.0, std::sinh(r));
      const Eigen::Vector3d src(1.0, std::sinh(r), std::cosh(r));
      const Eigen::Matrix<double, 2, 3> D =
          tgt.asDiagonal() * J * src.cwiseInverse().asDiagonal();
      Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(D);
      const auto sv = svd.singularValues();
      rep.max_singular = std::max(rep.max_singular, sv.maxCoeff());
      for (int j = 0; j < sv.size(); ++j)
        if (sv(j) > 1e-12) rep.min_nonzero_singular = std::min(rep.min_nonzero_singular, sv(j));
      rep.max_z_singular = std::max(rep.max_z_singular, D.col(2).norm());
      ++rep.grid_points;
    }
  }
  return rep;
}

BandBound annulus_band_bound(const BandEstimate& e) {
  check_band(e);
  const double c = e.sys0 / std::sinh(e.tube_radius);
  BandBound b;
  b.difference_form = c * (std::sinh(e.rho2) - std::sinh(e.rho1));
  b.product_form =
      2.0 * c * std::cosh(0.5 * (e.rho1 + e.rho2)) * std::sinh(0.5 * (e.rho2 - e.rho1));
  return b;
}

double band_curve_area(const BandEstimate& e, double dz, double dtheta) {
  check_band(e);
  const double RL = e.tube_radius;
  const double len = std::hypot(std::cosh(RL) * dz, std::sinh(RL) * dtheta);
  if (!(len > 0.0)) throw DomainError("curve direction must be nonzero");
  const double z = dz * e.sys0 / len;
  const double th = dtheta * e.sys0 / len;
  if (e.rho1 == e.rho2) return 0.0;
  auto f = [z, th](double r) { return std::hypot(std::cosh(r) * z, std::sinh(r) * th); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, e.rho1, e.rho2, 15,
                                                                      1e-14);
}

double crossing_simplified_constant(double k2) {
  if (!(k2 > 0.0)) throw DomainError("crossing constant must be positive");
  return pi / (8.0 * k2) * (std::cosh(3.0) - std::cosh(1.5)) * std::exp(-3.0);
}

double crossing_chain(double R, double tube_radius, double sys0, double k2) {
  if (!(k2 > 0.0)) throw DomainError("crossing constant must be positive");
  return pi / (8.0 * k2) * sys0 / std::cosh(tube_radius) * (std::cosh(R) - std::cosh(1.5));
}

CrossingBound crossing_lower_bound(double R, double tube_radius, double sys0, double k2) {
  if (!(R >= 3.0)) throw DomainError("crossing bound needs R >= 3");
  if (!(R <= tube_radius)) throw DomainError("crossing bound needs R <= R_l");
  if (!(sys0 > 0.0)) throw DomainError("systole bound must be positive");
  CrossingBound b;
  b.k2 = k2;
  b.k3 = crossing_simplified_constant(k2);
  b.chain = crossing_chain(R, tube_radius, sys0, k2);
  b.simplified = b.k3 * sys0 * std::exp(R - tube_radius);
  return b;
}

double margulis_area_bound(double eps) {
  if (!(eps >= 0.0)) throw DomainError("Margulis number must be non-negative");
  const double s = std::sinh(0.5 * eps);
  return 4.0 * pi * s * s;
}

}  // namespace cuspgeo
