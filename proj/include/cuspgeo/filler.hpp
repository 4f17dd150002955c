#pragma once

#include <array>
#include <string>
#include <vector>

#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/profile.hpp"
#include "cuspgeo/warped_metric.hpp"

namespace cuspgeo {

/// Chebyshev series on [lo, hi] (leading coefficient halved, boost convention).
struct ChebyshevPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;
  double operator()(double x) const;
};

ChebyshevPiece chebyshev_fit(const std::function<double(double)>& fn, double lo, double hi,
                             int degree);

/// Solid torus T x [0, L+1] whose level tori shrink from (T, dsigma^2) to a
/// closed geodesic:
///   g = e^{-2f(t)} dsigma^2 + dt^2                                for t < L,
///   g = e^{-2f(t)} (eta^2(t - L) dx1^2 + dx2^2) + dt^2              on [L, L+1),
/// in well-oriented coordinates where T is generated by (alpha, 0), (beta, l).
///
/// f is t on [0, 1], then 1 + 2 tanh((t-1)/2) until L - 1/3, then its slope is
/// smoothstepped to 0 at L + 2/3 and f is constant afterwards (f < 3). eta is
/// 1 on [0, 1/4], strictly decreasing after, and equals
/// (1 - x)(2 pi / alpha) e^{f(L+1)} on [1 - tau, 1]. Both are C^2.
class Filler {
 public:
  /// Throws DomainError unless L > 10.
  Filler(double L, FlatTorusLattice lattice);

  double L() const { return L_; }
  const FlatTorusLattice& lattice() const { return lattice_; }

  Jet f(double t) const;
  Jet eta(double x) const;
  double f_end() const { return f_end_; }
  /// Slope of the linear tail of eta: (2 pi / alpha) e^{f(L+1)}.
  double eta_tail_slope() const { return m_; }
  /// Width of the linear tail of eta.
  double eta_tail_width() const { return tau_; }

  /// Diagonal metric coefficients (g11, g22, g33) at (x1, x2, t); t in [0, L+1).
  std::array<double, 3> metric_at(const Point3& p) const;

  /// Flat metric of the level torus T_t as a lattice in orthonormal
  /// coordinates; t in [0, L+1).
  FlatTorusLattice level_lattice(double t) const;
  double level_area(double t) const { return level_lattice(t).area(); }

  /// Coefficients (g_rho_rho, g_theta_theta, g_zz) of the metric pulled back
  /// to polar coordinates around the core, rho = L + 1 - t in (0, 1].
  std::array<double, 3> core_chart(double rho) const;

  /// The filler minus a collar of the core as a diagonal warped spec on
  /// [0, L + 1 - margin], warping e^{-f}.
  WarpedMetricSpec as_warped(double margin = 1e-3) const;

  /// Chebyshev data of f (pieces on [0,1], [1, L-1/3], [L-1/3, L+2/3],
  /// [L+2/3, L+1]) and eta (pieces on [0,1/4], [1/4, 1-2tau], [1-2tau, 1-tau],
  /// [1-tau, 1]).
  std::vector<ChebyshevPiece> f_chebyshev(int degree = 40) const;
  std::vector<ChebyshevPiece> eta_chebyshev(int degree = 40) const;

 private:
  double L_;
  FlatTorusLattice lattice_;
  double t_ramp_end_;  // L - 1/3
  double t_flat_;      // L + 2/3
  double f_ramp_end_;  // f(L - 1/3)
  double f_end_;       // f(L + 2/3) = f(L + 1)
  double m_;
  double tau_;
  double x_step_;      // start of the slope smoothstep: 1 - 2 tau
  double bump_lo_;
  double bump_hi_;
  double bump_weight_;

  double f_cutoff_integral(double t) const;
};

struct FillerReport {
  bool levels_flat = true;            // (i) coefficients independent of (x1, x2)
  bool diameter_decreasing = true;    // (ii)
  bool mean_convex = true;            // (ii) mean curvature vector toward +dt
  double min_mean_curvature = 0.0;
  double max_collar_error = 0.0;      // (iii) |g - e^{-2t}| on [0, 1]
  double splice_jump = 0.0;           // |g(L^-) - g(L)|
  double core_theta_residual = 0.0;   // max |g_theta_theta - rho^2| / rho^3 on rho in (0, rho_max]
  double core_z_residual = 0.0;       // max |g_zz - e^{-2 f(L+1)}| / rho
  double core_rho_max = 0.0;
  double f_max = 0.0;
  double f_slope_max = 0.0;
  double f_curvature_max = 0.0;
  int samples = 0;
  std::vector<double> t;
  std::vector<double> diameter;
  bool ok() const {
    return levels_flat && diameter_decreasing && mean_convex && max_collar_error <= 1e-10 &&
           splice_jump <= 1e-10 && f_max <= 3.0;
  }
};

/// Checks properties (i)-(iii), the splice at t = L and the core chart on
/// `samples` levels t_k = k (L+1) / samples, k = 0..samples-1.
FillerReport verify(const Filler& filler, int samples = 200);

struct AreaLowerBound {
  double rho0 = 0.0;        // min(1, systole / 2)
  double spacing = 0.0;     // ball-center spacing in t
  int n0 = 0;               // last index with 1 + n0 spacing <= L - 1
  double c = 0.0;           // monotonicity constant
  double bound = 0.0;       // (n0 + 1) c e^{-6} rho0^2
  double kappa = 0.0;       // bound / L
  // Same chain with the spacing scaled by rho0 (2 e^{-3} rho0).
  double scaled_spacing = 0.0;
  int scaled_n0 = 0;
  double scaled_bound = 0.0;
};

/// Disjoint-ball count through the levels 1 <= t <= L - 1: balls of radius
/// e^{-3} rho0 centered 2 e^{-3} apart, each carrying area c e^{-6} rho0^2.
AreaLowerBound area_lower_bound(const Filler& filler, double c = 3.141592653589793);

}  // namespace cuspgeo
