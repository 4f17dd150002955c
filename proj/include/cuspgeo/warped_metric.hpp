#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/profile.hpp"

namespace cuspgeo {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct Point3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double length() const { return hi - lo; }
};

/// Coefficients a_kl of g = a_kl dx_k dx_l at a point, with their partial
/// derivatives up to order three: d1[i] = d_i a, d2[i][j] = d_i d_j a, ...
/// Indices are 0-based here (x1, x2, x3 -> 0, 1, 2).
struct MetricJet {
  Mat3 a{};
  std::array<Mat3, 3> d1{};
  std::array<std::array<Mat3, 3>, 3> d2{};
  std::array<std::array<std::array<Mat3, 3>, 3>, 3> d3{};
};

using CoefficientField = std::function<MetricJet(const Point3&)>;

/// n_p(k_1..k_p): how many of the (1-based) indices lie in {1, 2}.
int tangential_count(std::span<const int> indices);

/// A metric g = a_kl dx_k dx_l on T x [a, b] together with its reference
/// warped metric  gbar = s^2 h(x3)^2 (dx1^2 + dx2^2) + dx3^2.
///
/// (x1, x2) are the coordinates in which `lattice` is given; s is the
/// reference scale that makes s*(x1, x2) orthonormal for the reference flat
/// torus, and h is the normalized warping. The hypothesis constants only see
/// the product s*h ("effective warping").
///
/// Diagonal specs (a_kl = diag(a1^2, a2^2, 1), a1 and a2 functions of x3)
/// additionally expose a1 and a2; everything in minimal_graph needs them.
class WarpedMetricSpec {
 public:
  static WarpedMetricSpec diagonal(std::string kind, FlatTorusLattice lattice, Interval interval,
                                   double reference_scale, ScalarProfile h, ScalarProfile a1,
                                   ScalarProfile a2, bool closed_form = true);
  static WarpedMetricSpec general(std::string kind, FlatTorusLattice lattice, Interval interval,
                                  double reference_scale, ScalarProfile h, CoefficientField a,
                                  bool closed_form = true);

  const std::string& kind() const { return kind_; }
  const FlatTorusLattice& lattice() const { return lattice_; }
  Interval interval() const { return interval_; }
  double reference_scale() const { return reference_scale_; }
  bool is_diagonal() const { return static_cast<bool>(a1_); }
  bool closed_form() const { return closed_form_; }

  Jet warping(double x3) const { return h_(x3); }
  Jet effective_warping(double x3) const { return jet_scale(h_(x3), reference_scale_); }

  /// Diagonal factors; UnsupportedError for general specs.
  Jet a1(double x3) const;
  Jet a2(double x3) const;

  MetricJet jet(const Point3& p) const { return coeffs_(p); }
  Mat3 coefficients(const Point3& p) const { return coeffs_(p).a; }
  /// a_kl / s^{n_2(k,l)}: the coefficients in reference-orthonormal
  /// coordinates s*(x1, x2).
  Mat3 normalized_coefficients(const Point3& p) const;

 private:
  WarpedMetricSpec() = default;

  std::string kind_;
  FlatTorusLattice lattice_ = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);
  Interval interval_;
  double reference_scale_ = 1.0;
  bool closed_form_ = true;
  ScalarProfile h_;
  ScalarProfile a1_;
  ScalarProfile a2_;
  CoefficientField coeffs_;
};

/// g = gbar = dx1^2 + dx2^2 + dx3^2.
WarpedMetricSpec flat_spec(const FlatTorusLattice& lattice, Interval interval);

/// Cusp end: g = gbar = e^{-2 x3} dsigma^2 + dx3^2.
WarpedMetricSpec cusp_spec(const FlatTorusLattice& lattice, Interval interval);

/// Diagonal spec from samples on x3 knots, interpolated with natural cubic
/// splines (closed_form() == false).
WarpedMetricSpec sampled_spec(const FlatTorusLattice& lattice, Interval interval,
                              double reference_scale, std::vector<double> knots,
                              std::vector<double> h, std::vector<double> a1,
                              std::vector<double> a2);

struct HypothesisReport {
  /// Smallest A with A^-2 gbar <= g <= A^2 gbar on the grid.
  double a_h1 = 1.0;
  /// max of |h'|/h, |h''|/h, |h'''|/h.
  double a_h2 = 0.0;
  std::array<double, 3> a_h2_terms{};
  double a_h2_argmax = 0.0;
  /// max over derivative orders 0..3 of |d^p a_kl| / (s h)^{n_{p+2}}.
  double a_h3 = 0.0;
  std::array<double, 4> a_h3_by_order{};
  bool h_monotone = true;  // h' <= 0 at every sample
  bool mean_convex = true; // level-torus mean curvature >= 0 (toward +x3)
  double min_mean_curvature = 0.0;
  int grid_points = 0;     // per axis
  Interval window;
};

/// Empirical suprema of the H1-H4 quantities over a grid with `grid` points
/// per axis on the fundamental domain times `window` (default: the whole
/// interval). Throws DomainError naming the point if a coefficient sample is
/// not positive definite.
HypothesisReport check_hypotheses(const WarpedMetricSpec& spec, int grid,
                                  std::optional<Interval> window = std::nullopt);

/// Blow-up at level s by factor lambda:
///   y = (x1, x2, lambda (x3 - s)),  b_kl(y) = a_kl(y1, y2, y3/lambda + s) lambda^{n_2(k,l)},
/// warping h(y3/lambda + s) / h(s). The reference scale becomes
/// lambda * s * h(s), so with lambda = 1/h(s) it is unchanged.
WarpedMetricSpec blowup_rescale(const WarpedMetricSpec& spec, double level, double lambda);

/// Mean curvature of T_s for a diagonal spec, -(a1'/a1 + a2'/a2)/2: the mean
/// of the principal curvatures with respect to the unit normal +d/dx3.
/// Positive means the mean curvature vector points toward increasing x3.
double level_torus_mean_curvature(const WarpedMetricSpec& spec, double level);

/// Same quantity for any spec, from the divergence of the unit normal
/// grad x3 / |grad x3| at a point.
double level_set_mean_curvature(const WarpedMetricSpec& spec, const Point3& p);

}  // namespace cuspgeo
