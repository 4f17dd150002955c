#pragma once

#include <functional>
#include <vector>

namespace cuspgeo {

/// Value of a scalar function of one variable with its first three
/// derivatives.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

using ScalarProfile = std::function<Jet(double)>;

ScalarProfile constant_profile(double value);
/// c * exp(rate * x)
ScalarProfile exponential_profile(double c, double rate);
/// c * sinh(shift + sign * x), sign = +-1
ScalarProfile sinh_profile(double c, double shift, double sign);
/// c * cosh(shift + sign * x), sign = +-1
ScalarProfile cosh_profile(double c, double shift, double sign);

// Jet arithmetic used to compose profiles.
Jet jet_product(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, double s);
/// exp(-f) for a jet f.
Jet jet_exp_neg(const Jet& f);

/// Natural cubic spline through strictly increasing knots. Evaluation
/// outside the knot range extrapolates the end cubic. The third derivative
/// is piecewise constant.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);
  Jet operator()(double t) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at knots
};

}  // namespace cuspgeo
