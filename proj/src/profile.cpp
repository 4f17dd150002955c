#include "cuspgeo/profile.hpp"

#include <algorithm>
#include <cmath>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

ScalarProfile constant_profile(double value) {
  return [value](double) { return Jet{value, 0.0, 0.0, 0.0}; };
}

ScalarProfile exponential_profile(double c, double rate) {
  return [c, rate](double x) {
    const double e = c * std::exp(rate * x);
    return Jet{e, rate * e, rate * rate * e, rate * rate * rate * e};
  };
}

ScalarProfile sinh_profile(double c, double shift, double sign) {
  return [c, shift, sign](double x) {
    const double s = c * std::sinh(shift + sign * x);
    const double ch = c * std::cosh(shift + sign * x);
    return Jet{s, sign * ch, s, sign * ch};
  };
}

ScalarProfile cosh_profile(double c, double shift, double sign) {
  return [c, shift, sign](double x) {
    const double s = c * std::sinh(shift + sign * x);
    const double ch = c * std::cosh(shift + sign * x);
    return Jet{ch, sign * s, ch, sign * s};
  };
}

Jet jet_product(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

Jet jet_scale(const Jet& a, double s) { return {a.v * s, a.d1 * s, a.d2 * s, a.d3 * s}; }

Jet jet_exp_neg(const Jet& f) {
  // (e^{-f})' = -f' e, '' = (f'^2 - f'') e, ''' = (-f'^3 + 3 f' f'' - f''') e
  const double e = std::exp(-f.v);
  return {e, -f.d1 * e, (f.d1 * f.d1 - f.d2) * e,
          (-f.d1 * f.d1 * f.d1 + 3.0 * f.d1 * f.d2 - f.d3) * e};
}

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw DomainError("spline needs >= 3 knots and matching values");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("spline knots must be strictly increasing");
  }
  // Thomas algorithm on the interior second-derivative system.
  m_.assign(n, 0.0);
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
    c[i] = h1 / diag;
    d[i] = (rhs - h0 * d[i - 1]) / diag;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
  }
}

Jet NaturalCubicSpline::operator()(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  const double v = a * y_[i] + b * y_[i + 1] +
                   ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  const double d1 = (y_[i + 1] - y_[i]) / h +
                    (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
  const double d2 = a * m_[i] + b * m_[i + 1];
  const double d3 = (m_[i + 1] - m_[i]) / h;
  return {v, d1, d2, d3};
}

}  // namespace cuspgeo
