#include "cuspgeo/filler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/chebyshev.hpp>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

namespace {

using std::numbers::pi;

// Slope cutoff 1 - 3x^2 + 2x^3 on [0, 1] and its derivatives.
std::array<double, 3> cutoff(double x) {
  return {1.0 - 3.0 * x * x + 2.0 * x * x * x, -6.0 * x + 6.0 * x * x, -6.0 + 12.0 * x};
}

// sech^2((t-1)/2) with its first two t-derivatives.
std::array<double, 3> ramp_slope(double t) {
  const double th = std::tanh(0.5 * (t - 1.0));
  const double s = 1.0 - th * th;
  return {s, -s * th, s * (th * th - 0.5 * s)};
}

}  // namespace

double ChebyshevPiece::operator()(double x) const {
  const double y = (2.0 * x - lo - hi) / (hi - lo);
  return boost::math::chebyshev_clenshaw_recurrence(coeffs.data(), coeffs.size(), y);
}

ChebyshevPiece chebyshev_fit(const std::function<double(double)>& fn, double lo, double hi,
                             int degree) {
  const int n = degree + 1;
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) {
    const double y = std::cos(pi * (j + 0.5) / n);
    vals[j] = fn(0.5 * (lo + hi) + 0.5 * (hi - lo) * y);
  }
  ChebyshevPiece p{lo, hi, std::vector<double>(n, 0.0)};
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += vals[j] * std::cos(pi * k * (j + 0.5) / n);
    p.coeffs[k] = 2.0 * s / n;
  }
  return p;
}

Filler::Filler(double L, FlatTorusLattice lattice) : L_(L), lattice_(lattice) {
  if (!(L > 10.0) || !std::isfinite(L)) throw DomainError("filler depth L must exceed 10");
  t_ramp_end_ = L - 1.0 / 3.0;
  t_flat_ = L + 2.0 / 3.0;
  f_ramp_end_ = 1.0 + 2.0 * std::tanh(0.5 * (t_ramp_end_ - 1.0));
  f_end_ = f_ramp_end_ + f_cutoff_integral(t_flat_);

  m_ = 2.0 * pi / lattice_.a1() * std::exp(f_end_);
  tau_ = std::min(0.25, 0.5 / m_);
  x_step_ = 1.0 - 2.0 * tau_;
  bump_lo_ = 0.25;
  bump_hi_ = 1.0 - tau_;
  // Total mass of -eta' must be 1: tail m tau, smoothstep m tau / 2, bump rest.
  const double bump_integral = 16.0 / 15.0 * 0.5 * (bump_hi_ - bump_lo_);
  bump_weight_ = (1.0 - 1.5 * m_ * tau_) / bump_integral;
}

double Filler::f_cutoff_integral(double t) const {
  const double a = t_ramp_end_;
  if (t <= a) return 0.0;
  auto integrand = [a](double s) { return ramp_slope(s)[0] * cutoff(s - a)[0]; };
  return boost::math::quadrature::gauss<double, 30>::integrate(integrand, a, t);
}

Jet Filler::f(double t) const {
  if (!(t >= 0.0 && t <= L_ + 1.0)) throw DomainError("f is defined on [0, L+1]");
  if (t <= 1.0) return {t, 1.0, 0.0, 0.0};
  if (t <= t_ramp_end_) {
    const auto s = ramp_slope(t);
    return {1.0 + 2.0 * std::tanh(0.5 * (t - 1.0)), s[0], s[1], s[2]};
  }
  if (t < t_flat_) {
    const auto s = ramp_slope(t);
    const auto c = cutoff(t - t_ramp_end_);
    return {f_ramp_end_ + f_cutoff_integral(t), s[0] * c[0], s[1] * c[0] + s[0] * c[1],
            s[2] * c[0] + 2.0 * s[1] * c[1] + s[0] * c[2]};
  }
  return {f_end_, 0.0, 0.0, 0.0};
}

Jet Filler::eta(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eta is defined on [0, 1]");
  if (x <= bump_lo_) return {1.0, 0.0, 0.0, 0.0};
  if (x >= 1.0 - tau_) return {m_ * (1.0 - x), -m_, 0.0, 0.0};

  // psi = -eta' = m * smoothstep((x - x_step) / tau) + w * (1 - y^2)^2.
  double big = 0.0, psi = 0.0, dpsi = 0.0, ddpsi = 0.0;
  if (x > x_step_) {
    const double y = (x - x_step_) / tau_;
    big += m_ * tau_ * (y * y * y - 0.5 * y * y * y * y);
    psi += m_ * (3.0 * y * y - 2.0 * y * y * y);
    dpsi += m_ / tau_ * (6.0 * y - 6.0 * y * y);
    ddpsi += m_ / (tau_ * tau_) * (6.0 - 12.0 * y);
  }
  const double hw = 0.5 * (bump_hi_ - bump_lo_);
  const double y = (x - 0.5 * (bump_lo_ + bump_hi_)) / hw;
  const double q = 1.0 - y * y;
  big += bump_weight_ * hw * (y - 2.0 * y * y * y / 3.0 + y * y * y * y * y / 5.0 + 8.0 / 15.0);
  psi += bump_weight_ * q * q;
  dpsi += bump_weight_ / hw * (-4.0 * y * q);
  ddpsi += bump_weight_ / (hw * hw) * (-4.0 + 12.0 * y * y);
  return {1.0 - big, -psi, -dpsi, -ddpsi};
}

std::array<double, 3> Filler::metric_at(const Point3& p) const {
  const double t = p.x3;
  if (!(t >= 0.0)) throw DomainError("filler depth must be >= 0");
  if (!(t < L_ + 1.0)) throw DomainError("t >= L+1 is the singular core; use core_chart");
  const double e = std::exp(-2.0 * f(t).v);
  if (t < L_) return {e, e, 1.0};
  const double h = eta(t - L_).v;
  return {e * h * h, e, 1.0};
}

FlatTorusLattice Filler::level_lattice(double t) const {
  if (!(t >= 0.0 && t < L_ + 1.0)) throw DomainError("level must lie in [0, L+1)");
  const double e = std::exp(-f(t).v);
  const double h = t < L_ ? 1.0 : eta(t - L_).v;
  return lattice_.stretched(e * h, e);
}

std::array<double, 3> Filler::core_chart(double rho) const {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("core chart radius must lie in (0, 1]");
  const double t = L_ + 1.0 - rho;
  const double e = std::exp(-2.0 * f(t).v);
  const double h = eta(1.0 - rho).v;
  const double a = lattice_.a1() / (2.0 * pi);
  return {1.0, e * h * h * a * a, e};
}

WarpedMetricSpec Filler::as_warped(double margin) const {
  if (!(margin > 0.0 && margin < 1.0)) throw DomainError("core margin must lie in (0, 1)");
  ScalarProfile ef = [this](double t) { return jet_exp_neg(f(t)); };
  ScalarProfile a1 = [this](double t) {
    const Jet e = jet_exp_neg(f(t));
    return t < L_ ? e : jet_product(e, eta(t - L_));
  };
  return WarpedMetricSpec::diagonal("filler", lattice_, Interval{0.0, L_ + 1.0 - margin}, 1.0,
                                    ef, a1, ef);
}

std::vector<ChebyshevPiece> Filler::f_chebyshev(int degree) const {
  auto fv = [this](double t) { return f(t).v; };
  return {chebyshev_fit(fv, 0.0, 1.0, degree), chebyshev_fit(fv, 1.0, t_ramp_end_, degree),
          chebyshev_fit(fv, t_ramp_end_, t_flat_, degree),
          chebyshev_fit(fv, t_flat_, L_ + 1.0, degree)};
}

std::vector<ChebyshevPiece> Filler::eta_chebyshev(int degree) const {
  auto ev = [this](double x) { return eta(x).v; };
  return {chebyshev_fit(ev, 0.0, bump_lo_, degree), chebyshev_fit(ev, bump_lo_, x_step_, degree),
          chebyshev_fit(ev, x_step_, 1.0 - tau_, degree),
          chebyshev_fit(ev, 1.0 - tau_, 1.0, degree)};
}

FillerReport verify(const Filler& F, int samples) {
  if (samples < 2) throw DomainError("filler verification needs at least 2 samples");
  FillerReport rep;
  rep.samples = samples;
  rep.min_mean_curvature = std::numeric_limits<double>::infinity();
  const double L = F.L();
  const Vec2 probes[3] = {{0.0, 0.0}, {0.37, 0.11}, {-1.3, 2.9}};

  for (int k = 0; k < samples; ++k) {
    const double t = k * (L + 1.0) / samples;
    rep.t.push_back(t);
    const auto m0 = F.metric_at({probes[0].x, probes[0].y, t});
    for (const Vec2& q : probes)
      if (F.metric_at({q.x, q.y, t}) != m0) rep.levels_flat = false;
    rep.diameter.push_back(diameter(F.level_lattice(t)));
    if (k > 0 && !(rep.diameter[k] < rep.diameter[k - 1])) rep.diameter_decreasing = false;

    // Level-torus mean curvature -(a1'/a1 + a2'/a2)/2 with a1 = e^{-f} eta, a2 = e^{-f}.
    const Jet fj = F.f(t);
    double hm = fj.d1;
    if (t >= L) {
      const Jet e = F.eta(t - L);
      hm -= 0.5 * e.d1 / e.v;
    }
    rep.min_mean_curvature = std::min(rep.min_mean_curvature, hm);
  }
  rep.mean_convex = rep.min_mean_curvature > 0.0;

  for (int k = 0; k <= 1000; ++k) {
    const double t = k * (L + 1.0) / 1000.0;
    const Jet fj = F.f(t);
    rep.f_max = std::max(rep.f_max, fj.v);
    rep.f_slope_max = std::max(rep.f_slope_max, std::abs(fj.d1));
    rep.f_curvature_max = std::max(rep.f_curvature_max, std::abs(fj.d2));
  }

  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    const auto m = F.metric_at({0.0, 0.0, t});
    const double e = std::exp(-2.0 * t);
    rep.max_collar_error =
        std::max({rep.max_collar_error, std::abs(m[0] - e), std::abs(m[1] - e), std::abs(m[2] - 1)});
  }

  {
    const double e = std::exp(-2.0 * F.f(L).v);
    const auto at = F.metric_at({0.0, 0.0, L});
    rep.splice_jump = std::max(std::abs(at[0] - e), std::abs(at[1] - e));
  }

  rep.core_rho_max = 0.1;
  const double ez = std::exp(-2.0 * F.f_end());
  for (int k = 0; k <= 80; ++k) {
    const double rho = rep.core_rho_max * std::pow(10.0, -5.0 * k / 80.0);
    const auto c = F.core_chart(rho);
    rep.core_theta_residual =
        std::max(rep.core_theta_residual, std::abs(c[1] - rho * rho) / (rho * rho * rho));
    rep.core_z_residual = std::max(rep.core_z_residual, std::abs(c[2] - ez) / rho);
  }
  return rep;
}

AreaLowerBound area_lower_bound(const Filler& F, double c) {
  if (!(c > 0.0)) throw DomainError("monotonicity constant must be positive");
  const double sys = systole(F.lattice());
  if (!(sys > 0.0)) throw DomainError("systole must be positive");
  AreaLowerBound r;
  r.c = c;
  r.rho0 = std::min(1.0, 0.5 * sys);
  const double ball = c * std::exp(-6.0) * r.rho0 * r.rho0;
  // Centers t_n = 1 + n * spacing for t_n <= L - 1.
  r.spacing = 2.0 * std::exp(-3.0);
  r.n0 = int(std::floor((F.L() - 2.0) / r.spacing));
  r.bound = (r.n0 + 1) * ball;
  r.kappa = r.bound / F.L();
  r.scaled_spacing = r.spacing * r.rho0;
  r.scaled_n0 = int(std::floor((F.L() - 2.0) / r.scaled_spacing));
  r.scaled_bound = (r.scaled_n0 + 1) * ball;
  return r;
}

}  // namespace cuspgeo
