#include "cuspgeo/warped_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

namespace {

int tangential0(std::initializer_list<int> idx) {
  int n = 0;
  for (int k : idx) n += (k < 2) ? 1 : 0;
  return n;
}

MetricJet diagonal_jet(const Jet& p, const Jet& q) {
  // a_11 = p^2, a_22 = q^2, a_33 = 1, all depending on x3 only.
  auto sq = [](const Jet& f) { return jet_product(f, f); };
  const Jet pp = sq(p);
  const Jet qq = sq(q);
  MetricJet m;
  m.a[0][0] = pp.v;
  m.a[1][1] = qq.v;
  m.a[2][2] = 1.0;
  m.d1[2][0][0] = pp.d1;
  m.d1[2][1][1] = qq.d1;
  m.d2[2][2][0][0] = pp.d2;
  m.d2[2][2][1][1] = qq.d2;
  m.d3[2][2][2][0][0] = pp.d3;
  m.d3[2][2][2][1][1] = qq.d3;
  return m;
}

std::string point_str(const Point3& p) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << p.x1 << ", " << p.x2 << ", " << p.x3 << ")";
  return os.str();
}

Eigen::Matrix3d to_eigen(const Mat3& a) {
  Eigen::Matrix3d m;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) m(k, l) = a[k][l];
  return m;
}

void require_interval(Interval iv) {
  if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
    throw DomainError("metric interval must satisfy a <= b");
}

}  // namespace

int tangential_count(std::span<const int> indices) {
  int n = 0;
  for (int k : indices) {
    if (k < 1 || k > 3) throw DomainError("index must be 1, 2 or 3");
    n += (k <= 2) ? 1 : 0;
  }
  return n;
}

WarpedMetricSpec WarpedMetricSpec::diagonal(std::string kind, FlatTorusLattice lattice,
                                            Interval interval, double reference_scale,
                                            ScalarProfile h, ScalarProfile a1, ScalarProfile a2,
                                            bool closed_form) {
  require_interval(interval);
  if (!(reference_scale > 0.0)) throw DomainError("reference scale must be positive");
  WarpedMetricSpec s;
  s.kind_ = std::move(kind);
  s.lattice_ = lattice;
  s.interval_ = interval;
  s.reference_scale_ = reference_scale;
  s.closed_form_ = closed_form;
  s.h_ = std::move(h);
  s.a1_ = std::move(a1);
  s.a2_ = std::move(a2);
  s.coeffs_ = [p = s.a1_, q = s.a2_](const Point3& x) { return diagonal_jet(p(x.x3), q(x.x3)); };
  return s;
}

WarpedMetricSpec WarpedMetricSpec::general(std::string kind, FlatTorusLattice lattice,
                                           Interval interval, double reference_scale,
                                           ScalarProfile h, CoefficientField a, bool closed_form) {
  require_interval(interval);
  if (!(reference_scale > 0.0)) throw DomainError("reference scale must be positive");
  WarpedMetricSpec s;
  s.kind_ = std::move(kind);
  s.lattice_ = lattice;
  s.interval_ = interval;
  s.reference_scale_ = reference_scale;
  s.closed_form_ = closed_form;
  s.h_ = std::move(h);
  s.coeffs_ = std::move(a);
  return s;
}

Jet WarpedMetricSpec::a1(double x3) const {
  if (!a1_) throw UnsupportedError("metric '" + kind_ + "' is not diagonal");
  return a1_(x3);
}

Jet WarpedMetricSpec::a2(double x3) const {
  if (!a2_) throw UnsupportedError("metric '" + kind_ + "' is not diagonal");
  return a2_(x3);
}

Mat3 WarpedMetricSpec::normalized_coefficients(const Point3& p) const {
  Mat3 a = coefficients(p);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) a[k][l] /= std::pow(reference_scale_, tangential0({k, l}));
  return a;
}

WarpedMetricSpec flat_spec(const FlatTorusLattice& lattice, Interval interval) {
  return WarpedMetricSpec::diagonal("flat", lattice, interval, 1.0, constant_profile(1.0),
                                    constant_profile(1.0), constant_profile(1.0));
}

WarpedMetricSpec cusp_spec(const FlatTorusLattice& lattice, Interval interval) {
  const auto e = exponential_profile(1.0, -1.0);
  return WarpedMetricSpec::diagonal("cusp", lattice, interval, 1.0, e, e, e);
}

WarpedMetricSpec sampled_spec(const FlatTorusLattice& lattice, Interval interval,
                              double reference_scale, std::vector<double> knots,
                              std::vector<double> h, std::vector<double> a1,
                              std::vector<double> a2) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw DomainError("warping samples must be positive");
  }
  for (std::size_t i = 0; i < a1.size() && i < a2.size(); ++i) {
    if (!(a1[i] > 0.0 && a2[i] > 0.0)) throw DomainError("coefficient samples must be positive");
  }
  if (knots.empty() || interval.lo < knots.front() || interval.hi > knots.back())
    throw DomainError("sample knots must cover the metric interval");
  auto wrap = [](NaturalCubicSpline s) -> ScalarProfile {
    return [s = std::move(s)](double x) { return s(x); };
  };
  return WarpedMetricSpec::diagonal("custom", lattice, interval, reference_scale,
                                    wrap(NaturalCubicSpline(knots, std::move(h))),
                                    wrap(NaturalCubicSpline(knots, std::move(a1))),
                                    wrap(NaturalCubicSpline(knots, std::move(a2))), false);
}

HypothesisReport check_hypotheses(const WarpedMetricSpec& spec, int grid,
                                  std::optional<Interval> window) {
  if (grid < 8) throw DomainError("hypothesis grid needs at least 8 points per axis");
  const Interval iv = window.value_or(spec.interval());
  if (iv.lo < spec.interval().lo || iv.hi > spec.interval().hi || iv.lo > iv.hi)
    throw DomainError("window must lie inside the metric interval");

  HypothesisReport rep;
  rep.grid_points = grid;
  rep.window = iv;
  rep.min_mean_curvature = std::numeric_limits<double>::infinity();
  double best_h2 = -1.0;
  const Vec2 v1 = spec.lattice().v1();
  const Vec2 v2 = spec.lattice().v2();
  const bool x3_only = spec.is_diagonal();

  for (int i3 = 0; i3 < grid; ++i3) {
    const double x3 = (i3 == grid - 1) ? iv.hi : iv.lo + iv.length() * i3 / (grid - 1);
    const Jet h = spec.warping(x3);
    if (!(h.v > 0.0)) throw DomainError("warping not positive at x3 = " + std::to_string(x3));
    const std::array<double, 3> h2{std::abs(h.d1) / h.v, std::abs(h.d2) / h.v,
                                   std::abs(h.d3) / h.v};
    const double h2max = std::max({h2[0], h2[1], h2[2]});
    for (int k = 0; k < 3; ++k) rep.a_h2_terms[k] = std::max(rep.a_h2_terms[k], h2[k]);
    if (h2max > best_h2) {
      best_h2 = h2max;
      rep.a_h2_argmax = x3;
    }
    if (h.d1 > 0.0) rep.h_monotone = false;

    const double w = spec.reference_scale() * h.v;
    const double wpow[6] = {1.0, w, w * w, w * w * w, w * w * w * w, w * w * w * w * w};
    const Eigen::Vector3d dinv(1.0 / w, 1.0 / w, 1.0);

    // Coefficients depending on x3 only need a single tangential sample.
    const int n12 = x3_only ? 1 : grid;
    for (int i1 = 0; i1 < n12; ++i1) {
      for (int i2 = 0; i2 < n12; ++i2) {
        const Vec2 xy = v1 * (double(i1) / grid) + v2 * (double(i2) / grid);
        const Point3 p{xy.x, xy.y, x3};
        const MetricJet m = spec.jet(p);

        const Eigen::Matrix3d a = to_eigen(m.a);
        if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * a.cwiseAbs().maxCoeff())
          throw DomainError("coefficients not symmetric at " + point_str(p));
        const Eigen::Matrix3d scaled = dinv.asDiagonal() * a * dinv.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scaled, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues()(0);
        const double lmax = es.eigenvalues()(2);
        if (!(lmin > 0.0))
          throw DomainError("coefficients not positive definite at " + point_str(p));
        rep.a_h1 = std::max({rep.a_h1, std::sqrt(lmax), 1.0 / std::sqrt(lmin)});

        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) {
            auto& o = rep.a_h3_by_order;
            o[0] = std::max(o[0], std::abs(m.a[k][l]) / wpow[tangential0({k, l})]);
            for (int i = 0; i < 3; ++i) {
              o[1] = std::max(o[1], std::abs(m.d1[i][k][l]) / wpow[tangential0({k, l, i})]);
              for (int j = 0; j < 3; ++j) {
                o[2] = std::max(o[2],
                                std::abs(m.d2[i][j][k][l]) / wpow[tangential0({k, l, i, j})]);
                for (int q = 0; q < 3; ++q) {
                  o[3] = std::max(o[3], std::abs(m.d3[i][j][q][k][l]) /
                                            wpow[tangential0({k, l, i, j, q})]);
                }
              }
            }
          }
        }

        const double hm = level_set_mean_curvature(spec, p);
        rep.min_mean_curvature = std::min(rep.min_mean_curvature, hm);
      }
    }
  }
  rep.a_h2 = best_h2;
  rep.a_h3 = *std::max_element(rep.a_h3_by_order.begin(), rep.a_h3_by_order.end());
  rep.mean_convex = rep.min_mean_curvature >= -1e-12;
  return rep;
}

WarpedMetricSpec blowup_rescale(const WarpedMetricSpec& spec, double level, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("blow-up factor must be > 0");
  const Interval iv = spec.interval();
  if (!iv.contains(level)) throw DomainError("blow-up level outside the metric interval");
  const Interval out{lambda * (iv.lo - level), lambda * (iv.hi - level)};
  if (!(out.hi > out.lo)) throw DomainError("blown-up interval is empty");

  const double hs = spec.warping(level).v;
  const double l2 = 1.0 / lambda;
  const double l3 = l2 * l2;
  const double l4 = l3 * l2;
  ScalarProfile h = [spec, level, lambda, hs, l2, l3, l4](double y) {
    const Jet j = spec.warping(y / lambda + level);
    return Jet{j.v / hs, j.d1 * l2 / hs, j.d2 * l3 / hs, j.d3 * l4 / hs};
  };
  const double scale = lambda * spec.reference_scale() * hs;
  const std::string kind = spec.kind() + "/blowup";

  if (spec.is_diagonal()) {
    // b_11 = lambda^2 a_11, so the diagonal factors scale by lambda.
    auto factor = [spec, level, lambda, l2, l3](bool first) -> ScalarProfile {
      return [=](double y) {
        const Jet j = first ? spec.a1(y / lambda + level) : spec.a2(y / lambda + level);
        return Jet{lambda * j.v, j.d1, j.d2 * l2, j.d3 * l3};
      };
    };
    return WarpedMetricSpec::diagonal(kind, spec.lattice(), out, scale, h, factor(true),
                                      factor(false), spec.closed_form());
  }

  CoefficientField a = [spec, level, lambda](const Point3& y) {
    const MetricJet m = spec.jet({y.x1, y.x2, y.x3 / lambda + level});
    auto dscale = [lambda](std::initializer_list<int> d) {
      // each d/dy3 contributes 1/lambda
      double s = 1.0;
      for (int i : d) s *= (i == 2) ? 1.0 / lambda : 1.0;
      return s;
    };
    MetricJet b;
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const double c = std::pow(lambda, tangential0({k, l}));
        b.a[k][l] = c * m.a[k][l];
        for (int i = 0; i < 3; ++i) {
          b.d1[i][k][l] = c * dscale({i}) * m.d1[i][k][l];
          for (int j = 0; j < 3; ++j) {
            b.d2[i][j][k][l] = c * dscale({i, j}) * m.d2[i][j][k][l];
            for (int q = 0; q < 3; ++q)
              b.d3[i][j][q][k][l] = c * dscale({i, j, q}) * m.d3[i][j][q][k][l];
          }
        }
      }
    }
    return b;
  };
  return WarpedMetricSpec::general(kind, spec.lattice(), out, scale, h, a, spec.closed_form());
}

double level_torus_mean_curvature(const WarpedMetricSpec& spec, double level) {
  if (!spec.is_diagonal())
    throw UnsupportedError("level-torus mean curvature needs a diagonal metric");
  if (!spec.interval().contains(level)) throw DomainError("level outside the metric interval");
  const Jet p = spec.a1(level);
  const Jet q = spec.a2(level);
  return -0.5 * (p.d1 / p.v + q.d1 / q.v);
}

double level_set_mean_curvature(const WarpedMetricSpec& spec, const Point3& x) {
  // N = grad x3 / |grad x3|, N^k = g^{k3} / sqrt(g^{33}); H = -div(N) / 2.
  const MetricJet m = spec.jet(x);
  const Eigen::Matrix3d g = to_eigen(m.a);
  const Eigen::Matrix3d gi = g.inverse();
  const double g33 = gi(2, 2);
  const double rs = 1.0 / std::sqrt(g33);
  double div = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Matrix3d dg = to_eigen(m.d1[k]);
    const Eigen::Matrix3d dgi = -gi * dg * gi;
    const double nk = gi(k, 2) * rs;
    const double dnk = dgi(k, 2) * rs - 0.5 * gi(k, 2) * dgi(2, 2) * rs / g33;
    const double dlogvol = 0.5 * (gi * dg).trace();
    div += dnk + nk * dlogvol;
  }
  return -0.5 * div;
}

}  // namespace cuspgeo
