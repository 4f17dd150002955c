#include "cuspgeo/minimal_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {

namespace {

void check_grid(const DiscreteGraph& g) {
  if (g.n1 < 4 || g.n2 < 4) throw DomainError("grid needs at least 4 nodes per axis");
  if (g.u.size() != std::size_t(g.n1) * g.n2) throw DomainError("grid values have wrong size");
  if (!(g.cell_weight() > 0.0)) throw DomainError("grid cell has zero area");
  for (double x : g.u)
    if (!std::isfinite(x)) throw DomainError("graph values must be finite");
}

void check_range(const WarpedMetricSpec& spec, const DiscreteGraph& g) {
  const Interval iv = spec.interval();
  for (double x : g.u)
    if (!iv.contains(x)) throw DomainError("graph leaves the metric interval at x3 = " +
                                           std::to_string(x));
}

void require_diagonal(const WarpedMetricSpec& spec) {
  if (!spec.is_diagonal()) throw UnsupportedError("graph operators need a diagonal metric");
}

// Dual basis: p = M (d_e1 u, d_e2 u) with M = (E^T)^{-1}, E = [e1 e2].
struct Dual {
  double m11, m12, m21, m22;
  explicit Dual(const DiscreteGraph& g) {
    const double det = cross(g.e1, g.e2);
    m11 = g.e2.y / det;
    m12 = -g.e1.y / det;
    m21 = -g.e2.x / det;
    m22 = g.e1.x / det;
  }
};

// W = sqrt(Q), Q = A B + B p1^2 + A p2^2 with A = a1^2, B = a2^2 functions of u.
struct LocalW {
  double w;
  std::array<double, 3> d;                  // d/d(u, p1, p2)
  std::array<std::array<double, 3>, 3> dd;  // second derivatives
};

struct Coeff {
  double A, Ap, App, B, Bp, Bpp;
};

Coeff coeff_at(const WarpedMetricSpec& spec, double u) {
  const Jet p = spec.a1(u);
  const Jet q = spec.a2(u);
  return {p.v * p.v, 2.0 * p.v * p.d1, 2.0 * (p.d1 * p.d1 + p.v * p.d2),
          q.v * q.v, 2.0 * q.v * q.d1, 2.0 * (q.d1 * q.d1 + q.v * q.d2)};
}

LocalW local_w(const Coeff& c, double p1, double p2, bool second) {
  const double Q = c.A * c.B + c.B * p1 * p1 + c.A * p2 * p2;
  const double W = std::sqrt(Q);
  const std::array<double, 3> dQ{c.Ap * c.B + c.A * c.Bp + c.Bp * p1 * p1 + c.Ap * p2 * p2,
                                 2.0 * c.B * p1, 2.0 * c.A * p2};
  LocalW r{};
  r.w = W;
  for (int i = 0; i < 3; ++i) r.d[i] = dQ[i] / (2.0 * W);
  if (second) {
    std::array<std::array<double, 3>, 3> ddQ{};
    ddQ[0][0] = c.App * c.B + 2.0 * c.Ap * c.Bp + c.A * c.Bpp + c.Bpp * p1 * p1 + c.App * p2 * p2;
    ddQ[0][1] = ddQ[1][0] = 2.0 * c.Bp * p1;
    ddQ[0][2] = ddQ[2][0] = 2.0 * c.Ap * p2;
    ddQ[1][1] = 2.0 * c.B;
    ddQ[2][2] = 2.0 * c.A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.dd[i][j] = ddQ[i][j] / (2.0 * W) - dQ[i] * dQ[j] / (4.0 * W * W * W);
  }
  return r;
}

// Visits every (cell, corner) pair. The callback gets the node indices
// (corner, neighbour along e1, neighbour along e2) and the 3x3 chain matrix L
// with (u, p1, p2) = L (u_c, u_n1, u_n2).
template <class F>
void for_each_corner(const DiscreteGraph& g, F&& f) {
  const Dual m(g);
  const int c1 = g.b1 == Boundary::Periodic ? g.n1 : g.n1 - 1;
  const int c2 = g.b2 == Boundary::Periodic ? g.n2 : g.n2 - 1;
  auto idx = [&](int i1, int i2) { return g.index(i1 % g.n1, i2 % g.n2); };
  for (int i2 = 0; i2 < c2; ++i2) {
    for (int i1 = 0; i1 < c1; ++i1) {
      for (int corner = 0; corner < 4; ++corner) {
        const int o1 = corner & 1;
        const int o2 = corner >> 1;
        const double s1 = o1 ? -1.0 : 1.0;
        const double s2 = o2 ? -1.0 : 1.0;
        const std::array<std::size_t, 3> nodes{idx(i1 + o1, i2 + o2), idx(i1 + 1 - o1, i2 + o2),
                                               idx(i1 + o1, i2 + 1 - o2)};
        // p = M (s1 (u_n1 - u_c), s2 (u_n2 - u_c))
        std::array<std::array<double, 3>, 3> L{};
        L[0] = {1.0, 0.0, 0.0};
        L[1] = {-(m.m11 * s1 + m.m12 * s2), m.m11 * s1, m.m12 * s2};
        L[2] = {-(m.m21 * s1 + m.m22 * s2), m.m21 * s1, m.m22 * s2};
        f(nodes, L);
      }
    }
  }
}

std::vector<char> fixed_mask(const DiscreteGraph& g) {
  std::vector<char> fixed(g.size(), 0);
  for (int i2 = 0; i2 < g.n2; ++i2)
    for (int i1 = 0; i1 < g.n1; ++i1) fixed[g.index(i1, i2)] = g.is_fixed(i1, i2) ? 1 : 0;
  return fixed;
}

// Gradient (and optionally Hessian triplets) of the discrete area.
struct AreaDerivs {
  double area = 0.0;
  std::vector<double> grad;
  std::vector<Eigen::Triplet<double>> hess;
};

AreaDerivs area_derivs(const WarpedMetricSpec& spec, const DiscreteGraph& g, bool grad,
                       bool hess) {
  AreaDerivs r;
  if (grad) r.grad.assign(g.size(), 0.0);
  const double q = 0.25 * g.cell_weight();
  for_each_corner(g, [&](const std::array<std::size_t, 3>& n,
                         const std::array<std::array<double, 3>, 3>& L) {
    const double uc = g.u[n[0]];
    const double d1 = g.u[n[1]] - uc;
    const double d2 = g.u[n[2]] - uc;
    const double p1 = L[1][1] * d1 + L[1][2] * d2;
    const double p2 = L[2][1] * d1 + L[2][2] * d2;
    const LocalW w = local_w(coeff_at(spec, uc), p1, p2, hess);
    r.area += q * w.w;
    if (grad) {
      for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += L[i][a] * w.d[i];
        r.grad[n[a]] += q * s;
      }
    }
    if (hess) {
      // L^T dd L
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          double s = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += L[i][a] * w.dd[i][j] * L[j][b];
          r.hess.emplace_back(int(n[a]), int(n[b]), q * s);
        }
      }
    }
  });
  return r;
}

}  // namespace

bool DiscreteGraph::is_fixed(int i1, int i2) const {
  return (b1 == Boundary::Dirichlet && (i1 == 0 || i1 == n1 - 1)) ||
         (b2 == Boundary::Dirichlet && (i2 == 0 || i2 == n2 - 1));
}

DiscreteGraph DiscreteGraph::torus(const FlatTorusLattice& lattice, int n1, int n2,
                                   double value) {
  if (n1 < 4 || n2 < 4) throw DomainError("grid needs at least 4 nodes per axis");
  DiscreteGraph g;
  g.n1 = n1;
  g.n2 = n2;
  g.e1 = lattice.v1() * (1.0 / n1);
  g.e2 = lattice.v2() * (1.0 / n2);
  g.b1 = g.b2 = Boundary::Periodic;
  g.u.assign(std::size_t(n1) * n2, value);
  return g;
}

DiscreteGraph DiscreteGraph::rect(Vec2 lo, Vec2 hi, int n1, int n2, double value) {
  if (n1 < 4 || n2 < 4) throw DomainError("grid needs at least 4 nodes per axis");
  if (!(hi.x > lo.x && hi.y > lo.y)) throw DomainError("rectangle must have positive size");
  DiscreteGraph g;
  g.n1 = n1;
  g.n2 = n2;
  g.e1 = {(hi.x - lo.x) / (n1 - 1), 0.0};
  g.e2 = {0.0, (hi.y - lo.y) / (n2 - 1)};
  g.origin = lo;
  g.b1 = g.b2 = Boundary::Dirichlet;
  g.u.assign(std::size_t(n1) * n2, value);
  return g;
}

DiscreteGraph DiscreteGraph::stripe(double period, double x2_lo, double x2_hi, int n1, int n2,
                                    double value) {
  if (n1 < 4 || n2 < 4) throw DomainError("grid needs at least 4 nodes per axis");
  if (!(period > 0.0 && x2_hi > x2_lo)) throw DomainError("stripe must have positive size");
  DiscreteGraph g;
  g.n1 = n1;
  g.n2 = n2;
  g.e1 = {period / n1, 0.0};
  g.e2 = {0.0, (x2_hi - x2_lo) / (n2 - 1)};
  g.origin = {0.0, x2_lo};
  g.b1 = Boundary::Periodic;
  g.b2 = Boundary::Dirichlet;
  g.u.assign(std::size_t(n1) * n2, value);
  return g;
}

double area(const WarpedMetricSpec& spec, const DiscreteGraph& g) {
  require_diagonal(spec);
  check_grid(g);
  check_range(spec, g);
  return area_derivs(spec, g, false, false).area;
}

std::vector<double> el_residual(const WarpedMetricSpec& spec, const DiscreteGraph& g) {
  require_diagonal(spec);
  check_grid(g);
  check_range(spec, g);
  AreaDerivs d = area_derivs(spec, g, true, false);
  const double w = g.cell_weight();
  const auto fixed = fixed_mask(g);
  for (std::size_t i = 0; i < d.grad.size(); ++i) d.grad[i] = fixed[i] ? 0.0 : -d.grad[i] / w;
  return d.grad;
}

double first_variation(const WarpedMetricSpec& spec, const DiscreteGraph& g,
                       const std::vector<double>& v) {
  require_diagonal(spec);
  check_grid(g);
  if (v.size() != g.size()) throw DomainError("variation field has wrong shape");
  check_range(spec, g);
  const AreaDerivs d = area_derivs(spec, g, true, false);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += d.grad[i] * v[i];
  return s;
}

SolveResult solve(const WarpedMetricSpec& spec, const DiscreteGraph& init,
                  const SolveOptions& opts) {
  require_diagonal(spec);
  check_grid(init);
  check_range(spec, init);
  if (!(opts.tol > 0.0)) throw DomainError("solver tolerance must be positive");

  const auto fixed = fixed_mask(init);
  std::vector<int> slot(init.size(), -1);
  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < init.size(); ++i) {
    if (!fixed[i]) {
      slot[i] = int(free_nodes.size());
      free_nodes.push_back(i);
    }
  }
  const int nf = int(free_nodes.size());
  if (nf == 0) throw DomainError("grid has no free nodes");
  const double w = init.cell_weight();
  const bool all_periodic = init.b1 == Boundary::Periodic && init.b2 == Boundary::Periodic;

  SolveResult res;
  res.graph = init;
  DiscreteGraph& g = res.graph;

  // Residual on free nodes; nullopt if u left the metric interval.
  auto residual = [&](const DiscreteGraph& x) -> std::optional<Eigen::VectorXd> {
    try {
      const auto r = el_residual(spec, x);
      Eigen::VectorXd out(nf);
      for (int k = 0; k < nf; ++k) out(k) = r[free_nodes[k]];
      if (!out.allFinite()) return std::nullopt;
      return out;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  auto merit = [](const std::optional<Eigen::VectorXd>& r) {
    return r ? 0.5 * r->squaredNorm() : std::numeric_limits<double>::infinity();
  };
  auto stepped = [&](const Eigen::VectorXd& d, double alpha) {
    DiscreteGraph x = g;
    for (int k = 0; k < nf; ++k) x.u[free_nodes[k]] += alpha * d(k);
    return x;
  };

  auto r = residual(g);
  if (!r) throw DomainError("initial graph is outside the metric interval");
  bool pin_checked = false;

  for (int it = 0;; ++it) {
    const double rmax = r->lpNorm<Eigen::Infinity>();
    res.residual_history.push_back(rmax);
    if (rmax <= opts.tol) {
      res.iterations = it;
      break;
    }
    if (it >= opts.max_iterations)
      throw ConvergenceError("Newton solver did not converge in " +
                                 std::to_string(opts.max_iterations) + " iterations",
                             rmax);

    // Hessian of the area restricted to free nodes. J = -H / w.
    const AreaDerivs d = area_derivs(spec, g, false, true);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(d.hess.size() + 2 * std::size_t(nf));
    for (const auto& t : d.hess) {
      const int a = slot[t.row()];
      const int b = slot[t.col()];
      if (a >= 0 && b >= 0) trip.emplace_back(a, b, t.value());
    }
    Eigen::SparseMatrix<double> H(nf, nf);
    H.setFromTriplets(trip.begin(), trip.end());

    if (all_periodic && !pin_checked) {
      // Near-kernel test on constants against the largest singular value
      // (power iteration on H^T H; H is symmetric).
      pin_checked = true;
      Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(nf, 1.0, 2.0);
      double smax = 0.0;
      for (int k = 0; k < 60; ++k) {
        Eigen::VectorXd y = H * x;
        smax = y.norm() / x.norm();
        if (smax == 0.0) break;
        x = y / y.norm();
      }
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(nf);
      const double kernel = (H * ones).norm() / ones.norm();
      res.mean_pinned = kernel <= 1e-10 * smax;
    }

    Eigen::VectorXd dir;
    const Eigen::VectorXd rhs = w * (*r);  // H d = w r  <=>  J d = -r
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    if (res.mean_pinned) {
      for (int k = 0; k < nf; ++k) {
        trip.emplace_back(k, nf, 1.0);
        trip.emplace_back(nf, k, 1.0);
      }
      Eigen::SparseMatrix<double> B(nf + 1, nf + 1);
      B.setFromTriplets(trip.begin(), trip.end());
      lu.compute(B);
      if (lu.info() != Eigen::Success)
        throw SingularJacobianError("bordered Jacobian is singular", rmax);
      Eigen::VectorXd rb(nf + 1);
      rb << rhs, 0.0;
      dir = lu.solve(rb).head(nf);
    } else {
      lu.compute(H);
      if (lu.info() != Eigen::Success) throw SingularJacobianError("Jacobian is singular", rmax);
      dir = lu.solve(rhs);
    }
    if (!dir.allFinite()) throw SingularJacobianError("Jacobian is singular", rmax);

    const double phi = merit(r);
    constexpr double c_armijo = 1e-4;
    bool accepted = false;
    for (double alpha = 1.0; alpha >= 1e-10; alpha *= 0.5) {
      DiscreteGraph trial = stepped(dir, alpha);
      auto rt = residual(trial);
      if (merit(rt) <= (1.0 - 2.0 * c_armijo * alpha) * phi) {
        g = std::move(trial);
        r = std::move(rt);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Steepest descent on |r|^2 / 2: -grad = -J^T r = H r / w.
      const Eigen::VectorXd gd = (H * (*r)) / w;
      const double slope = gd.squaredNorm();
      for (double alpha = 1.0; alpha >= 1e-14 && slope > 0.0; alpha *= 0.5) {
        DiscreteGraph trial = stepped(gd, alpha);
        auto rt = residual(trial);
        if (merit(rt) <= phi - c_armijo * alpha * slope) {
          g = std::move(trial);
          r = std::move(rt);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) throw ConvergenceError("line search failed to reduce the residual", rmax);
  }

  double kw = 0.0;
  for (double x : g.u) {
    const double a = spec.a1(x).v * spec.a2(x).v;
    kw = std::max(kw, 0.5 / a);
  }
  res.kappa_w = kw;
  return res;
}

std::vector<double> graph_mean_curvature(const WarpedMetricSpec& spec, const DiscreteGraph& g) {
  require_diagonal(spec);
  check_grid(g);
  check_range(spec, g);
  const Dual m(g);
  std::vector<double> H(g.size(), 0.0);
  auto val = [&](int i1, int i2) {
    return g.at((i1 + g.n1) % g.n1, (i2 + g.n2) % g.n2);
  };
  for (int i2 = 0; i2 < g.n2; ++i2) {
    for (int i1 = 0; i1 < g.n1; ++i1) {
      if (g.is_fixed(i1, i2)) continue;
      const double u = g.at(i1, i2);
      const double D1 = 0.5 * (val(i1 + 1, i2) - val(i1 - 1, i2));
      const double D2 = 0.5 * (val(i1, i2 + 1) - val(i1, i2 - 1));
      const double D11 = val(i1 + 1, i2) - 2.0 * u + val(i1 - 1, i2);
      const double D22 = val(i1, i2 + 1) - 2.0 * u + val(i1, i2 - 1);
      const double D12 = 0.25 * (val(i1 + 1, i2 + 1) - val(i1 + 1, i2 - 1) -
                                 val(i1 - 1, i2 + 1) + val(i1 - 1, i2 - 1));
      const std::array<double, 2> p{m.m11 * D1 + m.m12 * D2, m.m21 * D1 + m.m22 * D2};
      // Hess_x = M D M^T
      const double Mm[2][2] = {{m.m11, m.m12}, {m.m21, m.m22}};
      const double Dm[2][2] = {{D11, D12}, {D12, D22}};
      double hx[2][2] = {};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) hx[a][b] += Mm[a][i] * Dm[i][j] * Mm[b][j];

      const Coeff c = coeff_at(spec, u);
      const double dA[2] = {c.Ap, c.Bp};
      const double AA[2] = {c.A, c.B};
      // Second fundamental form against grad(x3 - u), then normalized.
      double II[2][2];
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          double v = hx[i][j];
          if (i == j) v -= 0.5 * dA[i];
          for (int k = 0; k < 2; ++k) {
            const double di = (i == k) ? p[j] : 0.0;
            const double dj = (j == k) ? p[i] : 0.0;
            v -= p[k] * dA[k] / (2.0 * AA[k]) * (di + dj);
          }
          II[i][j] = v;
        }
      }
      const double G11 = c.A + p[0] * p[0];
      const double G22 = c.B + p[1] * p[1];
      const double G12 = p[0] * p[1];
      const double det = G11 * G22 - G12 * G12;
      const double trace = (G22 * II[0][0] - 2.0 * G12 * II[0][1] + G11 * II[1][1]) / det;
      const double gradF = std::sqrt(1.0 + p[0] * p[0] / c.A + p[1] * p[1] / c.B);
      H[g.index(i1, i2)] = 0.5 * trace / gradF;
    }
  }
  return H;
}

RescaledGraph rescale_graph(const WarpedMetricSpec& spec, const DiscreteGraph& g,
                            const GraphBoundsParams& prm) {
  check_grid(g);
  if (!(prm.A >= 1.0) || !(prm.eps0 >= 0.0) || !(prm.k0 >= 0.0) || !(prm.C > 0.0))
    throw DomainError("graph bound constants must be positive with A >= 1");
  if (!spec.interval().contains(prm.tbar)) throw DomainError("tangency level outside interval");
  if (g.b1 != Boundary::Dirichlet || g.b2 != Boundary::Dirichlet || g.e1.y != 0.0 ||
      g.e2.x != 0.0)
    throw DomainError("graph rescaling needs an axis-aligned rectangle grid");

  RescaledGraph out;
  GraphBoundsReport& rep = out.report;
  rep.scale = spec.effective_warping(prm.tbar).v;
  rep.radius = std::sqrt(2.0) * prm.C / rep.scale;
  const double h1 = g.e1.x;
  const double h2 = g.e2.y;
  const double half1 = 0.5 * (g.n1 - 1) * h1;
  const double half2 = 0.5 * (g.n2 - 1) * h2;
  if (half1 < rep.radius * (1.0 - 1e-12) || half2 < rep.radius * (1.0 - 1e-12))
    throw DomainError("domain too small: grid must contain a disk of radius " +
                      std::to_string(rep.radius));
  const Vec2 center = g.origin + Vec2{half1, half2};
  const double r2 = rep.radius * rep.radius * (1.0 + 1e-12);

  for (int i2 = 0; i2 < g.n2; ++i2) {
    for (int i1 = 0; i1 < g.n1; ++i1) {
      const Vec2 d = g.node(i1, i2) - center;
      if (dot(d, d) > r2) continue;
      rep.sup_value = std::max(rep.sup_value, std::abs(g.at(i1, i2)));
      if (g.is_fixed(i1, i2)) continue;
      const double gx = (g.at(i1 + 1, i2) - g.at(i1 - 1, i2)) / (2.0 * h1);
      const double gy = (g.at(i1, i2 + 1) - g.at(i1, i2 - 1)) / (2.0 * h2);
      const double hxx = (g.at(i1 + 1, i2) - 2.0 * g.at(i1, i2) + g.at(i1 - 1, i2)) / (h1 * h1);
      const double hyy = (g.at(i1, i2 + 1) - 2.0 * g.at(i1, i2) + g.at(i1, i2 - 1)) / (h2 * h2);
      const double hxy = (g.at(i1 + 1, i2 + 1) - g.at(i1 + 1, i2 - 1) - g.at(i1 - 1, i2 + 1) +
                          g.at(i1 - 1, i2 - 1)) /
                         (4.0 * h1 * h2);
      rep.sup_gradient = std::max(rep.sup_gradient, std::hypot(gx, gy));
      const double op = std::abs(0.5 * (hxx + hyy)) + std::hypot(0.5 * (hxx - hyy), hxy);
      rep.sup_hessian = std::max(rep.sup_hessian, op);
    }
  }
  rep.value_limit = prm.A * prm.eps0;
  rep.gradient_limit = rep.scale;
  rep.hessian_limit = rep.scale * rep.scale / prm.C;
  auto ratio = [](double v, double lim) {
    if (v == 0.0) return 0.0;
    return lim > 0.0 ? v / lim : std::numeric_limits<double>::infinity();
  };
  constexpr double slack = 1.0 + 1e-9;
  rep.value_ratio = ratio(rep.sup_value, rep.value_limit);
  rep.gradient_ratio = ratio(rep.sup_gradient, rep.gradient_limit);
  rep.hessian_ratio = ratio(rep.sup_hessian, rep.hessian_limit);
  rep.value_ok = rep.value_ratio <= slack;
  rep.gradient_ok = rep.gradient_ratio <= slack;
  rep.hessian_ok = rep.hessian_ratio <= slack;

  out.graph = g;
  out.graph.e1 = g.e1 * rep.scale;
  out.graph.e2 = g.e2 * rep.scale;
  out.graph.origin = g.origin * rep.scale;
  return out;
}

}  // namespace cuspgeo
