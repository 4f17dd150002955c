#pragma once

#include <string>
#include <vector>

#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/warped_metric.hpp"

namespace cuspgeo {

enum class Boundary { Periodic, Dirichlet };

/// Graph x3 = u(x1, x2) sampled on a uniform (possibly sheared) grid.
/// Node (i1, i2) sits at origin + i1 e1 + i2 e2 and is stored at
/// u[i2 * n1 + i1]. A periodic axis has n nodes per period (node n wraps to
/// node 0); a Dirichlet axis has n nodes including both ends, and the end
/// nodes hold boundary data.
struct DiscreteGraph {
  int n1 = 0;
  int n2 = 0;
  Vec2 e1;
  Vec2 e2;
  Vec2 origin;
  Boundary b1 = Boundary::Periodic;
  Boundary b2 = Boundary::Periodic;
  std::vector<double> u;

  /// Both axes periodic over the lattice fundamental domain.
  static DiscreteGraph torus(const FlatTorusLattice& lattice, int n1, int n2, double value = 0.0);
  /// [lo.x, hi.x] x [lo.y, hi.y] with Dirichlet data on the boundary ring.
  static DiscreteGraph rect(Vec2 lo, Vec2 hi, int n1, int n2, double value = 0.0);
  /// x1 periodic with the given period, x2 in [x2_lo, x2_hi] with Dirichlet data.
  static DiscreteGraph stripe(double period, double x2_lo, double x2_hi, int n1, int n2,
                              double value = 0.0);

  std::size_t index(int i1, int i2) const { return std::size_t(i2) * n1 + i1; }
  double& at(int i1, int i2) { return u[index(i1, i2)]; }
  double at(int i1, int i2) const { return u[index(i1, i2)]; }
  Vec2 node(int i1, int i2) const { return origin + e1 * i1 + e2 * i2; }
  bool is_fixed(int i1, int i2) const;
  /// Area |det(e1, e2)| of one grid cell; the quadrature weight of a node.
  double cell_weight() const { return std::abs(cross(e1, e2)); }
  std::size_t size() const { return u.size(); }

  template <class F>
  void fill(F&& f) {
    for (int i2 = 0; i2 < n2; ++i2)
      for (int i1 = 0; i1 < n1; ++i1) at(i1, i2) = f(node(i1, i2));
  }
};

/// Discrete area of the graph for g = a1^2 dx1^2 + a2^2 dx2^2 + dx3^2:
/// sum over cells of the mean over the four corners of
///   W(u, grad u) = sqrt(a1^2 a2^2 + a2^2 u_x1^2 + a1^2 u_x2^2),
/// with grad u taken on the corner's triangle. Throws DomainError when u
/// leaves the metric interval, UnsupportedError for non-diagonal specs.
double area(const WarpedMetricSpec& spec, const DiscreteGraph& g);

/// Minimal surface operator
///   Div((a2^2 u_x1, a1^2 u_x2) / W) - (a1 a2 / W)(a1' a2 + a1 a2' + (a2'/a1) u_x1^2 + (a1'/a2) u_x2^2)
/// discretized as -(1/cell_weight) d(area)/du at each free node; 0 at
/// Dirichlet nodes.
std::vector<double> el_residual(const WarpedMetricSpec& spec, const DiscreteGraph& g);

/// Derivative of area(u + s v) at s = 0. Equals
/// -sum(el_residual(u) * v) * cell_weight for v vanishing on Dirichlet nodes.
double first_variation(const WarpedMetricSpec& spec, const DiscreteGraph& g,
                       const std::vector<double>& v);

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 60;
};

struct SolveResult {
  DiscreteGraph graph;
  int iterations = 0;
  std::vector<double> residual_history;  // max |el_residual| before each step and at exit
  /// sup of 1 / (2 a1 a2) over the output; |mean curvature| <= kappa_w * |residual|.
  double kappa_w = 0.0;
  bool mean_pinned = false;
};

/// Damped Newton on el_residual = 0 over the free nodes, starting from
/// `init` (whose Dirichlet nodes carry the boundary data). Steps are
/// accepted by Armijo backtracking on |residual|^2 / 2, with a gradient
/// step as fallback. When both axes are periodic and the Jacobian annihilates
/// constants, the mean of u is held fixed.
/// Throws ConvergenceError (last residual attached) or SingularJacobianError.
SolveResult solve(const WarpedMetricSpec& spec, const DiscreteGraph& init,
                  const SolveOptions& opts = {});

/// Mean curvature of the graph from its induced metric and second fundamental
/// form, centered differences, with respect to the upward normal. Positive
/// means the mean curvature vector points toward +x3, the same convention as
/// level_torus_mean_curvature. Dirichlet nodes carry 0.
std::vector<double> graph_mean_curvature(const WarpedMetricSpec& spec, const DiscreteGraph& g);

/// Constants of the uniform graph lemma.
struct GraphBoundsParams {
  double A = 1.0;
  double eps0 = 0.0;
  double k0 = 0.0;
  double tbar = 0.0;
  double C = 1.0;
};

struct GraphBoundsReport {
  double scale = 0.0;   // effective warping s h(tbar)
  double radius = 0.0;  // sqrt2 C / scale
  double sup_value = 0.0;
  double sup_gradient = 0.0;
  double sup_hessian = 0.0;
  double value_limit = 0.0;     // A eps0
  double gradient_limit = 0.0;  // scale
  double hessian_limit = 0.0;   // scale^2 / C
  double value_ratio = 0.0;
  double gradient_ratio = 0.0;
  double hessian_ratio = 0.0;
  bool value_ok = false;
  bool gradient_ok = false;
  bool hessian_ok = false;
  bool ok() const { return value_ok && gradient_ok && hessian_ok; }
};

struct RescaledGraph {
  DiscreteGraph graph;
  GraphBoundsReport report;
};

/// `g` holds heights relative to tbar on a rectangle grid in the torus
/// coordinates x, which must contain the disk of radius sqrt2 C / scale about
/// the grid center. Checks |v| <= A eps0, |grad v| <= scale and
/// |Hess v| <= scale^2 / C on that disk (Euclidean norms, Hessian operator
/// norm) and returns v in the coordinates y = scale x, where the bounds read
/// 1 and 1/C. Throws DomainError("domain too small") otherwise.
RescaledGraph rescale_graph(const WarpedMetricSpec& spec, const DiscreteGraph& g,
                            const GraphBoundsParams& params);

}  // namespace cuspgeo
