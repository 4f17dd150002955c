#include "cuspgeo/flat_torus.hpp"

#include <algorithm>
#include <sstream>

#include "cuspgeo/errors.hpp"

namespace cuspgeo {
namespace {

void check_nondegenerate(Vec2 u, Vec2 w) {
  const double scale = std::max(dot(u, u), dot(w, w));
  const double det = std::abs(cross(u, w));
  if (!std::isfinite(scale) || !std::isfinite(det) || !(det > 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "degenerate lattice: det=" << det << " for |v|^2 scale " << scale;
    throw DegenerateLatticeError(msg.str());
  }
}

// Reduced pair with <u, w> >= 0, in the input orientation.
std::pair<Vec2, Vec2> reduced_pair(const FlatTorusLattice& lat) {
  Vec2 u = lat.v1();
  Vec2 w = lat.v2();
  if (dot(u, u) > dot(w, w)) std::swap(u, w);
  // Each pass strictly shortens w or terminates; the cap guards against
  // rounding ping-pong on nearly-tied norms.
  for (int pass = 0; pass < 256; ++pass) {
    const double mu = std::round(dot(u, w) / dot(u, u));
    if (mu != 0.0) w = w - u * mu;
    if (dot(w, w) < dot(u, u)) {
      std::swap(u, w);
    } else {
      break;
    }
  }
  if (dot(u, w) < 0.0) w = -w;
  return {u, w};
}

}  // namespace

FlatTorusLattice FlatTorusLattice::well_oriented(double a1, double a2, double b2) {
  if (!(a1 > 0.0) || !(b2 > 0.0)) {
    throw DegenerateLatticeError("well-oriented lattice needs a1 > 0 and b2 > 0");
  }
  const Vec2 u{a1, 0.0};
  const Vec2 w{a2, b2};
  check_nondegenerate(u, w);
  return {u, w};
}

FlatTorusLattice FlatTorusLattice::from_generators(Vec2 u, Vec2 w) {
  check_nondegenerate(u, w);
  if (cross(u, w) < 0.0) w = -w;
  const double len = norm(u);
  const double c = u.x / len;
  const double s = u.y / len;
  // Rotation by -angle(u).
  const Vec2 w_rot{c * w.x + s * w.y, -s * w.x + c * w.y};
  return {Vec2{len, 0.0}, Vec2{w_rot.x, cross(u, w) / len}};
}

FlatTorusLattice FlatTorusLattice::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("lattice scale factor must be positive");
  return well_oriented(a1() * factor, a2() * factor, b2() * factor);
}

FlatTorusLattice FlatTorusLattice::stretched(double s1, double s2) const {
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("lattice stretch factors must be positive");
  return well_oriented(a1() * s1, a2() * s1, b2() * s2);
}

FlatTorusLattice reduce_basis(const FlatTorusLattice& lat) {
  const auto [u, w] = reduced_pair(lat);
  return FlatTorusLattice::from_generators(u, w);
}

double systole(const FlatTorusLattice& lat) {
  return norm(reduced_pair(lat).first);
}

double diameter(const FlatTorusLattice& lat) {
  const auto [u, w] = reduced_pair(lat);
  // Triangle (0, u, w) is non-obtuse for a reduced pair with <u,w> >= 0, so
  // its circumcenter is inside it and is a deepest hole.
  return norm(u) * norm(w) * norm(u - w) / (2.0 * std::abs(cross(u, w)));
}

Vec2 deep_hole(const FlatTorusLattice& lat) {
  const auto [u, w] = reduced_pair(lat);
  const double d = 2.0 * cross(u, w);
  const double uu = dot(u, u);
  const double ww = dot(w, w);
  return {(w.y * uu - u.y * ww) / d, (u.x * ww - w.x * uu) / d};
}

bool isometric(const FlatTorusLattice& a, const FlatTorusLattice& b, double rel_tol) {
  const auto ra = reduced_pair(a);
  const auto rb = reduced_pair(b);
  const double scale = std::max(norm(ra.second), norm(rb.second));
  auto close = [&](double x, double y) { return std::abs(x - y) <= rel_tol * scale; };
  auto close2 = [&](double x, double y) { return std::abs(x - y) <= rel_tol * scale * scale; };
  return close(norm(ra.first), norm(rb.first)) && close(norm(ra.second), norm(rb.second)) &&
         close2(std::abs(dot(ra.first, ra.second)), std::abs(dot(rb.first, rb.second)));
}

}  // namespace cuspgeo
