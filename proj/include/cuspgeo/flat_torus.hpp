#pragma once

#include <cmath>

namespace cuspgeo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Rank-2 lattice of a flat torus in well-oriented orthonormal coordinates:
/// v1 = (a1, 0) with a1 > 0 and v2 = (a2, b2) with b2 > 0.
///
/// Construction rejects degenerate pairs (det <= 1e-12 * max(|v1|,|v2|)^2)
/// with DegenerateLatticeError, so every instance has positive area.
class FlatTorusLattice {
 public:
  static FlatTorusLattice well_oriented(double a1, double a2, double b2);

  /// Any generating pair; rotated (and v2 negated if needed) into
  /// well-oriented form. Generates the same lattice up to isometry.
  static FlatTorusLattice from_generators(Vec2 u, Vec2 w);

  Vec2 v1() const { return v1_; }
  Vec2 v2() const { return v2_; }
  double a1() const { return v1_.x; }
  double a2() const { return v2_.x; }
  double b2() const { return v2_.y; }
  double area() const { return v1_.x * v2_.y; }

  FlatTorusLattice scaled(double factor) const;
  /// Image under (x1, x2) -> (s1 x1, s2 x2), s1, s2 > 0.
  FlatTorusLattice stretched(double s1, double s2) const;

  bool operator==(const FlatTorusLattice&) const = default;

 private:
  FlatTorusLattice(Vec2 v1, Vec2 v2) : v1_(v1), v2_(v2) {}
  Vec2 v1_;
  Vec2 v2_;
};

/// Lagrange-Gauss reduction: |v1| <= |v2| and |<v1,v2>| <= |v1|^2 / 2.
FlatTorusLattice reduce_basis(const FlatTorusLattice& lat);

/// Length of the shortest nonzero lattice vector.
double systole(const FlatTorusLattice& lat);

/// Covering radius: the largest distance from a point of the plane to the
/// lattice, i.e. the diameter of the flat torus. Computed from the Delaunay
/// triangle of the reduced basis (its circumcenter is a Voronoi vertex).
double diameter(const FlatTorusLattice& lat);

/// A deepest hole (a point realizing the covering radius).
Vec2 deep_hole(const FlatTorusLattice& lat);

/// True when both pairs generate the same lattice up to rotation, compared
/// through the reduced bases with the given relative tolerance.
bool isometric(const FlatTorusLattice& a, const FlatTorusLattice& b, double rel_tol);

}  // namespace cuspgeo
