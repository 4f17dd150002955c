#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuspgeo/filler.hpp"
#include "cuspgeo/flat_torus.hpp"

namespace cuspgeo {

/// Vertex index/3^level of the unit interval subdivided into 3^level cells.
struct Vertex1 {
  int level = 0;
  long long index = 0;
};

/// Vertex (i1, i2)/3^level of the unit square.
struct Vertex2 {
  int level = 0;
  long long i1 = 0;
  long long i2 = 0;
};

long long pow3(int level);
Vertex1 make_vertex(int level, long long index);

/// 3^level * |x - y|; DomainError if the levels differ.
long long grid_distance(const Vertex1& x, const Vertex1& y);
/// 3^level * (|x1 - y1| + |x2 - y2|).
long long grid_distance(const Vertex2& x, const Vertex2& y);

/// Nearest vertex of level j to a vertex of level i >= j. The cell length
/// ratio 3^(i-j) is odd, so no vertex is equidistant from two level-j
/// vertices; a tie would resolve toward 0.
Vertex1 project_vertex(const Vertex1& x, int level);
Vertex2 project_vertex(const Vertex2& x, int level);

struct Patch {
  std::string id;
  long long multiplicity = 0;
  double area = 0.0;
};

/// Finite sum of patches with integer multiplicities. Two patches with the
/// same id are the same surface piece; different ids are disjoint.
class FormalCurrent {
 public:
  FormalCurrent() = default;
  explicit FormalCurrent(std::vector<Patch> patches);

  const std::vector<Patch>& patches() const { return patches_; }  // sorted by id
  double mass() const;
  bool empty() const { return patches_.empty(); }

  /// Each patch split into k equal-area pieces "id/s", s = 0..k-1.
  FormalCurrent refined(int k) const;

 private:
  std::vector<Patch> patches_;
};

/// Mass of a - b, patch by patch: sum |n_i - m_i| area_i. Throws DomainError
/// if a shared id carries different areas.
double mass_difference(const FormalCurrent& a, const FormalCurrent& b);

/// Map from the vertices of the level-j subdivision of [0, 1] to currents;
/// values[k] belongs to vertex k / 3^j.
struct DiscreteFamily {
  int level = 0;
  std::vector<FormalCurrent> values;
};

/// sup over vertex pairs of M(phi(x) - phi(y)) / d(x, y). Since the patchwise
/// mass is a metric, the supremum is attained on adjacent vertices.
double fineness(const DiscreteFamily& fam);

double max_mass(const DiscreteFamily& fam);

/// Chain c_0, ..., c_k from a to b. For k > 1 every patch is refined into k
/// pieces and step m moves piece m from its multiplicity in a to the one in
/// b, so each step has mass M(a - b) / k. For k = 1 the chain is (a, b).
std::vector<FormalCurrent> interpolate_patches(const FormalCurrent& a, const FormalCurrent& b,
                                               int k);

/// Family on level j (3^j >= k) that runs through the chain and then stays
/// at its end.
DiscreteFamily chain_family(const std::vector<FormalCurrent>& chain, int level);

struct ProfileSample {
  double t = 0.0;
  std::string segment;  // e.g. "cusp[0]", "tube[1]", "fillers"
  double parameter = 0.0;  // depth t, radius r or filler depth
  double area = 0.0;
};

struct SweepoutProfile {
  std::vector<ProfileSample> samples;
  double width_upper_bound = 0.0;  // max sampled area
};

struct CuspEnd {
  FlatTorusLattice lattice = FlatTorusLattice::well_oriented(1.0, 0.0, 1.0);
  double depth_lo = 0.0;
  double depth_hi = 4.0;
};

struct TubeEnd {
  double length = 0.0;
  double twist = 0.0;
  std::optional<double> radius;  // unset: Meyerhoff radius
};

struct FillerAttachment {
  std::string end;  // "cusp:<i>" or "tube:<i>"
  double L = 20.0;
  std::optional<FlatTorusLattice> lattice;  // checked against the end's boundary torus
};

struct ManifoldDescription {
  std::vector<CuspEnd> cusps;
  std::vector<TubeEnd> tubes;
  std::vector<FillerAttachment> fillers;
};

/// Areas e^{-2t} area(lattice) for t in [depth_lo, depth_hi].
SweepoutProfile cusp_profile(const CuspEnd& c, int samples, std::string name = "cusp");
/// Areas pi l sinh 2r for r in [0, R].
SweepoutProfile tube_profile(const TubeEnd& tube, int samples, std::string name = "tube");
/// Sum over fillers of |T_s|, s = -t, for t in [-(max L + 1), 0]; the level
/// s = L + 1 (the core) contributes 0.
SweepoutProfile filler_extension_profile(const std::vector<Filler>& fillers, int samples);

/// Segments laid end to end: each is shifted so its t values continue
/// strictly after the previous segment.
SweepoutProfile concatenate(const std::vector<SweepoutProfile>& parts);

double max_mass(const SweepoutProfile& p);

/// Boundary torus of an end ("cusp:i" at depth_lo, "tube:i" at its radius).
FlatTorusLattice end_boundary_lattice(const ManifoldDescription& m, const std::string& end);

/// Filler extension (if any fillers), then every cusp, then every tube.
/// Throws DomainError when a filler lattice differs from its end's boundary
/// torus by more than 1e-6 relative, or a tube radius exceeds the Meyerhoff
/// radius.
SweepoutProfile profile(const ManifoldDescription& m, int samples);

}  // namespace cuspgeo
