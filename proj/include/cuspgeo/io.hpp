#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuspgeo/filler.hpp"
#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/minimal_graph.hpp"
#include "cuspgeo/sweepout.hpp"
#include "cuspgeo/warped_metric.hpp"

namespace cuspgeo {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits (the precision of printed reports).
double round12(double x);
/// Recursively rounds every floating-point value in a report.
Json rounded(const Json& j);

std::string format12(double x);
std::string format17(double x);

/// {"v1": [a1, 0], "v2": [a2, b2]}; input also accepts [a1, a2, b2].
Json to_json(const FlatTorusLattice& lat);
FlatTorusLattice lattice_from_json(const Json& j);

/// Metric descriptors:
///   {"kind": "flat" | "cusp", "lattice": lattice, "interval": [a,b]}
///   {"kind": "tube", "length": l, "twist": alpha, "radius": R | "meyerhoff", "interval": [a,b]?}
///   {"kind": "tube-radial", "length", "twist", "interval": [r0, r1]}
///   {"kind": "custom", "lattice", "interval", "reference_scale",
///    "knots": [...], "h": [...], "a1": [...], "a2": [...]}
WarpedMetricSpec metric_from_json(const Json& j);

/// c + g . x + amp cos(k . x + phase)
struct FieldExpr {
  double c = 0.0;
  Vec2 g;
  double amp = 0.0;
  Vec2 k;
  double phase = 0.0;
  double operator()(Vec2 x) const;
};
FieldExpr field_from_json(const Json& j);

/// Grid for `graph solve`. bc.json holds "boundary" and optional "init"
/// fields, plus the extent: "lo"/"hi" for rect, "period"/"x2" for stripe;
/// a torus grid uses the metric's lattice.
DiscreteGraph graph_from_bc(const WarpedMetricSpec& spec, const std::string& domain, int n1,
                            int n2, const Json& bc);

/// Versioned CSV: "# format=cuspgeo.grid/1 n1=.. n2=.. e1=.. e2=.. origin=.. b1=.. b2=.."
/// followed by n2 rows of n1 values (17 significant digits).
void write_grid_csv(std::ostream& os, const DiscreteGraph& g);
DiscreteGraph read_grid_csv(std::istream& is);

Json filler_to_json(const Filler& f);
/// Rebuilds the filler from L and the lattice and checks the stored
/// Chebyshev arrays against it; DomainError on mismatch.
Filler filler_from_json(const Json& j);

ManifoldDescription manifold_from_json(const Json& j);
Json manifold_to_json(const ManifoldDescription& m);

FormalCurrent current_from_json(const Json& j);
Json to_json(const FormalCurrent& c);
/// {"level": j, "values": [current, ...]} or
/// {"interpolate": {"a": current, "b": current, "k": k, "level": j}}.
DiscreteFamily family_from_json(const Json& j);

Json to_json(const SweepoutProfile& p);
void write_profile_csv(std::ostream& os, const SweepoutProfile& p);

}  // namespace cuspgeo
