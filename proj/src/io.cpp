#include "cuspgeo/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cuspgeo/errors.hpp"
#include "cuspgeo/tube_geometry.hpp"

namespace cuspgeo {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("bad ") + what + ": " + e.what());
  }
}

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("interval must be [a, b]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec2 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected a pair [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

Json pieces_to_json(const std::vector<ChebyshevPiece>& ps) {
  Json arr = Json::array();
  for (const auto& p : ps) arr.push_back({{"lo", p.lo}, {"hi", p.hi}, {"coeffs", p.coeffs}});
  return arr;
}

void check_pieces(const Json& stored, const std::vector<ChebyshevPiece>& expect,
                  const char* name) {
  if (!stored.is_array() || stored.size() != expect.size())
    throw DomainError(std::string("filler data: wrong number of ") + name + " pieces");
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const auto c = doubles(stored[i].at("coeffs"));
    if (c.size() != expect[i].coeffs.size())
      throw DomainError(std::string("filler data: wrong ") + name + " degree");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double e = expect[i].coeffs[k];
      if (std::abs(c[k] - e) > 1e-12 * std::max(1.0, std::abs(e)))
        throw DomainError(std::string("filler data: ") + name +
                          " coefficients do not match the construction");
    }
  }
}

std::string boundary_name(Boundary b) { return b == Boundary::Periodic ? "periodic" : "dirichlet"; }

Boundary boundary_from(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "dirichlet") return Boundary::Dirichlet;
  throw DomainError("unknown boundary kind '" + s + "'");
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json rounded(const Json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = rounded(*it);
    return out;
  }
  return j;
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const FlatTorusLattice& lat) {
  return {{"v1", {lat.a1(), 0.0}}, {"v2", {lat.a2(), lat.b2()}}};
}

FlatTorusLattice lattice_from_json(const Json& j) {
  return guarded("lattice", [&] {
    if (j.is_object()) {
      const Vec2 v1 = vec_from_json(j.at("v1"));
      const Vec2 v2 = vec_from_json(j.at("v2"));
      if (v1.y != 0.0) throw DomainError("lattice v1 must be (a1, 0)");
      return FlatTorusLattice::well_oriented(v1.x, v2.x, v2.y);
    }
    if (!j.is_array() || j.size() != 3)
      throw DomainError("lattice must be [a1, a2, b2] or {\"v1\": [a1, 0], \"v2\": [a2, b2]}");
    return FlatTorusLattice::well_oriented(j[0].get<double>(), j[1].get<double>(),
                                           j[2].get<double>());
  });
}

WarpedMetricSpec metric_from_json(const Json& j) {
  return guarded("metric descriptor", [&]() -> WarpedMetricSpec {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "flat" || kind == "cusp") {
      const auto lat = lattice_from_json(j.at("lattice"));
      const Interval iv = interval_from_json(j.at("interval"));
      return kind == "flat" ? flat_spec(lat, iv) : cusp_spec(lat, iv);
    }
    if (kind == "tube" || kind == "tube-radial") {
      TubeParams p{j.at("length").get<double>(), j.value("twist", 0.0), 0.0};
      if (kind == "tube-radial") return tube_radial_as_warped(p, interval_from_json(j.at("interval")));
      const Json& r = j.at("radius");
      p.radius = r.is_string() ? (r.get<std::string>() == "meyerhoff"
                                      ? meyerhoff_radius(p.length)
                                      : throw DomainError("radius must be a number or \"meyerhoff\""))
                               : r.get<double>();
      if (j.contains("interval")) return tube_as_warped(p, interval_from_json(j.at("interval")));
      return tube_as_warped(p);
    }
    if (kind == "custom") {
      return sampled_spec(lattice_from_json(j.at("lattice")), interval_from_json(j.at("interval")),
                          j.value("reference_scale", 1.0), doubles(j.at("knots")),
                          doubles(j.at("h")), doubles(j.at("a1")), doubles(j.at("a2")));
    }
    throw DomainError("unknown metric kind '" + kind + "'");
  });
}

double FieldExpr::operator()(Vec2 x) const {
  return c + dot(g, x) + amp * std::cos(dot(k, x) + phase);
}

FieldExpr field_from_json(const Json& j) {
  return guarded("field", [&] {
    FieldExpr f;
    if (j.is_number()) {
      f.c = j.get<double>();
      return f;
    }
    f.c = j.value("c", 0.0);
    if (j.contains("g")) f.g = vec_from_json(j["g"]);
    f.amp = j.value("amp", 0.0);
    if (j.contains("k")) f.k = vec_from_json(j["k"]);
    f.phase = j.value("phase", 0.0);
    return f;
  });
}

DiscreteGraph graph_from_bc(const WarpedMetricSpec& spec, const std::string& domain, int n1,
                            int n2, const Json& bc) {
  return guarded("boundary data", [&] {
    DiscreteGraph g;
    if (domain == "torus") {
      g = DiscreteGraph::torus(spec.lattice(), n1, n2);
    } else if (domain == "rect") {
      g = DiscreteGraph::rect(vec_from_json(bc.at("lo")), vec_from_json(bc.at("hi")), n1, n2);
    } else if (domain == "stripe") {
      const Interval x2 = interval_from_json(bc.at("x2"));
      g = DiscreteGraph::stripe(bc.at("period").get<double>(), x2.lo, x2.hi, n1, n2);
    } else {
      throw DomainError("domain must be torus, rect or stripe");
    }
    const FieldExpr boundary = bc.contains("boundary") ? field_from_json(bc["boundary"]) : FieldExpr{};
    const FieldExpr init = bc.contains("init") ? field_from_json(bc["init"]) : boundary;
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1)
        g.at(i1, i2) = g.is_fixed(i1, i2) ? boundary(g.node(i1, i2)) : init(g.node(i1, i2));
    return g;
  });
}

void write_grid_csv(std::ostream& os, const DiscreteGraph& g) {
  os << "# format=cuspgeo.grid/1 n1=" << g.n1 << " n2=" << g.n2 << " e1=" << format17(g.e1.x)
     << "," << format17(g.e1.y) << " e2=" << format17(g.e2.x) << "," << format17(g.e2.y)
     << " origin=" << format17(g.origin.x) << "," << format17(g.origin.y)
     << " b1=" << boundary_name(g.b1) << " b2=" << boundary_name(g.b2) << "\n";
  for (int i2 = 0; i2 < g.n2; ++i2) {
    for (int i1 = 0; i1 < g.n1; ++i1) os << (i1 ? "," : "") << format17(g.at(i1, i2));
    os << "\n";
  }
}

DiscreteGraph read_grid_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# format=cuspgeo.grid/1", 0) != 0)
    throw DomainError("not a cuspgeo.grid/1 file");
  DiscreteGraph g;
  std::istringstream hs(header.substr(2));
  std::string tok;
  auto pair = [](const std::string& v) {
    const auto c = v.find(',');
    if (c == std::string::npos) throw DomainError("bad grid header");
    return Vec2{std::stod(v.substr(0, c)), std::stod(v.substr(c + 1))};
  };
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "n1") g.n1 = std::stoi(val);
    else if (key == "n2") g.n2 = std::stoi(val);
    else if (key == "e1") g.e1 = pair(val);
    else if (key == "e2") g.e2 = pair(val);
    else if (key == "origin") g.origin = pair(val);
    else if (key == "b1") g.b1 = boundary_from(val);
    else if (key == "b2") g.b2 = boundary_from(val);
  }
  if (g.n1 <= 0 || g.n2 <= 0) throw DomainError("bad grid header");
  g.u.reserve(std::size_t(g.n1) * g.n2);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) g.u.push_back(std::stod(cell));
  }
  if (g.u.size() != std::size_t(g.n1) * g.n2) throw DomainError("grid file has wrong value count");
  return g;
}

Json filler_to_json(const Filler& f) {
  return {{"format", "cuspgeo.filler/1"},
          {"L", f.L()},
          {"lattice", to_json(f.lattice())},
          {"f_end", f.f_end()},
          {"eta_tail_slope", f.eta_tail_slope()},
          {"eta_tail_width", f.eta_tail_width()},
          {"f_chebyshev", pieces_to_json(f.f_chebyshev())},
          {"eta_chebyshev", pieces_to_json(f.eta_chebyshev())}};
}

Filler filler_from_json(const Json& j) {
  return guarded("filler data", [&] {
    if (j.value("format", std::string()) != "cuspgeo.filler/1")
      throw DomainError("not a cuspgeo.filler/1 document");
    Filler f(j.at("L").get<double>(), lattice_from_json(j.at("lattice")));
    if (j.contains("f_chebyshev")) check_pieces(j["f_chebyshev"], f.f_chebyshev(), "f");
    if (j.contains("eta_chebyshev")) check_pieces(j["eta_chebyshev"], f.eta_chebyshev(), "eta");
    return f;
  });
}

ManifoldDescription manifold_from_json(const Json& j) {
  return guarded("manifold description", [&] {
    ManifoldDescription m;
    for (const auto& c : j.value("cusps", Json::array())) {
      CuspEnd e;
      e.lattice = lattice_from_json(c.at("lattice"));
      if (c.contains("depth")) {
        const Interval d = interval_from_json(c["depth"]);
        e.depth_lo = d.lo;
        e.depth_hi = d.hi;
      }
      m.cusps.push_back(e);
    }
    for (const auto& t : j.value("tubes", Json::array())) {
      TubeEnd e;
      e.length = t.at("length").get<double>();
      e.twist = t.value("twist", 0.0);
      if (t.contains("radius")) {
        if (t["radius"].is_string()) {
          if (t["radius"].get<std::string>() != "meyerhoff")
            throw DomainError("radius must be a number or \"meyerhoff\"");
        } else {
          e.radius = t["radius"].get<double>();
        }
      }
      m.tubes.push_back(e);
    }
    for (const auto& f : j.value("fillers", Json::array())) {
      FillerAttachment a;
      a.end = f.at("end").get<std::string>();
      a.L = f.value("L", 20.0);
      if (f.contains("lattice")) a.lattice = lattice_from_json(f["lattice"]);
      m.fillers.push_back(a);
    }
    return m;
  });
}

Json manifold_to_json(const ManifoldDescription& m) {
  Json j{{"cusps", Json::array()}, {"tubes", Json::array()}, {"fillers", Json::array()}};
  for (const auto& c : m.cusps)
    j["cusps"].push_back({{"lattice", to_json(c.lattice)}, {"depth", {c.depth_lo, c.depth_hi}}});
  for (const auto& t : m.tubes) {
    Json e{{"length", t.length}, {"twist", t.twist}};
    e["radius"] = t.radius ? Json(*t.radius) : Json("meyerhoff");
    j["tubes"].push_back(e);
  }
  for (const auto& f : m.fillers) {
    Json e{{"end", f.end}, {"L", f.L}};
    if (f.lattice) e["lattice"] = to_json(*f.lattice);
    j["fillers"].push_back(e);
  }
  return j;
}

FormalCurrent current_from_json(const Json& j) {
  return guarded("current", [&] {
    std::vector<Patch> ps;
    for (const auto& p : j)
      ps.push_back({p.at("id").get<std::string>(), p.at("multiplicity").get<long long>(),
                    p.at("area").get<double>()});
    return FormalCurrent(std::move(ps));
  });
}

Json to_json(const FormalCurrent& c) {
  Json arr = Json::array();
  for (const auto& p : c.patches())
    arr.push_back({{"id", p.id}, {"multiplicity", p.multiplicity}, {"area", p.area}});
  return arr;
}

DiscreteFamily family_from_json(const Json& j) {
  return guarded("family", [&] {
    if (j.contains("interpolate")) {
      const Json& ip = j["interpolate"];
      const auto chain = interpolate_patches(current_from_json(ip.at("a")),
                                             current_from_json(ip.at("b")), ip.at("k").get<int>());
      return chain_family(chain, ip.at("level").get<int>());
    }
    DiscreteFamily fam;
    fam.level = j.at("level").get<int>();
    for (const auto& v : j.at("values")) fam.values.push_back(current_from_json(v));
    return fam;
  });
}

Json to_json(const SweepoutProfile& p) {
  Json s = Json::array();
  for (const auto& x : p.samples)
    s.push_back({{"t", x.t}, {"segment", x.segment}, {"parameter", x.parameter}, {"area", x.area}});
  return {{"format", "cuspgeo.profile/1"}, {"samples", s},
          {"width_upper_bound", p.width_upper_bound}};
}

void write_profile_csv(std::ostream& os, const SweepoutProfile& p) {
  os << "# format=cuspgeo.profile/1 width_upper_bound=" << format12(p.width_upper_bound) << "\n";
  os << "t,segment,parameter,area\n";
  for (const auto& x : p.samples)
    os << format12(x.t) << "," << x.segment << "," << format12(x.parameter) << ","
       << format12(x.area) << "\n";
}

}  // namespace cuspgeo
