#include "cuspgeo/sweepout.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cuspgeo/errors.hpp"
#include "cuspgeo/tube_geometry.hpp"

namespace cuspgeo {

long long pow3(int level) {
  if (level < 0 || level > 38) throw DomainError("subdivision level must lie in [0, 38]");
  long long p = 1;
  for (int i = 0; i < level; ++i) p *= 3;
  return p;
}

Vertex1 make_vertex(int level, long long index) {
  if (index < 0 || index > pow3(level)) throw DomainError("vertex index out of range");
  return {level, index};
}

long long grid_distance(const Vertex1& x, const Vertex1& y) {
  if (x.level != y.level) throw DomainError("vertices belong to different subdivisions");
  return std::llabs(x.index - y.index);
}

long long grid_distance(const Vertex2& x, const Vertex2& y) {
  if (x.level != y.level) throw DomainError("vertices belong to different subdivisions");
  return std::llabs(x.i1 - y.i1) + std::llabs(x.i2 - y.i2);
}

namespace {

long long project_index(long long index, long long ratio) {
  const long long q = index / ratio;
  const long long rem = index - q * ratio;
  return (2 * rem > ratio) ? q + 1 : q;
}

}  // namespace

Vertex1 project_vertex(const Vertex1& x, int level) {
  if (level > x.level) throw DomainError("can only project to a coarser subdivision");
  pow3(level);
  return {level, project_index(x.index, pow3(x.level - level))};
}

Vertex2 project_vertex(const Vertex2& x, int level) {
  if (level > x.level) throw DomainError("can only project to a coarser subdivision");
  pow3(level);
  const long long r = pow3(x.level - level);
  return {level, project_index(x.i1, r), project_index(x.i2, r)};
}

FormalCurrent::FormalCurrent(std::vector<Patch> patches) : patches_(std::move(patches)) {
  std::sort(patches_.begin(), patches_.end(),
            [](const Patch& a, const Patch& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < patches_.size(); ++i) {
    if (!(patches_[i].area >= 0.0) || !std::isfinite(patches_[i].area))
      throw DomainError("patch area must be finite and non-negative");
    if (i > 0 && patches_[i].id == patches_[i - 1].id)
      throw DomainError("duplicate patch id '" + patches_[i].id + "'");
  }
}

double FormalCurrent::mass() const {
  double m = 0.0;
  for (const Patch& p : patches_) m += double(std::llabs(p.multiplicity)) * p.area;
  return m;
}

FormalCurrent FormalCurrent::refined(int k) const {
  if (k < 1) throw DomainError("refinement needs k >= 1");
  if (k == 1) return *this;
  std::vector<Patch> out;
  out.reserve(patches_.size() * std::size_t(k));
  for (const Patch& p : patches_)
    for (int s = 0; s < k; ++s)
      out.push_back({p.id + "/" + std::to_string(s), p.multiplicity, p.area / k});
  return FormalCurrent(std::move(out));
}

double mass_difference(const FormalCurrent& a, const FormalCurrent& b) {
  const auto& pa = a.patches();
  const auto& pb = b.patches();
  double m = 0.0;
  std::size_t i = 0, j = 0;
  while (i < pa.size() || j < pb.size()) {
    if (j == pb.size() || (i < pa.size() && pa[i].id < pb[j].id)) {
      m += double(std::llabs(pa[i].multiplicity)) * pa[i].area;
      ++i;
    } else if (i == pa.size() || pb[j].id < pa[i].id) {
      m += double(std::llabs(pb[j].multiplicity)) * pb[j].area;
      ++j;
    } else {
      if (pa[i].area != pb[j].area)
        throw DomainError("patch '" + pa[i].id + "' has two different areas");
      m += double(std::llabs(pa[i].multiplicity - pb[j].multiplicity)) * pa[i].area;
      ++i;
      ++j;
    }
  }
  return m;
}

double fineness(const DiscreteFamily& fam) {
  if (fam.values.size() < 2) throw DomainError("fineness needs at least two vertices");
  if (fam.values.size() != std::size_t(pow3(fam.level) + 1))
    throw DomainError("family must have 3^level + 1 values");
  double f = 0.0;
  for (std::size_t k = 0; k + 1 < fam.values.size(); ++k)
    f = std::max(f, mass_difference(fam.values[k + 1], fam.values[k]));
  return f;
}

double max_mass(const DiscreteFamily& fam) {
  if (fam.values.empty()) throw DomainError("empty family");
  double m = 0.0;
  for (const auto& c : fam.values) m = std::max(m, c.mass());
  return m;
}

std::vector<FormalCurrent> interpolate_patches(const FormalCurrent& a, const FormalCurrent& b,
                                               int k) {
  if (k < 1) throw DomainError("interpolation needs k >= 1");
  if (k == 1) return {a, b};
  // Union of patches with their multiplicity in a and in b.
  struct Pair {
    long long from = 0;
    long long to = 0;
    double area = 0.0;
  };
  std::map<std::string, Pair> all;
  for (const Patch& p : a.patches()) all[p.id] = {p.multiplicity, 0, p.area};
  for (const Patch& p : b.patches()) {
    auto it = all.find(p.id);
    if (it == all.end()) {
      all[p.id] = {0, p.multiplicity, p.area};
    } else {
      if (it->second.area != p.area)
        throw DomainError("patch '" + p.id + "' has two different areas");
      it->second.to = p.multiplicity;
    }
  }
  std::vector<FormalCurrent> chain;
  chain.reserve(std::size_t(k) + 1);
  for (int m = 0; m <= k; ++m) {
    std::vector<Patch> ps;
    for (const auto& [id, pr] : all)
      for (int s = 0; s < k; ++s)
        ps.push_back({id + "/" + std::to_string(s), s < m ? pr.to : pr.from, pr.area / k});
    chain.emplace_back(std::move(ps));
  }
  return chain;
}

DiscreteFamily chain_family(const std::vector<FormalCurrent>& chain, int level) {
  if (chain.empty()) throw DomainError("empty chain");
  const long long n = pow3(level);
  if (n + 1 < static_cast<long long>(chain.size()))
    throw DomainError("subdivision too coarse for the chain");
  DiscreteFamily fam{level, {}};
  fam.values.reserve(std::size_t(n) + 1);
  for (long long v = 0; v <= n; ++v)
    fam.values.push_back(chain[std::min<std::size_t>(std::size_t(v), chain.size() - 1)]);
  return fam;
}

namespace {

void check_samples(int samples) {
  if (samples < 2) throw DomainError("profiles need at least 2 samples");
}

void finish(SweepoutProfile& p) {
  p.width_upper_bound = 0.0;
  for (const auto& s : p.samples) p.width_upper_bound = std::max(p.width_upper_bound, s.area);
}

double tube_radius(const TubeEnd& t) {
  const double RL = meyerhoff_radius(t.length);
  if (!t.radius) return RL;
  if (!(*t.radius > 0.0)) throw DomainError("tube radius must be positive");
  if (*t.radius > RL * (1.0 + 1e-12))
    throw DomainError("tube radius exceeds the Meyerhoff radius");
  return *t.radius;
}

std::pair<char, std::size_t> parse_end(const ManifoldDescription& m, const std::string& end) {
  const auto colon = end.find(':');
  if (colon == std::string::npos) throw DomainError("end must be 'cusp:<i>' or 'tube:<i>'");
  const std::string kind = end.substr(0, colon);
  std::size_t idx = 0;
  try {
    idx = std::stoul(end.substr(colon + 1));
  } catch (const std::exception&) {
    throw DomainError("bad end index in '" + end + "'");
  }
  if (kind == "cusp" && idx < m.cusps.size()) return {'c', idx};
  if (kind == "tube" && idx < m.tubes.size()) return {'t', idx};
  throw DomainError("unknown end '" + end + "'");
}

}  // namespace

SweepoutProfile cusp_profile(const CuspEnd& c, int samples, std::string name) {
  check_samples(samples);
  if (!(c.depth_lo < c.depth_hi)) throw DomainError("cusp depth range must satisfy t0 < t1");
  SweepoutProfile p;
  const double a0 = c.lattice.area();
  for (int k = 0; k < samples; ++k) {
    const double t = c.depth_lo + (c.depth_hi - c.depth_lo) * k / (samples - 1);
    p.samples.push_back({t, name, t, std::exp(-2.0 * t) * a0});
  }
  finish(p);
  return p;
}

SweepoutProfile tube_profile(const TubeEnd& tube, int samples, std::string name) {
  check_samples(samples);
  const double R = tube_radius(tube);
  SweepoutProfile p;
  for (int k = 0; k < samples; ++k) {
    const double r = (k == samples - 1) ? R : R * k / (samples - 1);
    p.samples.push_back({r, name, r, slice_area(tube.length, r)});
  }
  finish(p);
  return p;
}

SweepoutProfile filler_extension_profile(const std::vector<Filler>& fillers, int samples) {
  check_samples(samples);
  if (fillers.empty()) throw DomainError("no fillers given");
  double depth = 0.0;
  for (const auto& f : fillers) depth = std::max(depth, f.L() + 1.0);
  SweepoutProfile p;
  for (int k = 0; k < samples; ++k) {
    const double t = (k == samples - 1) ? 0.0 : -depth + depth * k / (samples - 1);
    const double s = -t;
    double a = 0.0;
    for (const auto& f : fillers)
      if (s < f.L() + 1.0) a += f.level_area(s);
    p.samples.push_back({t, "fillers", s, a});
  }
  finish(p);
  return p;
}

SweepoutProfile concatenate(const std::vector<SweepoutProfile>& parts) {
  SweepoutProfile out;
  for (const auto& part : parts) {
    if (part.samples.empty()) continue;
    double shift = 0.0;
    if (!out.samples.empty()) {
      const double step =
          part.samples.size() > 1 ? part.samples[1].t - part.samples[0].t : 1.0;
      shift = out.samples.back().t + step - part.samples.front().t;
    }
    for (ProfileSample s : part.samples) {
      s.t += shift;
      out.samples.push_back(std::move(s));
    }
  }
  finish(out);
  return out;
}

double max_mass(const SweepoutProfile& p) {
  if (p.samples.empty()) throw DomainError("empty profile");
  double m = 0.0;
  for (const auto& s : p.samples) m = std::max(m, s.area);
  return m;
}

FlatTorusLattice end_boundary_lattice(const ManifoldDescription& m, const std::string& end) {
  const auto [kind, idx] = parse_end(m, end);
  if (kind == 'c') {
    const CuspEnd& c = m.cusps[idx];
    return c.lattice.scaled(std::exp(-c.depth_lo));
  }
  const TubeEnd& t = m.tubes[idx];
  const double R = tube_radius(t);
  return boundary_lattice({t.length, t.twist, R}, R);
}

SweepoutProfile profile(const ManifoldDescription& m, int samples) {
  std::vector<SweepoutProfile> parts;
  if (!m.fillers.empty()) {
    std::vector<Filler> fillers;
    for (const auto& fa : m.fillers) {
      const FlatTorusLattice boundary = end_boundary_lattice(m, fa.end);
      if (fa.lattice && !isometric(*fa.lattice, boundary, 1e-6))
        throw DomainError("filler lattice does not match the boundary torus of " + fa.end);
      fillers.emplace_back(fa.L, boundary);
    }
    parts.push_back(filler_extension_profile(fillers, samples));
  }
  for (std::size_t i = 0; i < m.cusps.size(); ++i)
    parts.push_back(cusp_profile(m.cusps[i], samples, "cusp[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < m.tubes.size(); ++i)
    parts.push_back(tube_profile(m.tubes[i], samples, "tube[" + std::to_string(i) + "]"));
  if (parts.empty()) throw DomainError("manifold description has no ends");
  return concatenate(parts);
}

}  // namespace cuspgeo
