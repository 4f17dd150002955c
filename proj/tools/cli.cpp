#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cuspgeo/area_bounds.hpp"
#include "cuspgeo/errors.hpp"
#include "cuspgeo/filler.hpp"
#include "cuspgeo/flat_torus.hpp"
#include "cuspgeo/io.hpp"
#include "cuspgeo/minimal_graph.hpp"
#include "cuspgeo/sweepout.hpp"
#include "cuspgeo/tube_geometry.hpp"
#include "cuspgeo/warped_metric.hpp"

namespace cuspgeo::cli {

namespace {

struct VerifyFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("cannot parse " + path + ": " + e.what());
  }
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (v.size() != n)
    throw DomainError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  return v;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) {
      const int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw DomainError("grid must look like N1xN2");
  }
}

void print_value(std::ostream& out, const Json& v) {
  if (v.is_number_float()) {
    out << format12(v.get<double>());
  } else if (v.is_array()) {
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ", ";
      print_value(out, v[i]);
    }
    out << "]";
  } else if (v.is_string()) {
    out << v.get<std::string>();
  } else {
    out << v.dump();
  }
}

void print_human(std::ostream& out, const Json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      out << indent << it.key() << ":\n";
      print_human(out, *it, indent + "  ");
    } else {
      out << indent << it.key() << ": ";
      print_value(out, *it);
      out << "\n";
    }
  }
}

struct Globals {
  bool json = false;
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

void emit(std::ostream& out, const Globals& g, const Json& report) {
  if (g.json)
    out << rounded(report).dump(2) << "\n";
  else
    print_human(out, report);
}

Json lattice_report(const FlatTorusLattice& lat) {
  const auto red = reduce_basis(lat);
  const Vec2 hole = deep_hole(lat);
  return {{"lattice", to_json(lat)},
          {"reduced_v1", {red.v1().x, red.v1().y}},
          {"reduced_v2", {red.v2().x, red.v2().y}},
          {"area", lat.area()},
          {"systole", systole(lat)},
          {"diameter", diameter(lat)},
          {"deep_hole", {hole.x, hole.y}}};
}

Json hypotheses_report(const HypothesisReport& r) {
  return {{"A_h1", r.a_h1},
          {"A_h2", r.a_h2},
          {"A_h2_terms", r.a_h2_terms},
          {"A_h2_argmax", r.a_h2_argmax},
          {"A_h3", r.a_h3},
          {"A_h3_by_order", r.a_h3_by_order},
          {"h_monotone", r.h_monotone},
          {"mean_convex", r.mean_convex},
          {"min_mean_curvature", r.min_mean_curvature},
          {"grid", std::to_string(r.grid_points) + " points per axis on [" +
                       format12(r.window.lo) + ", " + format12(r.window.hi) + "]"}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of cusp and tube ends: lattices, tubes, minimal graphs, fillers, "
               "area bounds and sweep-out profiles",
               "cuspgeo"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print machine-readable JSON");
  app.add_option("--tol", g.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized utilities");

  // lattice
  auto* lat_cmd = app.add_subcommand("lattice", "Reduced basis, systole, diameter of a flat torus");
  double la1 = 1.0, la2 = 0.0, lb2 = 1.0;
  std::string generators;
  bool lrandom = false;
  int lcount = 1;
  lat_cmd->add_option("--a1", la1, "First generator length");
  lat_cmd->add_option("--a2", la2, "Second generator, x component");
  lat_cmd->add_option("--b2", lb2, "Second generator, y component");
  lat_cmd->add_option("--generators", generators, "Any generating pair u1x,u1y,u2x,u2y");
  lat_cmd->add_flag("--random", lrandom, "Sample random lattices (uses --seed)");
  lat_cmd->add_option("--count", lcount, "Number of random lattices")->check(CLI::PositiveNumber);

  auto* mey_cmd = app.add_subcommand("meyerhoff", "Embedded tube radius for a short geodesic");
  double mlength = 0.0;
  mey_cmd->add_option("--length", mlength, "Geodesic length")->required();

  auto* tube_cmd = app.add_subcommand("tube", "Boundary torus data of a Margulis tube");
  double tlength = 0.0, ttwist = 0.0;
  std::optional<double> tradius;
  tube_cmd->add_option("--length", tlength, "Geodesic length")->required();
  tube_cmd->add_option("--twist", ttwist, "Twist angle (radians)");
  tube_cmd->add_option("--radius", tradius, "Tube radius (default: Meyerhoff radius)");

  auto* graph_cmd = app.add_subcommand("graph", "Minimal graphs in warped metrics");
  graph_cmd->require_subcommand(1);
  auto* solve_cmd = graph_cmd->add_subcommand("solve", "Solve the minimal surface equation");
  std::string gmetric, gdomain = "torus", ggrid = "32x32", gbc, gout;
  int gmaxit = 60;
  solve_cmd->add_option("--metric", gmetric, "Metric descriptor JSON")->required();
  solve_cmd->add_option("--domain", gdomain, "torus, rect or stripe")
      ->check(CLI::IsMember({"torus", "rect", "stripe"}));
  solve_cmd->add_option("--grid", ggrid, "Grid size N1xN2");
  solve_cmd->add_option("--bc", gbc, "Boundary/initial data JSON")->required();
  solve_cmd->add_option("--out", gout, "Write the solution grid (CSV)");
  solve_cmd->add_option("--max-iter", gmaxit, "Newton iteration limit")->check(CLI::PositiveNumber);
  auto* hyp_cmd = graph_cmd->add_subcommand("hypotheses", "Measure the H1-H4 constants of a metric");
  std::string hmetric, hwindow;
  int hgrid = 16;
  hyp_cmd->add_option("--metric", hmetric, "Metric descriptor JSON")->required();
  hyp_cmd->add_option("--grid", hgrid, "Points per axis (>= 8)");
  hyp_cmd->add_option("--window", hwindow, "Sub-interval a,b of x3");

  auto* filler_cmd = app.add_subcommand("filler", "Build and verify fillers");
  filler_cmd->require_subcommand(1);
  auto* fbuild = filler_cmd->add_subcommand("build", "Construct a filler and write it as JSON");
  double fL = 20.0;
  std::string flattice = "1,0,1", fout;
  fbuild->add_option("--L", fL, "Depth (> 10)")->required();
  fbuild->add_option("--lattice", flattice, "Boundary lattice a1,a2,b2");
  fbuild->add_option("--out", fout, "Output file (default: stdout)");
  auto* fverify = filler_cmd->add_subcommand("verify", "Check the filler properties");
  std::string ffile;
  int fgrid = 200;
  double fc = std::numbers::pi;
  fverify->add_option("file", ffile, "filler.json")->required();
  fverify->add_option("--grid", fgrid, "Number of sampled levels");
  fverify->add_option("--c", fc, "Monotonicity constant");

  auto* bounds_cmd = app.add_subcommand("bounds", "Explicit area inequalities");
  bounds_cmd->require_subcommand(1);
  auto* bdisk = bounds_cmd->add_subcommand("disk", "Area of a hyperbolic disk");
  double bR = 0.0;
  bdisk->add_option("--R", bR, "Radius")->required();
  auto* bband = bounds_cmd->add_subcommand("band", "Annulus band estimate");
  BandEstimate band;
  bband->add_option("--rho1", band.rho1)->required();
  bband->add_option("--rho2", band.rho2)->required();
  bband->add_option("--sys", band.sys0)->required();
  bband->add_option("--RL", band.tube_radius)->required();
  auto* bcross = bounds_cmd->add_subcommand("crossing", "Crossing lower bound");
  double cR = 0.0, cRL = 0.0, csys = 1.0, ckpp = 1.0;
  bcross->add_option("--R", cR)->required();
  bcross->add_option("--RL", cRL)->required();
  bcross->add_option("--sys", csys)->required();
  bcross->add_option("--kpp", ckpp, "Declared universal constant");
  auto* bmarg = bounds_cmd->add_subcommand("margulis", "Margulis area bound");
  double meps = 0.0;
  bmarg->add_option("--eps", meps)->required();

  auto* sweep_cmd = app.add_subcommand("sweepout", "Sweep-out profiles and discrete families");
  sweep_cmd->require_subcommand(1);
  auto* sprofile = sweep_cmd->add_subcommand("profile", "Area profile of a manifold description");
  std::string smanifold, semit = "csv", sout;
  int ssamples = 200;
  sprofile->add_option("--manifold", smanifold, "Manifold JSON")->required();
  sprofile->add_option("--samples", ssamples, "Samples per segment");
  sprofile->add_option("--emit", semit, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sprofile->add_option("--out", sout, "Output file (default: stdout)");
  auto* sfine = sweep_cmd->add_subcommand("fineness", "Fineness of a discrete family");
  std::string sfamily;
  sfine->add_option("--family", sfamily, "Family JSON")->required();

  std::vector<std::string> argv_s{"cuspgeo"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_s) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*lat_cmd) {
      if (lrandom) {
        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> shear(-2.0, 2.0), height(0.2, 3.0);
        Json arr = Json::array();
        for (int i = 0; i < lcount; ++i)
          arr.push_back(lattice_report(FlatTorusLattice::well_oriented(1.0, shear(rng), height(rng))));
        if (g.json) {
          out << rounded(arr).dump(2) << "\n";
        } else {
          for (const auto& r : arr) {
            print_human(out, r);
            out << "\n";
          }
        }
        return kOk;
      }
      FlatTorusLattice lat = FlatTorusLattice::well_oriented(la1, la2, lb2);
      if (!generators.empty()) {
        const auto v = parse_list(generators, 4, "--generators");
        lat = FlatTorusLattice::from_generators({v[0], v[1]}, {v[2], v[3]});
      }
      emit(out, g, lattice_report(lat));
    } else if (*mey_cmd) {
      const double R = meyerhoff_radius(mlength);
      const double s = std::sinh(R);
      emit(out, g,
           {{"length", mlength},
            {"max_length", max_tube_length()},
            {"radius", R},
            {"radius_root_solve", meyerhoff_radius_by_root(mlength)},
            {"length_times_sinh2_radius", mlength * s * s}});
    } else if (*tube_cmd) {
      const double RL = meyerhoff_radius(tlength);
      const double R = tradius.value_or(RL);
      const TubeParams p{tlength, ttwist, R};
      const auto lat = boundary_lattice(p, R);
      emit(out, g,
           {{"meyerhoff_radius", RL},
            {"radius", R},
            {"boundary_lattice", to_json(lat)},
            {"systole", systole(lat)},
            {"diameter", diameter(lat)},
            {"slice_area", slice_area(tlength, R)},
            {"mean_curvature", slice_mean_curvature(R)}});
    } else if (*solve_cmd) {
      const auto spec = metric_from_json(read_json_file(gmetric));
      const auto [n1, n2] = parse_grid(ggrid);
      const auto init = graph_from_bc(spec, gdomain, n1, n2, read_json_file(gbc));
      const auto res = solve(spec, init, {g.tol, gmaxit});
      const auto H = graph_mean_curvature(spec, res.graph);
      double supH = 0.0;
      for (double h : H) supH = std::max(supH, std::abs(h));
      if (!gout.empty()) {
        std::ofstream f(gout);
        if (!f) throw DomainError("cannot write " + gout);
        write_grid_csv(f, res.graph);
      }
      emit(out, g,
           {{"iterations", res.iterations},
            {"residual", res.residual_history.back()},
            {"residual_history", res.residual_history},
            {"kappa_w", res.kappa_w},
            {"mean_pinned", res.mean_pinned},
            {"area", area(spec, res.graph)},
            {"sup_mean_curvature", supH}});
    } else if (*hyp_cmd) {
      const auto spec = metric_from_json(read_json_file(hmetric));
      std::optional<Interval> window;
      if (!hwindow.empty()) {
        const auto w = parse_list(hwindow, 2, "--window");
        window = Interval{w[0], w[1]};
      }
      emit(out, g, hypotheses_report(check_hypotheses(spec, hgrid, window)));
    } else if (*fbuild) {
      const auto v = parse_list(flattice, 3, "--lattice");
      const Filler f(fL, FlatTorusLattice::well_oriented(v[0], v[1], v[2]));
      const Json doc = filler_to_json(f);
      if (fout.empty()) {
        out << doc.dump(2) << "\n";
      } else {
        std::ofstream file(fout);
        if (!file) throw DomainError("cannot write " + fout);
        file << doc.dump(2) << "\n";
        emit(out, g,
             {{"L", f.L()}, {"f_end", f.f_end()}, {"eta_tail_slope", f.eta_tail_slope()},
              {"written", fout}});
      }
    } else if (*fverify) {
      const Filler f = filler_from_json(read_json_file(ffile));
      const auto r = verify(f, fgrid);
      const auto b = area_lower_bound(f, fc);
      emit(out, g,
           {{"levels_flat", r.levels_flat},
            {"diameter_decreasing", r.diameter_decreasing},
            {"mean_convex", r.mean_convex},
            {"min_mean_curvature", r.min_mean_curvature},
            {"collar_error", r.max_collar_error},
            {"splice_jump", r.splice_jump},
            {"core_theta_residual_over_rho3", r.core_theta_residual},
            {"core_z_residual_over_rho", r.core_z_residual},
            {"f_max", r.f_max},
            {"f_slope_max", r.f_slope_max},
            {"f_curvature_max", r.f_curvature_max},
            {"samples", r.samples},
            {"area_bound",
             {{"c", b.c},
              {"rho0", b.rho0},
              {"spacing", b.spacing},
              {"n0", b.n0},
              {"bound", b.bound},
              {"kappa", b.kappa},
              {"scaled_spacing", b.scaled_spacing},
              {"scaled_n0", b.scaled_n0},
              {"scaled_bound", b.scaled_bound},
              {"counted_levels", "1 <= t <= L - 1"}}},
            {"ok", r.ok()}});
      if (!r.ok()) throw VerifyFailed("filler verification failed");
    } else if (*bdisk) {
      emit(out, g,
           {{"area", parallel_disk_area(bR)}, {"area_quadrature", parallel_disk_area_quadrature(bR)}});
    } else if (*bband) {
      const auto b = annulus_band_bound(band);
      emit(out, g, {{"difference_form", b.difference_form}, {"product_form", b.product_form}});
    } else if (*bcross) {
      const auto b = crossing_lower_bound(cR, cRL, csys, ckpp);
      emit(out, g,
           {{"chain", b.chain}, {"simplified", b.simplified}, {"kpp", b.k2}, {"kppp", b.k3}});
    } else if (*bmarg) {
      emit(out, g, {{"area", margulis_area_bound(meps)}, {"margulis_constant", kMargulisConstant}});
    } else if (*sprofile) {
      const auto p = profile(manifold_from_json(read_json_file(smanifold)), ssamples);
      std::ofstream file;
      if (!sout.empty()) {
        file.open(sout);
        if (!file) throw DomainError("cannot write " + sout);
      }
      std::ostream& dst = sout.empty() ? out : file;
      if (semit == "json")
        dst << rounded(to_json(p)).dump(2) << "\n";
      else
        write_profile_csv(dst, p);
      if (!sout.empty())
        emit(out, g, {{"samples", p.samples.size()}, {"width_upper_bound", p.width_upper_bound},
                      {"written", sout}});
    } else if (*sfine) {
      const auto fam = family_from_json(read_json_file(sfamily));
      emit(out, g,
           {{"level", fam.level},
            {"vertices", fam.values.size()},
            {"fineness", fineness(fam)},
            {"max_mass", max_mass(fam)}});
    }
  } catch (const VerifyFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (last residual " << format12(e.last_residual()) << ")\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace cuspgeo::cli
