#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sweep/balayage.hpp"
#include "sweep/capacity.hpp"
#include "sweep/error.hpp"
#include "sweep/io.hpp"
#include "sweep/potential.hpp"

namespace sweep::cli {

namespace {

using io::json;

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string relation = "har";
  std::string method = "kernel";
  double tol_abs = 1e-9;
  double tol_grid_c = 4.0;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::string connectivity = "face";
  std::string pgm;
  // capacity
  int boundary_nodes = 200;
  int interior_nodes = 16;
  std::string self_energy = "patch";
  // example5
  double t = 0.3;
  double r = 0.8;
  std::string atoms;
  int grid = 257;
  int dim = 2;
  // solver
  double sor_omega = 1.9;
  int max_sweeps = 100000;
  double solver_tol = 1e-8;
};

ToleranceConfig tolerances(const RunConfig& c) {
  ToleranceConfig t;
  t.abs = c.tol_abs;
  t.grid_c = c.tol_grid_c;
  t.seed = c.seed;
  return t;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty())
    out << text;
  else
    io::write_text_file(c.output, text);
}

std::string verdict_csv(const BalayageVerdict& v) {
  const json j = io::to_json(v);
  std::ostringstream s;
  const char* cols[] = {"relation", "holds", "mass_gap", "worst_equality_violation", "worst_inequality_violation",
                        "definite_violation", "witness", "witness_test", "tolerance", "equality_samples", "inequality_samples"};
  for (std::size_t i = 0; i < std::size(cols); ++i) s << (i ? "," : "") << cols[i];
  s << "\n";
  for (std::size_t i = 0; i < std::size(cols); ++i) {
    const json& f = j.at(cols[i]);
    std::string cell;
    if (f.is_array()) {
      for (std::size_t k = 0; k < f.size(); ++k) cell += (k ? " " : "") + f[k].dump();
    } else if (f.is_string()) {
      cell = f.get<std::string>();
    } else if (f.is_null()) {
      cell = "";
    } else {
      cell = f.dump();
    }
    s << (i ? "," : "") << cell;
  }
  s << "\n";
  return s.str();
}

RasterDomain domain_from(const std::string& path) { return RasterDomain(io::raster_from_json(io::read_json_file(path))); }
Measure measure_from(const std::string& path) { return io::measure_from_json(io::read_json_file(path)); }

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Measure delta = measure_from(c.inputs.at(0));
  const Measure omega = measure_from(c.inputs.at(1));
  const RasterDomain dom = domain_from(c.inputs.at(2));
  const Relation rel = parse_relation(c.relation);
  const BalayageVerdict v = c.method == "family" ? check_test_family(delta, omega, rel, dom, tolerances(c))
                                                 : check_kernel_criterion(delta, omega, rel, dom, tolerances(c));
  emit(c, out, c.format == "csv" ? verdict_csv(v) : io::dump(io::to_json(v)));
  return v.holds ? 0 : 1;
}

int cmd_infill(const RunConfig& c, std::ostream& out) {
  const RasterSet s = io::raster_from_json(io::read_json_file(c.inputs.at(0)));
  const RasterDomain dom = domain_from(c.inputs.at(1));
  const RasterSet filled = inward_filling(s, dom, c.connectivity == "full" ? Connectivity::Full : Connectivity::Face);
  if (!c.pgm.empty()) {
    std::ofstream f(c.pgm, std::ios::binary);
    io::write_pgm(f, filled);
  }
  emit(c, out, io::dump(io::to_json(filled)));
  return 0;
}

int cmd_capacity(const RunConfig& c, std::ostream& out) {
  const json j = io::read_json_file(c.inputs.at(0));
  CapacityConfig cfg;
  cfg.boundary_nodes = c.boundary_nodes;
  cfg.interior_nodes = c.interior_nodes;
  cfg.equilibrium.self_energy = c.self_energy == "excluded" ? SelfEnergy::Excluded : SelfEnergy::Patch;
  CapacityReport r;
  if (j.contains("points")) {
    Dimension d(2);
    const auto pts = io::points_from_json(j, d);
    r = capacity_estimate(pts, d, cfg);
  } else {
    r = capacity_estimate(io::raster_from_json(j), cfg);
  }
  emit(c, out, io::dump(io::to_json(r)));
  return 0;
}

int cmd_example5(const RunConfig& c, std::ostream& out) {
  const Dimension d(c.dim);
  if (c.atoms.empty()) throw Error(ErrorKind::InvalidArgument, "--atoms is required");
  const auto atoms = io::example5_atoms_from_json(io::read_json_file(c.atoms), d);
  const RasterDomain dom = RasterDomain::ball(GridSpec::cube(d, -1.0, 1.0, c.grid), Point{0, 0, 0}, 1.0);
  const Example5 ex = example5_measure(c.t, c.r, atoms, dom);
  const ToleranceConfig tol = tolerances(c);
  const BalayageVerdict ball = check_kernel_criterion(ex.delta, ex.omega, Relation::Sbh, dom, tol);
  const BalayageVerdict har = check_kernel_criterion(ex.delta, ex.mu, Relation::Har, dom, tol);
  const BalayageVerdict sbh = check_kernel_criterion(ex.delta, ex.mu, Relation::Sbh, dom, tol);
  const double pm = polar_mass(ex.mu, ex.atoms, ex.delta);
  json report = {{"t", c.t},
                 {"r", c.r},
                 {"grid", c.grid},
                 {"polar_mass", io::number(pm)},
                 {"expected_polar_mass", io::number(example5_polar_mass(d, c.r, atoms))},
                 {"ball_sbh", io::to_json(ball)},
                 {"har", io::to_json(har)},
                 {"sbh", io::to_json(sbh)},
                 {"har_holds", har.holds},
                 {"sbh_holds", sbh.holds},
                 {"delta", io::to_json(ex.delta)},
                 {"mu", io::to_json(ex.mu)}};
  emit(c, out, io::dump(report));
  return (ball.holds && har.holds && !sbh.holds) ? 0 : 1;
}

int cmd_convolve(const RunConfig& c, std::ostream& out) {
  const Measure omega = measure_from(c.inputs.at(0));
  const Measure theta = measure_from(c.inputs.at(1));
  const RasterDomain dom = domain_from(c.inputs.at(2));
  emit(c, out, io::dump(io::to_json(convolve(omega, theta, dom))));
  return 0;
}

int cmd_integrate(const RunConfig& c, std::ostream& out) {
  const Measure omega = measure_from(c.inputs.at(1));
  const MeasureField field = io::field_from_json(io::read_json_file(c.inputs.at(0)), omega.dim());
  const RasterDomain dom = domain_from(c.inputs.at(2));
  emit(c, out, io::dump(io::to_json(integrate_field(field, omega, dom))));
  return 0;
}

SolverOptions solver_options(const RunConfig& c) { return {c.sor_omega, c.max_sweeps, c.solver_tol}; }

int cmd_lift(const RunConfig& c, std::ostream& out) {
  const GridFunction u = io::grid_function_from_json(io::read_json_file(c.inputs.at(0)));
  const RasterSet sub = io::raster_from_json(io::read_json_file(c.inputs.at(1)));
  emit(c, out, io::dump(io::to_json(harmonic_lift(u, sub, solver_options(c)))));
  return 0;
}

int cmd_riesz(const RunConfig& c, std::ostream& out) {
  const GridFunction u = io::grid_function_from_json(io::read_json_file(c.inputs.at(0)));
  const RieszResult r = riesz_measure(u);
  json j = {{"measure", io::to_json(r.measure)},
            {"total_mass", io::number(r.measure.total_mass())},
            {"clamped", io::number(r.clamped)},
            {"interior_cells", r.interior_cells}};
  emit(c, out, io::dump(j));
  return 0;
}

void report_error(std::ostream& out, std::string_view kind, const std::string& detail) {
  out << json{{"kind", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Balayage, potentials and capacity on rasterised domains", "sweep"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("-o,--output", c.output, "Write the result here instead of stdout");
    s->add_option("--seed", c.seed, "Sampling seed");
    s->add_option("--tol-abs", c.tol_abs, "Tolerance for purely atomic pairs");
    s->add_option("--tol-grid-c", c.tol_grid_c, "Grid tolerance constant C in C*h*mass");
  };
  auto inputs = [&](CLI::App* s, const char* what, std::size_t n) {
    s->add_option("inputs", c.inputs, what)->required()->expected(int(n));
  };

  auto* check = app.add_subcommand("check", "Decide delta <= omega for har or sbh");
  inputs(check, "delta.json omega.json domain.json", 3);
  check->add_option("--relation", c.relation, "har or sbh")->check(CLI::IsMember({"har", "sbh"}));
  check->add_option("--method", c.method, "kernel (criterion) or family (test functions)")->check(CLI::IsMember({"kernel", "family"}));
  check->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  common(check);

  auto* infill = app.add_subcommand("infill", "Inward filling of a raster set");
  inputs(infill, "set.json domain.json", 2);
  infill->add_option("--connectivity", c.connectivity, "face or full")->check(CLI::IsMember({"face", "full"}));
  infill->add_option("--pgm", c.pgm, "Also write the result as PGM (d = 2)");
  common(infill);

  auto* cap = app.add_subcommand("capacity", "Capacity of a raster or point set");
  inputs(cap, "set.json", 1);
  cap->add_option("--boundary-nodes", c.boundary_nodes);
  cap->add_option("--interior-nodes", c.interior_nodes);
  cap->add_option("--self-energy", c.self_energy, "patch or excluded")->check(CLI::IsMember({"patch", "excluded"}));
  common(cap);

  auto* ex5 = app.add_subcommand("example5", "Build the har-but-not-sbh counterexample and check it");
  ex5->add_option("--t", c.t);
  ex5->add_option("--r", c.r);
  ex5->add_option("--atoms", c.atoms, "JSON list of {center, radius}")->required();
  ex5->add_option("--grid", c.grid, "Cells per axis over [-1, 1]");
  ex5->add_option("--d", c.dim)->check(CLI::Range(1, 3));
  common(ex5);

  auto* conv = app.add_subcommand("convolve", "omega * theta");
  inputs(conv, "omega.json theta.json domain.json", 3);
  common(conv);

  auto* integ = app.add_subcommand("integrate-field", "Integral of a measure field against omega");
  inputs(integ, "field.json omega.json domain.json", 3);
  common(integ);

  auto* lift = app.add_subcommand("lift", "Harmonic lift of a grid function over a subdomain");
  inputs(lift, "u.json subdomain.json", 2);
  lift->add_option("--sor-omega", c.sor_omega);
  lift->add_option("--max-sweeps", c.max_sweeps);
  lift->add_option("--solver-tol", c.solver_tol);
  common(lift);

  auto* riesz = app.add_subcommand("riesz", "Discrete Riesz measure of a grid function");
  inputs(riesz, "u.json", 1);
  common(riesz);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(out, "InvalidArgument", e.what());
    err << app.help();
    return 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    if (sub == check) return cmd_check(c, out);
    if (sub == infill) return cmd_infill(c, out);
    if (sub == cap) return cmd_capacity(c, out);
    if (sub == ex5) return cmd_example5(c, out);
    if (sub == conv) return cmd_convolve(c, out);
    if (sub == integ) return cmd_integrate(c, out);
    if (sub == lift) return cmd_lift(c, out);
    return cmd_riesz(c, out);
  } catch (const Error& e) {
    report_error(out, to_string(e.kind()), e.detail());
  } catch (const io::json::exception& e) {
    report_error(out, "ParseError", e.what());
  } catch (const std::exception& e) {
    report_error(out, "InvalidArgument", e.what());
  }
  return 2;
}

}  // namespace sweep::cli
