#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sweep/io.hpp"
#include "sweep/potential.hpp"

using namespace sweep;
using sweep::io::json;
namespace fs = std::filesystem;

namespace {

const Point kOrigin{0, 0, 0};
const Dimension d2(2);

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sweep");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

// Scratch directory with the usual input files.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("sweep_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const RasterDomain dom = RasterDomain::ball(GridSpec::cube(d2, -1.0, 1.0, 64), kOrigin, 1.0);
    put("disk.json", io::to_json(dom.mask()));
    put("dirac.json", io::to_json(Measure::dirac(d2, kOrigin)));
    put("sphere.json", io::to_json(uniform_sphere(d2, kOrigin, 0.5, 512)));
    const RasterSet ring = RasterSet::from_centers(dom.grid(), [](const Point& x) {
      const double r = std::sqrt(norm2(x));
      return r >= 0.4 && r <= 0.6;
    });
    put("annulus.json", io::to_json(ring));
    put("atoms.json", json{{"atoms", {{{"center", {0.55, 0.0}}, {"radius", 0.05}}, {{"center", {-0.5, 0.2}}, {"radius", 0.06}}}}});
    put("u.json", io::to_json(GridFunction::sample(dom, [](const Point& x) { return K(d2, kOrigin, x); })));
    put("sub.json", io::to_json(RasterSet::from_centers(dom.grid(), [](const Point& x) { return norm2(x) < 0.16; })));
    put("quad.json", io::to_json(GridFunction::sample(dom, [](const Point& x) { return norm2(x); })));
    put("field.json", json{{"kind", "sphere"}, {"radius", 0.1}, {"nodes", 64}});
    put("points.json", json{{"d", 2}, {"points", {{0.0, 0.0}, {0.5, 0.5}}}});
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void put(const std::string& name, const json& j) const { std::ofstream(path(name)) << j.dump(); }
};

const Workspace& ws() {
  static const Workspace w;
  return w;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("check: Dirac against sphere holds under sbh") {
  const Run r = run({"check", "--relation", "sbh", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json")});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("holds") == true);
  const Run swapped = run({"check", "--relation", "sbh", ws().path("sphere.json"), ws().path("dirac.json"), ws().path("disk.json")});
  CHECK(swapped.code == 1);
  CHECK(json::parse(swapped.out).at("holds") == false);
  const Run family = run({"check", "--relation", "sbh", "--method", "family", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json")});
  CHECK(family.code == 0);
}

TEST_CASE("check: csv export") {
  const Run r = run({"check", "--format", "csv", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("relation,holds,", 0) == 0);
  CHECK(r.out.find("\nhar,true,") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::string> args{"check", "--relation", "har", "--seed", "7", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json")};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> ex{"example5", "--atoms", ws().path("atoms.json"), "--grid", "97"};
  CHECK(run(ex).out == run(ex).out);
}

TEST_CASE("infill") {
  const std::string pgm = ws().path("filled.pgm");
  const Run r = run({"infill", ws().path("annulus.json"), ws().path("disk.json"), "--pgm", pgm});
  REQUIRE(r.code == 0);
  const RasterSet filled = io::raster_from_json(json::parse(r.out));
  CHECK(filled == RasterSet::from_centers(filled.grid(), [](const Point& x) { return norm2(x) <= 0.36; }));
  std::ifstream f(pgm, std::ios::binary);
  CHECK(io::read_pgm(f, filled.grid().origin, filled.grid().h) == filled);
}

TEST_CASE("example5 report") {
  const Run r = run({"example5", "--t", "0.3", "--r", "0.8", "--atoms", ws().path("atoms.json"), "--grid", "129"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("har_holds") == true);
  CHECK(j.at("sbh_holds") == false);
  CHECK(j.at("polar_mass").get<double>() == doctest::Approx((5.0 * 5.0 + 6.0 * 6.0) / 6400.0).epsilon(1e-15));
  CHECK(j.at("polar_mass") == j.at("expected_polar_mass"));
  CHECK(io::measure_from_json(j.at("mu")).atom_mass() == j.at("polar_mass").get<double>());
}

TEST_CASE("capacity") {
  const Run disk = run({"capacity", ws().path("disk.json")});
  CHECK(disk.code == 0);
  CHECK(json::parse(disk.out).at("capacity").get<double>() == doctest::Approx(1.0).epsilon(0.05));
  const Run pts = run({"capacity", ws().path("points.json")});
  CHECK(json::parse(pts.out).at("capacity") == 0.0);
}

TEST_CASE("emitted files re-parse to equal values") {
  const std::string out = ws().path("conv.json");
  CHECK(run({"convolve", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json"), "-o", out}).code == 0);
  CHECK(io::measure_from_json(io::read_json_file(out)) == uniform_sphere(d2, kOrigin, 0.5, 512));

  const Run integ = run({"integrate-field", ws().path("field.json"), ws().path("dirac.json"), ws().path("disk.json")});
  REQUIRE(integ.code == 0);
  const Measure m = io::measure_from_json(json::parse(integ.out));
  CHECK(m == uniform_sphere(d2, kOrigin, 0.1, 64));
  CHECK(io::measure_from_json(json::parse(io::dump(io::to_json(m)))) == m);

  const Run lift = run({"lift", ws().path("u.json"), ws().path("sub.json")});
  REQUIRE(lift.code == 0);
  const GridFunction g = io::grid_function_from_json(json::parse(lift.out));
  CHECK(io::dump(io::to_json(g)) == lift.out);
  CHECK(std::isfinite(g.values[*g.domain.grid().locate(Point{0.01, 0.01, 0})]));

  const Run riesz = run({"riesz", ws().path("quad.json")});
  REQUIRE(riesz.code == 0);
  const json rj = json::parse(riesz.out);
  CHECK(rj.at("clamped") == 0.0);
  CHECK(io::measure_from_json(rj.at("measure")).total_mass() == rj.at("total_mass").get<double>());
}

TEST_CASE("errors exit 2 with a structured report") {
  auto kind = [](const Run& r) { return json::parse(r.out).at("kind").get<std::string>(); };
  const Run missing = run({"check", "/nonexistent.json", ws().path("sphere.json"), ws().path("disk.json")});
  CHECK(missing.code == 2);
  CHECK(kind(missing) == "ParseError");
  const Run bad_flag = run({"check", "--relation", "maybe", ws().path("dirac.json"), ws().path("sphere.json"), ws().path("disk.json")});
  CHECK(bad_flag.code == 2);
  CHECK(json::parse(bad_flag.out).contains("detail"));
  // The 64-cell grid has no centre at the pole, so K is finite everywhere.
  CHECK(run({"riesz", ws().path("u.json")}).code == 0);
  const Run confused = run({"check", ws().path("dirac.json"), ws().path("annulus.json"), ws().path("disk.json")});
  CHECK(confused.code == 2);
  CHECK(kind(confused) == "ParseError");
  ws().put("far.json", io::to_json(Measure::dirac(d2, Point{0.99, 0.3, 0})));
  const Run escape = run({"check", ws().path("dirac.json"), ws().path("far.json"), ws().path("disk.json")});
  CHECK(escape.code == 2);
  CHECK(kind(escape) == "SupportOutsideDomain");
  const Run none = run({});
  CHECK(none.code == 2);
}
