#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sweep/balayage.hpp"
#include "sweep/capacity.hpp"
#include "sweep/error.hpp"
#include "sweep/io.hpp"
#include "sweep/potential.hpp"

using namespace sweep;
using sweep::io::json;

namespace {

const Point kOrigin{0, 0, 0};
const Dimension d2(2);

RasterDomain disk() { return RasterDomain::ball(GridSpec::cube(d2, -1.0, 1.0, 40), kOrigin, 1.0); }

}  // namespace

TEST_CASE("non-finite numbers") {
  CHECK(io::number(kMinusInf) == "-inf");
  CHECK(io::number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::number(NAN) == "nan");
  CHECK(io::to_number(json("-inf")) == kMinusInf);
  CHECK(std::isnan(io::to_number(json("nan"))));
  CHECK(io::to_number(io::number(0.1)) == 0.1);
  CHECK_THROWS_AS(io::to_number(json("zero")), Error);
}

TEST_CASE("raster round trip with run-length cells") {
  const RasterDomain dom = disk();
  const json j = io::to_json(dom.mask());
  CHECK(j.at("cells").at(0).get<int>() > 0);  // starts with a run of zeros
  CHECK(io::raster_from_json(j) == dom.mask());
  const RasterSet full = RasterDomain::full(dom.grid()).mask();
  const json jf = io::to_json(full);
  CHECK(jf.at("cells").at(0).get<int>() == 0);
  CHECK(io::raster_from_json(jf) == full);
  CHECK(io::raster_from_json(json::parse(io::dump(j))) == dom.mask());
  json bad = j;
  bad["cells"].push_back(5);
  CHECK_THROWS_AS(io::raster_from_json(bad), Error);
}

TEST_CASE("measure round trip") {
  const RasterDomain dom = disk();
  const Example5 ex = example5_measure(0.3, 0.8, std::vector<Example5Atom>{{Point{0.5, 0.1, 0}, 0.07}}, dom);
  for (const Measure& m : {ex.mu, uniform_sphere(d2, Point{0.1, 0.2, 0}, 0.3, 64), Measure(d2), Measure::dirac(Dimension(3), Point{0.1, 0.2, 0.3})}) {
    const Measure back = io::measure_from_json(json::parse(io::dump(io::to_json(m))));
    CHECK(back == m);
  }
  const json schema = io::to_json(uniform_sphere(d2, kOrigin, 0.3, 8));
  CHECK(schema.at("d") == 2);
  CHECK(schema.at("atoms").at(0).contains("s"));
  CHECK_THROWS_AS(io::measure_from_json(json{{"d", 2}, {"atoms", {{{"p", {0, 0}}, {"w", -1.0}}}}}), Error);
  CHECK_THROWS_AS(io::measure_from_json(json{{"atoms", json::array()}}), Error);
}

TEST_CASE("grid function round trip keeps -inf") {
  const RasterDomain dom = RasterDomain::ball(GridSpec::cube(d2, -1.0, 1.0, 41), kOrigin, 1.0);
  const GridFunction u = GridFunction::sample(dom, [](const Point& x) { return K(d2, kOrigin, x); });
  REQUIRE(is_minus_inf(u.values[*dom.grid().locate(kOrigin)]));
  const json j = io::to_json(u);
  CHECK(j.at("values").size() == dom.mask().count());
  CHECK(io::grid_function_from_json(json::parse(io::dump(j))) == u);
}

TEST_CASE("verdict and capacity report") {
  const BalayageVerdict v = check_kernel_criterion(uniform_sphere(d2, kOrigin, 0.3, 512), Measure::dirac(d2, kOrigin), Relation::Sbh, disk());
  const json j = io::to_json(v);
  CHECK(j.at("relation") == "sbh");
  CHECK(j.at("holds") == false);
  CHECK(j.at("witness").is_array());
  CHECK(j.at("definite_violation").is_boolean());
  const json c = io::to_json(CapacityReport{0.5, std::log(0.5), 10, 1e-10, 7});
  CHECK(c.at("capacity") == 0.5);
  CHECK(c.at("iterations") == 10);
  CHECK(io::to_json(CapacityReport{0.0, kMinusInf, 0, 0.0, 1}).at("energy") == "-inf");
}

TEST_CASE("point lists") {
  Dimension d(2);
  const auto pts = io::points_from_json(json{{"d", 3}, {"points", {{0.1, 0.2, 0.3}, {0, 0, 1}}}}, d);
  CHECK(d.value() == 3);
  CHECK(pts.size() == 2);
  CHECK(pts[0][2] == 0.3);
  CHECK_THROWS_AS(io::points_from_json(json{{"d", 2}, {"points", {{0.1, 0.2, 0.3}}}}, d), Error);
}

TEST_CASE("PGM round trip puts row 0 on top") {
  const GridSpec g(d2, Point{-1, -1, 0}, 0.5, {4, 3, 1});
  RasterSet s(g);
  s.insert(g.index({0, 2, 0}));  // top-left
  s.insert(g.index({3, 0, 0}));  // bottom-right
  std::stringstream buf;
  io::write_pgm(buf, s);
  const std::string bytes = buf.str();
  CHECK(bytes.rfind("P5", 0) == 0);
  CHECK(static_cast<unsigned char>(bytes[bytes.size() - 12]) == 255);
  CHECK(static_cast<unsigned char>(bytes.back()) == 255);
  CHECK(io::read_pgm(buf, g.origin, g.h) == s);
  std::stringstream junk("P2 1 1 255\n0");
  CHECK_THROWS_AS(io::read_pgm(junk, g.origin, g.h), Error);
}

TEST_CASE("field and atom documents") {
  const MeasureField sphere = io::field_from_json(json{{"kind", "sphere"}, {"radius", 0.1}, {"nodes", 64}}, d2);
  CHECK(std::get<SphereField>(sphere.kind()).nodes == 64);
  const MeasureField shift = io::field_from_json(json{{"kind", "shift"}, {"theta", io::to_json(Measure::dirac(d2, Point{0.1, 0, 0}))}}, d2);
  CHECK(std::holds_alternative<ShiftField>(shift.kind()));
  const MeasureField based = io::field_from_json(json{{"kind", "ball"}, {"radius", 0.2}, {"base", {{"points", {{0.0, 0.0}}}}}}, d2);
  CHECK(based.in_base(kOrigin));
  CHECK_FALSE(based.in_base(Point{0.1, 0, 0}));
  CHECK_THROWS_AS(io::field_from_json(json{{"kind", "spiral"}}, d2), Error);
  const auto atoms = io::example5_atoms_from_json(json{{"atoms", {{{"center", {0.5, 0.0}}, {"radius", 0.05}}}}}, d2);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].radius == 0.05);
}

TEST_CASE("file helpers report parse errors") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), Error);
  const std::string path = "io_test_tmp.json";
  io::write_text_file(path, "{ not json");
  try {
    io::read_json_file(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  std::remove(path.c_str());
}
