#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sweep/balayage.hpp"
#include "sweep/error.hpp"
#include "sweep/potential.hpp"

using namespace sweep;

namespace {

const Point kOrigin{0, 0, 0};
const Dimension d2(2);

const RasterDomain& disk() {
  static const RasterDomain dom = RasterDomain::ball(GridSpec::cube(d2, -1.0, 1.0, 96), kOrigin, 1.0);
  return dom;
}

}  // namespace

TEST_CASE("relation names") {
  CHECK(parse_relation("har") == Relation::Har);
  CHECK(parse_relation("sbh") == Relation::Sbh);
  CHECK(to_string(Relation::Sbh) == "sbh");
  CHECK_THROWS_AS(parse_relation("foo"), Error);
}

TEST_CASE("kernel criterion: Dirac against a sphere") {
  const Measure dirac = Measure::dirac(d2, kOrigin), sphere = uniform_sphere(d2, kOrigin, 0.5, 512);
  const auto v = check_kernel_criterion(dirac, sphere, Relation::Sbh, disk());
  CHECK(v.holds);
  CHECK(v.worst_equality_violation < 1e-9);
  CHECK(v.equality_samples > 0);
  CHECK(v.inequality_samples > 0);
  const auto swapped = check_kernel_criterion(sphere, dirac, Relation::Sbh, disk());
  CHECK_FALSE(swapped.holds);
  REQUIRE(swapped.witness);
  CHECK(std::sqrt(norm2(*swapped.witness)) < 0.5);
  // Har is symmetric.
  CHECK(check_kernel_criterion(sphere, dirac, Relation::Har, disk()).holds);
}

TEST_CASE("kernel criterion is reflexive with zero violations") {
  const Example5 ex = example5_measure(0.3, 0.8, std::vector<Example5Atom>{{Point{0.55, 0, 0}, 0.05}}, disk());
  for (const Measure& m : {ex.mu, uniform_sphere(d2, Point{0.1, 0.1, 0}, 0.3, 64), Measure::dirac(d2, kOrigin)})
    for (Relation rel : {Relation::Har, Relation::Sbh}) {
      const auto v = check_kernel_criterion(m, m, rel, disk());
      CHECK(v.holds);
      CHECK(v.worst_equality_violation == 0.0);
      CHECK(v.worst_inequality_violation <= 0.0);
      CHECK(v.mass_gap == 0.0);
    }
}

TEST_CASE("mass mismatch fails") {
  const auto v = check_kernel_criterion(Measure::dirac(d2, kOrigin), uniform_sphere(d2, kOrigin, 0.3, 512).scaled(1.01), Relation::Har, disk());
  CHECK_FALSE(v.holds);
  CHECK(v.mass_gap == doctest::Approx(0.01));
}

TEST_CASE("support outside the domain is rejected") {
  CHECK_THROWS_AS(check_kernel_criterion(Measure::dirac(d2, Point{0.99, 0.2, 0}), Measure::dirac(d2, kOrigin), Relation::Har, disk()), Error);
  CHECK_THROWS_AS(check_kernel_criterion(Measure::dirac(d2, kOrigin), Measure::dirac(Dimension(3), kOrigin), Relation::Har, disk()), Error);
}

TEST_CASE("sample plan") {
  const Measure a = Measure::dirac(d2, kOrigin), b = uniform_sphere(d2, kOrigin, 0.4, 512);
  ToleranceConfig cfg;
  const SamplePlan plan = make_sample_plan(a, b, disk(), cfg);
  for (const Point& p : plan.equality) {
    const auto c = disk().grid().locate(p);
    REQUIRE(c);
    CHECK_FALSE(plan.hull.contains(*c));
    CHECK(disk().contains(*c));
  }
  // Every atom location is an inequality sample.
  for (const Atom& at : b.atoms())
    CHECK(std::find(plan.inequality.begin(), plan.inequality.end(), at.point) != plan.inequality.end());
  // Same seed, same plan; the plan is deterministic.
  const SamplePlan again = make_sample_plan(a, b, disk(), cfg);
  CHECK(again.equality == plan.equality);
  CHECK(again.inequality == plan.inequality);
  CHECK(verdict_tolerance(a, b, cfg) == cfg.abs);
  const Measure ball = uniform_ball(kOrigin, 0.3, disk());
  CHECK(verdict_tolerance(a, ball, cfg) == doctest::Approx(4.0 * disk().grid().h));
}

TEST_CASE("minus infinity rules") {
  SamplePlan plan{RasterSet(disk().grid()), {}, {kOrigin, Point{0.1, 0, 0}}};
  // -inf on both sides is skipped, on the omega side alone it is a definite violation.
  const auto both = verdict_from_potentials(Relation::Sbh, plan, {}, {}, {kMinusInf, 0.0}, {kMinusInf, 0.0}, 0.0, 1e-9);
  CHECK(both.holds);
  const auto omega_only = verdict_from_potentials(Relation::Sbh, plan, {}, {}, {0.0, 0.0}, {kMinusInf, 0.0}, 0.0, 1e-9);
  CHECK_FALSE(omega_only.holds);
  CHECK(omega_only.definite_violation);
  CHECK(*omega_only.witness == kOrigin);
  const auto delta_only = verdict_from_potentials(Relation::Sbh, plan, {}, {}, {kMinusInf, 0.0}, {0.0, 0.0}, 0.0, 1e-9);
  CHECK(delta_only.holds);
}

TEST_CASE("test family") {
  const Measure dirac = Measure::dirac(d2, kOrigin), sphere = uniform_sphere(d2, kOrigin, 0.5, 512);
  ToleranceConfig cfg;
  const TestFamily fam = make_test_family(dirac, sphere, Relation::Sbh, disk(), cfg);
  int polys = 0, one_sided = 0;
  for (const auto& f : fam.functions) {
    polys += f.kind == TestFunction::Kind::Polynomial;
    one_sided += f.one_sided;
  }
  CHECK(polys == 2 * 6 + 1);
  CHECK(one_sided > 0);
  // Pairing of Re/Im z^k with the circle measure vanishes, as it does for the Dirac at 0.
  for (const auto& f : fam.functions)
    if (f.kind == TestFunction::Kind::Polynomial && f.degree >= 1) {
      CHECK(std::abs(pairing(fam, f, sphere)) < 1e-12);
      CHECK(std::abs(pairing(fam, f, dirac)) < 1e-12);
    }
  CHECK(check_test_family(dirac, sphere, Relation::Sbh, disk()).holds);
  CHECK_FALSE(check_test_family(sphere, dirac, Relation::Sbh, disk()).holds);
  CHECK(check_test_family(sphere, dirac, Relation::Har, disk()).holds);
  // The constant pair enforces mass equality.
  CHECK_FALSE(check_test_family(dirac, sphere.scaled(1.01), Relation::Har, disk()).holds);
}

TEST_CASE("shrinking the family never turns holds into fails") {
  const Measure dirac = Measure::dirac(d2, Point{0.1, 0, 0}), sphere = uniform_sphere(d2, Point{0.1, 0, 0}, 0.3, 512);
  ToleranceConfig big, small;
  small.family_degree = 2;
  small.family_poles = 8;
  for (Relation rel : {Relation::Har, Relation::Sbh}) {
    const bool full = check_test_family(dirac, sphere, rel, disk(), big).holds;
    const bool reduced = check_test_family(dirac, sphere, rel, disk(), small).holds;
    if (full) CHECK(reduced);
  }
  const Measure off = uniform_sphere(d2, Point{0.15, 0, 0}, 0.3, 512);
  CHECK_FALSE(check_test_family(dirac, off, Relation::Har, disk(), big).holds);
}

TEST_CASE("three dimensional solid harmonics are harmonic") {
  const RasterDomain ball = RasterDomain::ball(GridSpec::cube(Dimension(3), -1.0, 1.0, 24), kOrigin, 1.0);
  const Measure dirac = Measure::dirac(Dimension(3), kOrigin), sphere = uniform_sphere(Dimension(3), kOrigin, 0.3, 512);
  ToleranceConfig cfg;
  const TestFamily fam = make_test_family(dirac, sphere, Relation::Har, ball, cfg);
  const double h = 1e-3;
  const Point x{0.2, -0.1, 0.3};
  int count = 0;
  for (const auto& f : fam.functions) {
    if (f.kind != TestFunction::Kind::Polynomial) continue;
    ++count;
    double lap = -6.0 * evaluate(fam, f, x);
    for (int a = 0; a < 3; ++a) {
      Point p = x, m = x;
      p[a] += h;
      m[a] -= h;
      lap += evaluate(fam, f, p) + evaluate(fam, f, m);
    }
    CHECK(std::abs(lap / (h * h)) < 1e-4);
    CHECK(std::abs(pairing(fam, f, sphere) - pairing(fam, f, dirac)) < 1e-6);
  }
  CHECK(count == 49);  // sum_{k<=6} (2k + 1)
}

TEST_CASE("Jensen and Arens-Singer") {
  const Point x{0.1, -0.2, 0};
  const Measure sphere = uniform_sphere(d2, x, 0.3, 512);
  CHECK(jensen_check(sphere, x, disk()).holds);
  CHECK(arens_singer_check(sphere, x, disk()).holds);
  CHECK(jensen_check(Measure::dirac(d2, x), x, disk()).holds);
  const auto off = jensen_check(Measure::dirac(d2, Point{0.2, -0.2, 0}), x, disk());
  CHECK_FALSE(off.holds);
  // Constructive measure: Arens-Singer at 0 but not Jensen.
  const Example5 ex = example5_measure(0.3, 0.8, std::vector<Example5Atom>{{Point{0.55, 0, 0}, 0.05}, {Point{-0.5, 0.2, 0}, 0.06}}, disk());
  const Measure ball = uniform_ball(kOrigin, 0.3, disk());
  CHECK(check_kernel_criterion(ball, ex.mu, Relation::Har, disk()).holds);
  CHECK_FALSE(check_kernel_criterion(ball, ex.mu, Relation::Sbh, disk()).holds);
}

TEST_CASE("every Jensen measure is Arens-Singer") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.3, 0.3), ur(0.05, 0.3);
  for (int k = 0; k < 10; ++k) {
    const Point x{u(rng), u(rng), 0};
    const Measure m = uniform_sphere(d2, x + Point{0.02 * (k % 3), 0, 0}, ur(rng), 256);
    if (jensen_check(m, x, disk()).holds) CHECK(arens_singer_check(m, x, disk()).holds);
  }
}

TEST_CASE("integration theorem") {
  const Measure omega(d2, {Atom{Point{0.2, 0.1, 0}, 0.5, 0.0}, Atom{Point{-0.3, -0.2, 0}, 1.0, 0.0}});
  CHECK(verify_integration_theorem(MeasureField(SphereField{0.1, 512}), omega, Relation::Sbh, disk()).holds);
  CHECK(verify_integration_theorem(MeasureField::identity(d2), omega, Relation::Sbh, disk()).holds);
  const Measure conv = convolve(omega, uniform_sphere(d2, kOrigin, 0.1, 512), disk());
  CHECK(check_kernel_criterion(omega, conv, Relation::Har, disk()).holds);
  // A field that is not Jensen pointwise is reported.
  const MeasureField moved(ShiftField{Measure::dirac(d2, Point{0.05, 0, 0})});
  CHECK_THROWS_AS(verify_integration_theorem(moved, omega, Relation::Sbh, disk()), Error);
}

TEST_CASE("polar mass") {
  CHECK(polar_mass(uniform_ball(kOrigin, 0.3, disk()), std::vector<Point>{kOrigin}, Measure::dirac(d2, kOrigin)) == 0.0);
  const std::vector<Example5Atom> atoms{{Point{0.55, 0, 0}, 0.05}, {Point{-0.5, 0.2, 0}, 0.06}};
  const Example5 ex = example5_measure(0.3, 0.8, atoms, disk());
  const double pm = polar_mass(ex.mu, ex.atoms, ex.delta);
  CHECK(pm == example5_polar_mass(d2, 0.8, atoms));
  const oracle::Fraction f = oracle::polar_mass_rational({5, 6}, 4, 5);
  CHECK(pm == doctest::Approx(double(f.num) / double(f.den)).epsilon(1e-15));
  // An atom shared with delta is not polar mass.
  const Measure shared = Measure::dirac(d2, Point{0.1, 0, 0});
  CHECK(polar_mass(shared, std::vector<Point>{Point{0.1, 0, 0}}, shared) == 0.0);
}

TEST_CASE("sbh holding implies zero polar mass") {
  const Point x{0.1, 0.1, 0};
  const Measure dirac = Measure::dirac(d2, x), sphere = uniform_sphere(d2, x, 0.25, 512);
  REQUIRE(check_kernel_criterion(dirac, sphere, Relation::Sbh, disk()).holds);
  std::vector<Point> E{Point{0.3, 0.1, 0}, x, Point{-0.2, 0.4, 0}};
  for (const Atom& a : sphere.atoms()) E.push_back(a.point);
  // Sphere nodes carry shells, so none of them is a point atom.
  CHECK(polar_mass(sphere, E, dirac) == 0.0);
}

TEST_CASE("three-measure theorem") {
  const double rho = 0.15, R = 0.4;
  const Measure beta = Measure::dirac(d2, kOrigin), delta = uniform_sphere(d2, kOrigin, rho, 512), omega = uniform_sphere(d2, kOrigin, R, 512);
  auto ball = [&](double r) { return RasterDomain::ball(disk().grid(), kOrigin, r).mask(); };
  CHECK(three_measure_check(beta, delta, omega, disk(), ball(0.5 * (rho + R))).holds);
  CHECK_THROWS_AS(three_measure_check(beta, delta, omega, disk(), ball(1.05 * R)), Error);
  CHECK(three_measure_check(beta, beta, beta, disk(), ball(0.1)).holds);
}

TEST_CASE("restriction compatibility") {
  const Measure dirac = Measure::dirac(d2, kOrigin), sphere = uniform_sphere(d2, kOrigin, 0.3, 512);
  const RasterDomain half(RasterDomain::ball(disk().grid(), kOrigin, 0.5).mask());
  for (Relation rel : {Relation::Har, Relation::Sbh}) {
    CHECK(restriction_compatibility(dirac, sphere, disk(), half, rel));
    CHECK(restriction_compatibility(dirac, sphere, disk(), disk(), rel));
  }
}

TEST_CASE("transitivity along a chain of spheres") {
  const Point x{-0.1, 0.05, 0};
  const Measure a = Measure::dirac(d2, x), b = uniform_sphere(d2, x, 0.15, 512), c = uniform_sphere(d2, x, 0.35, 512);
  for (Relation rel : {Relation::Har, Relation::Sbh}) {
    const auto ab = check_kernel_criterion(a, b, rel, disk()), bc = check_kernel_criterion(b, c, rel, disk());
    REQUIRE(ab.holds);
    REQUIRE(bc.holds);
    const auto ac = check_kernel_criterion(a, c, rel, disk());
    CHECK(ac.holds);
    CHECK(ac.worst_equality_violation <= ab.worst_equality_violation + bc.worst_equality_violation + 1e-12);
  }
}
