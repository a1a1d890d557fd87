#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sweep/measures.hpp"

namespace sweep {

enum class Relation { Har, Sbh };

std::string to_string(Relation r);
Relation parse_relation(const std::string& s);

struct ToleranceConfig {
  double abs = 1e-9;        // purely atomic pairs
  double grid_c = 4.0;      // eps = grid_c * h * mass when a grid part participates
  int ring_samples = 256;
  int equality_samples = 256;
  int inequality_samples = 1024;
  int family_degree = 6;
  int family_poles = 128;
  std::uint64_t seed = 0;
};

struct BalayageVerdict {
  Relation relation = Relation::Har;
  bool holds = false;
  double mass_gap = 0.0;
  double worst_equality_violation = 0.0;
  double worst_inequality_violation = 0.0;  // positive means violated
  bool definite_violation = false;          // -inf on the omega side only
  std::optional<Point> witness;
  std::string witness_test;
  double tolerance = 0.0;
  std::size_t equality_samples = 0;
  std::size_t inequality_samples = 0;
};

// Points where the criterion is evaluated.
struct SamplePlan {
  RasterSet hull;
  std::vector<Point> equality;    // off the hull
  std::vector<Point> inequality;  // anywhere in O, atom locations included
};

SamplePlan make_sample_plan(const Measure& delta, const Measure& omega, const RasterDomain& domain, const ToleranceConfig& cfg);

double verdict_tolerance(const Measure& delta, const Measure& omega, const ToleranceConfig& cfg);

BalayageVerdict check_kernel_criterion(const Measure& delta, const Measure& omega, Relation rel, const RasterDomain& domain,
                                       const ToleranceConfig& cfg = {});

// Verdict from potentials already evaluated on a plan.
BalayageVerdict verdict_from_potentials(Relation rel, const SamplePlan& plan, const std::vector<double>& ud_eq,
                                        const std::vector<double>& uw_eq, const std::vector<double>& ud_in,
                                        const std::vector<double>& uw_in, double mass_gap, double tol);

// Harmonic and kernel test functions.
struct TestFunction {
  enum class Kind { Polynomial, Kernel };
  Kind kind = Kind::Polynomial;
  int degree = 0;
  int order = 0;         // d = 2: 0 real part, 1 imaginary; d = 3: index of the solid harmonic
  Point pole{0, 0, 0};   // kernel pole
  bool one_sided = false;
  std::string id;
};

struct TestFamily {
  Dimension dim{2};
  Point center{0, 0, 0};
  double scale = 1.0;
  std::vector<TestFunction> functions;
};

TestFamily make_test_family(const Measure& delta, const Measure& omega, Relation rel, const RasterDomain& domain,
                            const ToleranceConfig& cfg);

// Value of a polynomial test function at a point.
double evaluate(const TestFamily& family, const TestFunction& f, const Point& x);
// Integral of the test function against mu.
ExtendedReal pairing(const TestFamily& family, const TestFunction& f, const Measure& mu);

BalayageVerdict check_test_family(const Measure& delta, const Measure& omega, Relation rel, const RasterDomain& domain,
                                  const ToleranceConfig& cfg = {});

BalayageVerdict jensen_check(const Measure& omega, const Point& x, const RasterDomain& domain, const ToleranceConfig& cfg = {});
BalayageVerdict arens_singer_check(const Measure& omega, const Point& x, const RasterDomain& domain,
                                   const ToleranceConfig& cfg = {});

BalayageVerdict verify_integration_theorem(const MeasureField& field, const Measure& omega, Relation rel,
                                           const RasterDomain& domain, const ToleranceConfig& cfg = {});

// Mass of the atoms of omega sitting at points of E outside supp delta.
double polar_mass(const Measure& omega, std::span<const Point> E, const Measure& delta);

// Verdict of delta <=_sbh omega after validating the hypotheses of the three-measure
// theorem. delta == omega skips validation (the reflexive case).
BalayageVerdict three_measure_check(const Measure& beta, const Measure& delta, const Measure& omega, const RasterDomain& domain,
                                    const RasterSet& inner, const ToleranceConfig& cfg = {});

// Whether the verdict over O agrees with the verdict over the smaller domain.
bool restriction_compatibility(const Measure& delta, const Measure& omega, const RasterDomain& domain,
                               const RasterDomain& smaller, Relation rel, const ToleranceConfig& cfg = {});

}  // namespace sweep
