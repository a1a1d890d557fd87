#include <algorithm>
#include <cmath>

#include "random.hpp"
#include "sweep/balayage.hpp"
#include "sweep/error.hpp"
#include "sweep/potential.hpp"

namespace sweep {

namespace {

// One cell per stratum of the (sorted) candidate list.
void stratified(const std::vector<std::size_t>& cells, int wanted, detail::Rng& rng, const GridSpec& g, std::vector<Point>& out) {
  const std::size_t n = cells.size();
  if (n == 0 || wanted <= 0) return;
  const std::size_t strata = std::min(n, std::size_t(wanted));
  for (std::size_t s = 0; s < strata; ++s) {
    const std::size_t lo = s * n / strata;
    const std::size_t hi = (s + 1) * n / strata;
    out.push_back(g.center(cells[lo + rng.below(hi - lo)]));
  }
}

void atom_locations(const Measure& mu, std::vector<Point>& out) {
  for (const Atom& a : mu.atoms()) out.push_back(a.point);
}

}  // namespace

std::string to_string(Relation r) { return r == Relation::Har ? "har" : "sbh"; }

Relation parse_relation(const std::string& s) {
  if (s == "har") return Relation::Har;
  if (s == "sbh") return Relation::Sbh;
  throw Error(ErrorKind::InvalidArgument, "relation must be har or sbh, got " + s);
}

SamplePlan make_sample_plan(const Measure& delta, const Measure& omega, const RasterDomain& domain, const ToleranceConfig& cfg) {
  if (!(delta.dim() == omega.dim()) || !(delta.dim() == domain.dim()))
    throw Error(ErrorKind::DimensionMismatch, "measures and domain must share a dimension");
  const GridSpec& g = domain.grid();
  SamplePlan plan{support_hull(delta, omega, domain), {}, {}};
  const RasterSet free = domain.mask().minus(plan.hull);
  detail::Rng rng(cfg.seed);

  const std::vector<int> dist = face_distance(plan.hull, free, 8);
  std::vector<std::size_t> ring;
  for (int layer : {1, 2, 4, 8})
    for (std::size_t i = 0; i < dist.size(); ++i)
      if (dist[i] == layer) ring.push_back(i);
  const std::size_t take = std::min(ring.size(), std::size_t(std::max(0, cfg.ring_samples)));
  for (std::size_t s = 0; s < take; ++s) plan.equality.push_back(g.center(ring[s * ring.size() / take]));
  stratified(free.indices(), cfg.equality_samples, rng, g, plan.equality);

  stratified(domain.mask().indices(), cfg.inequality_samples, rng, g, plan.inequality);
  atom_locations(delta, plan.inequality);
  atom_locations(omega, plan.inequality);
  return plan;
}

double verdict_tolerance(const Measure& delta, const Measure& omega, const ToleranceConfig& cfg) {
  const double h = std::max(delta.grid_spacing(), omega.grid_spacing());
  if (h == 0.0) return cfg.abs;
  return cfg.grid_c * h * std::max(delta.total_mass(), omega.total_mass());
}

BalayageVerdict verdict_from_potentials(Relation rel, const SamplePlan& plan, const std::vector<double>& ud_eq,
                                        const std::vector<double>& uw_eq, const std::vector<double>& ud_in,
                                        const std::vector<double>& uw_in, double mass_gap, double tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BalayageVerdict v;
  v.relation = rel;
  v.mass_gap = mass_gap;
  v.tolerance = tol;
  v.equality_samples = plan.equality.size();
  v.inequality_samples = rel == Relation::Sbh ? plan.inequality.size() : 0;

  double worst_excess = -inf;  // violation minus tolerance, to pick the witness
  auto consider = [&](double violation, const Point& p, const char* test) {
    if (violation - tol > worst_excess) {
      worst_excess = violation - tol;
      v.witness = p;
      v.witness_test = test;
    }
  };

  for (std::size_t i = 0; i < plan.equality.size(); ++i) {
    const double a = ud_eq[i], b = uw_eq[i];
    if (is_minus_inf(a) && is_minus_inf(b)) continue;
    double viol;
    if (is_minus_inf(a) || is_minus_inf(b)) {
      viol = inf;
      v.definite_violation = true;
    } else {
      viol = std::abs(a - b);
    }
    v.worst_equality_violation = std::max(v.worst_equality_violation, viol);
    consider(viol, plan.equality[i], "equality");
  }

  if (rel == Relation::Sbh) {
    double worst = -inf;
    for (std::size_t i = 0; i < plan.inequality.size(); ++i) {
      const double a = ud_in[i], b = uw_in[i];
      if (is_minus_inf(a)) continue;
      double viol;
      if (is_minus_inf(b)) {
        viol = inf;
        v.definite_violation = true;
      } else {
        viol = a - b;
      }
      worst = std::max(worst, viol);
      consider(viol, plan.inequality[i], "inequality");
    }
    v.worst_inequality_violation = worst == -inf ? 0.0 : worst;
  }
  if (mass_gap - tol > worst_excess) {
    v.witness.reset();
    v.witness_test = "mass";
  }
  v.holds = v.worst_equality_violation <= tol && v.worst_inequality_violation <= tol && mass_gap <= tol;
  return v;
}

BalayageVerdict check_kernel_criterion(const Measure& delta, const Measure& omega, Relation rel, const RasterDomain& domain,
                                       const ToleranceConfig& cfg) {
  const SamplePlan plan = make_sample_plan(delta, omega, domain, cfg);
  const auto ud_eq = potential_batch(delta, plan.equality);
  const auto uw_eq = potential_batch(omega, plan.equality);
  std::vector<double> ud_in, uw_in;
  if (rel == Relation::Sbh) {
    ud_in = potential_batch(delta, plan.inequality);
    uw_in = potential_batch(omega, plan.inequality);
  }
  const double gap = std::abs(delta.total_mass() - omega.total_mass());
  return verdict_from_potentials(rel, plan, ud_eq, uw_eq, ud_in, uw_in, gap, verdict_tolerance(delta, omega, cfg));
}

BalayageVerdict jensen_check(const Measure& omega, const Point& x, const RasterDomain& domain, const ToleranceConfig& cfg) {
  return check_kernel_criterion(Measure::dirac(omega.dim(), x), omega, Relation::Sbh, domain, cfg);
}

BalayageVerdict arens_singer_check(const Measure& omega, const Point& x, const RasterDomain& domain, const ToleranceConfig& cfg) {
  return check_kernel_criterion(Measure::dirac(omega.dim(), x), omega, Relation::Har, domain, cfg);
}

}  // namespace sweep
