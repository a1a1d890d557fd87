#include "sweep/balayage.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/error.hpp"
#include "sweep/potential.hpp"

namespace sweep {

namespace {

std::string describe(const Point& x) {
  return "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ", " + std::to_string(x[2]) + ")";
}

bool in_closed_cell(const GridSpec& g, std::size_t idx, const Point& p) {
  const CellIndex c = g.coords(idx);
  for (int a = 0; a < g.dim.value(); ++a) {
    const double lo = g.origin[a] + c[a] * g.h;
    if (p[a] < lo || p[a] > lo + g.h) return false;
  }
  return true;
}

bool in_support(const Measure& mu, const Point& p) {
  for (const Atom& a : mu.atoms()) {
    if (a.is_point_mass() ? a.point == p : distance(a.point, p) == a.shell) return true;
  }
  if (const auto& part = mu.grid()) {
    const GridSpec& g = part->grid;
    // The closed cells around p: the containing cell and its lower neighbours on shared faces.
    CellIndex base{0, 0, 0};
    for (int a = 0; a < g.dim.value(); ++a) base[a] = int(std::floor((p[a] - g.origin[a]) / g.h));
    const int d = g.dim.value();
    for (int corner = 0; corner < (1 << d); ++corner) {
      CellIndex c = base;
      for (int a = 0; a < d; ++a) c[a] -= (corner >> a) & 1;
      if (!g.in_bounds(c)) continue;
      const std::size_t idx = g.index(c);
      if (part->density[idx] > 0.0 && in_closed_cell(g, idx, p)) return true;
    }
  }
  return false;
}

// Support points of omega at which the per-point hypothesis is checked.
std::vector<std::pair<Point, double>> field_points(const Measure& omega) {
  std::vector<std::pair<Point, double>> pts;
  for (const Atom& a : omega.atoms()) pts.emplace_back(a.point, a.weight);
  if (const auto& part = omega.grid()) {
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0) cells.push_back(i);
    constexpr std::size_t kCellSamples = 16;
    const std::size_t take = std::min(cells.size(), kCellSamples);
    for (std::size_t s = 0; s < take; ++s) {
      const std::size_t i = cells[s * cells.size() / take];
      pts.emplace_back(part->grid.center(i), part->cell_mass(i));
    }
  }
  return pts;
}

}  // namespace

BalayageVerdict verify_integration_theorem(const MeasureField& field, const Measure& omega, Relation rel,
                                           const RasterDomain& domain, const ToleranceConfig& cfg) {
  const Dimension d = omega.dim();
  for (const auto& [x, w] : field_points(omega)) {
    (void)w;
    const BalayageVerdict v = check_kernel_criterion(Measure::dirac(d, x), field.at(d, x, domain), rel, domain, cfg);
    if (!v.holds) throw Error(ErrorKind::FieldPointCheckFailed, "theta_x is not a balayage of the Dirac mass at " + describe(x));
  }
  return check_kernel_criterion(omega, integrate_field(field, omega, domain), rel, domain, cfg);
}

double polar_mass(const Measure& omega, std::span<const Point> E, const Measure& delta) {
  double m = 0.0;
  for (const Atom& a : omega.atoms()) {
    if (!a.is_point_mass()) continue;
    if (std::find(E.begin(), E.end(), a.point) == E.end()) continue;
    if (in_support(delta, a.point)) continue;
    m += a.weight;
  }
  return m;
}

BalayageVerdict three_measure_check(const Measure& beta, const Measure& delta, const Measure& omega, const RasterDomain& domain,
                                    const RasterSet& inner, const ToleranceConfig& cfg) {
  // delta == omega: the conclusion is reflexivity, and the hypotheses cannot all hold
  // (supp omega would sit inside O').
  if (delta == omega) return check_kernel_criterion(delta, omega, Relation::Sbh, domain, cfg);
  if (!inner.is_subset_of(domain.mask())) throw Error(ErrorKind::HypothesisFailed, "O' is not contained in O");
  if (!check_kernel_criterion(beta, delta, Relation::Har, domain, cfg).holds)
    throw Error(ErrorKind::HypothesisFailed, "beta is not a har-balayage of delta");
  if (!check_kernel_criterion(beta, omega, Relation::Sbh, domain, cfg).holds)
    throw Error(ErrorKind::HypothesisFailed, "beta is not an sbh-balayage of omega");
  if (!support_hull(beta, delta, domain).is_subset_of(inner))
    throw Error(ErrorKind::HypothesisFailed, "infill of supp beta and supp delta is not inside O'");
  if (!rasterize_support(omega, domain).intersected(inner).empty())
    throw Error(ErrorKind::HypothesisFailed, "O' meets supp omega");
  return check_kernel_criterion(delta, omega, Relation::Sbh, domain, cfg);
}

bool restriction_compatibility(const Measure& delta, const Measure& omega, const RasterDomain& domain,
                               const RasterDomain& smaller, Relation rel, const ToleranceConfig& cfg) {
  if (!smaller.mask().is_subset_of(domain.mask())) throw Error(ErrorKind::InvalidArgument, "O' must be a subset of O");
  rasterize_support(delta, smaller);
  rasterize_support(omega, smaller);
  return check_kernel_criterion(delta, omega, rel, domain, cfg).holds ==
         check_kernel_criterion(delta, omega, rel, smaller, cfg).holds;
}

}  // namespace sweep
