#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/error.hpp"
#include "sweep/potential.hpp"

namespace sweep::reference {

std::vector<double> potential_batch(const Measure& mu, std::span<const Point> xs) {
  const Dimension d = mu.dim();
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Point& x : xs) {
    double sum = 0.0;
    mu.for_each_mass([&](const Point& p, double w, double rho) { sum += w * shell_kernel(d, distance(p, x), rho); });
    out.push_back(sum);
  }
  return out;
}

ExtendedReal energy(const Measure& nu, SelfTerms self) {
  const Dimension d = nu.dim();
  std::vector<Point> p;
  std::vector<double> w, rho;
  nu.for_each_mass([&](const Point& q, double m, double r) {
    p.push_back(q);
    w.push_back(m);
    rho.push_back(r);
  });
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j && self == SelfTerms::Excluded) continue;
      const double D = i == j ? 0.0 : distance(p[i], p[j]);
      total += w[i] * w[j] * shell_pair_energy(d, D, rho[i], rho[j]);
    }
  return total;
}

RieszResult riesz_measure(const GridFunction& u) {
  const RasterDomain& dom = u.domain;
  const GridSpec& g = dom.grid();
  const double c = riesz_constant(g.dim);
  GridPart part{g, std::vector<double>(g.size(), 0.0)};
  double clamped = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!dom.contains(i) || !dom.is_interior(i)) continue;
    ++count;
    const double lap = stencil(u, i);
    if (!std::isfinite(lap)) throw Error(ErrorKind::InvalidArgument, "riesz_measure needs finite values on the stencil");
    const double mass = c * lap * g.cell_volume();
    if (mass < 0.0)
      clamped -= mass;
    else
      part.density[i] = c * lap;
  }
  if (count == 0) throw Error(ErrorKind::DomainTooThin, "no interior cells");
  return {Measure(g.dim, {}, std::move(part)), clamped, count};
}

GridFunction dirichlet_solve(const RasterSet& sub, const GridFunction& boundary, const SolverOptions& opt, SolveReport* report) {
  const RasterDomain& dom = boundary.domain;
  const GridSpec& g = dom.grid();
  const RasterSet unknown = solver_unknowns(sub, dom);
  const RasterSet edge = solver_boundary(sub, dom);
  if (unknown.empty()) throw Error(ErrorKind::DomainTooThin, "subdomain has no interior cells");
  double scale = 0.0, sum = 0.0;
  std::size_t count = 0;
  std::array<std::ptrdiff_t, 6> nb;
  // Mean over boundary incidences, matching the parallel solver's start value.
  for (std::size_t i : unknown.indices()) {
    const int k = g.face_neighbors(i, nb);
    for (int q = 0; q < k; ++q) {
      const auto n = std::size_t(nb[q]);
      if (unknown.contains(n)) continue;
      sum += boundary.values[n];
      ++count;
    }
  }
  for (std::size_t i : edge.indices()) {
    if (!std::isfinite(boundary.values[i])) throw Error(ErrorKind::InvalidArgument, "boundary values must be finite");
    scale = std::max(scale, std::abs(boundary.values[i]));
  }
  std::vector<double> u = boundary.values;
  const double guess = sum / double(count);
  for (std::size_t i : unknown.indices()) u[i] = guess;

  const int k = 2 * g.dim.value();
  const double tol = opt.tolerance * scale;
  double residual = 0.0;
  int sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    for (int colour = 0; colour < 2; ++colour)
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!unknown.contains(i)) continue;
        const CellIndex c = g.coords(i);
        if (((c[0] + c[1] + c[2]) & 1) != colour) continue;
        g.face_neighbors(i, nb);
        double s = 0.0;
        for (int q = 0; q < k; ++q) s += u[std::size_t(nb[q])];
        u[i] += opt.omega * (s * (1.0 / k) - u[i]);
      }
    residual = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!unknown.contains(i)) continue;
      g.face_neighbors(i, nb);
      double s = -k * u[i];
      for (int q = 0; q < k; ++q) s += u[std::size_t(nb[q])];
      residual = std::max(residual, std::abs(s));
    }
    if (residual <= tol) {
      ++sweep;
      break;
    }
  }
  if (report) *report = {sweep, residual};
  if (residual > tol)
    throw Error(ErrorKind::NoConvergence, "residual " + std::to_string(residual) + " after " + std::to_string(sweep) + " sweeps");
  return GridFunction(dom, std::move(u));
}

}  // namespace sweep::reference
