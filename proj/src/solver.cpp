#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/error.hpp"
#include "sweep/potential.hpp"

namespace sweep {

RasterSet solver_unknowns(const RasterSet& sub, const RasterDomain& domain) {
  if (!(sub.grid() == domain.grid())) throw Error(ErrorKind::GridMismatch, "subdomain and domain grids differ");
  RasterSet out(sub.grid());
  for (std::size_t i = 0; i < sub.grid().size(); ++i)
    if (sub.contains(i) && domain.contains(i) && domain.is_interior(i)) out.insert(i);
  return out;
}

RasterSet solver_boundary(const RasterSet& sub, const RasterDomain& domain) {
  const RasterSet unknown = solver_unknowns(sub, domain);
  const GridSpec& g = sub.grid();
  RasterSet out(g);
  std::array<std::ptrdiff_t, 6> nb;
  for (std::size_t i : unknown.indices()) {
    const int k = g.face_neighbors(i, nb);
    for (int q = 0; q < k; ++q)
      if (!unknown.contains(std::size_t(nb[q]))) out.insert(std::size_t(nb[q]));
  }
  return out;
}

namespace {

struct Layout {
  int k = 4;                                 // neighbours per cell
  std::vector<std::size_t> cells[2];         // unknowns by colour
  std::vector<std::size_t> neighbors[2];     // k per unknown
  double scale = 0.0;                        // max |boundary|
};

Layout build_layout(const RasterSet& sub, const GridFunction& boundary) {
  const RasterDomain& dom = boundary.domain;
  const GridSpec& g = dom.grid();
  const RasterSet unknown = solver_unknowns(sub, dom);
  Layout L;
  L.k = 2 * g.dim.value();
  std::array<std::ptrdiff_t, 6> nb;
  for (std::size_t i : unknown.indices()) {
    const CellIndex c = g.coords(i);
    const int colour = (c[0] + c[1] + c[2]) & 1;
    L.cells[colour].push_back(i);
    g.face_neighbors(i, nb);
    for (int q = 0; q < L.k; ++q) {
      const auto n = std::size_t(nb[q]);
      L.neighbors[colour].push_back(n);
      if (!unknown.contains(n)) {
        const double v = boundary.values[n];
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "boundary values must be finite");
        L.scale = std::max(L.scale, std::abs(v));
      }
    }
  }
  if (L.cells[0].empty() && L.cells[1].empty()) throw Error(ErrorKind::DomainTooThin, "subdomain has no interior cells");
  return L;
}

double initial_guess(const GridSpec& g, const RasterSet& unknown, const std::vector<double>& v) {
  double sum = 0.0;
  std::size_t count = 0;
  std::array<std::ptrdiff_t, 6> nb;
  for (std::size_t i : unknown.indices()) {
    const int k = g.face_neighbors(i, nb);
    for (int q = 0; q < k; ++q)
      if (!unknown.contains(std::size_t(nb[q]))) {
        sum += v[std::size_t(nb[q])];
        ++count;
      }
  }
  return sum / double(count);
}

}  // namespace

GridFunction dirichlet_solve(const RasterSet& sub, const GridFunction& boundary, const SolverOptions& opt, SolveReport* report) {
  const Layout L = build_layout(sub, boundary);
  const RasterSet unknown = solver_unknowns(sub, boundary.domain);
  std::vector<double> u = boundary.values;
  const double guess = initial_guess(boundary.domain.grid(), unknown, u);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i : L.cells[c]) u[i] = guess;

  const double tol = opt.tolerance * L.scale;
  const int k = L.k;
  const double inv_k = 1.0 / k;
  double residual = 0.0;
  int sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    for (int c = 0; c < 2; ++c) {
      const auto& cells = L.cells[c];
      const auto& nbrs = L.neighbors[c];
      const auto n = std::ptrdiff_t(cells.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::size_t* nb = &nbrs[std::size_t(j) * k];
        double s = 0.0;
        for (int q = 0; q < k; ++q) s += u[nb[q]];
        const std::size_t i = cells[std::size_t(j)];
        u[i] += opt.omega * (s * inv_k - u[i]);
      }
    }
    residual = 0.0;
    for (int c = 0; c < 2; ++c) {
      const auto& cells = L.cells[c];
      const auto& nbrs = L.neighbors[c];
      const auto n = std::ptrdiff_t(cells.size());
#pragma omp parallel for schedule(static) reduction(max : residual)
      for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::size_t* nb = &nbrs[std::size_t(j) * k];
        double s = -k * u[cells[std::size_t(j)]];
        for (int q = 0; q < k; ++q) s += u[nb[q]];
        residual = std::max(residual, std::abs(s));
      }
    }
    if (residual <= tol) {
      ++sweep;
      break;
    }
  }
  if (report) *report = {sweep, residual};
  if (residual > tol)
    throw Error(ErrorKind::NoConvergence, "residual " + std::to_string(residual) + " after " + std::to_string(sweep) + " sweeps");
  return GridFunction(boundary.domain, std::move(u));
}

GridFunction harmonic_lift(const GridFunction& u, const RasterSet& sub, const SolverOptions& opt, SolveReport* report) {
  return dirichlet_solve(sub, u, opt, report);
}

double stencil_residual(const GridFunction& u, const RasterSet& sub) {
  const RasterSet unknown = solver_unknowns(sub, u.domain);
  const GridSpec& g = u.domain.grid();
  std::array<std::ptrdiff_t, 6> nb;
  double r = 0.0;
  for (std::size_t i : unknown.indices()) {
    const int k = g.face_neighbors(i, nb);
    double s = -k * u.values[i];
    for (int q = 0; q < k; ++q) s += u.values[std::size_t(nb[q])];
    r = std::max(r, std::abs(s));
  }
  return r;
}

}  // namespace sweep
