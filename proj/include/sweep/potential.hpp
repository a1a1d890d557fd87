#pragma once

#include <span>
#include <vector>

#include "sweep/measures.hpp"

namespace sweep {

// U_mu(x) = sum of K(p, x) over the masses of mu, cells treated as shells of radius h/2.
ExtendedReal potential(const Measure& mu, const Point& x);
// Parallel over points.
std::vector<double> potential_batch(const Measure& mu, std::span<const Point> xs);

enum class SelfTerms { Included, Excluded };

// Double sum of shell pair energies. Excluded drops the diagonal of every mass.
ExtendedReal energy(const Measure& nu, SelfTerms self = SelfTerms::Included);

struct GridFunction {
  RasterDomain domain;
  std::vector<double> values;  // one per grid cell; only mask cells are meaningful

  GridFunction(RasterDomain d, std::vector<double> v);

  template <class F>
  static GridFunction sample(const RasterDomain& d, F f) {
    std::vector<double> v(d.grid().size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (d.contains(i)) v[i] = f(d.grid().center(i));
    return GridFunction(d, std::move(v));
  }

  friend bool operator==(const GridFunction& a, const GridFunction& b) {
    return a.domain.mask() == b.domain.mask() && a.values == b.values;
  }
};

// h^{-2} (sum of face neighbours - 2d u) at an interior cell.
double stencil(const GridFunction& u, std::size_t idx);

struct RieszResult {
  Measure measure;
  double clamped;  // total mass removed by clamping negative stencil outputs
  std::size_t interior_cells;
};

RieszResult riesz_measure(const GridFunction& u);

struct SolverOptions {
  double omega = 1.9;
  int max_sweeps = 100000;
  double tolerance = 1e-8;  // relative to max |boundary|
};

struct SolveReport {
  int sweeps = 0;
  double residual = 0.0;  // max |sum of neighbours - 2d u| over unknowns
};

// Cells of `sub` with every face neighbour in the domain are unknowns; every
// other domain cell keeps the value from `boundary`.
GridFunction dirichlet_solve(const RasterSet& sub, const GridFunction& boundary, const SolverOptions& opt = {},
                             SolveReport* report = nullptr);

GridFunction harmonic_lift(const GridFunction& u, const RasterSet& sub, const SolverOptions& opt = {},
                           SolveReport* report = nullptr);

// Cells of `sub` the solver treats as unknowns.
RasterSet solver_unknowns(const RasterSet& sub, const RasterDomain& domain);
// Cells next to an unknown that are not unknowns themselves (the discrete boundary).
RasterSet solver_boundary(const RasterSet& sub, const RasterDomain& domain);

// Max |sum of neighbours - 2d u| over the unknowns of sub.
double stencil_residual(const GridFunction& u, const RasterSet& sub);

namespace reference {

// Serial, straightforward versions kept as oracles for the parallel kernels.
std::vector<double> potential_batch(const Measure& mu, std::span<const Point> xs);
ExtendedReal energy(const Measure& nu, SelfTerms self);
RieszResult riesz_measure(const GridFunction& u);
GridFunction dirichlet_solve(const RasterSet& sub, const GridFunction& boundary, const SolverOptions& opt = {},
                             SolveReport* report = nullptr);

}  // namespace reference

}  // namespace sweep
