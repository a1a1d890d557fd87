#include "sweep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sweep/error.hpp"
#include "sweep/quadrature.hpp"

namespace sweep {

namespace {

void require_positive_radius(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::NonPositiveRadius, std::string(what) + " must be positive");
}

// a^d / b^d by repeated multiplication, so identical inputs give identical bits.
double ratio_power(double a, double b, int d) {
  double num = a, den = b;
  for (int i = 1; i < d; ++i) {
    num *= a;
    den *= b;
  }
  return num / den;
}

}  // namespace

Measure::Measure(Dimension d, std::vector<Atom> atoms, std::optional<GridPart> grid)
    : dim_(d), atoms_(std::move(atoms)), grid_(std::move(grid)) {
  for (const Atom& a : atoms_) {
    check_point(d, a.point);
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw Error(ErrorKind::InvalidArgument, "atom weights must be positive and finite");
    if (!(a.shell >= 0.0) || !std::isfinite(a.shell)) throw Error(ErrorKind::InvalidArgument, "shell radius must be >= 0");
  }
  if (grid_) {
    if (!(grid_->grid.dim == d)) throw Error(ErrorKind::DimensionMismatch, "grid part has a different dimension");
    if (grid_->density.size() != grid_->grid.size()) throw Error(ErrorKind::InvalidArgument, "density array does not match the grid");
    for (double v : grid_->density)
      if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "densities must be finite and >= 0");
  }
}

Measure Measure::dirac(Dimension d, const Point& x, double weight) { return Measure(d, {Atom{x, weight, 0.0}}); }

bool Measure::empty() const { return atoms_.empty() && grid_mass() == 0.0; }

double Measure::atom_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.weight;
  return m;
}

double Measure::grid_mass() const {
  if (!grid_) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < grid_->density.size(); ++i) m += grid_->cell_mass(i);
  return m;
}

double Measure::total_mass() const { return atom_mass() + grid_mass(); }

Measure Measure::scaled(double a) const {
  if (!(a >= 0.0) || !std::isfinite(a)) throw Error(ErrorKind::InvalidArgument, "measures scale by a finite a >= 0");
  if (a == 0.0) return Measure(dim_);
  std::vector<Atom> atoms(atoms_);
  for (Atom& at : atoms) at.weight *= a;
  std::optional<GridPart> g = grid_;
  if (g)
    for (double& v : g->density) v *= a;
  return Measure(dim_, std::move(atoms), std::move(g));
}

Measure operator+(const Measure& a, const Measure& b) {
  if (!(a.dim_ == b.dim_)) throw Error(ErrorKind::DimensionMismatch, "adding measures of different dimensions");
  std::vector<Atom> atoms(a.atoms_);
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  std::optional<GridPart> g = a.grid_ ? a.grid_ : b.grid_;
  if (a.grid_ && b.grid_) {
    if (!(a.grid_->grid == b.grid_->grid)) throw Error(ErrorKind::GridMismatch, "grid parts live on different grids");
    for (std::size_t i = 0; i < g->density.size(); ++i) g->density[i] += b.grid_->density[i];
  }
  return Measure(a.dim_, std::move(atoms), std::move(g));
}

Measure restrict(const Measure& mu, const RasterSet& s) {
  const GridSpec& g = s.grid();
  if (!(g.dim == mu.dim())) throw Error(ErrorKind::DimensionMismatch, "restriction set has a different dimension");
  auto keep = [&](const Point& p) {
    const auto idx = g.locate(p);
    return idx && s.contains(*idx);
  };
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms())
    if (keep(a.point)) atoms.push_back(a);
  std::optional<GridPart> part = mu.grid();
  if (part) {
    const bool same = part->grid == g;
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0 && !(same ? s.contains(i) : keep(part->grid.center(i)))) part->density[i] = 0.0;
  }
  return Measure(mu.dim(), std::move(atoms), std::move(part));
}

Measure restrict(const Measure& mu, const std::function<bool(const Point&)>& keep) {
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms())
    if (keep(a.point)) atoms.push_back(a);
  std::optional<GridPart> part = mu.grid();
  if (part)
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0 && !keep(part->grid.center(i))) part->density[i] = 0.0;
  return Measure(mu.dim(), std::move(atoms), std::move(part));
}

Measure shift(const Measure& theta, const Point& x, bool resample) {
  const int d = theta.dim().value();
  check_point(theta.dim(), x);
  std::vector<Atom> atoms(theta.atoms().begin(), theta.atoms().end());
  for (Atom& a : atoms) a.point = a.point + x;
  std::optional<GridPart> part = theta.grid();
  if (!part) return Measure(theta.dim(), std::move(atoms));

  const GridSpec& g = part->grid;
  std::array<int, 3> whole{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double cells = x[a] / g.h;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) <= 1e-9 * std::max(1.0, std::abs(cells))) {
      whole[a] = int(rounded);
    } else {
      if (!resample) throw Error(ErrorKind::InvalidArgument, "grid shift must be a whole number of cells");
      whole[a] = int(std::floor(cells));
      frac[a] = cells - whole[a];
    }
  }
  std::vector<double> moved(g.size(), 0.0);
  const int corners = 1 << d;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (part->density[i] == 0.0) continue;
    const CellIndex c = g.coords(i);
    for (int corner = 0; corner < corners; ++corner) {
      double w = 1.0;
      CellIndex t = c;
      for (int a = 0; a < d; ++a) {
        const int up = (corner >> a) & 1;
        w *= up ? frac[a] : 1.0 - frac[a];
        t[a] += whole[a] + up;
      }
      if (w == 0.0) continue;
      if (!g.in_bounds(t)) throw Error(ErrorKind::OutOfRange, "shifted grid mass leaves the grid");
      moved[g.index(t)] += w * part->density[i];
    }
  }
  part->density = std::move(moved);
  return Measure(theta.dim(), std::move(atoms), std::move(part));
}

namespace {

// Ring count for the d = 3 product rule: the divisor of n closest to sqrt(n / 2).
int ring_count(int n) {
  const double target = std::sqrt(n / 2.0);
  int best = 1;
  for (int q = 1; q <= n; ++q)
    if (n % q == 0 && std::abs(q - target) < std::abs(best - target)) best = q;
  return best;
}

int sphere_rule_degree(Dimension d, int n) {
  if (d.value() == 2) return n - 1;
  const int nz = ring_count(n);
  return std::min(2 * nz - 1, n / nz - 1);
}

}  // namespace

double sphere_node_shell(Dimension d, double r, int n) {
  if (d.value() == 1) return 0.0;
  const int degree = sphere_rule_degree(d, n);
  const double rho = r * (std::pow(10.0, 12.0 / (degree + 1)) - 1.0);
  return std::min(rho, 2.0 * r);
}

Measure uniform_sphere(Dimension d, const Point& x, double r, int n) {
  require_positive_radius(r, "sphere radius");
  check_point(d, x);
  if (n < 2) throw Error(ErrorKind::BadNodeCount, "uniform_sphere needs n >= 2");
  std::vector<Atom> atoms;
  if (d.value() == 1) {
    atoms.push_back({Point{x[0] - r, 0.0, 0.0}, 0.5, 0.0});
    atoms.push_back({Point{x[0] + r, 0.0, 0.0}, 0.5, 0.0});
    return Measure(d, std::move(atoms));
  }
  const double rho = sphere_node_shell(d, r, n);
  const double two_pi = 2.0 * std::numbers::pi;
  if (d.value() == 2) {
    atoms.reserve(std::size_t(n));
    for (int j = 0; j < n; ++j) {
      const double phi = two_pi * j / n;
      atoms.push_back({Point{x[0] + r * std::cos(phi), x[1] + r * std::sin(phi), 0.0}, 1.0 / n, rho});
    }
    return Measure(d, std::move(atoms));
  }
  const int nz = ring_count(n);
  const int nphi = n / nz;
  const GaussRule rule = gauss_legendre(nz);
  atoms.reserve(std::size_t(n));
  for (int i = 0; i < nz; ++i) {
    const double z = rule.nodes[i];
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double w = 0.5 * rule.weights[i] / nphi;
    const double offset = 0.5 * (i % 2);
    for (int j = 0; j < nphi; ++j) {
      const double phi = two_pi * (j + offset) / nphi;
      atoms.push_back({Point{x[0] + r * ring * std::cos(phi), x[1] + r * ring * std::sin(phi), x[2] + r * z}, w, rho});
    }
  }
  return Measure(d, std::move(atoms));
}

Measure sphere_shell(Dimension d, const Point& x, double r) {
  require_positive_radius(r, "sphere radius");
  return Measure(d, {Atom{x, 1.0, r}});
}

Measure uniform_ball(const Point& x, double r, const RasterDomain& domain) {
  require_positive_radius(r, "ball radius");
  const GridSpec& g = domain.grid();
  check_point(g.dim, x);
  for (int a = 0; a < g.dim.value(); ++a)
    if (x[a] - r < g.origin[a] || x[a] + r > g.origin[a] + g.extents[a] * g.h)
      throw Error(ErrorKind::BallEscapesDomain, "ball leaves the grid");
  std::vector<std::size_t> cells;
  const double r2 = r * r;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (norm2(g.center(i) - x) >= r2) continue;
    if (!domain.contains(i)) throw Error(ErrorKind::BallEscapesDomain, "ball leaves the domain mask");
    cells.push_back(i);
  }
  if (cells.empty()) throw Error(ErrorKind::BallEscapesDomain, "ball contains no cell centre");
  GridPart part{g, std::vector<double>(g.size(), 0.0)};
  const double density = 1.0 / (double(cells.size()) * g.cell_volume());
  for (std::size_t i : cells) part.density[i] = density;
  return Measure(g.dim, {}, std::move(part));
}

double example5_polar_mass(Dimension d, double r, std::span<const Example5Atom> atoms) {
  double m = 0.0;
  for (const auto& a : atoms) m += ratio_power(a.radius, r, d.value());
  return m;
}

Example5 example5_measure(double t, double r, std::span<const Example5Atom> atoms, const RasterDomain& domain) {
  const Dimension d = domain.dim();
  if (!(0.0 < t && t < r && r < 1.0)) throw Error(ErrorKind::BadRadii, "need 0 < t < r < 1");
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const auto& a = atoms[j];
    check_point(d, a.center);
    if (!(a.radius > 0.0)) throw Error(ErrorKind::BadRadii, "atom radii must be positive");
    const double c = std::sqrt(norm2(a.center));
    if (!(c - a.radius > t && c + a.radius < r))
      throw Error(ErrorKind::BallOutsideAnnulus, "ball " + std::to_string(j) + " is not inside the open annulus t < |x| < r");
    for (std::size_t i = 0; i < j; ++i)
      if (!(distance(a.center, atoms[i].center) > a.radius + atoms[i].radius))
        throw Error(ErrorKind::BallsOverlap, "balls " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  }
  Example5 out{uniform_ball(Point{0, 0, 0}, t, domain), Measure(d), uniform_ball(Point{0, 0, 0}, r, domain), {}};
  GridPart part = *out.omega.grid();
  const GridSpec& g = part.grid;
  std::vector<Atom> extra;
  for (const auto& a : atoms) {
    const double r2 = a.radius * a.radius;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (part.density[i] > 0.0 && norm2(g.center(i) - a.center) <= r2) part.density[i] = 0.0;
    extra.push_back({a.center, ratio_power(a.radius, r, d.value()), 0.0});
    out.atoms.push_back(a.center);
  }
  out.mu = Measure(d, std::move(extra), std::move(part));
  return out;
}

RasterSet rasterize_support(const Measure& mu, const RasterDomain& domain) {
  const GridSpec& g = domain.grid();
  if (!(g.dim == mu.dim())) throw Error(ErrorKind::DimensionMismatch, "measure and domain dimensions differ");
  RasterSet out(g);
  auto fail = [](const std::string& what) { throw Error(ErrorKind::SupportOutsideDomain, what); };
  for (const Atom& a : mu.atoms()) {
    for (int ax = 0; ax < g.dim.value(); ++ax)
      if (a.point[ax] - a.shell < g.origin[ax] || a.point[ax] + a.shell >= g.origin[ax] + g.extents[ax] * g.h)
        fail("atom support leaves the grid");
    for (std::size_t c : cells_touching_sphere(g, a.point, a.shell)) {
      if (!domain.contains(c)) fail("atom support leaves the domain");
      out.insert(c);
    }
  }
  if (const auto& part = mu.grid()) {
    const bool same = part->grid == g;
    for (std::size_t i = 0; i < part->density.size(); ++i) {
      if (part->density[i] <= 0.0) continue;
      std::optional<std::size_t> c = same ? std::optional<std::size_t>(i) : g.locate(part->grid.center(i));
      if (!c || !domain.contains(*c)) fail("density cell outside the domain");
      out.insert(*c);
    }
  }
  return out;
}

RasterSet support_hull(const Measure& delta, const Measure& omega, const RasterDomain& domain) {
  if (!(delta.dim() == omega.dim())) throw Error(ErrorKind::DimensionMismatch, "measures of different dimensions");
  return inward_filling(rasterize_support(delta, domain).united(rasterize_support(omega, domain)), domain);
}

}  // namespace sweep
