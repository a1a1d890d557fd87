#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sweep/geometry.hpp"

namespace sweep {

// A point mass (shell == 0) or the uniform measure of total mass `weight` on
// the sphere of radius `shell` around `point`.
struct Atom {
  Point point{0.0, 0.0, 0.0};
  double weight = 0.0;
  double shell = 0.0;

  bool is_point_mass() const { return shell == 0.0; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Piecewise-constant density on a grid; cell mass = density * h^d.
struct GridPart {
  GridSpec grid;
  std::vector<double> density;

  double cell_mass(std::size_t idx) const { return density[idx] * grid.cell_volume(); }
  friend bool operator==(const GridPart&, const GridPart&) = default;
};

// Immutable compactly supported positive measure: atoms plus an optional grid density.
class Measure {
 public:
  explicit Measure(Dimension d) : dim_(d) {}
  Measure(Dimension d, std::vector<Atom> atoms, std::optional<GridPart> grid = std::nullopt);

  static Measure dirac(Dimension d, const Point& x, double weight = 1.0);

  Dimension dim() const { return dim_; }
  std::span<const Atom> atoms() const { return atoms_; }
  const std::optional<GridPart>& grid() const { return grid_; }
  bool empty() const;

  double total_mass() const;
  double atom_mass() const;
  double grid_mass() const;
  // Spacing of the grid part, 0 if there is none.
  double grid_spacing() const { return grid_ ? grid_->grid.h : 0.0; }

  // Cells as shells of radius h/2 about their centres, after the atoms.
  template <class F>
  void for_each_mass(F f) const {
    for (const Atom& a : atoms_) f(a.point, a.weight, a.shell);
    if (!grid_) return;
    const double rho = 0.5 * grid_->grid.h;
    for (std::size_t i = 0; i < grid_->density.size(); ++i)
      if (grid_->density[i] > 0.0) f(grid_->grid.center(i), grid_->cell_mass(i), rho);
  }

  Measure scaled(double a) const;
  friend Measure operator+(const Measure& a, const Measure& b);
  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  Dimension dim_;
  std::vector<Atom> atoms_;
  std::optional<GridPart> grid_;
};

// Restriction to the cells of s (atoms by the cell containing their centre).
Measure restrict(const Measure& mu, const RasterSet& s);
Measure restrict(const Measure& mu, const std::function<bool(const Point&)>& keep);

// Translation by x. The grid part moves by whole cells unless `resample` is set,
// in which case it is redistributed by mass-conserving multilinear weights.
Measure shift(const Measure& theta, const Point& x, bool resample = false);

// Unit-mass quadrature of the uniform measure on the sphere of radius r about x.
// d = 1: two half point masses. d >= 2: n nodes that are small uniform shells,
// equally spaced (d = 2) or a Gauss-Legendre x trapezoid product rule (d = 3).
Measure uniform_sphere(Dimension d, const Point& x, double r, int n);
// Radius of the shells carried by the nodes of uniform_sphere.
double sphere_node_shell(Dimension d, double r, int n);
// The exact uniform sphere measure as a single shell atom.
Measure sphere_shell(Dimension d, const Point& x, double r);

// Normalised Lebesgue measure of B(x, r), rasterised on the domain grid.
Measure uniform_ball(const Point& x, double r, const RasterDomain& domain);

struct Example5Atom {
  Point center;
  double radius;
};

struct Example5 {
  Measure delta;
  Measure mu;
  Measure omega;
  std::vector<Point> atoms;
};

Example5 example5_measure(double t, double r, std::span<const Example5Atom> atoms, const RasterDomain& domain);

// Sum of the atom masses r^{-d} sum r_j^d, accumulated in atom order.
double example5_polar_mass(Dimension d, double r, std::span<const Example5Atom> atoms);

// Cells occupied by the support; throws SupportOutsideDomain if any part leaves the domain.
RasterSet rasterize_support(const Measure& mu, const RasterDomain& domain);
// Inward filling of supp delta u supp omega.
RasterSet support_hull(const Measure& delta, const Measure& omega, const RasterDomain& domain);

// Measure fields x -> theta_x.
struct ShiftField {
  Measure theta;
};
struct SphereField {
  double radius;
  int nodes;
};
struct BallField {
  double radius;
};
struct TableField {
  std::vector<std::pair<Point, Measure>> entries;
};

class MeasureField {
 public:
  using Kind = std::variant<ShiftField, SphereField, BallField, TableField>;
  using Base = std::variant<std::monostate, std::vector<Point>, RasterSet>;

  explicit MeasureField(Kind kind, Base base = std::monostate{});

  static MeasureField identity(Dimension d);

  const Kind& kind() const { return kind_; }
  const Base& base() const { return base_; }
  bool in_base(const Point& x) const;
  // theta_x; the domain supplies the grid for ball fields.
  Measure at(Dimension d, const Point& x, const RasterDomain& domain) const;
  // Upper bound of theta_x(O) over the base.
  double mass_bound() const;

 private:
  Kind kind_;
  Base base_;
};

Measure integrate_field(const MeasureField& field, const Measure& omega, const RasterDomain& domain);

// Support radius of theta around the origin.
double support_radius(const Measure& theta);

Measure convolve(const Measure& omega, const Measure& theta, const RasterDomain& domain);

}  // namespace sweep
