#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/error.hpp"
#include "sweep/measures.hpp"

namespace sweep {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string describe(const Point& x) {
  return "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ", " + std::to_string(x[2]) + ")";
}

// Accumulates weighted measures on a common grid.
struct Accumulator {
  Dimension dim;
  std::vector<Atom> atoms;
  std::optional<GridPart> part;

  void add(const Measure& m, double w) {
    for (const Atom& a : m.atoms()) {
      const double weight = w * a.weight;
      if (weight > 0.0) atoms.push_back({a.point, weight, a.shell});
    }
    if (!m.grid()) return;
    if (!part) part = GridPart{m.grid()->grid, std::vector<double>(m.grid()->grid.size(), 0.0)};
    if (!(part->grid == m.grid()->grid)) throw Error(ErrorKind::GridMismatch, "field measures live on different grids");
    const auto& src = m.grid()->density;
    for (std::size_t i = 0; i < src.size(); ++i) part->density[i] += w * src[i];
  }

  Measure finish() { return Measure(dim, std::move(atoms), std::move(part)); }
};

}  // namespace

MeasureField::MeasureField(Kind kind, Base base) : kind_(std::move(kind)), base_(std::move(base)) {
  std::visit(overloaded{
                 [](const SphereField& f) {
                   if (!(f.radius > 0.0)) throw Error(ErrorKind::NonPositiveRadius, "sphere field radius must be positive");
                   if (f.nodes < 2) throw Error(ErrorKind::BadNodeCount, "sphere field needs n >= 2");
                 },
                 [](const BallField& f) {
                   if (!(f.radius > 0.0)) throw Error(ErrorKind::NonPositiveRadius, "ball field radius must be positive");
                 },
                 [](const auto&) {},
             },
             kind_);
}

MeasureField MeasureField::identity(Dimension d) { return MeasureField(ShiftField{Measure::dirac(d, Point{0, 0, 0})}); }

bool MeasureField::in_base(const Point& x) const {
  return std::visit(overloaded{
                        [](const std::monostate&) { return true; },
                        [&](const std::vector<Point>& pts) { return std::find(pts.begin(), pts.end(), x) != pts.end(); },
                        [&](const RasterSet& s) {
                          const auto idx = s.grid().locate(x);
                          return idx.has_value() && s.contains(*idx);
                        },
                    },
                    base_);
}

Measure MeasureField::at(Dimension d, const Point& x, const RasterDomain& domain) const {
  return std::visit(overloaded{
                        [&](const ShiftField& f) { return shift(f.theta, x, true); },
                        [&](const SphereField& f) { return uniform_sphere(d, x, f.radius, f.nodes); },
                        [&](const BallField& f) { return uniform_ball(x, f.radius, domain); },
                        [&](const TableField& f) {
                          for (const auto& [p, m] : f.entries)
                            if (p == x) return m;
                          throw Error(ErrorKind::InvalidArgument, "table field has no entry at " + describe(x));
                        },
                    },
                    kind_);
}

double MeasureField::mass_bound() const {
  return std::visit(overloaded{
                        [](const ShiftField& f) { return f.theta.total_mass(); },
                        [](const SphereField&) { return 1.0; },
                        [](const BallField&) { return 1.0; },
                        [](const TableField& f) {
                          double m = 0.0;
                          for (const auto& e : f.entries) m = std::max(m, e.second.total_mass());
                          return m;
                        },
                    },
                    kind_);
}

Measure integrate_field(const MeasureField& field, const Measure& omega, const RasterDomain& domain) {
  const Dimension d = omega.dim();
  if (!(domain.dim() == d)) throw Error(ErrorKind::DimensionMismatch, "measure and domain dimensions differ");
  Accumulator acc{d, {}, std::nullopt};
  auto integrate_at = [&](const Point& x, double w) {
    if (!field.in_base(x)) throw Error(ErrorKind::InvalidArgument, "support of omega leaves the field's base set at " + describe(x));
    Measure theta(d);
    try {
      theta = field.at(d, x, domain);
      rasterize_support(theta, domain);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SupportOutsideDomain || e.kind() == ErrorKind::BallEscapesDomain || e.kind() == ErrorKind::OutOfRange)
        throw Error(ErrorKind::FieldSupportEscapesDomain, "theta_x leaves the domain at " + describe(x));
      throw;
    }
    acc.add(theta, w);
  };
  for (const Atom& a : omega.atoms()) {
    if (!a.is_point_mass()) throw Error(ErrorKind::InvalidArgument, "fields integrate point masses and grid cells only");
    integrate_at(a.point, a.weight);
  }
  if (const auto& part = omega.grid())
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0) integrate_at(part->grid.center(i), part->cell_mass(i));
  return acc.finish();
}

double support_radius(const Measure& theta) {
  double r = 0.0;
  for (const Atom& a : theta.atoms()) r = std::max(r, std::sqrt(norm2(a.point)) + a.shell);
  if (const auto& part = theta.grid()) {
    const double half_diag = 0.5 * part->grid.h * std::sqrt(double(theta.dim().value()));
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0) r = std::max(r, std::sqrt(norm2(part->grid.center(i))) + half_diag);
  }
  return r;
}

namespace {

// Closed ball B(x, R) lies in the grid and meets only mask cells.
bool ball_inside(const RasterDomain& domain, const Point& x, double R) {
  const GridSpec& g = domain.grid();
  const int d = g.dim.value();
  CellIndex lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < d; ++a) {
    if (x[a] - R < g.origin[a] || x[a] + R >= g.origin[a] + g.extents[a] * g.h) return false;
    lo[a] = int(std::floor((x[a] - R - g.origin[a]) / g.h));
    hi[a] = int(std::floor((x[a] + R - g.origin[a]) / g.h));
  }
  const double R2 = R * R;
  for (int l = lo[2]; l <= hi[2]; ++l)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int i = lo[0]; i <= hi[0]; ++i) {
        const CellIndex c{i, j, l};
        double near = 0.0;
        for (int a = 0; a < d; ++a) {
          const double b0 = g.origin[a] + c[a] * g.h;
          const double dn = x[a] < b0 ? b0 - x[a] : (x[a] > b0 + g.h ? x[a] - b0 - g.h : 0.0);
          near += dn * dn;
        }
        if (near <= R2 && !domain.contains(g.index(c))) return false;
      }
  return true;
}

}  // namespace

Measure convolve(const Measure& omega, const Measure& theta, const RasterDomain& domain) {
  if (!(omega.dim() == theta.dim())) throw Error(ErrorKind::DimensionMismatch, "measures of different dimensions");
  const double r = support_radius(theta);
  auto check = [&](const Point& x, double extent) {
    if (!ball_inside(domain, x, r + extent))
      throw Error(ErrorKind::DilatedSupportEscapesDomain, "the dilated support leaves the domain near " + describe(x));
  };
  for (const Atom& a : omega.atoms()) check(a.point, a.shell);
  if (const auto& part = omega.grid()) {
    const double half_diag = 0.5 * part->grid.h * std::sqrt(double(omega.dim().value()));
    for (std::size_t i = 0; i < part->density.size(); ++i)
      if (part->density[i] > 0.0) check(part->grid.center(i), half_diag);
  }
  return integrate_field(MeasureField(ShiftField{theta}), omega, domain);
}

}  // namespace sweep
