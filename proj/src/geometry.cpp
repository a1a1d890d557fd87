#include "sweep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/error.hpp"

namespace sweep {

GridSpec::GridSpec(Dimension d, Point origin_, double h_, std::array<int, 3> extents_)
    : dim(d), origin(origin_), h(h_), extents(extents_) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
  check_point(d, origin);
  for (int a = 0; a < 3; ++a) {
    if (a < d.value() && extents[a] < 1) throw Error(ErrorKind::InvalidArgument, "grid extents must be >= 1");
    if (a >= d.value() && extents[a] != 1) throw Error(ErrorKind::DimensionMismatch, "unused grid axes must have extent 1");
  }
}

GridSpec GridSpec::cube(Dimension d, double lo, double hi, int cells) {
  if (!(hi > lo) || cells < 1) throw Error(ErrorKind::InvalidArgument, "bad cube grid");
  Point o{0.0, 0.0, 0.0};
  std::array<int, 3> e{1, 1, 1};
  for (int a = 0; a < d.value(); ++a) {
    o[a] = lo;
    e[a] = cells;
  }
  return GridSpec(d, o, (hi - lo) / cells, e);
}

CellIndex GridSpec::coords(std::size_t idx) const {
  CellIndex c{};
  c[0] = int(idx % extents[0]);
  idx /= extents[0];
  c[1] = int(idx % extents[1]);
  c[2] = int(idx / extents[1]);
  return c;
}

Point GridSpec::center(std::size_t idx) const {
  const CellIndex c = coords(idx);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim.value(); ++a) p[a] = origin[a] + (c[a] + 0.5) * h;
  return p;
}

double GridSpec::cell_volume() const { return std::pow(h, dim.value()); }

bool GridSpec::in_bounds(const CellIndex& c) const {
  for (int a = 0; a < 3; ++a)
    if (c[a] < 0 || c[a] >= extents[a]) return false;
  return true;
}

std::optional<std::size_t> GridSpec::locate(const Point& p) const {
  CellIndex c{0, 0, 0};
  for (int a = 0; a < dim.value(); ++a) {
    const double f = std::floor((p[a] - origin[a]) / h);
    if (!(f >= 0.0) || f >= extents[a]) return std::nullopt;
    c[a] = int(f);
  }
  return index(c);
}

int GridSpec::face_neighbors(std::size_t idx, std::array<std::ptrdiff_t, 6>& out) const {
  const CellIndex c = coords(idx);
  std::size_t stride = 1;
  for (int a = 0; a < dim.value(); ++a) {
    out[2 * a] = c[a] > 0 ? std::ptrdiff_t(idx - stride) : -1;
    out[2 * a + 1] = c[a] + 1 < extents[a] ? std::ptrdiff_t(idx + stride) : -1;
    stride *= extents[a];
  }
  return 2 * dim.value();
}

RasterSet::RasterSet(const GridSpec& grid) : grid_(grid), bits_(grid.size(), 0) {}

RasterSet::RasterSet(const GridSpec& grid, std::vector<std::uint8_t> bits) : grid_(grid), bits_(std::move(bits)) {
  if (bits_.size() != grid_.size()) throw Error(ErrorKind::InvalidArgument, "bitmap size does not match grid");
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t RasterSet::count() const { return std::size_t(std::count(bits_.begin(), bits_.end(), std::uint8_t{1})); }

std::vector<std::size_t> RasterSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

void RasterSet::require_same_grid(const RasterSet& other) const {
  if (!(grid_ == other.grid_)) throw Error(ErrorKind::GridMismatch, "raster sets live on different grids");
}

bool RasterSet::is_subset_of(const RasterSet& other) const {
  require_same_grid(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

RasterSet RasterSet::united(const RasterSet& other) const {
  require_same_grid(other);
  RasterSet r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= other.bits_[i];
  return r;
}

RasterSet RasterSet::intersected(const RasterSet& other) const {
  require_same_grid(other);
  RasterSet r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= other.bits_[i];
  return r;
}

RasterSet RasterSet::minus(const RasterSet& other) const {
  require_same_grid(other);
  RasterSet r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= std::uint8_t(1 - other.bits_[i]);
  return r;
}

RasterDomain::RasterDomain(RasterSet mask) : mask_(std::move(mask)) {
  if (mask_.empty()) throw Error(ErrorKind::InvalidArgument, "domain mask is empty");
}

RasterDomain RasterDomain::full(const GridSpec& grid) {
  return RasterDomain(RasterSet(grid, std::vector<std::uint8_t>(grid.size(), 1)));
}

RasterDomain RasterDomain::ball(const GridSpec& grid, const Point& center, double radius) {
  const double r2 = radius * radius;
  return RasterDomain(RasterSet::from_centers(grid, [&](const Point& c) { return norm2(c - center) < r2; }));
}

bool RasterDomain::contains_point(const Point& p) const {
  const auto idx = grid().locate(p);
  return idx && contains(*idx);
}

bool RasterDomain::is_interior(std::size_t idx) const {
  std::array<std::ptrdiff_t, 6> nb;
  const int n = grid().face_neighbors(idx, nb);
  for (int k = 0; k < n; ++k)
    if (nb[k] < 0 || !contains(std::size_t(nb[k]))) return false;
  return true;
}

namespace {

// Visits neighbours of idx under the connectivity.
template <class F>
void for_each_neighbor(const GridSpec& g, std::size_t idx, Connectivity conn, F f) {
  if (conn == Connectivity::Face) {
    std::array<std::ptrdiff_t, 6> nb;
    const int n = g.face_neighbors(idx, nb);
    for (int k = 0; k < n; ++k)
      if (nb[k] >= 0) f(std::size_t(nb[k]));
    return;
  }
  const CellIndex c = g.coords(idx);
  const int d = g.dim.value();
  const int lo1 = d >= 2 ? -1 : 0, lo2 = d >= 3 ? -1 : 0;
  for (int dz = lo2; dz <= -lo2; ++dz)
    for (int dy = lo1; dy <= -lo1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const CellIndex n{c[0] + dx, c[1] + dy, c[2] + dz};
        if (g.in_bounds(n)) f(g.index(n));
      }
}

// Component labels (-1 outside the set) and component count.
std::pair<std::vector<int>, int> label(const RasterSet& set, Connectivity conn) {
  const GridSpec& g = set.grid();
  std::vector<int> labels(g.size(), -1);
  std::vector<std::size_t> stack;
  int next = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!set.contains(i) || labels[i] >= 0) continue;
    labels[i] = next;
    stack.push_back(i);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for_each_neighbor(g, cur, conn, [&](std::size_t n) {
        if (set.contains(n) && labels[n] < 0) {
          labels[n] = next;
          stack.push_back(n);
        }
      });
    }
    ++next;
  }
  return {std::move(labels), next};
}

bool touches_exterior(const RasterDomain& domain, std::size_t idx) { return !domain.is_interior(idx); }

}  // namespace

std::vector<RasterSet> connected_components(const RasterSet& set, Connectivity conn) {
  auto [labels, n] = label(set, conn);
  std::vector<RasterSet> out(std::size_t(n), RasterSet(set.grid()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) out[std::size_t(labels[i])].insert(i);
  return out;
}

std::size_t count_components(const RasterSet& set, Connectivity conn) { return std::size_t(label(set, conn).second); }

bool is_compactly_contained(const RasterSet& component, const RasterDomain& domain) {
  const auto& bits = component.bits();
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] && touches_exterior(domain, i)) return false;
  return true;
}

RasterSet inward_filling(const RasterSet& s, const RasterDomain& domain, Connectivity conn) {
  if (!s.is_subset_of(domain.mask())) throw Error(ErrorKind::SupportOutsideDomain, "set is not contained in the domain");
  const GridSpec& g = s.grid();
  const RasterSet complement = domain.mask().minus(s);
  // Complement cells connected to the exterior stay; everything else is filled.
  std::vector<std::uint8_t> reached(g.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (complement.contains(i) && touches_exterior(domain, i)) {
      reached[i] = 1;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    for_each_neighbor(g, cur, conn, [&](std::size_t n) {
      if (complement.contains(n) && !reached[n]) {
        reached[n] = 1;
        stack.push_back(n);
      }
    });
  }
  RasterSet out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (domain.contains(i) && !reached[i]) out.insert(i);
  return out;
}

std::vector<std::size_t> cells_touching_sphere(const GridSpec& grid, const Point& p, double rho) {
  std::vector<std::size_t> out;
  const int d = grid.dim.value();
  if (rho == 0.0) {
    if (auto idx = grid.locate(p)) out.push_back(*idx);
    return out;
  }
  if (d == 1) {
    for (double s : {-rho, rho})
      if (auto idx = grid.locate(Point{p[0] + s, 0.0, 0.0})) out.push_back(*idx);
    if (out.size() == 2 && out[0] == out[1]) out.pop_back();
    return out;
  }
  CellIndex lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < d; ++a) {
    lo[a] = std::max(0, int(std::floor((p[a] - rho - grid.origin[a]) / grid.h)));
    hi[a] = std::min(grid.extents[a] - 1, int(std::floor((p[a] + rho - grid.origin[a]) / grid.h)));
    if (lo[a] > hi[a]) return out;
  }
  const double r2 = rho * rho;
  for (int l = lo[2]; l <= hi[2]; ++l)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int i = lo[0]; i <= hi[0]; ++i) {
        const CellIndex c{i, j, l};
        double near = 0.0, far = 0.0;
        for (int a = 0; a < d; ++a) {
          const double b0 = grid.origin[a] + c[a] * grid.h;
          const double b1 = b0 + grid.h;
          const double dn = p[a] < b0 ? b0 - p[a] : (p[a] > b1 ? p[a] - b1 : 0.0);
          const double df = std::max(std::abs(p[a] - b0), std::abs(p[a] - b1));
          near += dn * dn;
          far += df * df;
        }
        if (near <= r2 && far >= r2) out.push_back(grid.index(c));
      }
  return out;
}

std::vector<int> face_distance(const RasterSet& from, const RasterSet& within, int max_distance) {
  const GridSpec& g = from.grid();
  std::vector<int> dist(g.size(), -1);
  std::vector<std::size_t> frontier, next;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (from.contains(i)) {
      dist[i] = 0;
      frontier.push_back(i);
    }
  std::array<std::ptrdiff_t, 6> nb;
  for (int step = 1; step <= max_distance && !frontier.empty(); ++step) {
    next.clear();
    for (std::size_t cur : frontier) {
      const int n = g.face_neighbors(cur, nb);
      for (int k = 0; k < n; ++k) {
        if (nb[k] < 0) continue;
        const auto idx = std::size_t(nb[k]);
        if (dist[idx] < 0 && within.contains(idx)) {
          dist[idx] = step;
          next.push_back(idx);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

}  // namespace sweep
