#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sweep/kernels.hpp"

namespace sweep {

using CellIndex = std::array<int, 3>;

// Axis-aligned uniform grid. Cell (i, j, l) covers origin + h*[i, i+1) x ...;
// linear index i + e0*(j + e1*l). Unused axes have extent 1.
struct GridSpec {
  Dimension dim{2};
  Point origin{0.0, 0.0, 0.0};
  double h = 1.0;
  std::array<int, 3> extents{1, 1, 1};

  GridSpec() = default;
  GridSpec(Dimension d, Point origin, double h, std::array<int, 3> extents);

  // The cube [lo, hi]^d split into `cells` cells per axis.
  static GridSpec cube(Dimension d, double lo, double hi, int cells);

  std::size_t size() const { return std::size_t(extents[0]) * extents[1] * extents[2]; }
  std::size_t index(const CellIndex& c) const { return std::size_t(c[0]) + std::size_t(extents[0]) * (c[1] + std::size_t(extents[1]) * c[2]); }
  CellIndex coords(std::size_t idx) const;
  Point center(std::size_t idx) const;
  double cell_volume() const;
  bool in_bounds(const CellIndex& c) const;
  // Cell whose half-open box contains p, if any.
  std::optional<std::size_t> locate(const Point& p) const;
  // Face neighbours: fills out[0..2d) with neighbour indices, -1 for off-grid.
  int face_neighbors(std::size_t idx, std::array<std::ptrdiff_t, 6>& out) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.dim == b.dim && a.origin == b.origin && a.h == b.h && a.extents == b.extents;
  }
};

enum class Connectivity { Face, Full };

// Subset of the cells of a grid, stored as a byte per cell.
class RasterSet {
 public:
  RasterSet() = default;
  explicit RasterSet(const GridSpec& grid);
  RasterSet(const GridSpec& grid, std::vector<std::uint8_t> bits);

  template <class Pred>
  static RasterSet from_centers(const GridSpec& grid, Pred pred) {
    RasterSet s(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (pred(grid.center(i))) s.bits_[i] = 1;
    return s;
  }

  const GridSpec& grid() const { return grid_; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  bool contains(std::size_t idx) const { return bits_[idx] != 0; }
  void insert(std::size_t idx) { bits_[idx] = 1; }
  void erase(std::size_t idx) { bits_[idx] = 0; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> indices() const;
  bool is_subset_of(const RasterSet& other) const;
  RasterSet united(const RasterSet& other) const;
  RasterSet intersected(const RasterSet& other) const;
  RasterSet minus(const RasterSet& other) const;

  friend bool operator==(const RasterSet& a, const RasterSet& b) { return a.grid_ == b.grid_ && a.bits_ == b.bits_; }

 private:
  void require_same_grid(const RasterSet& other) const;

  GridSpec grid_;
  std::vector<std::uint8_t> bits_;
};

// The open set O: a nonempty raster mask. Everything off the mask, including
// the implicit ring of cells beyond the grid border, is exterior.
class RasterDomain {
 public:
  explicit RasterDomain(RasterSet mask);

  static RasterDomain full(const GridSpec& grid);
  // Cells whose centres lie strictly inside B(center, radius).
  static RasterDomain ball(const GridSpec& grid, const Point& center, double radius);

  const GridSpec& grid() const { return mask_.grid(); }
  const RasterSet& mask() const { return mask_; }
  Dimension dim() const { return grid().dim; }
  bool contains(std::size_t idx) const { return mask_.contains(idx); }
  bool contains_point(const Point& p) const;
  // All face neighbours inside the mask.
  bool is_interior(std::size_t idx) const;

 private:
  RasterSet mask_;
};

// Components ordered by their smallest cell index.
std::vector<RasterSet> connected_components(const RasterSet& set, Connectivity conn = Connectivity::Face);
std::size_t count_components(const RasterSet& set, Connectivity conn = Connectivity::Face);

bool is_compactly_contained(const RasterSet& component, const RasterDomain& domain);

RasterSet inward_filling(const RasterSet& s, const RasterDomain& domain, Connectivity conn = Connectivity::Face);

// Cells touched by the sphere of radius rho around p (the cell containing p when rho = 0).
std::vector<std::size_t> cells_touching_sphere(const GridSpec& grid, const Point& p, double rho);

// Face distance (number of face steps) from `from` for cells of `within`, -1 where unreachable.
std::vector<int> face_distance(const RasterSet& from, const RasterSet& within, int max_distance);

}  // namespace sweep
