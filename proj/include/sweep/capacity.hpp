#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sweep/measures.hpp"

namespace sweep {

enum class SelfEnergy {
  Excluded,  // Fekete surrogate: diagonal dropped. Only a stationary point unless the
             // form is concave on the simplex; Degenerate if the ascent ends at a vertex.
  Patch,     // diagonal = k(rho_i) with rho_i from the local node spacing
};

struct EquilibriumOptions {
  int max_iterations = 20000;
  double tolerance = 1e-9;  // Frank-Wolfe gap
  SelfEnergy self_energy = SelfEnergy::Patch;
  bool keep_trace = false;
};

struct EquilibriumResult {
  Measure measure;
  std::vector<Point> nodes;
  std::vector<double> weights;
  double energy = 0.0;
  double capacity = 0.0;
  int iterations = 0;
  double gap = 0.0;
  std::vector<double> trace;  // energy after each iteration when requested
};

// Maximises sum_ij w_i w_j K_ij over the probability simplex (away-step Frank-Wolfe,
// exact line search). Coincident nodes are merged first.
EquilibriumResult equilibrium_measure(std::span<const Point> nodes, Dimension d, const EquilibriumOptions& opt = {});

// Self-energy radius used by SelfEnergy::Patch for each node.
std::vector<double> patch_radii(std::span<const Point> nodes, Dimension d);

struct CapacityConfig {
  int boundary_nodes = 200;
  int interior_nodes = 16;
  EquilibriumOptions equilibrium{20000, 1e-9, SelfEnergy::Patch, false};
};

struct CapacityReport {
  double capacity = 0.0;
  double energy = 0.0;
  int iterations = 0;
  double gap = 0.0;
  std::size_t nodes = 0;
};

// Nodes used for a raster: farthest-point sample of boundary-cell centres plus a
// stratified interior sample.
std::vector<Point> capacity_nodes(const RasterSet& E, const CapacityConfig& cfg);

CapacityReport capacity_estimate(const RasterSet& E, const CapacityConfig& cfg = {});
// Finite point sets: 0 for d >= 2 (polar); the discrete maximum for d = 1, where K(x, x) = 0.
CapacityReport capacity_estimate(std::span<const Point> E, Dimension d, const CapacityConfig& cfg = {});

bool is_polar_heuristic(const RasterSet& E, std::optional<double> threshold = std::nullopt, const CapacityConfig& cfg = {});
bool is_polar_heuristic(std::span<const Point> E, Dimension d, std::optional<double> threshold = std::nullopt);

}  // namespace sweep
