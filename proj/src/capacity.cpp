#include "sweep/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sweep/error.hpp"

namespace sweep {

namespace {

// Nearest-neighbour lattice constant of the d = 3 patch: the self-energy of a
// node of a hexagonal surface lattice with spacing a equals k(0.2377 a).
constexpr double kSurfacePatch = 0.2377;

std::vector<Point> distinct(std::span<const Point> nodes) {
  std::vector<Point> out;
  for (const Point& p : nodes)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

}  // namespace

std::vector<double> patch_radii(std::span<const Point> nodes, Dimension d) {
  const std::size_t n = nodes.size();
  std::vector<double> rho(n, 0.0);
  if (d.value() == 1 || n < 2) return rho;
  for (std::size_t i = 0; i < n; ++i) {
    double first = std::numeric_limits<double>::infinity(), second = first;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double t = distance(nodes[i], nodes[j]);
      if (t < first) {
        second = first;
        first = t;
      } else if (t < second) {
        second = t;
      }
    }
    if (d.value() == 2) {
      const double a = std::isfinite(second) ? 0.5 * (first + second) : first;
      rho[i] = a / (2.0 * std::numbers::pi);
    } else {
      rho[i] = kSurfacePatch * first;
    }
  }
  return rho;
}

EquilibriumResult equilibrium_measure(std::span<const Point> input, Dimension d, const EquilibriumOptions& opt) {
  if (input.size() < 2) throw Error(ErrorKind::TooFewNodes, "need at least two nodes");
  for (const Point& p : input) check_point(d, p);
  const std::vector<Point> nodes = distinct(input);
  if (nodes.size() < 2) throw Error(ErrorKind::Degenerate, "all nodes coincide");
  const std::size_t n = nodes.size();
  const double s = d.exponent();

  std::vector<double> Kmat(n * n, 0.0);
  const std::vector<double> rho = opt.self_energy == SelfEnergy::Patch ? patch_radii(nodes, d) : std::vector<double>(n, 0.0);
  const auto nn = std::ptrdiff_t(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
    const auto i = std::size_t(ii);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        Kmat[i * n + j] = (opt.self_energy == SelfEnergy::Patch && d.value() >= 2) ? k(s, rho[i]) : 0.0;
      else
        Kmat[i * n + j] = k(s, distance(nodes[i], nodes[j]));
    }
  }
  auto column = [&](std::size_t c) { return &Kmat[c * n]; };  // symmetric: row == column

  std::vector<double> w(n, 1.0 / double(n)), Kw(n, 0.0);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = column(i);
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * w[j];
      Kw[i] = acc;
    }
  };
  auto quad = [&] {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += w[i] * Kw[i];
    return e;
  };
  refresh();
  double E = quad();

  EquilibriumResult res{Measure(d), nodes, {}, 0.0, 0.0, 0, 0.0, {}};
  double gap = 0.0;
  int it = 0;
  for (;; ++it) {
    // Gradient 2 Kw; compare half-gradients to save a factor 2 on each entry.
    std::size_t fw = 0, away = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (Kw[i] > Kw[fw]) fw = i;
      if (w[i] > 0.0 && (away == n || Kw[i] < Kw[away])) away = i;
    }
    gap = 2.0 * (Kw[fw] - E);
    if (gap <= opt.tolerance || it >= opt.max_iterations) break;
    const double away_gap = 2.0 * (E - Kw[away]);

    const bool toward = gap >= away_gap;
    const std::size_t v = toward ? fw : away;
    const double slope = toward ? gap : away_gap;
    const double curvature = Kmat[v * n + v] - 2.0 * Kw[v] + E;
    const double gamma_max = toward ? 1.0 : w[away] / (1.0 - w[away]);
    double gamma = gamma_max;
    if (curvature < 0.0) gamma = std::min(gamma_max, -slope / (2.0 * curvature));
    if (!(gamma > 0.0)) break;

    const double* col = column(v);
    if (toward) {
      for (std::size_t i = 0; i < n; ++i) {
        w[i] *= 1.0 - gamma;
        Kw[i] = (1.0 - gamma) * Kw[i] + gamma * col[i];
      }
      w[v] += gamma;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        w[i] *= 1.0 + gamma;
        Kw[i] = (1.0 + gamma) * Kw[i] - gamma * col[i];
      }
      w[v] -= gamma;
      if (gamma == gamma_max || w[v] < 0.0) w[v] = 0.0;
    }
    double total = 0.0;
    for (double x : w) total += x;
    for (std::size_t i = 0; i < n; ++i) w[i] /= total;
    if ((it + 1) % 256 == 0)
      refresh();
    else
      for (double& x : Kw) x /= total;
    E = quad();
    if (opt.keep_trace) res.trace.push_back(E);
  }

  // With the diagonal dropped the form is not concave when every off-diagonal
  // kernel value is negative, and the ascent runs into a vertex (energy 0).
  if (d.value() >= 2 && std::count_if(w.begin(), w.end(), [](double x) { return x > 0.0; }) == 1)
    throw Error(ErrorKind::Degenerate, "excluded self-energy has no interior maximiser for these nodes; use the patch self-energy");
  res.weights = w;
  res.energy = E;
  res.capacity = k_inverse(s, E);
  res.iterations = it;
  res.gap = gap;
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] > 0.0) atoms.push_back({nodes[i], w[i], 0.0});
  res.measure = Measure(d, std::move(atoms));
  return res;
}

std::vector<Point> capacity_nodes(const RasterSet& E, const CapacityConfig& cfg) {
  const GridSpec& g = E.grid();
  std::vector<std::size_t> boundary, interior;
  std::array<std::ptrdiff_t, 6> nb;
  for (std::size_t i : E.indices()) {
    const int k = g.face_neighbors(i, nb);
    bool edge = false;
    for (int q = 0; q < k; ++q)
      if (nb[q] < 0 || !E.contains(std::size_t(nb[q]))) edge = true;
    (edge ? boundary : interior).push_back(i);
  }
  std::vector<Point> nodes;
  // Farthest-point sampling of the boundary, seeded at its first cell.
  const std::size_t want = std::min(boundary.size(), std::size_t(std::max(0, cfg.boundary_nodes)));
  if (want > 0) {
    std::vector<Point> centers;
    centers.reserve(boundary.size());
    for (std::size_t i : boundary) centers.push_back(g.center(i));
    std::vector<double> dmin(centers.size(), std::numeric_limits<double>::infinity());
    std::size_t pick = 0;
    for (std::size_t s = 0; s < want; ++s) {
      nodes.push_back(centers[pick]);
      std::size_t next = 0;
      for (std::size_t j = 0; j < centers.size(); ++j) {
        dmin[j] = std::min(dmin[j], norm2(centers[j] - centers[pick]));
        if (dmin[j] > dmin[next]) next = j;
      }
      pick = next;
    }
  }
  const std::size_t inner = std::min(interior.size(), std::size_t(std::max(0, cfg.interior_nodes)));
  for (std::size_t s = 0; s < inner; ++s) nodes.push_back(g.center(interior[(2 * s + 1) * interior.size() / (2 * inner)]));
  return nodes;
}

CapacityReport capacity_estimate(const RasterSet& E, const CapacityConfig& cfg) {
  if (E.empty()) throw Error(ErrorKind::InvalidArgument, "capacity of an empty set");
  const std::vector<Point> nodes = capacity_nodes(E, cfg);
  if (nodes.size() < 2) return {0.0, kMinusInf, 0, 0.0, nodes.size()};
  const EquilibriumResult r = equilibrium_measure(nodes, E.grid().dim, cfg.equilibrium);
  return {r.capacity, r.energy, r.iterations, r.gap, nodes.size()};
}

CapacityReport capacity_estimate(std::span<const Point> E, Dimension d, const CapacityConfig& cfg) {
  if (E.empty()) throw Error(ErrorKind::InvalidArgument, "capacity of an empty set");
  for (const Point& p : E) check_point(d, p);
  const std::vector<Point> nodes = distinct(E);
  if (d.value() >= 2 || nodes.size() < 2) return {0.0, kMinusInf, 0, 0.0, nodes.size()};
  EquilibriumOptions opt = cfg.equilibrium;
  opt.self_energy = SelfEnergy::Excluded;
  const EquilibriumResult r = equilibrium_measure(nodes, d, opt);
  return {r.capacity, r.energy, r.iterations, r.gap, nodes.size()};
}

bool is_polar_heuristic(const RasterSet& E, std::optional<double> threshold, const CapacityConfig& cfg) {
  return capacity_estimate(E, cfg).capacity <= threshold.value_or(10.0 * E.grid().h);
}

bool is_polar_heuristic(std::span<const Point> E, Dimension d, std::optional<double> threshold) {
  if (E.empty()) return true;
  return capacity_estimate(E, d).capacity <= threshold.value_or(1e-9);
}

}  // namespace sweep
