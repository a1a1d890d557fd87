#include "sweep/potential.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/error.hpp"

namespace sweep {

namespace {

// Structure-of-arrays copy of the masses of a measure.
struct Sources {
  int d = 2;
  std::vector<double> x, y, z, w, rho2;

  explicit Sources(const Measure& mu) : d(mu.dim().value()) {
    mu.for_each_mass([&](const Point& p, double m, double rho) {
      x.push_back(p[0]);
      y.push_back(p[1]);
      z.push_back(p[2]);
      w.push_back(m);
      rho2.push_back(rho * rho);
    });
  }

  std::size_t size() const { return w.size(); }

  ExtendedReal at(const Point& q) const {
    double sum = 0.0;
    const std::size_t n = size();
    switch (d) {
      case 1:
        for (std::size_t i = 0; i < n; ++i) sum += w[i] * std::sqrt(std::max((q[0] - x[i]) * (q[0] - x[i]), rho2[i]));
        return sum;
      case 2:
        for (std::size_t i = 0; i < n; ++i) {
          const double dx = q[0] - x[i], dy = q[1] - y[i];
          const double r2 = std::max(dx * dx + dy * dy, rho2[i]);
          if (r2 == 0.0) return kMinusInf;
          sum += w[i] * 0.5 * std::log(r2);
        }
        return sum;
      default:
        for (std::size_t i = 0; i < n; ++i) {
          const double dx = q[0] - x[i], dy = q[1] - y[i], dz = q[2] - z[i];
          const double r2 = std::max(dx * dx + dy * dy + dz * dz, rho2[i]);
          if (r2 == 0.0) return kMinusInf;
          sum -= w[i] / std::sqrt(r2);
        }
        return sum;
    }
  }
};

struct Mass {
  Point p;
  double w;
  double rho;
};

std::vector<Mass> collect(const Measure& mu) {
  std::vector<Mass> out;
  mu.for_each_mass([&](const Point& p, double w, double rho) { out.push_back({p, w, rho}); });
  return out;
}

}  // namespace

ExtendedReal potential(const Measure& mu, const Point& x) { return Sources(mu).at(x); }

std::vector<double> potential_batch(const Measure& mu, std::span<const Point> xs) {
  const Sources src(mu);
  std::vector<double> out(xs.size());
  const auto n = std::ptrdiff_t(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[std::size_t(i)] = src.at(xs[std::size_t(i)]);
  return out;
}

ExtendedReal energy(const Measure& nu, SelfTerms self) {
  const Dimension d = nu.dim();
  const std::vector<Mass> m = collect(nu);
  const auto n = std::ptrdiff_t(m.size());
  // Row i holds w_i (2 sum_{j>i} w_j E_ij + w_i E_ii); rows are summed serially afterwards.
  std::vector<double> rows(m.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Mass& a = m[std::size_t(i)];
    double row = 0.0;
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      const Mass& b = m[std::size_t(j)];
      row += b.w * shell_pair_energy(d, distance(a.p, b.p), a.rho, b.rho);
    }
    row *= 2.0;
    if (self == SelfTerms::Included) row += a.w * shell_pair_energy(d, 0.0, a.rho, a.rho);
    rows[std::size_t(i)] = a.w * row;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

GridFunction::GridFunction(RasterDomain d, std::vector<double> v) : domain(std::move(d)), values(std::move(v)) {
  if (values.size() != domain.grid().size()) throw Error(ErrorKind::InvalidArgument, "grid function size does not match the grid");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (domain.contains(i) && (std::isnan(values[i]) || values[i] == std::numeric_limits<double>::infinity()))
      throw Error(ErrorKind::InvalidArgument, "grid function values must be real or -inf");
}

double stencil(const GridFunction& u, std::size_t idx) {
  std::array<std::ptrdiff_t, 6> nb;
  const GridSpec& g = u.domain.grid();
  const int k = g.face_neighbors(idx, nb);
  double s = -k * u.values[idx];
  for (int q = 0; q < k; ++q) s += u.values[std::size_t(nb[q])];
  return s / (g.h * g.h);
}

RieszResult riesz_measure(const GridFunction& u) {
  const RasterDomain& dom = u.domain;
  const GridSpec& g = dom.grid();
  const double scale = riesz_constant(g.dim) * std::pow(g.h, g.dim.value() - 2);
  const auto n = std::ptrdiff_t(g.size());
  std::vector<double> mass(g.size(), 0.0);
  std::vector<std::uint8_t> interior(g.size(), 0);
  bool finite = true;
#pragma omp parallel for schedule(static) reduction(&& : finite)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = std::size_t(i);
    if (!dom.contains(idx) || !dom.is_interior(idx)) continue;
    interior[idx] = 1;
    std::array<std::ptrdiff_t, 6> nb;
    const int k = g.face_neighbors(idx, nb);
    double s = -k * u.values[idx];
    for (int q = 0; q < k; ++q) s += u.values[std::size_t(nb[q])];
    if (!std::isfinite(s)) finite = false;
    mass[idx] = scale * s;
  }
  if (!finite) throw Error(ErrorKind::InvalidArgument, "riesz_measure needs finite values on the stencil");
  std::size_t count = 0;
  double clamped = 0.0;
  GridPart part{g, std::vector<double>(g.size(), 0.0)};
  const double vol = g.cell_volume();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!interior[i]) continue;
    ++count;
    if (mass[i] < 0.0) {
      clamped -= mass[i];
    } else {
      part.density[i] = mass[i] / vol;
    }
  }
  if (count == 0) throw Error(ErrorKind::DomainTooThin, "no interior cells");
  return {Measure(g.dim, {}, std::move(part)), clamped, count};
}

}  // namespace sweep
