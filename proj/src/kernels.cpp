#include "sweep/kernels.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "sweep/error.hpp"
#include "sweep/quadrature.hpp"

namespace sweep {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma(d/2) for d = 1, 2, 3.
double gamma_half(int d) {
  switch (d) {
    case 1: return std::sqrt(kPi);
    case 2: return 1.0;
    default: return 0.5 * std::sqrt(kPi);
  }
}

double pi_power_half(int d) {
  switch (d) {
    case 1: return std::sqrt(kPi);
    case 2: return kPi;
    default: return kPi * std::sqrt(kPi);
  }
}

const GaussRule& arc_rule() {
  static const GaussRule rule = gauss_legendre(64);
  return rule;
}

double mean_abs_1d(double D, double r1, double r2) {
  const double a[2] = {-r1, r1};
  const double b[2] = {D - r2, D + r2};
  const int na = r1 > 0.0 ? 2 : 1;
  const int nb = r2 > 0.0 ? 2 : 1;
  const double* pa = r1 > 0.0 ? a : &r1;
  const double only_b = D;
  const double* pb = r2 > 0.0 ? b : &only_b;
  double sum = 0.0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) sum += std::abs(pb[j] - pa[i]);
  return sum / (na * nb);
}

// Mean over the circle of radius r2 (centre at distance D) of ln max(|y - p1|, r1).
double log_shell_pair(double D, double r1, double r2) {
  if (D >= r1 + r2) return D > 0.0 ? std::log(D) : kMinusInf;
  if (D + r2 <= r1) return std::log(r1);
  if (D + r1 <= r2) return std::log(r2);
  const double c = std::clamp((D * D + r2 * r2 - r1 * r1) / (2.0 * D * r2), -1.0, 1.0);
  const double phi_star = std::acos(c);
  const GaussRule& rule = arc_rule();
  const double half = 0.5 * (kPi - phi_star);
  const double mid = 0.5 * (kPi + phi_star);
  double integral = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double phi = mid + half * rule.nodes[q];
    integral += rule.weights[q] * 0.5 * std::log(D * D + r2 * r2 - 2.0 * D * r2 * std::cos(phi));
  }
  integral *= half;
  return (phi_star * std::log(r1) + integral) / kPi;
}

// Mean over the sphere of radius r2 (centre at distance D) of -1 / max(|y - p1|, r1).
double newton_shell_pair(double D, double r1, double r2) {
  if (D >= r1 + r2) return D > 0.0 ? -1.0 / D : kMinusInf;
  if (D + r2 <= r1) return -1.0 / r1;
  if (D + r1 <= r2) return -1.0 / r2;
  const double a = std::abs(D - r2);
  const double b = D + r2;
  const double c = std::clamp(r1, a, b);
  return -(c * c - a * a) / (4.0 * D * r2 * r1) - (b - c) / (2.0 * D * r2);
}

}  // namespace

Dimension::Dimension(int d) : d_(d) {
  if (d < 1 || d > 3) throw Error(ErrorKind::InvalidArgument, "dimension must be 1, 2 or 3, got " + std::to_string(d));
}

void check_point(Dimension d, const Point& p) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(p[i])) throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
    if (i >= d.value() && p[i] != 0.0)
      throw Error(ErrorKind::DimensionMismatch, "point has a nonzero coordinate past dimension " + std::to_string(d.value()));
  }
}

double k(double s, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveRadius, "k requires t > 0");
  if (s == 0.0) return std::log(t);
  if (s == 1.0) return -1.0 / t;
  if (s == -1.0) return t;
  return (s > 0.0 ? -1.0 : 1.0) * std::pow(t, -s);
}

double k_inverse(double s, ExtendedReal v) {
  if (is_minus_inf(v) && s >= 0.0) return 0.0;
  if (!std::isfinite(v)) throw Error(ErrorKind::OutOfRange, "k_inverse of a non-finite value");
  if (s == 0.0) return std::exp(v);
  if (s > 0.0) {
    if (!(v < 0.0)) throw Error(ErrorKind::OutOfRange, "k_inverse needs v < 0 for s > 0");
    return s == 1.0 ? -1.0 / v : std::pow(-v, -1.0 / s);
  }
  if (!(v > 0.0)) throw Error(ErrorKind::OutOfRange, "k_inverse needs v > 0 for s < 0");
  return s == -1.0 ? v : std::pow(v, -1.0 / s);
}

ExtendedReal K(Dimension d, const Point& y, const Point& x) {
  const double t = distance(y, x);
  if (t == 0.0) return d.value() >= 2 ? kMinusInf : 0.0;
  return k(d.exponent(), t);
}

double riesz_constant(Dimension d) {
  const int n = d.value();
  return gamma_half(n) / (2.0 * pi_power_half(n) * std::max(1, n - 2));
}

double unit_ball_volume(Dimension d) {
  switch (d.value()) {
    case 1: return 2.0;
    case 2: return kPi;
    default: return 4.0 * kPi / 3.0;
  }
}

ExtendedReal shell_kernel(Dimension d, double t, double rho) {
  const double r = std::max(t, rho);
  switch (d.value()) {
    case 1: return r;
    case 2: return r > 0.0 ? std::log(r) : kMinusInf;
    default: return r > 0.0 ? -1.0 / r : kMinusInf;
  }
}

ExtendedReal shell_pair_energy(Dimension d, double D, double r1, double r2) {
  switch (d.value()) {
    case 1: return mean_abs_1d(D, r1, r2);
    case 2: return log_shell_pair(D, r1, r2);
    default: return newton_shell_pair(D, r1, r2);
  }
}

}  // namespace sweep
