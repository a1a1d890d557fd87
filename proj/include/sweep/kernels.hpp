#pragma once

#include <array>
#include <cmath>
#include <limits>

namespace sweep {

// Points always carry three coordinates; coordinates past the dimension are 0.
using Point = std::array<double, 3>;

// A real number or -inf. +inf never comes out of a kernel.
using ExtendedReal = double;

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

inline bool is_minus_inf(ExtendedReal v) { return v == kMinusInf; }

class Dimension {
 public:
  explicit Dimension(int d);
  int value() const { return d_; }
  // Exponent s = d - 2 of the fundamental kernel.
  double exponent() const { return d_ - 2; }
  friend bool operator==(Dimension a, Dimension b) { return a.d_ == b.d_; }

 private:
  int d_;
};

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double norm2(const Point& a) { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2]; }
inline double distance(const Point& a, const Point& b) { return std::sqrt(norm2(a - b)); }

// Throws DimensionMismatch if a coordinate past d is nonzero or any coordinate is not finite.
void check_point(Dimension d, const Point& p);

// k_s(t): ln t for s = 0, -sgn(s) t^{-s} otherwise.
double k(double s, double t);
double k_inverse(double s, ExtendedReal v);

// K_{d-2}(y, x).
ExtendedReal K(Dimension d, const Point& y, const Point& x);

// Normalisation of the Riesz measure: Gamma(d/2) / (2 pi^{d/2} max(1, d-2)).
double riesz_constant(Dimension d);

// Volume of the unit ball.
double unit_ball_volume(Dimension d);

// Potential at distance t of the unit uniform measure on a sphere of radius rho
// (Dirac mass when rho = 0): k_{d-2}(max(t, rho)).
ExtendedReal shell_kernel(Dimension d, double t, double rho);

// Mutual energy of two unit uniform shells of radii r1, r2 whose centres are D apart.
// Coinciding point masses give -inf for d >= 2.
ExtendedReal shell_pair_energy(Dimension d, double D, double r1, double r2);

}  // namespace sweep
