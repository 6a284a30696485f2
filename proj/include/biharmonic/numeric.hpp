#pragma once
// Small numerical kernels shared across the library: bracketed golden-section
// minimization, composite Simpson quadrature, and three-point parabolic
// refinement of a grid extremum.

#include <cmath>
#include <stdexcept>

namespace biharmonic::numeric {

inline constexpr double pi = 3.14159265358979323846;

// Minimizer of f on [a, b]; assumes a single minimum inside the bracket.
// Returns the abscissa once the bracket has shrunk below xtol.
template <class F>
double golden_min(F&& f, double a, double b, double xtol = 1e-12) {
  constexpr double invphi = 0.61803398874989485;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Composite Simpson rule with n panels (n must be even and >= 2).
template <class F>
double simpson(F&& f, double a, double b, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: panel count must be even and >= 2");
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Vertex abscissa of the parabola through three points bracketing an
// extremum. Falls back to x1 (the middle point) when the points are
// degenerate, and clamps to [x0, x2].
inline double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (den == 0.0 || !std::isfinite(num / den)) return x1;
  double v = x1 - 0.5 * num / den;
  if (v < x0) v = x0;
  if (v > x2) v = x2;
  return v;
}

}  // namespace biharmonic::numeric
