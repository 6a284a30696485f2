#pragma once
// First-kind Bessel functions J_n by Miller's downward recurrence: recurse
// J_{k-1} = (2k/z) J_k - J_{k+1} from a seed far above max(n, z), where the
// wanted solution dominates the growing one, then fix the scale with
// J_0 + 2 J_2 + 2 J_4 + ... = 1. Accurate to ~1e-13 relative for n <= 1e4,
// 0 <= z <= 1e3.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace biharmonic::bessel {

inline constexpr int max_order = 10000;
inline constexpr double max_argument = 1000.0;

// J_0(z) .. J_{n_max}(z) in one pass.
inline std::vector<double> j_array(double z, int n_max) {
  if (!(n_max >= 0 && n_max <= max_order)) throw std::invalid_argument("n_max: must lie in [0, 10000]");
  if (!(z >= 0.0 && z <= max_argument)) throw std::invalid_argument("z: must lie in [0, 1000]");
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (z < 1e-8) {
    // leading series term; the next one is smaller by (z/2)^2 < 1e-16
    out[0] = 1.0;
    double term = 1.0;
    for (int k = 1; k <= n_max; ++k) {
      term *= 0.5 * z / k;
      out[static_cast<size_t>(k)] = term;
      if (term == 0.0) break;
    }
    return out;
  }
  const int base = std::max(n_max, static_cast<int>(std::ceil(z)));
  const int start = base + 40 + static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(base))));

  // power-of-two rescaling keeps every stored value exact until the final divide
  constexpr double big = 0x1p832;
  constexpr double shrink = 0x1p-832;

  double above = 0.0;  // J_{k+1}, unnormalized
  double here = 1.0;   // J_k
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= n_max) out[static_cast<size_t>(k)] = here;
    if (k == 0) {
      norm += here;
    } else if (k % 2 == 0) {
      norm += 2.0 * here;
    }
    if (k > 0) {
      const double below = (2.0 * k / z) * here - above;
      above = here;
      here = below;
      if (std::fabs(here) > big) {
        here *= shrink;
        above *= shrink;
        norm *= shrink;
        for (int m = k; m <= n_max; ++m) out[static_cast<size_t>(m)] *= shrink;
      }
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

// Single value; J_{-n} = (-1)^n J_n.
inline double j(int n, double z) {
  const int k = std::abs(n);
  const double v = j_array(z, k)[static_cast<size_t>(k)];
  return (n < 0 && (k % 2 != 0)) ? -v : v;
}

}  // namespace biharmonic::bessel
