#pragma once
// Photon-assisted shot noise of a two-tone-driven tunnel junction. The drive's
// phase factor exp(-i [z1 sin x + z2 sin(2x + phi)]) is expanded into sideband
// amplitudes a_n; the noise power at dc bias q (in photon units) is
// S = G F sum_n |q + n| |a_n|^2, in units of G F omega, and the excess noise
// above the |N| dc floor at integer bias N isolates the pair contribution.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bessel.hpp"
#include "grid.hpp"
#include "numeric.hpp"

namespace biharmonic::shotnoise {

struct DriveSpectrum {
  double z1 = 0.0;   // modulation index of the fundamental, >= 0
  double z2 = 0.0;   // modulation index of the second harmonic, >= 0
  double phi = 0.0;  // relative phase
};

struct PhotonCoefficients {
  std::vector<std::complex<double>> values;  // a_{-n_max} .. a_{+n_max}
  int n_max = 0;
  double tail_mass = 0.0;  // Parseval deficit |1 - sum |a_n|^2| at this truncation

  std::complex<double> at(int n) const {
    if (n < -n_max || n > n_max) return {0.0, 0.0};
    return values[static_cast<size_t>(n + n_max)];
  }
};

namespace detail {

inline double j_signed(const std::vector<double>& table, int k) {
  const int a = std::abs(k);
  if (a >= static_cast<int>(table.size())) return 0.0;
  const double v = table[static_cast<size_t>(a)];
  return (k < 0 && a % 2 != 0) ? -v : v;
}

// a_n = sum_m J_{n-2m}(z1) J_m(z2) e^{-i m phi} at a fixed truncation order.
inline PhotonCoefficients coefficients_at(const DriveSpectrum& d, int n_max) {
  const int m_cut = static_cast<int>(std::ceil(d.z2)) + 30;
  const int order1 = std::min(n_max + 2 * m_cut, bessel::max_order);
  const auto j1 = bessel::j_array(d.z1, order1);
  const auto j2 = bessel::j_array(d.z2, m_cut);
  std::vector<std::complex<double>> twiddle(static_cast<size_t>(2 * m_cut) + 1);
  for (int m = -m_cut; m <= m_cut; ++m)
    twiddle[static_cast<size_t>(m + m_cut)] = std::polar(1.0, -m * d.phi);

  PhotonCoefficients pc;
  pc.n_max = n_max;
  pc.values.assign(static_cast<size_t>(2 * n_max) + 1, {0.0, 0.0});
  double mass = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (int m = -m_cut; m <= m_cut; ++m) {
      const double w = j_signed(j1, n - 2 * m) * j_signed(j2, m);
      if (w != 0.0) acc += w * twiddle[static_cast<size_t>(m + m_cut)];
    }
    pc.values[static_cast<size_t>(n + n_max)] = acc;
    mass += std::norm(acc);
  }
  pc.tail_mass = std::fabs(1.0 - mass);
  return pc;
}

}  // namespace detail

inline void validate(const DriveSpectrum& d) {
  if (!(d.z1 >= 0.0 && d.z1 <= bessel::max_argument))
    throw std::invalid_argument("z1: must lie in [0, 1000]");
  if (!(d.z2 >= 0.0 && d.z2 <= bessel::max_argument))
    throw std::invalid_argument("z2: must lie in [0, 1000]");
  if (!std::isfinite(d.phi)) throw std::invalid_argument("phi: must be finite");
}

// Grows the truncation order until the Parseval deficit drops below tail_tol.
inline PhotonCoefficients photon_coefficients(const DriveSpectrum& d, double tail_tol = 1e-12,
                                              int n_cap = bessel::max_order) {
  validate(d);
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol: must be > 0");
  if (!(n_cap >= 1 && n_cap <= bessel::max_order))
    throw std::invalid_argument("n_cap: must lie in [1, 10000]");
  int n_max = static_cast<int>(std::ceil(d.z1 + 2.0 * d.z2)) + 20;
  if (n_max > n_cap) n_max = n_cap;
  for (;;) {
    PhotonCoefficients pc = detail::coefficients_at(d, n_max);
    if (pc.tail_mass <= tail_tol) return pc;
    if (n_max >= n_cap)
      throw std::runtime_error("photon_coefficients: sideband tail exceeds tolerance at the order cap");
    n_max = std::min(2 * n_max, n_cap);
  }
}

// Independent route for cross-checks: a_n as a Fourier coefficient of the
// phase factor, by periodic trapezoidal quadrature (spectrally accurate once
// samples comfortably exceeds 2(z1 + 2 z2 + n_max)).
inline std::vector<std::complex<double>> photon_coefficients_quadrature(const DriveSpectrum& d,
                                                                        int n_max,
                                                                        int samples = 8192) {
  validate(d);
  if (!(n_max >= 0)) throw std::invalid_argument("n_max: must be >= 0");
  if (!(samples >= 16)) throw std::invalid_argument("samples: must be >= 16");
  std::vector<std::complex<double>> out(static_cast<size_t>(2 * n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < samples; ++k) {
      const double x = 2.0 * numeric::pi * k / samples;
      const double phase = n * x - d.z1 * std::sin(x) - d.z2 * std::sin(2.0 * x + d.phi);
      acc += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[static_cast<size_t>(n + n_max)] = acc / static_cast<double>(samples);
  }
  return out;
}

struct NoiseSetup {
  double q = 0.0;            // dc bias in photon units, e V / (hbar omega)
  double conductance = 1.0;  // G
  double fano = 1.0;         // F
};

inline void validate(const NoiseSetup& setup) {
  if (!std::isfinite(setup.q)) throw std::invalid_argument("q: must be finite");
  if (!(setup.conductance > 0.0)) throw std::invalid_argument("conductance: must be > 0");
  if (!(setup.fano > 0.0)) throw std::invalid_argument("fano: must be > 0");
}

// S = G F sum_n |q + n| |a_n|^2
inline double noise_power(const PhotonCoefficients& pc, const NoiseSetup& setup) {
  validate(setup);
  double s = 0.0;
  for (int n = -pc.n_max; n <= pc.n_max; ++n)
    s += std::fabs(setup.q + n) * std::norm(pc.at(n));
  return setup.conductance * setup.fano * s;
}

// Noise above the dc floor at integer bias N: 2 G F sum_{n>=1} n |a_{-N-n}|^2
// for N >= 0, mirrored for N < 0. Exactly S(q = N) - G F |N|.
inline double excess_noise(const PhotonCoefficients& pc, long long n_bias,
                           double conductance = 1.0, double fano = 1.0) {
  if (!(conductance > 0.0)) throw std::invalid_argument("conductance: must be > 0");
  if (!(fano > 0.0)) throw std::invalid_argument("fano: must be > 0");
  const long long floor_index = std::llabs(n_bias);
  double s = 0.0;
  for (int n = 1; n + floor_index <= pc.n_max; ++n) {
    const long long idx = (n_bias >= 0) ? (-n_bias - n) : (-n_bias + n);
    s += n * std::norm(pc.at(static_cast<int>(idx)));
  }
  return 2.0 * conductance * fano * s;
}

struct NoiseSweepResult {
  std::vector<double> zeta;
  std::vector<double> s;     // NaN where a cell failed
  std::vector<double> s_ac;  // excess above the dc floor at n_bias
  long long n_bias = 0;      // llround(q)
  double argmin_s = std::numeric_limits<double>::quiet_NaN();
  double min_s = std::numeric_limits<double>::quiet_NaN();
  double argmin_s_ac = std::numeric_limits<double>::quiet_NaN();
  double min_s_ac = std::numeric_limits<double>::quiet_NaN();
  int masked = 0;
};

// Splits a fixed total modulation between the tones, z1 = zeta total and
// z2 = (1 - zeta) total / 2, and sweeps zeta. Interior grid minima are
// sharpened with one parabolic-vertex re-evaluation.
inline NoiseSweepResult noise_sweep(double total, const NoiseSetup& setup, double phi,
                                    const grid::SweepGrid& zeta_grid) {
  validate(setup);
  if (!(total >= 0.0 && total <= bessel::max_argument))
    throw std::invalid_argument("total: must lie in [0, 1000]");
  if (!(zeta_grid.start > 0.0 && zeta_grid.stop < 1.0))
    throw std::invalid_argument("zeta grid: must lie strictly inside (0, 1)");
  if (!std::isfinite(phi)) throw std::invalid_argument("phi: must be finite");

  NoiseSweepResult r;
  r.n_bias = std::llround(setup.q);
  r.zeta = zeta_grid.points();
  const size_t cells = r.zeta.size();
  r.s.assign(cells, std::numeric_limits<double>::quiet_NaN());
  r.s_ac.assign(cells, std::numeric_limits<double>::quiet_NaN());

  const auto cell = [&](double zeta, double& s_out, double& s_ac_out) {
    const DriveSpectrum d{zeta * total, (1.0 - zeta) * total / 2.0, phi};
    const auto pc = photon_coefficients(d);
    s_out = noise_power(pc, setup);
    s_ac_out = excess_noise(pc, r.n_bias, setup.conductance, setup.fano);
  };
  r.masked = grid::for_each_index(cells, [&](size_t i) { cell(r.zeta[i], r.s[i], r.s_ac[i]); });

  const auto locate = [&](const std::vector<double>& y, bool want_s, double& arg_out, double& val_out) {
    size_t k = cells;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < cells; ++i) {
      if (std::isfinite(y[i]) && y[i] < best) {
        best = y[i];
        k = i;
      }
    }
    if (k == cells) return;
    arg_out = r.zeta[k];
    val_out = y[k];
    if (k == 0 || k + 1 == cells || !std::isfinite(y[k - 1]) || !std::isfinite(y[k + 1])) return;
    const double vertex = numeric::parabola_vertex(r.zeta[k - 1], y[k - 1], r.zeta[k], y[k],
                                                   r.zeta[k + 1], y[k + 1]);
    try {
      double s_v = 0.0, s_ac_v = 0.0;
      cell(vertex, s_v, s_ac_v);
      const double refined = want_s ? s_v : s_ac_v;
      if (refined <= y[k]) {
        arg_out = vertex;
        val_out = refined;
      }
    } catch (const std::exception&) {
      // keep the grid minimum
    }
  };
  locate(r.s, true, r.argmin_s, r.min_s);
  locate(r.s_ac, false, r.argmin_s_ac, r.min_s_ac);
  return r;
}

}  // namespace biharmonic::shotnoise
