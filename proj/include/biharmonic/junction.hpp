#pragma once
// Overdamped junction phase dynamics under a two-tone drive:
//   dphi/dtau = i_dc + f(tau) - sin(phi),   currents in units of the critical
// current, time in units of 1/omega_c. Fixed-step RK4 with an integer number
// of steps per drive period; voltages are winding averages over whole periods
// after a transient. On top of the integrator: locked-channel boundaries by
// bisection, diode efficiency, the quasistatic channel prediction, and the
// map/curve sweeps behind the command-line tool.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "numeric.hpp"
#include "waveform.hpp"

namespace biharmonic::junction {

struct JunctionConfig {
  double i_dc = 0.0;                // dc bias, same units as drive.amplitude
  waveform::BiharmonicSpec drive;   // drive.omega is in units of omega_c
  double critical_current = 1.0;    // divides currents into reduced units
};

struct SimControl {
  double dt = 0.0;              // reduced time step; 0 picks the bound below
  int transient_periods = 200;  // discarded before averaging
  int average_periods = 400;    // window for the winding average
  double initial_phase = 0.0;
};

// Slow drives need long windows for sub-threshold voltage resolution; fast
// drives settle within tens of periods.
inline SimControl default_control(double omega) {
  SimControl c;
  if (omega >= 0.5) {
    c.transient_periods = 50;
    c.average_periods = 100;
  }
  return c;
}

struct JunctionResult {
  double mean_voltage = 0.0;         // <dphi/dtau> over the averaging window
  double winding_number_rate = 0.0;  // 2pi windings per drive period
};

inline double step_bound(double omega) {
  return std::min(2.0 * numeric::pi / omega / 100.0, 0.01);
}

inline void validate(const SimControl& control, double omega) {
  const double bound = step_bound(omega);
  if (control.dt < 0.0 || (control.dt > 0.0 && control.dt > bound * (1.0 + 1e-12)))
    throw std::invalid_argument("dt: must be 0 (automatic) or in (0, min(T/100, 0.01)]");
  if (control.transient_periods < 1) throw std::invalid_argument("transient_periods: must be >= 1");
  if (control.average_periods < 1) throw std::invalid_argument("average_periods: must be >= 1");
  if (!std::isfinite(control.initial_phase)) throw std::invalid_argument("initial_phase: must be finite");
}

inline JunctionResult integrate_phase(const JunctionConfig& config, const SimControl& control) {
  waveform::validate(config.drive);
  validate(control, config.drive.omega);
  if (!(config.critical_current > 0.0)) throw std::invalid_argument("critical_current: must be > 0");
  if (!std::isfinite(config.i_dc)) throw std::invalid_argument("i_dc: must be finite");

  const double period = 2.0 * numeric::pi / config.drive.omega;
  const double dt_req = control.dt > 0.0 ? control.dt : step_bound(config.drive.omega);
  const long long steps = static_cast<long long>(std::ceil(period / dt_req - 1e-9));
  const double dt = period / static_cast<double>(steps);

  const double inv_ic = 1.0 / config.critical_current;
  const double bias = config.i_dc * inv_ic;
  const auto drive_at = [&](double tau) { return bias + waveform::evaluate(config.drive, tau) * inv_ic; };

  double phi = control.initial_phase;
  double phi_mark = phi;
  const long long total = control.transient_periods + control.average_periods;
  for (long long p = 0; p < total; ++p) {
    const double t_period = static_cast<double>(p) * period;
    for (long long s = 0; s < steps; ++s) {
      const double t0 = t_period + static_cast<double>(s) * dt;
      const double f0 = drive_at(t0);
      const double fm = drive_at(t0 + 0.5 * dt);
      const double f1 = drive_at(t0 + dt);
      const double k1 = f0 - std::sin(phi);
      const double k2 = fm - std::sin(phi + 0.5 * dt * k1);
      const double k3 = fm - std::sin(phi + 0.5 * dt * k2);
      const double k4 = f1 - std::sin(phi + dt * k3);
      phi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!std::isfinite(phi))
      throw std::runtime_error("integrate_phase: phase diverged near tau = " +
                               std::to_string((static_cast<double>(p) + 1.0) * period));
    if (p + 1 == control.transient_periods) phi_mark = phi;
  }
  const double delta = phi - phi_mark;
  JunctionResult r;
  r.mean_voltage = delta / (static_cast<double>(control.average_periods) * period);
  r.winding_number_rate = delta / (2.0 * numeric::pi * static_cast<double>(control.average_periods));
  return r;
}

enum class BiasDirection { Positive, Negative };

namespace detail {

// A bias counts as locked only if every probed initial phase settles onto a
// zero-voltage attractor; one running trajectory is enough to call it running.
inline bool phase_locked(double i_dc, const waveform::BiharmonicSpec& drive,
                         const SimControl& control, double v_threshold) {
  for (const double phi0 : {0.0, 0.5 * numeric::pi, numeric::pi}) {
    SimControl c = control;
    c.initial_phase = phi0;
    const JunctionResult r = integrate_phase({i_dc, drive, 1.0}, c);
    if (std::fabs(r.mean_voltage) > v_threshold) return false;
  }
  return true;
}

}  // namespace detail

// Largest |i_dc| along the chosen direction that still phase-locks, signed;
// nullopt when the junction already runs at zero bias (no locked channel).
inline std::optional<double> critical_current(const waveform::BiharmonicSpec& drive,
                                              BiasDirection direction, const SimControl& control,
                                              double v_threshold = 1e-4, double i_tolerance = 1e-4) {
  waveform::validate(drive);
  validate(control, drive.omega);
  if (!(v_threshold > 0.0)) throw std::invalid_argument("v_threshold: must be > 0");
  if (!(i_tolerance > 0.0)) throw std::invalid_argument("i_tolerance: must be > 0");

  if (!detail::phase_locked(0.0, drive, control, v_threshold)) return std::nullopt;

  const double sign = direction == BiasDirection::Positive ? 1.0 : -1.0;
  const double beta = drive.alpha * (1.0 - drive.zeta);
  // above 1 + max|f| the phase velocity never changes sign: guaranteed running
  const double ceiling = 1.0 + drive.amplitude * (drive.zeta + beta) + 0.5;

  double lo = 0.0, hi = 0.1;
  for (;;) {
    if (hi >= ceiling) {
      hi = ceiling;
      break;
    }
    if (!detail::phase_locked(sign * hi, drive, control, v_threshold)) break;
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > i_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (detail::phase_locked(sign * mid, drive, control, v_threshold)) lo = mid;
    else hi = mid;
  }
  return sign * 0.5 * (lo + hi);
}

// (I+ + I-) / (I+ - I-), signed: positive when the locked channel is shifted
// toward positive bias. nullopt when there is no locked channel.
inline std::optional<double> diode_efficiency(const waveform::BiharmonicSpec& drive,
                                              const SimControl& control,
                                              double v_threshold = 1e-4, double i_tolerance = 1e-4) {
  const auto upper = critical_current(drive, BiasDirection::Positive, control, v_threshold, i_tolerance);
  if (!upper) return std::nullopt;
  const auto lower = critical_current(drive, BiasDirection::Negative, control, v_threshold, i_tolerance);
  if (!lower) return std::nullopt;
  const double width = *upper - *lower;
  if (width == 0.0) return std::nullopt;
  return (*upper + *lower) / width;
}

// Quasistatic locked channel [-1 - r m, 1 - r M] for a drive of amplitude r
// (in units of the critical current) with unit-amplitude extrema M, m.
// nullopt when the window is empty.
inline std::optional<std::pair<double, double>> adiabatic_channel(waveform::Family family,
                                                                  double alpha, double theta,
                                                                  double zeta, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("r: must be >= 0");
  waveform::BiharmonicSpec s;
  s.family = family;
  s.zeta = zeta;
  s.alpha = alpha;
  s.theta = theta;
  waveform::validate(s);
  const waveform::WaveformExtrema ex = waveform::detail::is_canonical(family, theta)
                                           ? waveform::canonical_extrema(family, zeta, alpha, theta)
                                           : waveform::numerical_extrema(s);
  const double lower = -1.0 - r * ex.minimum;
  const double upper = 1.0 - r * ex.maximum;
  if (lower > upper) return std::nullopt;
  return std::make_pair(lower, upper);
}

enum class MapMode { ClosedForm, Ode };

struct OdeSettings {
  double amplitude = 1.0;  // drive scale in units of the critical current
  double omega = 0.01;
  SimControl control = default_control(0.01);
  double v_threshold = 1e-4;
  double i_tolerance = 1e-4;
};

struct EfficiencyMap {
  grid::MapResult map;            // rows: alpha, cols: zeta
  std::vector<double> zeta_opt;   // per-alpha ridge 2 alpha / (1 + 2 alpha)
};

// Rectification efficiency over (alpha, zeta). Closed-form mode evaluates
// 2 D directly; ODE mode measures the locked-channel asymmetry cell by cell.
inline EfficiencyMap efficiency_map(const grid::SweepGrid& alpha_grid, const grid::SweepGrid& zeta_grid,
                                    waveform::Family family, double theta, MapMode mode,
                                    const OdeSettings& settings = {}) {
  if (!(alpha_grid.start > 0.0)) throw std::invalid_argument("alpha grid: must be > 0");
  if (!(zeta_grid.start >= 0.0 && zeta_grid.stop <= 1.0))
    throw std::invalid_argument("zeta grid: must lie in [0, 1]");
  if (mode == MapMode::ClosedForm && !waveform::detail::is_canonical(family, theta))
    throw std::invalid_argument("theta: closed-form maps need a canonical phase");

  EfficiencyMap out;
  out.map.rows = alpha_grid.points();
  out.map.cols = zeta_grid.points();
  const size_t n_cols = out.map.cols.size();
  out.map.values.assign(out.map.rows.size() * n_cols, std::numeric_limits<double>::quiet_NaN());
  out.zeta_opt.resize(out.map.rows.size());
  for (size_t r = 0; r < out.map.rows.size(); ++r) out.zeta_opt[r] = waveform::optimal_zeta(out.map.rows[r]);

  const size_t cells = out.map.values.size();
  out.map.masked = grid::for_each_index(cells, [&](size_t idx) {
    const size_t r = idx / n_cols;
    const size_t c = idx % n_cols;
    const double alpha = out.map.rows[r];
    const double zeta = out.map.cols[c];
    if (mode == MapMode::ClosedForm) {
      out.map.values[idx] = waveform::waveform_diode_efficiency(family, alpha, theta, zeta);
      return;
    }
    waveform::BiharmonicSpec drive;
    drive.family = family;
    drive.zeta = zeta;
    drive.alpha = alpha;
    drive.theta = theta;
    drive.amplitude = settings.amplitude;
    drive.omega = settings.omega;
    const auto eta = diode_efficiency(drive, settings.control, settings.v_threshold, settings.i_tolerance);
    if (!eta) throw std::runtime_error("no locked channel");
    out.map.values[idx] = *eta;
  });
  return out;
}

struct VoltageMap {
  grid::MapResult map;                 // rows: lambda = log10((1-zeta)/zeta), cols: i_dc
  std::vector<double> zeta;            // per row
  std::vector<double> channel_lower;   // quasistatic prediction per row
  std::vector<double> channel_upper;
};

// Mean voltage over (tone split, dc bias) at fixed total drive scale.
inline VoltageMap voltage_map(const grid::SweepGrid& lambda_grid, const grid::SweepGrid& i_grid,
                              waveform::Family family, double theta, double alpha,
                              const OdeSettings& settings) {
  VoltageMap out;
  out.map.rows = lambda_grid.points();
  out.map.cols = i_grid.points();
  const size_t n_rows = out.map.rows.size();
  const size_t n_cols = out.map.cols.size();
  out.zeta.resize(n_rows);
  out.channel_lower.assign(n_rows, std::numeric_limits<double>::quiet_NaN());
  out.channel_upper.assign(n_rows, std::numeric_limits<double>::quiet_NaN());
  for (size_t r = 0; r < n_rows; ++r) {
    out.zeta[r] = 1.0 / (1.0 + std::pow(10.0, out.map.rows[r]));
    const auto window = adiabatic_channel(family, alpha, theta, out.zeta[r], settings.amplitude);
    if (window) {
      out.channel_lower[r] = window->first;
      out.channel_upper[r] = window->second;
    }
  }
  out.map.values.assign(n_rows * n_cols, std::numeric_limits<double>::quiet_NaN());
  out.map.masked = grid::for_each_index(out.map.values.size(), [&](size_t idx) {
    const size_t r = idx / n_cols;
    const size_t c = idx % n_cols;
    waveform::BiharmonicSpec drive;
    drive.family = family;
    drive.zeta = out.zeta[r];
    drive.alpha = alpha;
    drive.theta = theta;
    drive.amplitude = settings.amplitude;
    drive.omega = settings.omega;
    out.map.values[idx] = integrate_phase({out.map.cols[c], drive, 1.0}, settings.control).mean_voltage;
  });
  return out;
}

struct IvPoint {
  double i_dc = 0.0;
  double mean_voltage = 0.0;
  double winding_number_rate = 0.0;
};

inline std::vector<IvPoint> iv_curve(const waveform::BiharmonicSpec& drive,
                                     const grid::SweepGrid& i_grid, const SimControl& control) {
  waveform::validate(drive);
  validate(control, drive.omega);
  const std::vector<double> biases = i_grid.points();
  std::vector<IvPoint> out(biases.size());
  for (size_t k = 0; k < biases.size(); ++k) {
    out[k].i_dc = biases[k];
    out[k].mean_voltage = std::numeric_limits<double>::quiet_NaN();
    out[k].winding_number_rate = std::numeric_limits<double>::quiet_NaN();
  }
  grid::for_each_index(biases.size(), [&](size_t k) {
    const JunctionResult r = integrate_phase({biases[k], drive, 1.0}, control);
    out[k].mean_voltage = r.mean_voltage;
    out[k].winding_number_rate = r.winding_number_rate;
  });
  return out;
}

}  // namespace biharmonic::junction
