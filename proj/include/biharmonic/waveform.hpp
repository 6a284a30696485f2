#pragma once
// Algebra of the two-tone drive f(t) = A [ zeta h(wt) + alpha (1-zeta) h(2wt+theta) ]
// with h = cos or sin: evaluation, closed-form and numerical extrema, the load
// term D = (M+m)/(2(M-m)), amplitude-preserving normalization, the transmitted
// impulse, and the optimal amplitude-ratio / phase laws.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "numeric.hpp"

namespace biharmonic::waveform {

enum class Family { CosCos, SinSin };
enum class Branch { Interior, Endpoint };
enum class DcSign { Negative, Zero, Positive };
enum class Direction { AlongDc, AgainstDc, Unbiased };

struct BiharmonicSpec {
  Family family = Family::CosCos;
  double zeta = 2.0 / 3.0;  // fundamental's share of the amplitude, in [0, 1]
  double alpha = 1.0;       // prefactor of the second harmonic, > 0
  double theta = 0.0;       // relative phase of the second harmonic, in (-pi, pi]
  double amplitude = 1.0;   // overall scale, >= 0
  double omega = 1.0;       // angular frequency, > 0
};

inline void validate(const BiharmonicSpec& spec) {
  if (!(spec.zeta >= 0.0 && spec.zeta <= 1.0)) throw std::invalid_argument("zeta: must lie in [0, 1]");
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("alpha: must be > 0");
  if (!(spec.theta > -numeric::pi && spec.theta <= numeric::pi))
    throw std::invalid_argument("theta: must lie in (-pi, pi]");
  if (!(spec.amplitude >= 0.0)) throw std::invalid_argument("amplitude: must be >= 0");
  if (!(spec.omega > 0.0)) throw std::invalid_argument("omega: must be > 0");
}

// Spec assumed valid; total in t.
inline double evaluate(const BiharmonicSpec& spec, double t) {
  const double x = spec.omega * t;
  const double a1 = spec.zeta;
  const double a2 = spec.alpha * (1.0 - spec.zeta);
  if (spec.family == Family::CosCos)
    return spec.amplitude * (a1 * std::cos(x) + a2 * std::cos(2.0 * x + spec.theta));
  return spec.amplitude * (a1 * std::sin(x) + a2 * std::sin(2.0 * x + spec.theta));
}

struct WaveformExtrema {
  double maximum = 0.0;
  double minimum = 0.0;
  double load_term = 0.0;  // (M+m) / (2(M-m))
  Branch branch = Branch::Interior;
};

namespace detail {

inline double load_of(double maximum, double minimum) {
  return (maximum + minimum) / (2.0 * (maximum - minimum));
}

// The phases at which closed forms exist: {0, pi} for CosCos, {+-pi/2} for SinSin.
inline bool near(double a, double b) { return std::fabs(a - b) <= 1e-9; }

inline bool is_canonical(Family family, double theta) {
  if (family == Family::CosCos) return near(theta, 0.0) || near(theta, numeric::pi);
  return near(theta, 0.5 * numeric::pi) || near(theta, -0.5 * numeric::pi);
}

}  // namespace detail

// Unit-amplitude extrema at the canonical phase (theta = 0 for CosCos,
// theta = pi/2 for SinSin). The minimum of the CosCos form is a quadratic in
// cos(wt): its stationary point at cos(wt) = -zeta/(4 alpha (1-zeta)) lies
// inside [-1, 1] iff zeta (1+4 alpha) < 4 alpha, else the minimum sits at the
// endpoint cos(wt) = -1. The SinSin form is the mirror image: M_ss = -m_cc,
// m_ss = -M_cc.
inline WaveformExtrema closed_form_extrema(Family family, double zeta, double alpha) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta: must lie in [0, 1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha: must be > 0");
  const double beta = alpha * (1.0 - zeta);
  WaveformExtrema cc;
  cc.maximum = zeta + beta;
  if (zeta * (1.0 + 4.0 * alpha) < 4.0 * alpha) {
    cc.minimum = -zeta * zeta / (8.0 * beta) - beta;
    cc.branch = Branch::Interior;
  } else {
    cc.minimum = beta - zeta;
    cc.branch = Branch::Endpoint;
  }
  if (family == Family::SinSin) {
    const WaveformExtrema mirrored{-cc.minimum, -cc.maximum, detail::load_of(-cc.minimum, -cc.maximum), cc.branch};
    return mirrored;
  }
  cc.load_term = detail::load_of(cc.maximum, cc.minimum);
  return cc;
}

// Extrema at any of the four canonical phases. theta = pi (CosCos) and
// theta = +pi/2 (SinSin) are sign mirrors of the base form; theta = -pi/2
// (SinSin) shares the base extrema.
inline WaveformExtrema canonical_extrema(Family family, double zeta, double alpha, double theta) {
  if (!detail::is_canonical(family, theta))
    throw std::invalid_argument("theta: closed forms exist only at the canonical phases "
                                "(0 or pi for cos-cos, +-pi/2 for sin-sin)");
  const WaveformExtrema base = closed_form_extrema(Family::CosCos, zeta, alpha);
  const bool mirrored = (family == Family::CosCos) ? detail::near(theta, numeric::pi)
                                                   : detail::near(theta, 0.5 * numeric::pi);
  if (!mirrored) return base;
  return {-base.minimum, -base.maximum, -base.load_term, base.branch};
}

// Grid scan over one period plus golden-section refinement of the two global
// extrema. Works at any phase; the branch label is geometric: Endpoint when
// both extrema sit where the fundamental tone itself peaks.
inline WaveformExtrema numerical_extrema(const BiharmonicSpec& spec) {
  validate(spec);
  const double period = 2.0 * numeric::pi / spec.omega;
  constexpr int n = 16384;
  const double h = period / n;
  int k_max = 0, k_min = 0;
  double v_max = evaluate(spec, 0.0), v_min = v_max;
  for (int i = 1; i < n; ++i) {
    const double v = evaluate(spec, i * h);
    if (v > v_max) { v_max = v; k_max = i; }
    if (v < v_min) { v_min = v; k_min = i; }
  }
  const auto refine = [&](int k, double sign) {
    return numeric::golden_min([&](double t) { return sign * evaluate(spec, t); },
                               (k - 1) * h, (k + 1) * h, 1e-12);
  };
  const double t_max = refine(k_max, -1.0);
  const double t_min = refine(k_min, +1.0);
  WaveformExtrema ex;
  ex.maximum = evaluate(spec, t_max);
  ex.minimum = evaluate(spec, t_min);
  ex.load_term = detail::load_of(ex.maximum, ex.minimum);

  const auto on_fundamental_peak = [&](double t) {
    double x = std::fmod(spec.omega * t, 2.0 * numeric::pi);
    if (x < 0.0) x += 2.0 * numeric::pi;
    const double a = (spec.family == Family::CosCos) ? 0.0 : 0.5 * numeric::pi;
    for (const double peak : {a, a + numeric::pi, a + 2.0 * numeric::pi}) {
      if (std::fabs(x - peak) < 1e-6) return true;
    }
    return false;
  };
  ex.branch = (on_fundamental_peak(t_max) && on_fundamental_peak(t_min)) ? Branch::Endpoint
                                                                         : Branch::Interior;
  return ex;
}

// Load term at any canonical phase, computed from the closed form.
inline double load_term(Family family, double alpha, double theta, double zeta) {
  return canonical_extrema(family, zeta, alpha, theta).load_term;
}

struct NormalizedWaveform {
  BiharmonicSpec source;
  WaveformExtrema extrema;

  // f*(t) = f(t)/(M-m) - D; image is exactly [-1/2, 1/2]
  double operator()(double t) const {
    return evaluate(source, t) / (extrema.maximum - extrema.minimum) - extrema.load_term;
  }
};

inline NormalizedWaveform normalize(const BiharmonicSpec& spec) {
  validate(spec);
  if (spec.amplitude == 0.0)
    throw std::invalid_argument("amplitude: a constant waveform has no normalization");
  WaveformExtrema ex;
  if (detail::is_canonical(spec.family, spec.theta)) {
    ex = canonical_extrema(spec.family, spec.zeta, spec.alpha, spec.theta);
    ex.maximum *= spec.amplitude;
    ex.minimum *= spec.amplitude;
  } else {
    ex = numerical_extrema(spec);
  }
  return {spec, ex};
}

// |integral of f*| over the half period that starts at a crest of the
// fundamental tone ([0, T/2] for CosCos, [T/4, 3T/4] for SinSin). Both
// oscillatory terms integrate to zero there, so only the -D offset survives
// and the result equals pi |D| / omega.
inline double impulse(const NormalizedWaveform& norm) {
  const double period = 2.0 * numeric::pi / norm.source.omega;
  const double a = (norm.source.family == Family::CosCos) ? 0.0 : 0.25 * period;
  const double integral = numeric::simpson([&](double t) { return norm(t); }, a, a + 0.5 * period, 4096);
  return std::fabs(integral);
}

// The fundamental's share at which rectification is strongest: the odd
// harmonic's amplitude is twice the even harmonic's.
inline double optimal_zeta(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha: must be > 0");
  return 2.0 * alpha / (1.0 + 2.0 * alpha);
}

struct PhaseChoice {
  double theta = 0.0;
  Direction direction = Direction::Unbiased;
};

// The two phases that maximize rectification, labeled by the direction of the
// induced transport relative to the dc bias. theta = 0 (CosCos) and its time
// shift theta = -pi/2 (SinSin) drive along a positive bias; the mirrored
// phases drive against it.
inline std::array<PhaseChoice, 2> optimal_phases(Family family, DcSign dc_sign) {
  const auto label = [&](bool along) {
    if (dc_sign == DcSign::Zero) return Direction::Unbiased;
    const bool positive = dc_sign == DcSign::Positive;
    return (along == positive) ? Direction::AlongDc : Direction::AgainstDc;
  };
  if (family == Family::CosCos)
    return {PhaseChoice{0.0, label(true)}, PhaseChoice{numeric::pi, label(false)}};
  return {PhaseChoice{0.5 * numeric::pi, label(false)}, PhaseChoice{-0.5 * numeric::pi, label(true)}};
}

// Leading-order fast-drive rectification estimate,
// 3 i1^2 i2 |cos theta| / (32 ic^3 (w/wc)^4).
inline double efficiency_estimate_perturbative(double i1, double i2, double ic,
                                               double omega_ratio, double theta) {
  if (!(i1 >= 0.0)) throw std::invalid_argument("i1: must be >= 0");
  if (!(i2 >= 0.0)) throw std::invalid_argument("i2: must be >= 0");
  if (!(ic > 0.0)) throw std::invalid_argument("ic: must be > 0");
  if (!(omega_ratio > 0.0)) throw std::invalid_argument("omega_ratio: must be > 0");
  return 3.0 * i1 * i1 * i2 * std::fabs(std::cos(theta)) /
         (32.0 * ic * ic * ic * omega_ratio * omega_ratio * omega_ratio * omega_ratio);
}

// Universal scaling C alpha zeta^2 (1-zeta); its maximum over zeta is at 2/3
// for every alpha.
inline double efficiency_scaling_ru(double alpha, double zeta, double c) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha: must be > 0");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta: must lie in [0, 1]");
  if (!(c > 0.0)) throw std::invalid_argument("c: must be > 0");
  return c * alpha * zeta * zeta * (1.0 - zeta);
}

// Signed rectification efficiency of the waveform alone, 2 D(zeta).
inline double waveform_diode_efficiency(Family family, double alpha, double theta, double zeta) {
  return 2.0 * load_term(family, alpha, theta, zeta);
}

}  // namespace biharmonic::waveform
