#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <initializer_list>
#include <vector>

#include <biharmonic/numeric.hpp>
#include <biharmonic/waveform.hpp>

namespace wf = biharmonic::waveform;
using biharmonic::numeric::pi;
using Catch::Matchers::WithinAbs;

namespace {

wf::BiharmonicSpec spec_of(wf::Family family, double zeta, double alpha, double theta,
                           double amplitude = 1.0, double omega = 1.0) {
  wf::BiharmonicSpec s;
  s.family = family;
  s.zeta = zeta;
  s.alpha = alpha;
  s.theta = theta;
  s.amplitude = amplitude;
  s.omega = omega;
  return s;
}

// Brute extrema by dense sampling alone; no refinement, no shared code path.
struct ScannedRange {
  double maximum;
  double minimum;
};

ScannedRange scan_range(const wf::BiharmonicSpec& s, int n) {
  const double period = 2.0 * pi / s.omega;
  ScannedRange r{wf::evaluate(s, 0.0), wf::evaluate(s, 0.0)};
  for (int i = 1; i < n; ++i) {
    const double v = wf::evaluate(s, i * period / n);
    r.maximum = std::max(r.maximum, v);
    r.minimum = std::min(r.minimum, v);
  }
  return r;
}

}  // namespace

TEST_CASE("evaluation matches the defining two-tone formula") {
  const double zeta = 0.37, alpha = 1.7, theta = 0.9, amp = 2.3, omega = 1.4;
  const double beta = alpha * (1.0 - zeta);
  for (int k = 0; k <= 40; ++k) {
    const double t = -3.0 + 0.2 * k;
    const auto cc = spec_of(wf::Family::CosCos, zeta, alpha, theta, amp, omega);
    const auto ss = spec_of(wf::Family::SinSin, zeta, alpha, theta, amp, omega);
    REQUIRE_THAT(wf::evaluate(cc, t),
                 WithinAbs(amp * (zeta * std::cos(omega * t) + beta * std::cos(2.0 * omega * t + theta)), 1e-14));
    REQUIRE_THAT(wf::evaluate(ss, t),
                 WithinAbs(amp * (zeta * std::sin(omega * t) + beta * std::sin(2.0 * omega * t + theta)), 1e-14));
  }
}

TEST_CASE("time shifts map the canonical drives onto each other") {
  struct Params { double zeta, alpha; };
  for (const Params p : {Params{2.0 / 3.0, 1.0}, Params{0.37, 1.7}}) {
    const double omega = 1.0;
    const double period = 2.0 * pi / omega;
    const auto cc0 = spec_of(wf::Family::CosCos, p.zeta, p.alpha, 0.0);
    const auto ccpi = spec_of(wf::Family::CosCos, p.zeta, p.alpha, pi);
    const auto ss_plus = spec_of(wf::Family::SinSin, p.zeta, p.alpha, 0.5 * pi);
    const auto ss_minus = spec_of(wf::Family::SinSin, p.zeta, p.alpha, -0.5 * pi);
    for (int k = 0; k <= 100; ++k) {
      const double t = k * period / 100.0;
      // half-period shift flips the sign and swaps the two cosine phases
      REQUIRE_THAT(wf::evaluate(cc0, t + 0.5 * period), WithinAbs(-wf::evaluate(ccpi, t), 1e-12));
      // quarter-period delay carries each cosine drive onto a sine drive
      REQUIRE_THAT(wf::evaluate(cc0, t - 0.25 * period), WithinAbs(wf::evaluate(ss_minus, t), 1e-12));
      REQUIRE_THAT(wf::evaluate(ccpi, t - 0.25 * period), WithinAbs(wf::evaluate(ss_plus, t), 1e-12));
    }
  }
}

TEST_CASE("closed-form extrema agree with an independent dense scan") {
  struct Case { wf::Family family; double theta, zeta, alpha; };
  for (const Case c : {Case{wf::Family::CosCos, 0.0, 0.3, 1.0},
                       Case{wf::Family::CosCos, 0.0, 0.85, 0.7},
                       Case{wf::Family::SinSin, 0.5 * pi, 0.55, 1.3}}) {
    const auto ex = wf::canonical_extrema(c.family, c.zeta, c.alpha, c.theta);
    const auto scanned = scan_range(spec_of(c.family, c.zeta, c.alpha, c.theta), 200000);
    REQUIRE_THAT(ex.maximum, WithinAbs(scanned.maximum, 1e-8));
    REQUIRE_THAT(ex.minimum, WithinAbs(scanned.minimum, 1e-8));
  }
}

TEST_CASE("closed-form extrema agree with the refined numerical route") {
  for (const double alpha : {0.5, 1.0, 2.0}) {
    for (const wf::Family family : {wf::Family::CosCos, wf::Family::SinSin}) {
      const double base = (family == wf::Family::CosCos) ? 0.0 : 0.5 * pi;
      for (const double theta : {base, (family == wf::Family::CosCos) ? pi : -0.5 * pi}) {
        for (int k = 0; k < 60; ++k) {
          const double zeta = 0.01 + k * (0.98 / 59.0);
          const auto closed = wf::canonical_extrema(family, zeta, alpha, theta);
          const auto numeric = wf::numerical_extrema(spec_of(family, zeta, alpha, theta));
          CAPTURE(alpha, zeta, theta, family == wf::Family::CosCos);
          REQUIRE_THAT(numeric.maximum, WithinAbs(closed.maximum, 1e-9));
          REQUIRE_THAT(numeric.minimum, WithinAbs(closed.minimum, 1e-9));
          REQUIRE_THAT(numeric.load_term, WithinAbs(closed.load_term, 1e-9));
          REQUIRE(numeric.branch == closed.branch);
        }
      }
    }
  }
}

TEST_CASE("load term reference values") {
  SECTION("cosine drive at equal tone currents") {
    REQUIRE_THAT(wf::load_term(wf::Family::CosCos, 1.0, 0.0, 2.0 / 3.0), WithinAbs(1.0 / 6.0, 1e-15));
  }
  SECTION("sine drive pins -1/8 where the minimum changes branch") {
    for (const double alpha : {0.5, 1.0, 2.0}) {
      const double zeta_star = 4.0 * alpha / (1.0 + 4.0 * alpha);
      REQUIRE_THAT(wf::load_term(wf::Family::SinSin, alpha, 0.5 * pi, zeta_star),
                   WithinAbs(-0.125, 1e-12));
    }
  }
  SECTION("the four canonical phases are sign mirrors") {
    const double zeta = 0.55, alpha = 1.3;
    const double d = wf::load_term(wf::Family::CosCos, alpha, 0.0, zeta);
    REQUIRE_THAT(wf::load_term(wf::Family::CosCos, alpha, pi, zeta), WithinAbs(-d, 1e-15));
    REQUIRE_THAT(wf::load_term(wf::Family::SinSin, alpha, 0.5 * pi, zeta), WithinAbs(-d, 1e-15));
    REQUIRE_THAT(wf::load_term(wf::Family::SinSin, alpha, -0.5 * pi, zeta), WithinAbs(d, 1e-15));
  }
}

TEST_CASE("minimum branch splits at the stationary-point condition") {
  REQUIRE(wf::closed_form_extrema(wf::Family::CosCos, 0.5, 1.0).branch == wf::Branch::Interior);
  REQUIRE(wf::closed_form_extrema(wf::Family::CosCos, 0.9, 1.0).branch == wf::Branch::Endpoint);
  // the boundary itself is an endpoint minimum; both formulas agree there
  REQUIRE(wf::closed_form_extrema(wf::Family::CosCos, 0.8, 1.0).branch == wf::Branch::Endpoint);

  const auto interior = wf::numerical_extrema(spec_of(wf::Family::CosCos, 0.2, 1.0, 0.0));
  REQUIRE(interior.branch == wf::Branch::Interior);
  const auto endpoint = wf::numerical_extrema(spec_of(wf::Family::CosCos, 0.9, 1.0, 0.0));
  REQUIRE(endpoint.branch == wf::Branch::Endpoint);
  const auto mirrored = wf::numerical_extrema(spec_of(wf::Family::SinSin, 0.9, 1.0, 0.5 * pi));
  REQUIRE(mirrored.branch == wf::Branch::Endpoint);
}

TEST_CASE("normalization maps the range onto [-1/2, 1/2]") {
  const auto check_image = [](const wf::BiharmonicSpec& s) {
    const auto norm = wf::normalize(s);
    const double period = 2.0 * pi / s.omega;
    const int n = 8192;
    int k_max = 0, k_min = 0;
    double v_max = norm(0.0), v_min = v_max;
    for (int i = 1; i < n; ++i) {
      const double v = norm(i * period / n);
      if (v > v_max) { v_max = v; k_max = i; }
      if (v < v_min) { v_min = v; k_min = i; }
    }
    const double h = period / n;
    const double t_max = biharmonic::numeric::golden_min(
        [&](double t) { return -norm(t); }, (k_max - 1) * h, (k_max + 1) * h, 1e-13);
    const double t_min = biharmonic::numeric::golden_min(
        [&](double t) { return norm(t); }, (k_min - 1) * h, (k_min + 1) * h, 1e-13);
    REQUIRE_THAT(norm(t_max), WithinAbs(0.5, 1e-9));
    REQUIRE_THAT(norm(t_min), WithinAbs(-0.5, 1e-9));
  };
  check_image(spec_of(wf::Family::CosCos, 2.0 / 3.0, 1.0, 0.0, 3.7, 1.3));
  check_image(spec_of(wf::Family::SinSin, 0.4, 0.8, 0.5 * pi, 0.9, 2.0));
  // a phase with no closed form exercises the scan-based normalization
  check_image(spec_of(wf::Family::CosCos, 0.6, 1.1, 1.0, 1.5, 1.0));
}

TEST_CASE("transmitted impulse equals pi |D| / omega") {
  SECTION("canonical phases, both families") {
    const auto cc = wf::normalize(spec_of(wf::Family::CosCos, 2.0 / 3.0, 1.0, 0.0));
    REQUIRE_THAT(wf::impulse(cc), WithinAbs(pi / 6.0, 1e-10));
    const auto ss = wf::normalize(spec_of(wf::Family::SinSin, 2.0 / 3.0, 1.0, 0.5 * pi));
    REQUIRE_THAT(wf::impulse(ss), WithinAbs(pi / 6.0, 1e-10));
  }
  SECTION("frequency rescales the window") {
    const auto cc = wf::normalize(spec_of(wf::Family::CosCos, 2.0 / 3.0, 1.0, 0.0, 1.0, 2.0));
    REQUIRE_THAT(wf::impulse(cc), WithinAbs(pi / 12.0, 1e-10));
  }
  SECTION("a non-canonical phase still only transmits its offset") {
    const auto spec = spec_of(wf::Family::CosCos, 0.6, 1.1, 1.0, 1.5, 1.0);
    const auto norm = wf::normalize(spec);
    REQUIRE_THAT(wf::impulse(norm), WithinAbs(pi * std::fabs(norm.extrema.load_term), 1e-8));
  }
  SECTION("amplitude cancels out") {
    const auto thin = wf::normalize(spec_of(wf::Family::CosCos, 0.5, 1.0, 0.0, 0.01));
    const auto thick = wf::normalize(spec_of(wf::Family::CosCos, 0.5, 1.0, 0.0, 100.0));
    REQUIRE_THAT(wf::impulse(thin), WithinAbs(wf::impulse(thick), 1e-10));
  }
}

TEST_CASE("optimal tone ratio") {
  REQUIRE_THAT(wf::optimal_zeta(1.0), WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE_THAT(wf::optimal_zeta(0.5), WithinAbs(0.5, 1e-15));
  SECTION("rectification peaks there at 1/3 regardless of alpha") {
    for (const double alpha : {0.5, 1.0, 2.0}) {
      const double zopt = wf::optimal_zeta(alpha);
      const double peak = wf::waveform_diode_efficiency(wf::Family::CosCos, alpha, 0.0, zopt);
      REQUIRE_THAT(peak, WithinAbs(1.0 / 3.0, 1e-12));
      for (int k = 1; k < 50; ++k) {
        const double zeta = k / 50.0;
        REQUIRE(wf::waveform_diode_efficiency(wf::Family::CosCos, alpha, 0.0, zeta) <= peak + 1e-12);
      }
    }
  }
}

TEST_CASE("optimal phases carry direction labels") {
  const auto cc = wf::optimal_phases(wf::Family::CosCos, wf::DcSign::Positive);
  REQUIRE_THAT(cc[0].theta, WithinAbs(0.0, 1e-15));
  REQUIRE(cc[0].direction == wf::Direction::AlongDc);
  REQUIRE_THAT(cc[1].theta, WithinAbs(pi, 1e-15));
  REQUIRE(cc[1].direction == wf::Direction::AgainstDc);

  const auto cc_neg = wf::optimal_phases(wf::Family::CosCos, wf::DcSign::Negative);
  REQUIRE(cc_neg[0].direction == wf::Direction::AgainstDc);
  REQUIRE(cc_neg[1].direction == wf::Direction::AlongDc);

  const auto ss = wf::optimal_phases(wf::Family::SinSin, wf::DcSign::Positive);
  REQUIRE_THAT(ss[0].theta, WithinAbs(0.5 * pi, 1e-15));
  REQUIRE(ss[0].direction == wf::Direction::AgainstDc);
  REQUIRE_THAT(ss[1].theta, WithinAbs(-0.5 * pi, 1e-15));
  REQUIRE(ss[1].direction == wf::Direction::AlongDc);

  for (const auto& choice : wf::optimal_phases(wf::Family::SinSin, wf::DcSign::Zero)) {
    REQUIRE(choice.direction == wf::Direction::Unbiased);
  }
}

TEST_CASE("analytic efficiency estimates") {
  SECTION("fast-drive perturbative value") {
    REQUIRE_THAT(wf::efficiency_estimate_perturbative(0.4, 0.3, 1.0, 2.0, 0.0),
                 WithinAbs(3.0 * 0.16 * 0.3 / (32.0 * 16.0), 1e-15));
    REQUIRE_THAT(wf::efficiency_estimate_perturbative(0.4, 0.3, 1.0, 2.0, 0.5 * pi),
                 WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(wf::efficiency_estimate_perturbative(0.4, 0.3, 1.0, 2.0, pi),
                 WithinAbs(wf::efficiency_estimate_perturbative(0.4, 0.3, 1.0, 2.0, 0.0), 1e-15));
  }
  SECTION("universal scaling peaks at zeta = 2/3 for every alpha") {
    for (const double alpha : {0.25, 1.0, 3.0}) {
      const double peak = wf::efficiency_scaling_ru(alpha, 2.0 / 3.0, 1.7);
      REQUIRE_THAT(peak, WithinAbs(1.7 * alpha * 4.0 / 27.0, 1e-14));
      for (int k = 1; k < 40; ++k) {
        REQUIRE(wf::efficiency_scaling_ru(alpha, k / 40.0, 1.7) <= peak + 1e-14);
      }
    }
  }
  SECTION("waveform efficiency is twice the load term") {
    const double zeta = 0.44, alpha = 0.9;
    REQUIRE_THAT(wf::waveform_diode_efficiency(wf::Family::SinSin, alpha, -0.5 * pi, zeta),
                 WithinAbs(2.0 * wf::load_term(wf::Family::SinSin, alpha, -0.5 * pi, zeta), 1e-15));
  }
}

TEST_CASE("invalid drive parameters are rejected") {
  auto good = spec_of(wf::Family::CosCos, 0.5, 1.0, 0.0);
  REQUIRE_NOTHROW(wf::validate(good));

  auto bad = good;
  bad.zeta = -0.1;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.zeta = 1.5;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.alpha = 0.0;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.theta = -pi;  // half-open interval: -pi is excluded, pi is kept
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.theta = 4.0;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.amplitude = -1.0;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);
  bad = good;
  bad.omega = 0.0;
  REQUIRE_THROWS_AS(wf::validate(bad), std::invalid_argument);

  REQUIRE_THROWS_AS(wf::canonical_extrema(wf::Family::CosCos, 0.5, 1.0, 0.3), std::invalid_argument);
  REQUIRE_THROWS_AS(wf::canonical_extrema(wf::Family::SinSin, 0.5, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(wf::closed_form_extrema(wf::Family::CosCos, 1.2, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(wf::closed_form_extrema(wf::Family::CosCos, 0.5, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(wf::optimal_zeta(0.0), std::invalid_argument);

  auto flat = good;
  flat.amplitude = 0.0;
  REQUIRE_NOTHROW(wf::validate(flat));
  REQUIRE_THROWS_AS(wf::normalize(flat), std::invalid_argument);
}
