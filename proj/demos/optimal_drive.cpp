// Sweeps the tone split for a few amplitude ratios and prints where the
// rectification efficiency peaks, next to the closed-form prediction.

#include <cstdio>
#include <initializer_list>

#include <biharmonic/waveform.hpp>

using biharmonic::waveform::Family;

int main() {
  std::printf("%8s %12s %12s %12s\n", "alpha", "best split", "2a/(1+2a)", "peak eta");
  for (const double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    double best_eta = 0.0, best_zeta = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double zeta = 0.001 * k;
      const double eta = 2.0 * biharmonic::waveform::load_term(Family::CosCos, alpha, 0.0, zeta);
      if (eta > best_eta) {
        best_eta = eta;
        best_zeta = zeta;
      }
    }
    std::printf("%8.2f %12.4f %12.4f %12.6f\n", alpha, best_zeta,
                biharmonic::waveform::optimal_zeta(alpha), best_eta);
  }
  std::printf("\nthe peak efficiency is 1/3 for every amplitude ratio\n");
  return 0;
}
