// Prints P(a) for a few alpha values by the contour-H route, with the
// right-tail ratio u(a) / u_asym(a).
//
//   gap_curve [a_max]

#include <cstdio>
#include <cstdlib>

#include "critgap/critgap.hpp"

int main(int argc, char** argv) {
  using namespace critgap;
  const double a_max = argc > 1 ? std::atof(argv[1]) : 6.0;
  std::printf("%6s %6s %22s %14s %12s\n", "alpha", "a", "P(a)", "1-P(a)", "u/u_asym");
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double a = 0.5; a <= a_max + 1e-12; a += 0.5) {
      const GapResult g = gap_probability_at(a, alpha, Route::contour_H, Resolution{});
      const double ratio = u_of_x(a, alpha) / u_asymptotic(a, alpha);
      std::printf("%6.2f %6.2f %22.16f %14.6e %12.6f\n", alpha, a, g.P, g.one_minus_P, ratio);
    }
  }
  return 0;
}
