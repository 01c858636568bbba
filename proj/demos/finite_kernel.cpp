// Finite-N kernel at centered arguments against the critical kernel, for
// growing N = M: the gap closes as N grows with M/N fixed.

#include <cmath>
#include <cstdio>

#include "critgap/critgap.hpp"

int main() {
  using namespace critgap;
  const double alpha = 1.0;  // M / N
  const ContourPair crit = route_contours(alpha, 1.0, Resolution{});
  const double pts[][2] = {{0.0, 0.0}, {1.0, 0.5}, {-1.0, 1.0}};
  std::printf("%5s %6s %6s %20s %20s %10s\n", "N", "x", "y", "K_N", "K_crit", "rel");
  for (int N : {10, 20, 40, 80}) {
    const ContourPair pair = finite_contours({N, N});
    const double aN = center_aN(N, N);
    for (const auto& p : pts) {
      const double kn = kernel_finite(p[0] + aN, p[1] + aN, {N, N}, pair).real();
      const double kc = kernel_crit(p[0], p[1], alpha, crit).real();
      std::printf("%5d %6.2f %6.2f %20.14f %20.14f %10.2e\n", N, p[0], p[1], kn, kc,
                  std::abs(kn - kc) / std::abs(kc));
    }
  }
  return 0;
}
