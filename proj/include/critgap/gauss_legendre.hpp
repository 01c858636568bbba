#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace critgap {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> x;
  std::vector<double> w;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[m - 1] = 0.0;
  return rule;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule; thread-safe.
inline const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: bad order");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  }
  return it->second;
}

}  // namespace critgap
