#pragma once

// Complex gamma function family on the whole plane.
//
// Gamma is evaluated with a g = 7, 9-term Lanczos sum for Re z >= 1/2 and the
// reflection formula elsewhere. All functions are pure and reentrant.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "critgap/errors.hpp"

namespace critgap {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

/// Distance below which an argument is treated as sitting on a pole of Gamma.
inline constexpr double kPoleTolerance = 1e-12;

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A(w) for Gamma(w + 1), valid for Re w > -1/2.
inline cplx lanczos_sum(cplx w) {
  cplx sum = kLanczosCoef[0];
  for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) {
    sum += kLanczosCoef[k] / (w + static_cast<double>(k));
  }
  return sum;
}

// sin(pi x) and cos(pi x) with exact argument reduction, so integers give
// exact zeros.
inline double sinpi(double x) {
  const double n = std::nearbyint(x);
  const double f = x - n;
  const double s = std::sin(kPi * f);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

inline double cospi(double x) {
  const double n = std::nearbyint(x);
  const double f = x - n;
  const double c = std::cos(kPi * f);
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

inline cplx sinpi(cplx z) {
  const double y = kPi * z.imag();
  return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

// Distance from z to the nearest non-positive integer (infinite if the
// nearest integer is positive).
inline double distance_to_pole(cplx z) {
  const double n = std::nearbyint(z.real());
  if (n > 0.0) return std::abs(z);
  return std::abs(z - n);
}

}  // namespace detail

/// Gamma(z) for z away from {0, -1, -2, ...}.
///
/// Relative error is around 1e-14 for |z| <= 50. Throws PoleError when z is
/// within kPoleTolerance of a pole.
inline cplx gamma(cplx z) {
  if (detail::distance_to_pole(z) < kPoleTolerance) {
    throw PoleError("gamma: argument on a pole (" + std::to_string(z.real()) +
                    ", " + std::to_string(z.imag()) + ")");
  }
  if (z.real() < 0.5) {
    return kPi / (detail::sinpi(z) * gamma(1.0 - z));
  }
  const cplx w = z - 1.0;
  const cplx t = w + detail::kLanczosG + 0.5;
  const double log_sqrt_2pi = 0.5 * std::log(2.0 * kPi);
  return std::exp(log_sqrt_2pi + (w + 0.5) * std::log(t) - t) *
         detail::lanczos_sum(w);
}

/// Principal branch of log Gamma(z) for Re z > 0.
///
/// Callers needing Re z <= 0 shift with the recurrence first.
inline cplx log_gamma(cplx z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("log_gamma: requires Re z > 0");
  }
  if (z.real() < 0.5) {
    // log Gamma(z) = log Gamma(z + 1) - log z; both logs are principal here.
    return log_gamma(z + 1.0) - std::log(z);
  }
  const cplx w = z - 1.0;
  const cplx t = w + detail::kLanczosG + 0.5;
  const double log_sqrt_2pi = 0.5 * std::log(2.0 * kPi);
  return log_sqrt_2pi + (w + 0.5) * std::log(t) - t +
         std::log(detail::lanczos_sum(w));
}

/// 1 / Gamma(z); entire, exactly zero at the non-positive integers.
inline cplx recip_gamma(cplx z) {
  if (z.real() < 0.5) {
    return detail::sinpi(z) * gamma(1.0 - z) / kPi;
  }
  return 1.0 / gamma(z);
}

/// Some logarithm of Gamma(z) (branch unspecified) for any z off the poles.
///
/// Used only where the result is exponentiated again, e.g. to combine large
/// gamma ratios without overflow.
inline cplx log_gamma_any_branch(cplx z) {
  if (z.real() > 0.0) return log_gamma(z);
  if (detail::distance_to_pole(z) < kPoleTolerance) {
    throw PoleError("log_gamma_any_branch: argument on a pole");
  }
  // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
  return std::log(kPi) - std::log(detail::sinpi(z)) - log_gamma(1.0 - z);
}

/// Sum over the poles of Gamma of Res * exp(-alpha z^2 / 2 + a z):
///   sum_k (-1)^k / k! * exp(-alpha k^2 / 2 - a k).
///
/// This is (1 / 2 pi i) times the integral of Gamma(z) exp(-alpha z^2/2 + a z)
/// over any positively oriented hairpin enclosing the non-positive integers.
inline double gamma_residue_sum(double alpha, double a) {
  double sum = 0.0;
  double log_fact = 0.0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) log_fact += std::log(static_cast<double>(k));
    const double log_term =
        -0.5 * alpha * k * k - a * k - log_fact;
    const double term = std::exp(log_term);
    sum += (k % 2 == 0) ? term : -term;
    if (k > 2 && term < 1e-20 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace critgap
