#pragma once

// Oriented integration contours and their composite Gauss-Legendre grids.
//
// gamma   : hairpin around the non-positive integers. Bottom arm Im = -delta
//           traversed to the right, a semicircular nose, top arm Im = +delta
//           traversed to the left. Positive orientation around the poles of
//           Gamma, so (1/2 pi i) int Gamma(t) g(t) dt = sum_k (-1)^k/k! g(-k).
// gamma~  : vertical line Re s = b traversed upward.
//
// Quadrature weights include dz/du, so sum_j w_j f(z_j) ~ int f(z) dz.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "critgap/errors.hpp"
#include "critgap/gauss_legendre.hpp"
#include "critgap/special_functions.hpp"

namespace critgap {

enum class ContourLabel { gamma, gamma_tilde };

inline const char* to_string(ContourLabel l) {
  return l == ContourLabel::gamma ? "gamma" : "gamma_tilde";
}

struct ContourSpec {
  enum class Kind { hairpin, closed_hairpin, vertical_line, custom };
  Kind kind = Kind::custom;
  double delta = 0.0;     // hairpin half width
  double crossing = 0.0;  // hairpin nose abscissa or line abscissa b
  double T = 0.0;         // arm length, line half height, or closing abscissa
};

struct QuadratureGrid {
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  std::vector<ContourLabel> labels;
  int panel_count = 0;
  int order = 0;
  ContourSpec spec;

  std::size_t size() const { return nodes.size(); }

  /// Quadrature of f along the grid.
  template <class F>
  cplx integrate(F&& f) const {
    cplx sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * f(nodes[j]);
    return sum;
  }
};

/// Engineering defaults for the contour pair.
struct ContourDefaults {
  static constexpr double delta = 0.25;
  static constexpr double nose = 0.25;
  static constexpr double line = 0.5;
  static constexpr double T = 10.0;
  static constexpr double min_separation = 0.05;
};

namespace detail {

// Appends `panels` Gauss-Legendre panels on [u0, u1] (breakpoints given) for a
// parametrized path z(u) with derivative dz(u).
template <class Z, class DZ>
void append_panels(QuadratureGrid& g, const std::vector<double>& breaks,
                   int order, ContourLabel label, Z&& z, DZ&& dz) {
  const auto& rule = gauss_legendre(order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p];
    const double hi = breaks[p + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int k = 0; k < order; ++k) {
      const double u = mid + half * rule.x[k];
      g.nodes.push_back(z(u));
      g.weights.push_back(rule.w[k] * half * dz(u));
      g.labels.push_back(label);
    }
    ++g.panel_count;
  }
}

inline std::vector<double> uniform_breaks(double lo, double hi, int n) {
  std::vector<double> b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = lo + (hi - lo) * i / n;
  return b;
}

// Arm grading exponent: nodes cluster toward the nose, where the integrands
// vary fastest.
inline constexpr double kArmGrading = 1.5;

// Shared construction for open and closed hairpins. The arms run from the arc
// center c = nose - delta to Re = x_end.
inline QuadratureGrid hairpin_impl(double delta, double nose, double x_end,
                                   int panels, int order, bool closed,
                                   ContourLabel label) {
  QuadratureGrid g;
  g.order = order;
  const double c = nose - delta;
  const double L = c - x_end;
  if (!(L > 0.0)) throw GeometryError("hairpin: arms have non-positive length");
  const double p = kArmGrading;

  // Arm abscissae: breakpoints c - L (k/n)^p, linear inside each panel so
  // the map stays analytic on every panel.
  std::vector<double> arm_breaks(panels + 1);
  for (int k = 0; k <= panels; ++k) {
    arm_breaks[k] = c - L * std::pow(static_cast<double>(panels - k) / panels, p);
  }

  // Bottom arm: Im = -delta, moving right from x_end to c.
  append_panels(
      g, arm_breaks, order, label, [&](double x) { return cplx(x, -delta); },
      [&](double) { return cplx(1.0, 0.0); });

  // Nose: z = c + delta e^{i theta}, theta: -pi/2 -> pi/2. When the nose sits
  // closer to the pole at 0 than delta, panels are graded toward theta = 0.
  const int arc_panels = std::max(4, panels / 4);
  const int half_panels = (arc_panels + 1) / 2;
  double q = 1.0;
  if (nose < delta) {
    q = std::max(1.0, std::log(delta * kPi / (2.0 * 1.5 * nose)) /
                          std::log(static_cast<double>(std::max(2, half_panels))));
  }
  std::vector<double> arc_breaks;
  for (int j = half_panels; j >= 0; --j) {
    arc_breaks.push_back(-0.5 * kPi * std::pow(static_cast<double>(j) / half_panels, q));
  }
  for (int j = 1; j <= half_panels; ++j) {
    arc_breaks.push_back(0.5 * kPi * std::pow(static_cast<double>(j) / half_panels, q));
  }
  append_panels(
      g, arc_breaks, order, label,
      [&](double th) { return cplx(c, 0.0) + delta * std::exp(cplx(0.0, th)); },
      [&](double th) { return cplx(0.0, delta) * std::exp(cplx(0.0, th)); });

  // Top arm: Im = +delta, moving left from c to x_end.
  std::vector<double> top_breaks(arm_breaks.rbegin(), arm_breaks.rend());
  for (double& x : top_breaks) x = -x;
  append_panels(
      g, top_breaks, order, label, [&](double v) { return cplx(-v, delta); },
      [&](double) { return cplx(-1.0, 0.0); });

  if (closed) {
    // Closing segment at Re = x_end, traversed downward.
    const int close_panels = 2;
    append_panels(
        g, uniform_breaks(0.0, 1.0, close_panels), order, label,
        [&](double v) { return cplx(x_end, delta * (1.0 - 2.0 * v)); },
        [&](double) { return cplx(0.0, -2.0 * delta); });
  }
  return g;
}

inline void check_order(int order) {
  if (order < 4 || order > 64) throw GeometryError("quadrature order must be in [4, 64]");
}

}  // namespace detail

/// Open hairpin from -T - i delta around the nose back to -T + i delta.
///
/// `panels` is the number of panels per arm; the nose gets max(4, panels/4).
inline QuadratureGrid build_hairpin(double delta, double nose, double T,
                                    int panels, int order,
                                    ContourLabel label = ContourLabel::gamma) {
  if (!(delta > 0.0 && delta < 0.5)) throw GeometryError("hairpin: need 0 < delta < 1/2");
  if (!(nose > 0.0 && nose < 0.5)) throw GeometryError("hairpin: need 0 < nose < 1/2");
  if (!(T >= 5.0)) throw GeometryError("hairpin: need T >= 5");
  if (panels < 4) throw GeometryError("hairpin: need panels >= 4");
  detail::check_order(order);
  QuadratureGrid g = detail::hairpin_impl(delta, nose, -T, panels, order, false, label);
  g.spec = {ContourSpec::Kind::hairpin, delta, nose, T};
  return g;
}

/// Closed hairpin loop: arms end at Re = x_close < 0 and a vertical segment
/// closes the loop. Encloses exactly the non-positive integers > x_close.
///
/// Unlike the open hairpin the nose may lie anywhere right of 0, which the
/// deformed contours need.
inline QuadratureGrid build_closed_hairpin(double delta, double nose,
                                           double x_close, int panels, int order,
                                           ContourLabel label = ContourLabel::gamma) {
  if (!(delta > 0.0 && delta < 0.5)) throw GeometryError("closed hairpin: need 0 < delta < 1/2");
  if (!(nose > 0.0)) throw GeometryError("closed hairpin: need nose > 0");
  if (!(x_close < 0.0) || std::abs(x_close - std::nearbyint(x_close)) < 0.1) {
    throw GeometryError("closed hairpin: closing abscissa must be negative and off the poles");
  }
  if (panels < 1) throw GeometryError("closed hairpin: need panels >= 1");
  detail::check_order(order);
  QuadratureGrid g = detail::hairpin_impl(delta, nose, x_close, panels, order, true, label);
  g.spec = {ContourSpec::Kind::closed_hairpin, delta, nose, x_close};
  return g;
}

/// Vertical segment [b - iT, b + iT], upward.
///
/// Nodes follow tau = T sinh(beta u)/sinh(beta) on uniform u-panels; beta = 0
/// gives uniform panels. Grading concentrates nodes near the real axis where
/// the line passes closest to the hairpin.
inline QuadratureGrid build_vertical(double b, double T, int panels, int order,
                                     double beta = 2.0,
                                     ContourLabel label = ContourLabel::gamma_tilde) {
  if (!(T >= 5.0)) throw GeometryError("vertical line: need T >= 5");
  if (panels < 2) throw GeometryError("vertical line: need panels >= 2");
  if (!(b > 0.0)) throw GeometryError("vertical line: need b > 0");
  detail::check_order(order);
  QuadratureGrid g;
  g.order = order;
  if (beta <= 0.0) {
    detail::append_panels(
        g, detail::uniform_breaks(-1.0, 1.0, panels), order, label,
        [&](double u) { return cplx(b, T * u); },
        [&](double) { return cplx(0.0, T); });
  } else {
    const double sh = std::sinh(beta);
    detail::append_panels(
        g, detail::uniform_breaks(-1.0, 1.0, panels), order, label,
        [&](double u) { return cplx(b, T * std::sinh(beta * u) / sh); },
        [&](double u) { return cplx(0.0, T * beta * std::cosh(beta * u) / sh); });
  }
  g.spec = {ContourSpec::Kind::vertical_line, 0.0, b, T};
  return g;
}

/// Throws GeometryError unless the hairpin lies strictly left of the line.
inline void check_admissible_pair(const QuadratureGrid& hairpin, const QuadratureGrid& line) {
  if (!(line.spec.crossing > hairpin.spec.crossing + ContourDefaults::min_separation)) {
    throw GeometryError("contour pair: line must lie right of the hairpin nose by >= 0.05");
  }
}

/// Smallest distance from any node to a pole of Gamma.
inline double min_pole_distance(const QuadratureGrid& g) {
  double d = 1e300;
  for (const cplx& z : g.nodes) d = std::min(d, detail::distance_to_pole(z));
  return d;
}

struct ContourPair {
  QuadratureGrid gamma;
  QuadratureGrid gamma_tilde;
};

/// Contours pushed through the saddle points of the large-a regime: the
/// hairpin nose at 1/(alpha a) and the line at a/alpha.
///
/// The hairpin is closed far left at -T - 1/2 so the nose is not restricted
/// to (0, 1/2). Node counts scale with the supplied panel count.
inline ContourPair deformed_contours(double alpha, double a, double T,
                                     int panels, int order) {
  if (!(a > 0.0 && alpha > 0.0)) throw DomainError("deformed contours: need a, alpha > 0");
  const double nose = 1.0 / (alpha * a);
  const double line = a / alpha;
  if (!(nose < line) || a * a <= 1.0) {
    throw GeometryError("deformed contours: need a^2 > 1 so the nose lies left of the line");
  }
  if (!(line > nose + ContourDefaults::min_separation)) {
    throw GeometryError("deformed contours: nose and line too close");
  }
  const double delta = ContourDefaults::delta;
  ContourPair pair;
  pair.gamma = build_closed_hairpin(delta, nose, -std::floor(T) - 0.5, panels, order);
  pair.gamma.spec.crossing = nose;
  pair.gamma_tilde = build_vertical(line, T, panels, order);
  return pair;
}

/// (1 / 2 pi i) sum_j w_j Gamma(z_j) exp(-alpha z_j^2 / 2 + a z_j).
///
/// For a hairpin this reproduces gamma_residue_sum(alpha, a).
inline cplx gamma_contour_integral(const QuadratureGrid& g, double alpha, double a) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const cplx z = g.nodes[j];
    sum += g.weights[j] * gamma(z) * std::exp(-0.5 * alpha * z * z + a * z);
  }
  return sum / kTwoPiI;
}

/// Concatenate two grids (nodes of `a` first).
inline QuadratureGrid concat(const QuadratureGrid& a, const QuadratureGrid& b) {
  QuadratureGrid g = a;
  g.nodes.insert(g.nodes.end(), b.nodes.begin(), b.nodes.end());
  g.weights.insert(g.weights.end(), b.weights.begin(), b.weights.end());
  g.labels.insert(g.labels.end(), b.labels.begin(), b.labels.end());
  g.panel_count += b.panel_count;
  g.spec = ContourSpec{};
  return g;
}

}  // namespace critgap
