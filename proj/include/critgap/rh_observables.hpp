#pragma once

// Residue matrix Y1(a) of the 2x2 jump problem attached to Q_a, the function
// u(x) = -(Y1)_12 (Y1)_21, the reconstruction of log P(a) from u, and the
// large-a asymptotic formulas.

#include <cmath>
#include <complex>
#include <vector>

#include "critgap/contours.hpp"
#include "critgap/fredholm.hpp"
#include "critgap/gauss_legendre.hpp"
#include "critgap/kernels.hpp"
#include "critgap/special_functions.hpp"

namespace critgap {

struct Y1Matrix {
  cplx e11, e12, e21, e22;
  double a = 0.0;
  double alpha = 0.0;

  /// (Y1)_12 (Y1)_21, which equals d^2/da^2 log P(a).
  cplx offdiag_product() const { return e12 * e21; }
};

/// Y1(a) = int F(s) h^T(s) ds with F_j = (I - Q_a)^{-1} f_j.
///
/// With nodes ordered (gamma~, gamma) and Q = [[0, A], [B, 0]], the solve
/// reduces to (I - A B) F~ = rhs on gamma~ followed by F = f + B F~ on gamma.
inline Y1Matrix y1_matrix(double a, double alpha, const ContourPair& pair) {
  if (!(a > 0.0)) throw DomainError("y1_matrix: need a > 0");
  const ModelParams p{alpha, a};
  const ContourBlocks blk = contour_blocks(p, pair);
  const QuadratureGrid& gs = pair.gamma_tilde;
  const QuadratureGrid& gt = pair.gamma;
  const auto n = static_cast<Eigen::Index>(gs.size());
  const auto m = static_cast<Eigen::Index>(gt.size());

  CVector f1(n), h2(n), f2(m), h1(m), ws(n), wt(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const FHVectors v = vectors_fh(gs.nodes[i], ContourLabel::gamma_tilde, p);
    f1(i) = v.f[0];
    h2(i) = v.h[1];
    ws(i) = gs.weights[i];
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    const FHVectors v = vectors_fh(gt.nodes[j], ContourLabel::gamma, p);
    f2(j) = v.f[1];
    h1(j) = v.h[0];
    wt(j) = gt.weights[j];
  }

  const CMatrix H = blk.A * blk.B;
  CMatrix IH = CMatrix::Identity(n, n) - H;
  Eigen::PartialPivLU<CMatrix> lu(IH);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(lu.matrixLU()(i, i)) > 1e-300)) throw SingularError("y1_matrix: I - Q singular");
  }
  // F_1: f_1 lives on gamma~.
  const CVector F1s = lu.solve(f1);
  const CVector F1t = blk.B * F1s;
  // F_2: f_2 lives on gamma.
  const CVector F2s = lu.solve(CVector(blk.A * f2));
  const CVector F2t = f2 + blk.B * F2s;

  // h_1 is supported on gamma, h_2 on gamma~.
  Y1Matrix y;
  y.a = a;
  y.alpha = alpha;
  y.e11 = (wt.array() * F1t.array() * h1.array()).sum();
  y.e12 = (ws.array() * F1s.array() * h2.array()).sum();
  y.e21 = (wt.array() * F2t.array() * h1.array()).sum();
  y.e22 = (ws.array() * F2s.array() * h2.array()).sum();
  return y;
}

inline Y1Matrix y1_matrix(double a, double alpha, const Resolution& res = {}) {
  return y1_matrix(a, alpha, route_contours(alpha, a, res));
}

/// u(x) = -(Y1(x))_12 (Y1(x))_21 as a real number.
///
/// On the standard contours u is a cancellation of O(1) quadrature terms and
/// bottoms out near 1e-17 in absolute terms. From x = 3 on, the contours
/// through the saddle points are used instead; they keep full relative
/// accuracy far into the tail (u ~ 1e-230 at x = 30, alpha = 1).
inline double u_of_x(double x, double alpha, const Resolution& res = {}) {
  if (!(x > 0.0)) throw DomainError("u_of_x: need x > 0");
  Resolution r = res;
  if (r.contours == ContourChoice::standard && x >= 3.0) r.contours = ContourChoice::deformed;
  return -y1_matrix(x, alpha, r).offdiag_product().real();
}

/// log of the right-tail asymptotic form of u:
///   -(x^2 + log^2(x/alpha)) / (2 alpha) - log Gamma(x/alpha) - log sqrt(2 pi alpha).
inline double log_u_asymptotic(double x, double alpha) {
  if (!(x > 0.0)) throw DomainError("u_asymptotic: need x > 0");
  check_alpha(alpha);
  const double l = std::log(x / alpha);
  return -(x * x + l * l) / (2.0 * alpha) - std::lgamma(x / alpha) -
         0.5 * std::log(2.0 * kPi * alpha);
}

inline double u_asymptotic(double x, double alpha) { return std::exp(log_u_asymptotic(x, alpha)); }

struct LogGapOptions {
  double span = 30.0;  // integrate over [a, a + span]
  int panels = 5;      // breakpoints a + span (k/panels)^2
  int order = 8;
  Resolution res{};
};

/// Nodes and weights of the x-grid used by log_gap_from_u.
inline void log_gap_grid(double a, const LogGapOptions& opt, std::vector<double>& xs,
                         std::vector<double>& ws) {
  xs.clear();
  ws.clear();
  const auto& rule = gauss_legendre(opt.order);
  for (int p = 0; p < opt.panels; ++p) {
    const double lo = a + opt.span * std::pow(static_cast<double>(p) / opt.panels, 2);
    const double hi = a + opt.span * std::pow(static_cast<double>(p + 1) / opt.panels, 2);
    for (int k = 0; k < opt.order; ++k) {
      xs.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.x[k]);
      ws.push_back(0.5 * (hi - lo) * rule.w[k]);
    }
  }
}

/// log P(a) = -int_a^inf (x - a) u(x) dx, truncated to [a, a + span].
inline double log_gap_from_u(double a, double alpha, const LogGapOptions& opt = {}) {
  if (!(a > 0.0)) throw DomainError("log_gap_from_u: need a > 0");
  std::vector<double> xs, ws;
  log_gap_grid(a, opt, xs, ws);
  // Nodes where u has dropped by e^-80 against u(a) cannot change the sum;
  // skipping them also avoids slow subnormal arithmetic deep in the tail.
  const double cutoff = log_u_asymptotic(a, alpha) - 80.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (log_u_asymptotic(xs[k], alpha) < cutoff) break;
    sum += ws[k] * (xs[k] - a) * u_of_x(xs[k], alpha, opt.res);
  }
  return -sum;
}

// ---------------------------------------------------------------------------
// Large-a asymptotics of the normalized residue matrix U1(a)

/// (iα/a) e^{-a^2/(4α)} S(a) with S the gamma residue sum.
inline cplx asym_u1_21_residue(double a, double alpha) {
  check_alpha(alpha);
  return cplx(0.0, alpha / a) * std::exp(-a * a / (4.0 * alpha)) * gamma_residue_sum(alpha, a);
}

/// (α/(2π a)) e^{-a^2/(4α)} int_gamma Gamma(z) e^{-α z^2/2 + a z} dz on the
/// given hairpin grid.
inline cplx asym_u1_21(double a, double alpha, const QuadratureGrid& gam) {
  check_alpha(alpha);
  if (!(a > 0.0) || a * a <= 1.0) throw GeometryError("asym_u1_21: need a > 1");
  const cplx integral = gamma_contour_integral(gam, alpha, a) * kTwoPiI;
  return alpha / (2.0 * kPi * a) * std::exp(-a * a / (4.0 * alpha)) * integral;
}

/// asym_u1_21 on the hairpin through 1/(α a).
inline cplx asym_u1_21(double a, double alpha) {
  if (!(a > 0.0) || a * a <= 1.0) throw GeometryError("asym_u1_21: need a > 1");
  const ContourPair pair = deformed_contours(alpha, a, ContourDefaults::T, 16, 16);
  return asym_u1_21(a, alpha, pair.gamma);
}

/// Value carried as mantissa * exp(log_scale).
struct ScaledComplex {
  cplx mantissa;
  double log_scale = 0.0;
  bool underflow_warning = false;

  cplx value() const { return mantissa * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

struct U12Options {
  double x_max = 8.0;
  int panels = 32;
  int order = 16;
};

/// (1/2πi) int_R exp(-log Gamma((a/α)(1 - i x)) - (a^2/(2α))(x^2 + 1/2)) dx,
/// in a log channel scaled by the integrand at x = 0.
inline ScaledComplex asym_u1_12_scaled(double a, double alpha, const U12Options& opt = {}) {
  if (!(a > 0.0)) throw DomainError("asym_u1_12: need a > 0");
  check_alpha(alpha);
  const double c = a / alpha;
  const double g = a * a / (2.0 * alpha);
  const double e0 = -std::lgamma(c) - 0.5 * g;
  const auto& rule = gauss_legendre(opt.order);
  const double h = 2.0 * opt.x_max / opt.panels;
  cplx sum = 0.0;
  for (int p = 0; p < opt.panels; ++p) {
    const double mid = -opt.x_max + (p + 0.5) * h;
    for (int k = 0; k < opt.order; ++k) {
      const double x = mid + 0.5 * h * rule.x[k];
      const cplx e = -log_gamma(cplx(c, -c * x)) - g * (x * x + 0.5) - e0;
      sum += 0.5 * h * rule.w[k] * std::exp(e);
    }
  }
  ScaledComplex r;
  r.mantissa = sum / kTwoPiI;
  r.log_scale = e0;
  r.underflow_warning = r.log_abs() < -700.0;
  return r;
}

inline cplx asym_u1_12(double a, double alpha, const U12Options& opt = {}) {
  return asym_u1_12_scaled(a, alpha, opt).value();
}

/// Closed-form leading behaviour of asym_u1_12:
///   exp(-(a^2 + 2 log^2(a/α))/(4α)) / (i sqrt(2πα) Gamma(1 + a/α)).
inline ScaledComplex asym_u1_12_closed_form(double a, double alpha) {
  check_alpha(alpha);
  const double l = std::log(a / alpha);
  ScaledComplex r;
  r.mantissa = cplx(0.0, -1.0);
  r.log_scale = -(a * a + 2.0 * l * l) / (4.0 * alpha) - 0.5 * std::log(2.0 * kPi * alpha) -
                std::lgamma(1.0 + a / alpha);
  r.underflow_warning = r.log_scale < -700.0;
  return r;
}

/// u from the asymptotic U1 entries: (a^2/α^2) (U1)_12 (U1)_21.
inline double u_asym_composed(double a, double alpha) {
  if (!(a > 0.0) || a * a <= 1.0) throw GeometryError("u_asym_composed: need a > 1");
  const ScaledComplex u12 = asym_u1_12_scaled(a, alpha);
  const cplx u21 = asym_u1_21(a, alpha);
  return (a * a / (alpha * alpha) * u12.mantissa * u21).real() * std::exp(u12.log_scale);
}

}  // namespace critgap
