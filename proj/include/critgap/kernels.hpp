#pragma once

// Correlation kernels of the critical product-matrix process and the
// auxiliary kernels of its integrable (two-contour) reformulation.
//
// Double contour integrals are evaluated as a matrix product
//   K(x_i, y_l) = -1/(4 pi^2) * sum_{j,k} T(i,j) C(j,k) S(k,l),
// with T carrying the t-dependence on gamma, S the s-dependence on gamma~ and
// C(j,k) = 1/(s_k - t_j). Weights are folded into T and S.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "critgap/contours.hpp"
#include "critgap/errors.hpp"
#include "critgap/special_functions.hpp"

namespace critgap {

struct ModelParams {
  double alpha = 1.0;
  double a = 1.0;
};

struct FiniteModelParams {
  int N = 1;
  int M = 1;
};

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

/// Default half height of gamma~ for a given alpha.
///
/// On the line |exp(alpha s^2/2)/Gamma(s)| ~ exp(-alpha tau^2/2 + pi|tau|/2);
/// T is chosen so that this exponent reaches -40.
inline double default_line_height(double alpha) {
  return std::max(10.0, (0.5 * kPi + std::sqrt(0.25 * kPi * kPi + 80.0 * alpha)) / alpha);
}

namespace detail {

// Gamma(t_j) on the hairpin and 1/Gamma(s_k) on the line, shared by all
// kernels built on a pair of grids.
inline std::vector<cplx> gamma_on(const QuadratureGrid& g) {
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = gamma(g.nodes[j]);
  return out;
}

inline std::vector<cplx> recip_gamma_on(const QuadratureGrid& g) {
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = recip_gamma(g.nodes[j]);
  return out;
}

inline CMatrix cauchy_matrix(const QuadratureGrid& gam, const QuadratureGrid& line) {
  CMatrix C(gam.size(), line.size());
  for (std::size_t k = 0; k < line.size(); ++k) {
    for (std::size_t j = 0; j < gam.size(); ++j) {
      C(j, k) = 1.0 / (line.nodes[k] - gam.nodes[j]);
    }
  }
  return C;
}

}  // namespace detail

/// Critical kernel (or its conjugated version) on a tensor grid xs x ys.
///
/// conjugated = false : K_crit(x, y)
/// conjugated = true  : exp(-(x - y)/2) K_crit(x, y)
inline CMatrix kernel_crit_matrix(const std::vector<double>& xs,
                                  const std::vector<double>& ys, double alpha,
                                  const ContourPair& pair, bool conjugated = false) {
  check_alpha(alpha);
  const QuadratureGrid& gt = pair.gamma;
  const QuadratureGrid& gs = pair.gamma_tilde;
  const double shift = conjugated ? 0.5 : 0.0;
  const auto gam = detail::gamma_on(gt);
  const auto rgam = detail::recip_gamma_on(gs);

  CMatrix T(xs.size(), gt.size());
  for (std::size_t j = 0; j < gt.size(); ++j) {
    const cplx t = gt.nodes[j];
    const cplx base = gt.weights[j] * gam[j];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      T(i, j) = base * std::exp(-0.5 * alpha * t * t + xs[i] * (t - shift));
    }
  }
  CMatrix S(gs.size(), ys.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const cplx s = gs.nodes[k];
    const cplx base = gs.weights[k] * rgam[k];
    for (std::size_t l = 0; l < ys.size(); ++l) {
      S(k, l) = base * std::exp(0.5 * alpha * s * s - ys[l] * (s - shift));
    }
  }
  const CMatrix C = detail::cauchy_matrix(gt, gs);
  CMatrix K = T * (C * S);
  K *= -1.0 / (4.0 * kPi * kPi);
  return K;
}

/// K_crit(x, y) by double quadrature over the contour pair.
inline cplx kernel_crit(double x, double y, double alpha, const ContourPair& pair) {
  return kernel_crit_matrix({x}, {y}, alpha, pair, false)(0, 0);
}

/// Conjugated kernel exp(-(x - y)/2) K_crit(x, y), x, y > 0.
inline cplx kernel_conj(double x, double y, double alpha, const ContourPair& pair) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("kernel_conj: need x, y > 0");
  return kernel_crit_matrix({x}, {y}, alpha, pair, true)(0, 0);
}

/// Half height of the line for the finite-N kernel: first tau >= 10 at which
/// |Gamma(s + N)^{M+1} / Gamma(s)| on Re s = b has dropped by e^{-40} from its
/// value at tau = 0. Small N decays only like e^{-pi M tau / 2}, large N
/// like a Gaussian of width sqrt(N / (M + 1)).
inline double finite_line_height(FiniteModelParams p, double b = ContourDefaults::line) {
  const double m1 = p.M + 1.0;
  auto level = [&](double tau) {
    const cplx s(b, tau);
    return (m1 * log_gamma(s + double(p.N)) - log_gamma_any_branch(s)).real();
  };
  const double ref = level(0.0);
  double tau = 10.0;
  while (level(tau) - ref > -40.0 && tau < 400.0) tau += 2.0;
  return tau;
}

/// Contour pair for the finite-N kernel: a hairpin loop closed at
/// Re t = -N + 1/2 (so it encircles exactly 0, -1, ..., -N+1) and the line.
/// Line panels scale with the height (`panels` per 10 units).
inline ContourPair finite_contours(FiniteModelParams p, int panels = 16, int order = 16) {
  if (p.N < 1 || p.M < 1) throw DomainError("finite contours: need N, M >= 1");
  const double height = finite_line_height(p);
  ContourPair pair;
  const int arm_panels = std::max(panels, 4 * static_cast<int>(std::ceil(std::sqrt(p.N))));
  pair.gamma = build_closed_hairpin(ContourDefaults::delta, ContourDefaults::nose,
                                    -p.N + 0.5, arm_panels, order);
  const int line_panels = static_cast<int>(std::ceil(panels * height / 10.0));
  pair.gamma_tilde = build_vertical(ContourDefaults::line, height, line_panels, order);
  return pair;
}

/// Finite-N kernel of the log-squared singular values of X_M ... X_1 on a
/// tensor grid. Gamma ratios raised to the power M+1 are combined in log
/// space; the two one-sided factors are rescaled by their largest exponent.
///
/// Throws OverflowError when the combined scale exponent exceeds 700.
inline CMatrix kernel_finite_matrix(const std::vector<double>& xs,
                                    const std::vector<double>& ys,
                                    FiniteModelParams p, const ContourPair& pair) {
  if (p.N < 1 || p.M < 1) throw DomainError("kernel_finite: need N, M >= 1");
  const QuadratureGrid& gt = pair.gamma;
  const QuadratureGrid& gs = pair.gamma_tilde;
  const double m1 = p.M + 1.0;
  const double lgN = std::lgamma(static_cast<double>(p.N));

  // Exponents of the one-sided factors, without weights.
  CMatrix Et(xs.size(), gt.size());
  double max_t = -1e300;
  for (std::size_t j = 0; j < gt.size(); ++j) {
    const cplx t = gt.nodes[j];
    const cplx common = log_gamma_any_branch(t) - m1 * (log_gamma(t + double(p.N)) - lgN);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Et(i, j) = common + xs[i] * t;
      max_t = std::max(max_t, Et(i, j).real());
    }
  }
  CMatrix Es(gs.size(), ys.size());
  double max_s = -1e300;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const cplx s = gs.nodes[k];
    const cplx common = m1 * (log_gamma(s + double(p.N)) - lgN) - log_gamma_any_branch(s);
    for (std::size_t l = 0; l < ys.size(); ++l) {
      Es(k, l) = common - ys[l] * s;
      max_s = std::max(max_s, Es(k, l).real());
    }
  }
  if (max_t + max_s > 700.0) {
    throw OverflowError("kernel_finite: scale exponent exceeds 700");
  }
  CMatrix T(xs.size(), gt.size());
  for (std::size_t j = 0; j < gt.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      T(i, j) = gt.weights[j] * std::exp(Et(i, j) - max_t);
    }
  }
  CMatrix S(gs.size(), ys.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    for (std::size_t l = 0; l < ys.size(); ++l) {
      S(k, l) = gs.weights[k] * std::exp(Es(k, l) - max_s);
    }
  }
  const CMatrix C = detail::cauchy_matrix(gt, gs);
  CMatrix K = T * (C * S);
  K *= -std::exp(max_t + max_s) / (4.0 * kPi * kPi);
  return K;
}

inline cplx kernel_finite(double x, double y, FiniteModelParams p, const ContourPair& pair) {
  return kernel_finite_matrix({x}, {y}, p, pair)(0, 0);
}

// ---------------------------------------------------------------------------
// Factor kernels: K(x, y) = int_0^inf G(x, q) G~(q, y) dq

/// G(x, q) = (1/2 pi i) int Gamma(t) exp(-alpha t^2/2 + (x+q)(t - 1/2)) dt.
///
/// Returned complex so callers can inspect the imaginary residue; on a
/// conjugation-symmetric hairpin it is real.
inline cplx factor_G_complex(double x, double q, double alpha, const QuadratureGrid& gam) {
  check_alpha(alpha);
  const double xq = x + q;
  cplx sum = 0.0;
  for (std::size_t j = 0; j < gam.size(); ++j) {
    const cplx t = gam.nodes[j];
    sum += gam.weights[j] * gamma(t) * std::exp(-0.5 * alpha * t * t + xq * (t - 0.5));
  }
  return sum / kTwoPiI;
}

inline double factor_G(double x, double q, double alpha, const QuadratureGrid& gam) {
  if (!(x > 0.0 && q >= 0.0)) throw DomainError("factor_G: need x > 0, q >= 0");
  return factor_G_complex(x, q, alpha, gam).real();
}

/// G~(q, y) = (1/2 pi i) int exp(alpha s^2/2 - (y+q)(s - 1/2)) / Gamma(s) ds.
inline cplx factor_Gtilde_complex(double q, double y, double alpha, const QuadratureGrid& line) {
  check_alpha(alpha);
  const double yq = y + q;
  cplx sum = 0.0;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const cplx s = line.nodes[k];
    sum += line.weights[k] * recip_gamma(s) * std::exp(0.5 * alpha * s * s - yq * (s - 0.5));
  }
  return sum / kTwoPiI;
}

inline double factor_Gtilde(double q, double y, double alpha, const QuadratureGrid& line) {
  if (!(y > 0.0 && q >= 0.0)) throw DomainError("factor_Gtilde: need y > 0, q >= 0");
  return factor_Gtilde_complex(q, y, alpha, line).real();
}

struct FactorizationOptions {
  int q_panels = 8;          // Gauss-Legendre panels in u on (0, 1)
  int order = 16;
  int gamma_panels = 16;
  double line_abscissa = 1.0;  // right of 1/2 so G~ decays in q
};

/// K(x, y) = int_0^inf G(x, q) G~(q, y) dq with q = -2 log(1 - u), u in (0, 1).
///
/// Both factors decay like exp(-q/2), so in u the integrand is smooth and
/// vanishes linearly at u = 1.
inline double factorization_kernel(double x, double y, double alpha,
                                   const FactorizationOptions& opt = {}) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("factorization_kernel: need x, y > 0");
  check_alpha(alpha);
  const auto& rule = gauss_legendre(opt.order);
  std::vector<double> qs;
  std::vector<double> wq;
  for (int p = 0; p < opt.q_panels; ++p) {
    const double lo = static_cast<double>(p) / opt.q_panels;
    const double hi = static_cast<double>(p + 1) / opt.q_panels;
    for (int k = 0; k < opt.order; ++k) {
      const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.x[k];
      qs.push_back(-2.0 * std::log1p(-u));
      wq.push_back(0.5 * (hi - lo) * rule.w[k] * 2.0 / (1.0 - u));
    }
  }
  const double q_max = qs.back();
  const QuadratureGrid gam = build_hairpin(ContourDefaults::delta, ContourDefaults::nose,
                                           ContourDefaults::T, opt.gamma_panels, opt.order);
  // exp(-(y+q) i tau) oscillates; keep ~14 radians per 16-node panel.
  const double T = default_line_height(alpha);
  const double h = std::min(1.0, 14.0 / (y + q_max));
  const int line_panels = std::max(8, static_cast<int>(std::ceil(2.0 * T / h)));
  const QuadratureGrid line = build_vertical(opt.line_abscissa, T, line_panels, opt.order, 0.0);

  // G(x, q_m) and G~(q_m, y) as matrix-vector products.
  const auto gam_t = detail::gamma_on(gam);
  const auto rgam_s = detail::recip_gamma_on(line);
  double sum = 0.0;
  for (std::size_t m = 0; m < qs.size(); ++m) {
    cplx G = 0.0;
    for (std::size_t j = 0; j < gam.size(); ++j) {
      const cplx t = gam.nodes[j];
      G += gam.weights[j] * gam_t[j] * std::exp(-0.5 * alpha * t * t + (x + qs[m]) * (t - 0.5));
    }
    cplx Gt = 0.0;
    for (std::size_t k = 0; k < line.size(); ++k) {
      const cplx s = line.nodes[k];
      Gt += line.weights[k] * rgam_s[k] * std::exp(0.5 * alpha * s * s - (y + qs[m]) * (s - 0.5));
    }
    sum += wq[m] * ((G / kTwoPiI) * (Gt / kTwoPiI)).real();
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Integrable kernels on gamma~ u gamma

/// f and h vectors of the integrable kernel Q_a.
///   f = (1/2 pi i) (1_{gamma~} e^{alpha z^2/4 - a z}, 1_gamma e^{-alpha z^2/4})
///   h = (1_gamma Gamma(z) e^{-alpha z^2/4 + a z}, -1_{gamma~} e^{alpha z^2/4}/Gamma(z))
struct FHVectors {
  std::array<cplx, 2> f{};
  std::array<cplx, 2> h{};
};

inline FHVectors vectors_fh(cplx z, ContourLabel label, const ModelParams& p) {
  FHVectors v;
  const cplx q = 0.25 * p.alpha * z * z;
  if (label == ContourLabel::gamma_tilde) {
    v.f[0] = std::exp(q - p.a * z) / kTwoPiI;
    v.h[1] = -std::exp(q) * recip_gamma(z);
  } else {
    v.f[1] = std::exp(-q) / kTwoPiI;
    v.h[0] = gamma(z) * std::exp(-q + p.a * z);
  }
  return v;
}

/// A_a(z, t), z on gamma~, t on gamma.
inline cplx kernel_A(cplx z, cplx t, const ModelParams& p) {
  return gamma(t) / kTwoPiI * std::exp(-p.a * (z - t) + 0.25 * p.alpha * (z * z - t * t)) /
         (z - t);
}

/// B(t, s), t on gamma, s on gamma~.
inline cplx kernel_B(cplx t, cplx s, const ModelParams& p) {
  return std::exp(0.25 * p.alpha * (s * s - t * t)) * recip_gamma(s) / (kTwoPiI * (s - t));
}

/// Q_a(x, y); vanishes unless the labels differ.
inline cplx kernel_Qa(cplx x, cplx y, ContourLabel lx, ContourLabel ly, const ModelParams& p) {
  if (lx == ly) return 0.0;
  if (lx == ContourLabel::gamma_tilde) {
    return gamma(y) * std::exp(0.25 * p.alpha * (x * x - y * y) - p.a * (x - y)) /
           (kTwoPiI * (x - y));
  }
  return -std::exp(-0.25 * p.alpha * (x * x - y * y)) * recip_gamma(y) / (kTwoPiI * (x - y));
}

/// H_a(z, s) for z, s on gamma~, by quadrature over the hairpin:
///   -1/(4 pi^2) int e^{a(t-z)} / ((s-t)(z-t)) Gamma(t)/Gamma(s)
///                   e^{alpha (z^2 + s^2 - 2 t^2)/4} dt.
inline cplx kernel_Ha(cplx z, cplx s, const ModelParams& p, const QuadratureGrid& gam) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < gam.size(); ++j) {
    const cplx t = gam.nodes[j];
    sum += gam.weights[j] * gamma(t) *
           std::exp(p.a * (t - z) + 0.25 * p.alpha * (z * z + s * s - 2.0 * t * t)) /
           ((s - t) * (z - t));
  }
  return -sum * recip_gamma(s) / (4.0 * kPi * kPi);
}


/// Weighted off-diagonal blocks of the discretized Q_a, nodes ordered
/// (gamma~, gamma):  Q = [[0, A], [B, 0]] with
///   A(i, j) = A_a(z_i, t_j) w_j   (gamma~ x gamma)
///   B(j, i) = B(t_j, s_i) w_i     (gamma x gamma~)
struct ContourBlocks {
  CMatrix A;
  CMatrix B;
};

inline ContourBlocks contour_blocks(const ModelParams& p, const ContourPair& pair,
                                    bool flip_q_sign = false) {
  check_alpha(p.alpha);
  const QuadratureGrid& gt = pair.gamma;
  const QuadratureGrid& gs = pair.gamma_tilde;
  const auto gam = detail::gamma_on(gt);
  const auto rgam = detail::recip_gamma_on(gs);
  const std::size_t n = gs.size();
  const std::size_t m = gt.size();
  ContourBlocks blk{CMatrix(n, m), CMatrix(m, n)};
  for (std::size_t j = 0; j < m; ++j) {
    const cplx t = gt.nodes[j];
    const cplx ct = gt.weights[j] * gam[j] / kTwoPiI;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx z = gs.nodes[i];
      blk.A(i, j) = ct * std::exp(-p.a * (z - t) + 0.25 * p.alpha * (z * z - t * t)) / (z - t);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const cplx s = gs.nodes[i];
    const cplx cs = gs.weights[i] * rgam[i] / kTwoPiI;
    for (std::size_t j = 0; j < m; ++j) {
      const cplx t = gt.nodes[j];
      blk.B(j, i) = cs * std::exp(0.25 * p.alpha * (s * s - t * t)) / (s - t);
    }
  }
  // Fault injection for the validation suite: a sign error in one block.
  if (flip_q_sign) blk.B = -blk.B;
  return blk;
}

/// Weighted H_a on gamma~ x gamma~, H(i, k) = H_a(z_i, s_k) w_k, assembled
/// from its single-integral formula rather than from the A, B blocks.
inline CMatrix kernel_Ha_matrix(const ModelParams& p, const ContourPair& pair) {
  check_alpha(p.alpha);
  const QuadratureGrid& gt = pair.gamma;
  const QuadratureGrid& gs = pair.gamma_tilde;
  const auto gam = detail::gamma_on(gt);
  const auto rgam = detail::recip_gamma_on(gs);
  const std::size_t n = gs.size();
  const std::size_t m = gt.size();
  // Left(i, j) = w_j Gamma(t_j) e^{a(t_j - z_i) + alpha(z_i^2 - 2 t_j^2)/4} / (z_i - t_j)
  // Right(j, k) = w_k e^{alpha s_k^2/4} / (Gamma(s_k) (s_k - t_j))
  CMatrix L(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx t = gt.nodes[j];
    for (std::size_t i = 0; i < n; ++i) {
      const cplx z = gs.nodes[i];
      L(i, j) = gt.weights[j] * gam[j] *
                std::exp(p.a * (t - z) + 0.25 * p.alpha * (z * z - 2.0 * t * t)) / (z - t);
    }
  }
  CMatrix R(m, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx s = gs.nodes[k];
    const cplx cs = gs.weights[k] * rgam[k] * std::exp(0.25 * p.alpha * s * s);
    for (std::size_t j = 0; j < m; ++j) R(j, k) = cs / (s - gt.nodes[j]);
  }
  CMatrix H = L * R;
  H *= -1.0 / (4.0 * kPi * kPi);
  return H;
}

}  // namespace critgap
