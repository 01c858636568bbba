#pragma once

// Nystrom discretization of Fredholm determinants det(I - K): assembly,
// determinants with a log channel, resolvent solves and traces, and the three
// routes to the gap probability P(a).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "critgap/contours.hpp"
#include "critgap/errors.hpp"
#include "critgap/gauss_legendre.hpp"
#include "critgap/kernels.hpp"

namespace critgap {

/// Composite Gauss-Legendre nodes on the truncated half line (a, a + L).
struct HalfLineGrid {
  double a = 0.0;
  double L = 40.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

inline HalfLineGrid make_halfline_grid(double a, double L = 40.0, int panels = 8,
                                       int order = 16) {
  if (!(L > 0.0) || panels < 1) throw DomainError("half-line grid: need L > 0, panels >= 1");
  HalfLineGrid g;
  g.a = a;
  g.L = L;
  const auto& rule = gauss_legendre(order);
  const double h = L / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < order; ++k) {
      g.nodes.push_back(mid + 0.5 * h * rule.x[k]);
      g.weights.push_back(0.5 * h * rule.w[k]);
    }
  }
  return g;
}

enum class Weighting { right_weight, symmetric_sqrt };

/// Dense Nystrom matrix. With right weighting matrix(i, j) = K(x_i, x_j) w_j;
/// with symmetric weighting sqrt(w_i) K(x_i, x_j) sqrt(w_j). Both are similar
/// matrices, so determinants and traces coincide.
struct DiscreteOperator {
  CMatrix matrix;
  Weighting weighting = Weighting::right_weight;

  Eigen::Index size() const { return matrix.rows(); }
};

using KernelCallback = std::function<cplx(cplx, cplx)>;

/// Assemble K on one node set (square operator).
inline DiscreteOperator assemble(const KernelCallback& kernel, const std::vector<cplx>& nodes,
                                 const std::vector<cplx>& weights,
                                 Weighting weighting = Weighting::right_weight) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (weights.size() != nodes.size()) throw DomainError("assemble: node/weight size mismatch");
  DiscreteOperator op{CMatrix(n, n), weighting};
  std::vector<cplx> sw(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) sw[i] = std::sqrt(weights[i]);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx k = kernel(nodes[i], nodes[j]);
      op.matrix(i, j) = weighting == Weighting::right_weight ? k * weights[j]
                                                             : sw[i] * k * sw[j];
    }
  }
  return op;
}

inline DiscreteOperator assemble(const KernelCallback& kernel, const QuadratureGrid& grid,
                                 Weighting weighting = Weighting::right_weight) {
  return assemble(kernel, grid.nodes, grid.weights, weighting);
}

inline DiscreteOperator assemble(const KernelCallback& kernel, const HalfLineGrid& grid,
                                 Weighting weighting = Weighting::right_weight) {
  std::vector<cplx> x(grid.nodes.begin(), grid.nodes.end());
  std::vector<cplx> w(grid.weights.begin(), grid.weights.end());
  return assemble(kernel, x, w, weighting);
}

/// Apply a weighting convention to an unweighted kernel matrix on a half line.
inline DiscreteOperator weighted_operator(const CMatrix& kernel_values,
                                          const std::vector<double>& weights,
                                          Weighting weighting) {
  DiscreteOperator op{kernel_values, weighting};
  const auto n = op.matrix.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      op.matrix(i, j) *= weighting == Weighting::right_weight
                             ? weights[j]
                             : std::sqrt(weights[i] * weights[j]);
    }
  }
  return op;
}

struct DetResult {
  cplx value;               // det(I - A)
  cplx log_value;           // a logarithm of det(I - A)
  double one_minus = 0.0;   // 1 - Re det, accurate when det is close to 1
  bool singular_warning = false;
};

inline cplx trace(const DiscreteOperator& A) { return A.matrix.trace(); }

namespace detail {

// log det(I - A) = -sum_n Tr(A^n)/n, used when the operator is small so that
// 1 - det keeps its relative accuracy.
inline bool log_det_series(const CMatrix& A, cplx& log_det, int max_terms = 60) {
  const double norm = A.norm();
  if (!(norm < 0.5)) return false;
  CMatrix power = A;
  cplx sum = 0.0;
  for (int n = 1; n <= max_terms; ++n) {
    if (n > 1) power = power * A;
    const cplx term = power.trace() / static_cast<double>(n);
    sum += term;
    // |Tr(A^k)| <= ||A^n||_F ||A||_F^(k-n) bounds the remaining terms.
    if (power.norm() / ((1.0 - norm) * n) < 1e-17 * std::abs(sum)) break;
    if (std::abs(term) == 0.0) break;
  }
  log_det = -sum;
  return true;
}

}  // namespace detail

/// det(I - A) by partially pivoted LU, with a log channel.
///
/// When ||A||_F < 0.5 the log is taken from the trace series instead, so
/// one_minus = -expm1(log det) survives det extremely close to 1.
inline DetResult det_I_minus(const CMatrix& A, bool use_series = true) {
  if (A.rows() != A.cols()) throw DomainError("det_I_minus: matrix not square");
  DetResult r;
  const auto n = A.rows();
  if (n == 0) {
    r.value = 1.0;
    r.log_value = 0.0;
    return r;
  }
  cplx log_series;
  if (use_series && detail::log_det_series(A, log_series)) {
    r.log_value = log_series;
    r.value = std::exp(log_series);
    r.one_minus = -std::expm1(log_series.real());
    return r;
  }
  CMatrix IA = CMatrix::Identity(n, n) - A;
  Eigen::PartialPivLU<CMatrix> lu(IA);
  const CMatrix& LU = lu.matrixLU();
  cplx log_det = 0.0;
  double min_pivot = 1e300;
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx u = LU(i, i);
    min_pivot = std::min(min_pivot, std::abs(u));
    log_det += std::log(u);
  }
  if (lu.permutationP().determinant() < 0) log_det += cplx(0.0, kPi);
  r.singular_warning = min_pivot < 1e-300;
  r.log_value = log_det;
  r.value = std::exp(log_det);
  r.one_minus = 1.0 - r.value.real();
  return r;
}

inline DetResult det_I_minus(const DiscreteOperator& A, bool use_series = true) {
  return det_I_minus(A.matrix, use_series);
}

/// Solve (I - A) x = rhs. Throws SingularError when I - A is numerically
/// singular or the residual check fails.
inline CVector resolve(const CMatrix& A, const CVector& rhs) {
  const auto n = A.rows();
  if (A.cols() != n || rhs.size() != n) throw DomainError("resolve: size mismatch");
  CMatrix IA = CMatrix::Identity(n, n) - A;
  Eigen::PartialPivLU<CMatrix> lu(IA);
  const CMatrix& LU = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(LU(i, i)) > 1e-300)) throw SingularError("resolve: I - A is singular");
  }
  CVector x = lu.solve(rhs);
  const double res = (IA * x - rhs).norm();
  if (!std::isfinite(res) || res > 1e-10 * (1.0 + rhs.norm()) * std::max(1.0, IA.norm())) {
    throw SingularError("resolve: residual check failed");
  }
  return x;
}

inline CVector resolve(const DiscreteOperator& A, const CVector& rhs) {
  return resolve(A.matrix, rhs);
}

// ---------------------------------------------------------------------------
// Gap probability

enum class Route { halfline, contour_Q, contour_H };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::halfline: return "halfline";
    case Route::contour_Q: return "contour-Q";
    case Route::contour_H: return "contour-H";
  }
  return "?";
}

inline Route parse_route(const std::string& s) {
  if (s == "halfline") return Route::halfline;
  if (s == "contour-Q") return Route::contour_Q;
  if (s == "contour-H") return Route::contour_H;
  throw DomainError("unknown route: " + s);
}

enum class ContourChoice { standard, deformed };

/// Discretization parameters shared by all routes.
struct Resolution {
  int gamma_panels = 16;      // per hairpin arm
  int line_panels = 0;        // 0: chosen from the line height
  int order = 16;
  double T = ContourDefaults::T;
  double line_height = 0.0;   // 0: default_line_height(alpha)
  int halfline_panels = 8;
  double halfline_length = 40.0;
  ContourChoice contours = ContourChoice::standard;

  double line_scale = 2.2;    // line panels per unit of half height

  /// Coarser companion used for the self-convergence error estimate.
  Resolution halved() const {
    Resolution r = *this;
    r.gamma_panels = std::max(4, gamma_panels / 2);
    r.halfline_panels = std::max(2, halfline_panels / 2);
    if (line_panels > 0) {
      r.line_panels = std::max(4, line_panels / 2);
    } else {
      r.line_scale = line_scale / 2.0;
    }
    return r;
  }

  int effective_line_panels(double height) const {
    if (line_panels > 0) return line_panels;
    return std::max(8, static_cast<int>(std::ceil(line_scale * height)));
  }
};

/// Standard contour pair for the contour routes (or the deformed pair).
inline ContourPair route_contours(double alpha, double a, const Resolution& res) {
  const double height = res.line_height > 0.0 ? res.line_height : default_line_height(alpha);
  if (res.contours == ContourChoice::deformed) {
    // The deformed hairpin is a closed loop; its arms get the same panel
    // density as the standard ones.
    ContourPair pair = deformed_contours(alpha, a, res.T, res.gamma_panels, res.order);
    pair.gamma_tilde = build_vertical(a / alpha, height, res.effective_line_panels(height),
                                      res.order);
    return pair;
  }
  ContourPair pair;
  pair.gamma = build_hairpin(ContourDefaults::delta, ContourDefaults::nose, res.T,
                             res.gamma_panels, res.order);
  pair.gamma_tilde = build_vertical(ContourDefaults::line, height,
                                    res.effective_line_panels(height), res.order);
  return pair;
}

/// Contour pair for the half-line kernel: line at b = 1 so that every factor
/// decays in x and y, uniform panels short enough to follow exp(-i y tau).
inline ContourPair halfline_contours(double alpha, double y_max, const Resolution& res) {
  const double height = res.line_height > 0.0 ? res.line_height : default_line_height(alpha);
  const double h = std::min(1.0, 14.0 / std::max(y_max, 1.0)) * (2.2 / res.line_scale);
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * height / h)));
  ContourPair pair;
  pair.gamma = build_hairpin(ContourDefaults::delta, ContourDefaults::nose, res.T,
                             res.gamma_panels, res.order);
  pair.gamma_tilde = build_vertical(1.0, height, panels, res.order, 0.0);
  return pair;
}

/// Nystrom operator of the conjugated kernel on (a, a + L).
inline DiscreteOperator halfline_operator(double a, double alpha, const Resolution& res,
                                          Weighting weighting = Weighting::symmetric_sqrt) {
  const HalfLineGrid g = make_halfline_grid(a, res.halfline_length, res.halfline_panels, res.order);
  const ContourPair pair = halfline_contours(alpha, a + res.halfline_length, res);
  const CMatrix K = kernel_crit_matrix(g.nodes, g.nodes, alpha, pair, true);
  return weighted_operator(K, g.weights, weighting);
}

/// Q_a on gamma~ u gamma, nodes ordered (gamma~, gamma).
inline DiscreteOperator contour_Q_operator(const ModelParams& p, const ContourPair& pair,
                                           bool flip_q_sign = false) {
  const ContourBlocks blk = contour_blocks(p, pair, flip_q_sign);
  const auto n = blk.A.rows();
  const auto m = blk.A.cols();
  DiscreteOperator op{CMatrix::Zero(n + m, n + m), Weighting::right_weight};
  op.matrix.topRightCorner(n, m) = blk.A;
  op.matrix.bottomLeftCorner(m, n) = blk.B;
  return op;
}

struct GapResult {
  double P = 1.0;
  double logP = 0.0;
  double one_minus_P = 0.0;
  double err = 0.0;          // |P(res) - P(res.halved())|
  double imag_residual = 0.0;
  bool singular_warning = false;
  Route route = Route::halfline;
};

/// P(a) by one route at one resolution, without error estimate.
inline GapResult gap_probability_at(double a, double alpha, Route route,
                                    const Resolution& res, bool flip_q_sign = false) {
  if (!(a > 0.0)) throw DomainError("gap_probability: need a > 0");
  check_alpha(alpha);
  DetResult d;
  switch (route) {
    case Route::halfline:
      d = det_I_minus(halfline_operator(a, alpha, res));
      break;
    case Route::contour_Q: {
      const ContourPair pair = route_contours(alpha, a, res);
      // The full block matrix has zero trace; LU is used throughout and the
      // small-norm log channel comes from the equivalent H form below.
      d = det_I_minus(contour_Q_operator({alpha, a}, pair, flip_q_sign), false);
      if (d.one_minus < 1e-6) {
        const ContourBlocks blk = contour_blocks({alpha, a}, pair, flip_q_sign);
        const DetResult ds = det_I_minus(CMatrix(blk.A * blk.B));
        d.one_minus = ds.one_minus;
      }
      break;
    }
    case Route::contour_H: {
      const ContourPair pair = route_contours(alpha, a, res);
      d = det_I_minus(kernel_Ha_matrix({alpha, a}, pair));
      break;
    }
  }
  GapResult g;
  g.route = route;
  g.P = d.value.real();
  g.imag_residual = d.value.imag();
  g.logP = d.log_value.real();
  g.one_minus_P = d.one_minus;
  g.singular_warning = d.singular_warning;
  return g;
}

/// P(a) with the self-convergence error estimate |P(res) - P(res/2)|.
inline GapResult gap_probability(double a, double alpha, Route route,
                                 const Resolution& res = {}, bool flip_q_sign = false) {
  GapResult fine = gap_probability_at(a, alpha, route, res, flip_q_sign);
  const GapResult coarse = gap_probability_at(a, alpha, route, res.halved(), flip_q_sign);
  fine.err = std::abs(fine.P - coarse.P);
  return fine;
}

}  // namespace critgap
