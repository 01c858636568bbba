#pragma once

// Monte-Carlo sampling of the rightmost log-squared singular value of
// X_M ... X_1 for i.i.d. complex Ginibre X_k.
//
// Stream rule: trial t of a run with seed s draws from
//   std::mt19937_64(splitmix64(s + (t + 1) * 0x9E3779B97F4A7C15)),
// so any partition of trials over threads gives identical samples.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "critgap/errors.hpp"
#include "critgap/special_functions.hpp"

namespace critgap {

struct McConfig {
  int N = 1;
  int M = 1;
  long trials = 1000;
  std::uint64_t seed = 1;
  double alpha_label = 1.0;  // reporting only
  int threads = 0;           // 0: CRITGAP_THREADS or hardware concurrency
};

struct McResult {
  std::vector<double> samples;  // sorted, centered by a_N
  double a_N = 0.0;
  McConfig config;
};

/// a_N = (M + 1)(log N - 1/(2N)).
inline double center_aN(int N, int M) {
  if (N < 1 || M < 1) throw DomainError("center_aN: need N, M >= 1");
  return (M + 1.0) * (std::log(static_cast<double>(N)) - 0.5 / N);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Standard complex Gaussian (E|z|^2 = 1) from two uniforms, no rejection:
/// |z|^2 = -log u1 is Exp(1) and arg z = 2 pi u2.
inline cplx complex_normal(std::mt19937_64& rng) {
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * scale;
  const double u2 = static_cast<double>(rng() >> 11) * scale;
  const double r = std::sqrt(-std::log(u1));
  return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

inline Eigen::MatrixXcd ginibre(int N, std::mt19937_64& rng) {
  Eigen::MatrixXcd X(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) X(i, j) = complex_normal(rng);
  return X;
}

/// Product X_M ... X_1 as exp(log_scale) * P with ||P||_F = 1.
struct ScaledProduct {
  Eigen::MatrixXcd P;
  double log_scale = 0.0;
};

inline ScaledProduct scaled_product(const std::vector<Eigen::MatrixXcd>& factors) {
  ScaledProduct sp;
  for (const auto& X : factors) {
    if (sp.P.size() == 0) {
      sp.P = X;
    } else {
      sp.P = X * sp.P;
    }
    const double s = sp.P.norm();
    sp.P /= s;
    sp.log_scale += std::log(s);
  }
  return sp;
}

/// Largest eigenvalue of a Hermitian positive semidefinite G by power
/// iteration. Throws ConvergenceError after max_iter iterations without a
/// relative change below tol.
inline double power_iteration_top(const Eigen::MatrixXcd& G, std::mt19937_64& rng,
                                  double tol = 1e-10, int max_iter = 10000) {
  const auto n = G.rows();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal(rng);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd w = G * v;
    const double next = std::real(v.dot(w));  // Rayleigh quotient
    const double nw = w.norm();
    if (!(nw > 0.0)) return 0.0;
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  throw ConvergenceError("power iteration: no convergence in " + std::to_string(max_iter) +
                         " iterations");
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations (ascending).
/// Reference implementation for small matrices.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXcd A, double tol = 1e-15,
                                              int max_sweeps = 100) {
  const auto n = A.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(off) <= tol * A.norm()) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(A(p, q));
        if (g == 0.0) continue;
        const cplx phase = A(p, q) / g;
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Columns p, q of A J with J = [[c, s*phase], [-s*conj(phase), c]].
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = A(k, p);
          const cplx akq = A(k, q);
          A(k, p) = c * akp - s * std::conj(phase) * akq;
          A(k, q) = s * phase * akp + c * akq;
        }
        // Rows p, q of J^H (A J).
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = A(p, k);
          const cplx aqk = A(q, k);
          A(p, k) = c * apk - s * phase * aqk;
          A(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = A(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// log of the largest eigenvalue of Pi* Pi for one trial.
inline double trial_log_lambda_max(int N, int M, std::uint64_t seed, long trial) {
  std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
  std::vector<Eigen::MatrixXcd> factors;
  factors.reserve(M);
  for (int k = 0; k < M; ++k) factors.push_back(ginibre(N, rng));
  const ScaledProduct sp = scaled_product(factors);
  const Eigen::MatrixXcd G = sp.P.adjoint() * sp.P;
  const double lam = N == 1 ? G(0, 0).real() : power_iteration_top(G, rng);
  return 2.0 * sp.log_scale + std::log(lam);
}

inline int default_thread_count() {
  if (const char* env = std::getenv("CRITGAP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Samples over the trial range [begin, end), unsorted, centered by a_N.
inline std::vector<double> sample_shard(const McConfig& cfg, long begin, long end) {
  const double aN = center_aN(cfg.N, cfg.M);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, end - begin)));
  for (long t = begin; t < end; ++t) {
    out.push_back(trial_log_lambda_max(cfg.N, cfg.M, cfg.seed, t) - aN);
  }
  return out;
}

inline McResult sample_rightmost(const McConfig& cfg) {
  if (cfg.N < 1 || cfg.M < 1) throw DomainError("sample_rightmost: need N, M >= 1");
  if (cfg.N > 256 || cfg.M > 256) throw DomainError("sample_rightmost: N, M must be <= 256");
  if (cfg.trials < 1) throw DomainError("sample_rightmost: need trials >= 1");
  McResult res;
  res.config = cfg;
  res.a_N = center_aN(cfg.N, cfg.M);
  const int threads = std::max(
      1, static_cast<int>(std::min<long>(cfg.threads > 0 ? cfg.threads : default_thread_count(),
                                         cfg.trials)));
  std::vector<std::vector<double>> shards(threads);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w) {
    const long begin = cfg.trials * w / threads;
    const long end = cfg.trials * (w + 1) / threads;
    auto job = [&, w, begin, end] {
      try {
        shards[w] = sample_shard(cfg, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (threads == 1) {
      job();
    } else {
      pool.emplace_back(job);
    }
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& s : shards) res.samples.insert(res.samples.end(), s.begin(), s.end());
  std::sort(res.samples.begin(), res.samples.end());
  return res;
}

struct EmpiricalGap {
  double phat = 0.0;
  double ci95 = 0.0;
};

/// Fraction of samples <= a with a normal-approximation 95% half width.
inline EmpiricalGap empirical_gap(const McResult& r, double a) {
  const auto n = static_cast<double>(r.samples.size());
  if (n == 0) return {};
  const auto it = std::upper_bound(r.samples.begin(), r.samples.end(), a);
  const double phat = static_cast<double>(it - r.samples.begin()) / n;
  return {phat, 1.96 * std::sqrt(phat * (1.0 - phat) / n)};
}

/// Kolmogorov-Smirnov distance between sorted samples and a continuous CDF.
template <class Cdf>
double ks_distance(const std::vector<double>& sorted, Cdf&& cdf) {
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = cdf(sorted[i]);
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

}  // namespace critgap
