// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any hard
// criterion fails. Criterion 8 is reported but never gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "critgap/critgap.hpp"

using namespace critgap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int hard_failures = 0;

void report(int id, bool pass, const std::string& what, bool hard = true) {
  std::printf("[%d] %s %s\n", id, pass ? "PASS" : (hard ? "FAIL" : "FAIL (diagnostic)"),
              what.c_str());
  std::fflush(stdout);
  if (!pass && hard) ++hard_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// 1. Three determinant routes agree on the (a, alpha) grid.
void criterion_routes() {
  const auto t0 = Clock::now();
  const Resolution res;
  double dhq = 0.0, dqh = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double a : {1.0, 2.0, 3.0, 4.0}) {
      const double ph = gap_probability_at(a, alpha, Route::halfline, res).P;
      const double pq = gap_probability_at(a, alpha, Route::contour_Q, res).P;
      const double pH = gap_probability_at(a, alpha, Route::contour_H, res).P;
      dhq = std::max(dhq, std::abs(ph - pq));
      dqh = std::max(dqh, std::abs(pq - pH));
    }
  }
  const double t = seconds_since(t0);
  report(1, dhq <= 1e-7 && dqh <= 1e-7 && t < 60.0,
         fmt("route equivalence: max|P_h - P_Q| = %.2e, max|P_Q - P_H| = %.2e (tol 1e-7), %.1f s",
             dhq, dqh, t));
}

// 2. Factorization through G, G~ and the single-residue loop around 0.
void criterion_factorization() {
  const struct { double x, y, alpha; } pts[] = {
      {1.0, 2.0, 1.0}, {0.5, 0.5, 0.5}, {2.0, 1.0, 2.0}, {3.0, 4.0, 1.0}, {1.5, 0.2, 2.0}};
  double dk = 0.0;
  for (const auto& p : pts) {
    const ContourPair pair = route_contours(p.alpha, 1.0, Resolution{});
    dk = std::max(dk, std::abs(kernel_conj(p.x, p.y, p.alpha, pair).real() -
                               factorization_kernel(p.x, p.y, p.alpha)));
  }
  const QuadratureGrid g0 = build_closed_hairpin(0.25, 0.25, -0.5, 8, 16);
  double dg = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double s : {0.5, 2.0, 4.0}) {
      dg = std::max(dg, std::abs(factor_G_complex(s, 0.0, alpha, g0) - std::exp(-0.5 * s)));
    }
  }
  report(2, dk <= 1e-8 && dg <= 1e-10,
         fmt("factorization: max|K - int G G~| = %.2e (tol 1e-8); loop at 0: %.2e (tol 1e-10)", dk,
             dg));
}

// 3. Y1 identities and the reconstruction of log P from u.
void criterion_rh() {
  const auto t0 = Clock::now();
  const Resolution res;
  const double h = 1e-3;
  double e_y11 = 0.0, e_ode = 0.0, e_clo = 0.0;
  for (double alpha : {1.0, 2.0}) {
    for (double a : {1.5, 2.0, 3.0}) {
      const double lp = gap_probability_at(a + h, alpha, Route::contour_H, res).logP;
      const double lm = gap_probability_at(a - h, alpha, Route::contour_H, res).logP;
      const double d = (lp - lm) / (2.0 * h);
      const Y1Matrix y = y1_matrix(a, alpha, res);
      e_y11 = std::max(e_y11, std::abs(y.e11.real() - d) / std::abs(d));
      const double dy =
          (y1_matrix(a + h, alpha, res).e11 - y1_matrix(a - h, alpha, res).e11).real() / (2.0 * h);
      e_ode = std::max(e_ode, std::abs(dy - y.offdiag_product().real()));
      const double l0 = gap_probability_at(a, alpha, Route::contour_H, res).logP;
      e_clo = std::max(e_clo, std::abs(l0 - log_gap_from_u(a, alpha)));
    }
  }
  const double t = seconds_since(t0);
  report(3, e_y11 <= 1e-4 && e_ode <= 1e-3 && e_clo <= 1e-4 && t < 300.0,
         fmt("Y1: (Y1)_11 vs dlogP/da rel %.2e (tol 1e-4); ODE %.2e (tol 1e-3); "
             "closure %.2e (tol 1e-4), %.1f s",
             e_y11, e_ode, e_clo, t));
}

// 4. Right-tail asymptotics.
void criterion_asymptotics() {
  const double alpha = 2.0;
  const double r6 = u_of_x(6.0, alpha) / u_asymptotic(6.0, alpha);
  const double r8 = u_of_x(8.0, alpha) / u_asymptotic(8.0, alpha);
  const bool u_ok = r6 >= 0.5 && r6 <= 1.5 && std::abs(r8 - 1.0) < std::abs(r6 - 1.0);
  double e21 = 0.0;
  for (double a : {2.0, 4.0, 6.0, 10.0}) {
    const cplx r = asym_u1_21_residue(a, alpha);
    e21 = std::max(e21, std::abs(asym_u1_21(a, alpha) - r) / std::abs(r));
  }
  const ScaledComplex u = asym_u1_12_scaled(10.0, alpha);
  const ScaledComplex c = asym_u1_12_closed_form(10.0, alpha);
  const double r12 = (u.mantissa / c.mantissa).real() * std::exp(u.log_scale - c.log_scale);
  const bool ok = u_ok && e21 <= 1e-10 && r12 >= 0.75 && r12 <= 1.25;
  report(4, ok,
         fmt("asymptotics: u/u_asym = %.4f (a=6), %.4f (a=8); U21 vs residue sum %.2e; "
             "U12/closed form = %.4f (a=10)",
             r6, r8, e21, r12));
}

// 5. (1 - P(a)) e^{a/2} stays below its value at the left end of [4, 12].
void criterion_tail() {
  Resolution res;
  res.contours = ContourChoice::deformed;
  const double alpha = 2.0;
  double first = 0.0, worst = 0.0, max_err = 0.0;
  bool positive = true;
  for (double a = 4.0; a <= 12.0 + 1e-12; a += 0.5) {
    const double om = gap_probability_at(a, alpha, Route::contour_H, res).one_minus_P;
    const double om2 = gap_probability_at(a, alpha, Route::contour_H, res.halved()).one_minus_P;
    positive = positive && om > 0.0 && std::isfinite(om);
    max_err = std::max(max_err, std::abs(om - om2) / om);
    const double r = om * std::exp(0.5 * a);
    if (a == 4.0) first = r;
    worst = std::max(worst, r);
  }
  report(5, positive && worst <= first && max_err < 1e-3,
         fmt("tail: sup (1-P)e^{a/2} over [4,12] = %.4e, bound C = value at a=4 = %.4e; "
             "max rel self-convergence %.1e",
             worst, first, max_err));
}

// 6. Gamma function identities.
void criterion_special() {
  double worst = 0.0;
  const cplx zs[] = {{0.3, 0.7}, {-2.4, 1.1}, {5.5, -3.0}, {-0.7, -6.0}, {12.0, 4.0}};
  for (cplx z : zs) {
    worst = std::max(worst, std::abs(gamma(z + 1.0) - z * gamma(z)) / std::abs(z * gamma(z)));
    const cplx refl = gamma(z) * gamma(1.0 - z);
    worst = std::max(worst, std::abs(refl - kPi / std::sin(kPi * z)) / std::abs(refl));
    worst = std::max(worst, std::abs(gamma(std::conj(z)) - std::conj(gamma(z))) / std::abs(gamma(z)));
  }
  double fact = 1.0, res_err = 0.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    const double eps = 1e-11;
    const cplx z(-k + eps, 0.0);
    const cplx r = (z + double(k)) * gamma(z);  // exact offset, not eps
    const double expect = (k % 2 ? -1.0 : 1.0) / fact;
    // (z + k) Gamma(z) = (-1)^k/k! (1 + O(eps)).
    res_err = std::max(res_err, std::abs(r - expect) / std::abs(expect));
  }
  report(6, worst <= 1e-10 && res_err <= 1e-9,
         fmt("special functions: recurrence/reflection/Schwarz max rel %.2e (tol 1e-10); "
             "residue limits %.2e",
             worst, res_err));
}

// 7. N = M = 1: log|z|^2 against the log-exponential law.
void criterion_scalar_mc() {
  McConfig cfg;
  cfg.N = 1;
  cfg.M = 1;
  cfg.trials = 10000;
  cfg.seed = 7;
  const McResult r = sample_rightmost(cfg);
  const double ks = ks_distance(r.samples, [&](double v) {
    return 1.0 - std::exp(-std::exp(v + r.a_N));
  });
  const double crit = 1.628 / std::sqrt(static_cast<double>(cfg.trials));
  report(7, ks < crit, fmt("scalar Monte Carlo: KS = %.4f < %.4f (1%% critical value)", ks, crit));
}

// 8. N = M = 48 against the critical law (finite-N effects not controlled).
void criterion_mc_vs_theory() {
  const auto t0 = Clock::now();
  McConfig cfg;
  cfg.N = 48;
  cfg.M = 48;
  cfg.trials = 4000;
  cfg.seed = 1;
  const McResult r = sample_rightmost(cfg);
  bool ok = true;
  std::string detail;
  for (double a : {1.0, 2.0, 3.0}) {
    const EmpiricalGap e = empirical_gap(r, a);
    const double p = gap_probability_at(a, 1.0, Route::contour_H, Resolution{}).P;
    ok = ok && std::abs(e.phat - p) <= e.ci95 + 0.03;
    detail += fmt(" a=%.0f: P_hat-P=%+.4f (ci %.4f);", a, e.phat - p, e.ci95);
  }
  report(8, ok,
         "Monte Carlo N=M=48, 4000 trials:" + detail + fmt(" %.0f s", seconds_since(t0)), false);
}

}  // namespace

int main() {
  criterion_routes();
  criterion_factorization();
  criterion_rh();
  criterion_asymptotics();
  criterion_tail();
  criterion_special();
  criterion_scalar_mc();
  criterion_mc_vs_theory();
  std::printf("%s: %d hard criterion failure(s)\n", hard_failures ? "FAIL" : "PASS", hard_failures);
  return hard_failures ? 1 : 0;
}
