#include <gtest/gtest.h>

#include <cmath>

#include "critgap/rh_observables.hpp"

using namespace critgap;

TEST(Y1, DiagonalEntryIsLogDerivative) {
  const Resolution res;
  for (double alpha : {1.0, 2.0}) {
    const double a = 2.0, h = 1e-2;
    auto lp = [&](double x) { return gap_probability_at(x, alpha, Route::contour_H, res).logP; };
    // Richardson-extrapolated central difference, O(h^4).
    const double d1 = (lp(a + h) - lp(a - h)) / (2.0 * h);
    const double d2 = (lp(a + 2.0 * h) - lp(a - 2.0 * h)) / (4.0 * h);
    const double d = (4.0 * d1 - d2) / 3.0;
    const Y1Matrix y = y1_matrix(a, alpha, res);
    EXPECT_NEAR(y.e11.real(), d, 1e-6 * std::abs(d));
    EXPECT_LT(std::abs(y.e11.imag()), 1e-12);
  }
}

TEST(Y1, OdeIdentity) {
  const Resolution res;
  const double a = 1.5, alpha = 1.0, h = 1e-3;
  const double dy =
      (y1_matrix(a + h, alpha, res).e11 - y1_matrix(a - h, alpha, res).e11).real() / (2.0 * h);
  EXPECT_NEAR(dy, y1_matrix(a, alpha, res).offdiag_product().real(), 1e-5);
}

TEST(Y1, TraceVanishesAndUIsPositive) {
  // Y_1 of a jump matrix with unit determinant has zero trace.
  for (double a : {1.0, 3.0}) {
    const Y1Matrix y = y1_matrix(a, 1.0);
    EXPECT_LT(std::abs(y.e11 + y.e22), 1e-10 * (std::abs(y.e11) + 1e-300)) << a;
    EXPECT_GT(u_of_x(a, 1.0), 0.0);
  }
  EXPECT_THROW(y1_matrix(0.0, 1.0), DomainError);
}

TEST(U, FarTailKeepsRelativeAccuracy) {
  // Compared with the asymptotic form, whose relative correction is
  // O((log x)^2 / x); the standard contours would return noise here.
  for (double x : {10.0, 20.0, 30.0}) {
    const double r = u_of_x(x, 1.0) / u_asymptotic(x, 1.0);
    EXPECT_GT(r, 0.8) << x;
    EXPECT_LT(r, 1.0) << x;
  }
}

TEST(Closure, LogGapFromU) {
  for (double alpha : {1.0, 2.0}) {
    const double a = 2.0;
    const double lp = gap_probability_at(a, alpha, Route::contour_H, Resolution{}).logP;
    EXPECT_NEAR(log_gap_from_u(a, alpha), lp, 1e-6 * std::abs(lp) + 1e-12) << alpha;
  }
}

TEST(Asymptotics, URatioApproachesOne) {
  const double alpha = 2.0;
  const double r6 = u_of_x(6.0, alpha) / u_asymptotic(6.0, alpha);
  const double r8 = u_of_x(8.0, alpha) / u_asymptotic(8.0, alpha);
  EXPECT_GT(r6, 0.5);
  EXPECT_LT(r6, 1.5);
  EXPECT_LT(std::abs(r8 - 1.0), std::abs(r6 - 1.0));
}

TEST(Asymptotics, LogFormMatchesDirectFormula) {
  for (double x : {3.0, 7.0}) {
    const double alpha = 1.5;
    const double l = std::log(x / alpha);
    const double direct = std::exp(-(x * x + l * l) / (2.0 * alpha)) /
                          (std::tgamma(x / alpha) * std::sqrt(2.0 * kPi * alpha));
    EXPECT_NEAR(u_asymptotic(x, alpha), direct, 1e-13 * direct);
  }
}

TEST(Asymptotics, U21QuadratureMatchesResidueSum) {
  for (double alpha : {1.0, 2.0}) {
    for (double a : {2.0, 4.0, 8.0}) {
      const cplx q = asym_u1_21(a, alpha);
      const cplx r = asym_u1_21_residue(a, alpha);
      EXPECT_LT(std::abs(q - r) / std::abs(r), 1e-10) << alpha << " " << a;
    }
  }
  EXPECT_THROW(asym_u1_21(1.0, 1.0), GeometryError);
}

TEST(Asymptotics, U12ApproachesClosedForm) {
  const double alpha = 2.0;
  double prev = 1e300;
  for (double a : {4.0, 6.0, 10.0}) {
    const ScaledComplex u = asym_u1_12_scaled(a, alpha);
    const ScaledComplex c = asym_u1_12_closed_form(a, alpha);
    const cplx ratio = u.mantissa / c.mantissa * std::exp(u.log_scale - c.log_scale);
    EXPECT_LT(std::abs(ratio.imag()), 1e-10);
    const double dev = std::abs(ratio.real() - 1.0);
    EXPECT_LT(dev, prev) << a;
    prev = dev;
  }
  EXPECT_LT(prev, 0.25);
}

TEST(Asymptotics, U12ConvergedInQuadrature) {
  U12Options fine;
  fine.x_max = 12.0;
  fine.panels = 64;
  const cplx a = asym_u1_12_scaled(6.0, 2.0).mantissa;
  const cplx b = asym_u1_12_scaled(6.0, 2.0, fine).mantissa;
  EXPECT_LT(std::abs(a - b), 1e-13 * std::abs(b));
}

TEST(Asymptotics, ComposedUMatchesResolventU) {
  // With the deformed contours the asymptotic U1 entries give u exactly up
  // to the resolvent correction, which is negligible for large a.
  const double a = 6.0, alpha = 2.0;
  const double uc = u_asym_composed(a, alpha);
  const double u = u_of_x(a, alpha);
  EXPECT_NEAR(uc, u, 1e-5 * u);
}

TEST(Y1, RealStructure) {
  for (double alpha : {1.0, 2.0}) {
    const Y1Matrix y = y1_matrix(2.0, alpha);
    EXPECT_LT(std::abs(y.e11.imag()), 1e-8);
    EXPECT_LT(std::abs(y.offdiag_product().imag()), 1e-8);
  }
  EXPECT_LT(std::abs(y1_matrix(8.0, 2.0).e11), 1e-6);
}

TEST(Y1, EntriesIndependentOfContourChoice) {
  Resolution def;
  def.contours = ContourChoice::deformed;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double a : {2.0, 3.5, 5.0}) {
      const Y1Matrix s = y1_matrix(a, alpha);
      const Y1Matrix d = y1_matrix(a, alpha, def);
      EXPECT_LT(std::abs(s.e11 - d.e11), 1e-7) << alpha << " " << a;
      EXPECT_LT(std::abs(s.e12 - d.e12), 1e-7);
      EXPECT_LT(std::abs(s.e21 - d.e21), 1e-7);
      EXPECT_LT(std::abs(s.e22 - d.e22), 1e-7);
    }
  }
}

TEST(U, MinusSecondLogDerivative) {
  // Five-point second difference of log P.
  const double a = 2.0, alpha = 1.0, h = 0.05;
  auto lp = [&](double x) { return gap_probability_at(x, alpha, Route::contour_Q, Resolution{}).logP; };
  const double d2 =
      (-lp(a + 2 * h) + 16 * lp(a + h) - 30 * lp(a) + 16 * lp(a - h) - lp(a - 2 * h)) / (12 * h * h);
  const double u = u_of_x(a, alpha);
  EXPECT_NEAR(u, -d2, 1e-3 * u);
}

TEST(U, PositiveInTail) {
  for (double x : {4.0, 6.0, 8.0}) EXPECT_GT(u_of_x(x, 2.0), 0.0);
}

TEST(Asymptotics, UAsymptoticDegenerateLogCases) {
  EXPECT_NEAR(u_asymptotic(2.0, 2.0), 0.1037768743, 1e-10);
  EXPECT_NEAR(u_asymptotic(1.0, 1.0), 0.2419707245, 1e-10);
  // x = 10, alpha = 2: log(x/alpha) = log 5, Gamma(5) = 24.
  const double l = std::log(5.0);
  const double ref = -(100.0 + l * l) / 4.0 - std::log(24.0) - 0.5 * std::log(4.0 * kPi);
  EXPECT_NEAR(log_u_asymptotic(10.0, 2.0), ref, 1e-12 * std::abs(ref));
}

TEST(Asymptotics, U21LeadingTerm) {
  const double alpha = 2.0;
  double prev = 1e300;
  for (double a : {2.0, 4.0, 8.0, 12.0}) {
    const cplx v = asym_u1_21(a, alpha) * (a / cplx(0.0, alpha)) * std::exp(a * a / (4.0 * alpha));
    const double dev = std::abs(v - 1.0);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(Asymptotics, U12IsImaginary) {
  const cplx v = asym_u1_12(4.0, 2.0);
  EXPECT_LT(std::abs(v.real()), 1e-10 * std::abs(v));
}

TEST(Asymptotics, ComposedUPositiveAndInWindow) {
  const double uc = u_asym_composed(6.0, 2.0);
  EXPECT_GT(uc, 0.0);
  const double r = uc / u_asymptotic(6.0, 2.0);
  EXPECT_GE(r, 0.7);
  EXPECT_LE(r, 1.3);
}

TEST(Closure, SignAndLimit) {
  const double l = log_gap_from_u(8.0, 1.0);
  EXPECT_LT(l, 0.0);
  EXPECT_GT(l, -1e-18);
  std::vector<double> xs, ws;
  log_gap_grid(3.0, LogGapOptions{}, xs, ws);
  for (double x : xs) {
    EXPECT_GT(x, 3.0);
    EXPECT_GE((x - 3.0) * u_of_x(x, 1.0), 0.0);
  }
}
