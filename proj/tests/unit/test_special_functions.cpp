#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "critgap/errors.hpp"
#include "critgap/gauss_legendre.hpp"
#include "critgap/special_functions.hpp"

using namespace critgap;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Stirling series with five correction terms, accurate to ~1e-15 for |z| > 30
// in the right half plane. Independent of the Lanczos implementation.
cplx stirling_log_gamma(cplx z) {
  const cplx z2 = 1.0 / (z * z);
  const cplx series =
      (1.0 / 12.0 + z2 * (-1.0 / 360.0 + z2 * (1.0 / 1260.0 + z2 * (-1.0 / 1680.0 +
                                                                     z2 * (1.0 / 1188.0))))) /
      z;
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

// Reference values computed with mpmath at 30 digits.
TEST(Gamma, FrozenHighPrecisionValues) {
  EXPECT_LT(rel(gamma({-0.5, 0.25}), {-2.7547269757896257349, -0.031000416375413389042}), 1e-13);
  EXPECT_LT(rel(gamma({0.5, 3.0}), {0.02144567055243064606, 0.0068653648372616779142}), 1e-13);
  EXPECT_LT(rel(recip_gamma({0.5, 3.0}), {42.294980209691680674, -13.539817708865499137}), 1e-13);
  EXPECT_LT(rel(gamma({3.7, -2.2}), {-1.8850260130418728659, -0.8497909415945894235}), 1e-13);
  EXPECT_LT(rel(gamma({-3.3, 1.7}), {-0.0048219202640267526341, 0.00090809531696547070817}),
            1e-12);
  EXPECT_LT(std::abs(log_gamma({100.0, 5.0}) - cplx(359.0086311027488142749, 23.00291194242365545003)),
            1e-11);
  EXPECT_LT(std::abs(log_gamma({2.5, 7.0}) - cplx(-6.159823261541295869089, 9.486522412573895589368)),
            1e-12);
  EXPECT_NEAR(log_gamma({10.0, 0.0}).real(), 12.801827480081469611, 1e-13);
}

TEST(Gamma, IntegerAndHalfIntegerValues) {
  double fact = 1.0;
  for (int n = 1; n <= 20; ++n) {
    EXPECT_LT(rel(gamma(cplx(n)), fact), 1e-14) << n;
    fact *= n;
  }
  EXPECT_LT(rel(gamma(cplx(0.5)), std::sqrt(kPi)), 1e-15);
  EXPECT_LT(rel(gamma(cplx(-0.5)), -2.0 * std::sqrt(kPi)), 1e-15);
}

TEST(Gamma, MatchesStirlingForLargeArgument) {
  for (cplx z : {cplx(40.0, 3.0), cplx(35.0, -20.0), cplx(60.0, 45.0)}) {
    const cplx d = log_gamma(z) - stirling_log_gamma(z);
    EXPECT_LT(std::abs(d.real()), 1e-12 * std::abs(stirling_log_gamma(z)));
    // Principal branch: imaginary parts agree modulo nothing.
    EXPECT_LT(std::abs(d.imag()), 1e-10);
  }
}

TEST(Gamma, Recurrence) {
  for (cplx z : {cplx(0.3, 0.7), cplx(-2.4, 1.1), cplx(5.5, -3.0), cplx(-0.7, -6.0)}) {
    EXPECT_LT(rel(gamma(z + 1.0), z * gamma(z)), 1e-13) << z;
  }
}

TEST(Gamma, ReflectionFormula) {
  for (cplx z : {cplx(0.3, 0.7), cplx(-2.4, 1.1), cplx(1.5, -3.0)}) {
    const cplx lhs = gamma(z) * gamma(1.0 - z);
    const cplx rhs = kPi / std::sin(kPi * z);
    EXPECT_LT(rel(lhs, rhs), 1e-13) << z;
  }
}

TEST(Gamma, SchwarzSymmetry) {
  for (cplx z : {cplx(0.3, 0.7), cplx(-2.4, 1.1), cplx(4.5, -9.0)}) {
    EXPECT_LT(rel(gamma(std::conj(z)), std::conj(gamma(z))), 1e-15) << z;
    EXPECT_LT(std::abs(log_gamma(std::conj(z + 3.0)) - std::conj(log_gamma(z + 3.0))), 1e-13);
  }
}

TEST(Gamma, ResidueLimitsAtPoles) {
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    const double eps = 1e-7;
    const cplx z(-k + eps, 0.0);
    const cplx res = (z + double(k)) * gamma(z);
    const double expect = (k % 2 == 0 ? 1.0 : -1.0) / fact;
    EXPECT_NEAR(res.real(), expect, 1e-6 * std::abs(expect)) << k;
  }
}

TEST(Gamma, ReciprocalVanishesAtPolesAndInvertsElsewhere) {
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(std::abs(recip_gamma(double(-k))), 0.0);
  for (cplx z : {cplx(0.2, 0.1), cplx(-3.5, 2.0), cplx(7.0, 1.0)}) {
    EXPECT_LT(std::abs(recip_gamma(z) * gamma(z) - 1.0), 1e-14);
  }
}

TEST(Gamma, PoleAndDomainErrors) {
  EXPECT_THROW(gamma(cplx(0.0)), PoleError);
  EXPECT_THROW(gamma(cplx(-3.0, 1e-14)), PoleError);
  EXPECT_NO_THROW(gamma(cplx(-3.0, 1e-6)));
  EXPECT_THROW(log_gamma(cplx(-0.5, 1.0)), DomainError);
  EXPECT_THROW(log_gamma_any_branch(-2.0), PoleError);
}

TEST(Gamma, AnyBranchLogExponentiatesBack) {
  for (cplx z : {cplx(-2.5, 0.3), cplx(-7.2, -1.0), cplx(0.4, 2.0)}) {
    EXPECT_LT(rel(std::exp(log_gamma_any_branch(z)), gamma(z)), 1e-12) << z;
  }
}

TEST(GammaResidueSum, MatchesDirectSum) {
  // Direct summation in plain factorial arithmetic.
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double a : {0.0, 1.0, 3.0}) {
      double s = 0.0, fact = 1.0;
      for (int k = 0; k < 40; ++k) {
        if (k > 0) fact *= k;
        s += (k % 2 ? -1.0 : 1.0) * std::exp(-0.5 * alpha * k * k - a * k) / fact;
      }
      EXPECT_NEAR(gamma_residue_sum(alpha, a), s, 1e-15);
    }
  }
}

TEST(GaussLegendre, ExactForPolynomialsAndSymmetric) {
  for (int n : {4, 8, 16, 32}) {
    const auto& r = gauss_legendre(n);
    double sw = 0.0;
    for (int i = 0; i < n; ++i) {
      sw += r.w[i];
      EXPECT_NEAR(r.x[i], -r.x[n - 1 - i], 1e-15);
    }
    EXPECT_NEAR(sw, 2.0, 1e-14);
    const int deg = 2 * n - 2;  // even monomial of maximal exact degree
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], deg);
    EXPECT_NEAR(s, 2.0 / (deg + 1), 1e-14);
  }
}
