#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "spdsphere/error.hpp"
#include "spdsphere/orthopoly.hpp"

using namespace spdsphere;

namespace {

std::vector<double> grid(int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(-1.0 + 2.0 * i / (points - 1));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::NumericalError;
}

}  // namespace

TEST(Gegenbauer, Examples) {
  EXPECT_NEAR(gegenbauer(2, 3, 1.0), 3.0, 1e-14);
  EXPECT_NEAR(gegenbauer(0, 5, 0.3), 1.0, 0.0);
  EXPECT_NEAR(gegenbauer(2, 2, 0.5), oracle::legendre(2, 0.5), 1e-15);
  EXPECT_NEAR(gegenbauer(2, 2, 0.5), -0.125, 1e-15);
}

TEST(Gegenbauer, LegendreAtDimensionTwo) {
  for (int n = 0; n <= 40; ++n)
    for (double t : grid(21)) EXPECT_NEAR(gegenbauer(n, 2, t), oracle::legendre(n, t), 1e-12) << n << " " << t;
}

// m = 3 is lambda = 1: Chebyshev polynomials of the second kind.
TEST(Gegenbauer, ChebyshevSecondKindAtDimensionThree) {
  for (int n = 0; n <= 40; ++n) {
    for (double theta = 0.1; theta < 3.1; theta += 0.25) {
      const double expected = std::sin((n + 1) * theta) / std::sin(theta);
      EXPECT_NEAR(gegenbauer(n, 3, std::cos(theta)), expected, 1e-11 * (n + 1));
    }
  }
}

TEST(Gegenbauer, Normalization) {
  for (int n = 0; n <= 50; ++n) {
    for (int m = 2; m <= 10; ++m) {
      const double exact = static_cast<double>(oracle::binomial(n + m - 2, n));
      EXPECT_NEAR(gegenbauer(n, m, 1.0), exact, 1e-9 * exact) << n << " " << m;
    }
  }
}

TEST(Gegenbauer, ParityAndBoundedness) {
  for (int m = 2; m <= 8; ++m) {
    for (int l = 0; l <= 60; ++l) {
      const double at_one = gegenbauer_at_one(l, m);
      for (double t : grid(41)) {
        const double sign = l % 2 == 0 ? 1.0 : -1.0;
        EXPECT_LE(std::abs(gegenbauer(l, m, -t) - sign * gegenbauer(l, m, t)), 1e-10 * at_one);
        EXPECT_LE(std::abs(gegenbauer(l, m, t)), at_one * (1 + 1e-10));
      }
    }
  }
}

TEST(Gegenbauer, Errors) {
  EXPECT_EQ(code_of([] { gegenbauer(3, 1, 0.2); }), ErrorCode::InvalidDimension);
  EXPECT_EQ(code_of([] { gegenbauer(3, 3, 1.0 + 1e-9); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { gegenbauer(10001, 3, 0.5); }), ErrorCode::UnsupportedDegree);
  EXPECT_NO_THROW(gegenbauer(3, 3, 1.0 + 1e-13));
  EXPECT_NO_THROW(gegenbauer(10000, 3, 0.5));
}

TEST(CirclePoly, Examples) {
  EXPECT_EQ(circle_poly(0, -0.7), 1.0);
  EXPECT_NEAR(circle_poly(1, 1.0), 2.0, 1e-15);
  const double theta = std::numbers::pi / 4;
  EXPECT_NEAR(circle_poly(4, std::cos(theta)), 0.5 * std::cos(4 * theta), 1e-14);
  EXPECT_NEAR(circle_poly(4, std::cos(theta)), -0.5, 1e-14);
}

TEST(CirclePoly, TrigonometricIdentity) {
  for (int k = 1; k <= 64; ++k) {
    for (int i = 0; i < 100; ++i) {
      const double theta = std::numbers::pi * i / 99.0;
      EXPECT_LE(std::abs(circle_poly(k, std::cos(theta)) - (2.0 / k) * std::cos(k * theta)), 1e-10);
    }
  }
}

TEST(CirclePoly, OutOfRange) {
  EXPECT_EQ(code_of([] { circle_poly(2, -1.5); }), ErrorCode::OutOfRange);
}

TEST(Jacobi, Examples) {
  EXPECT_EQ(jacobi(0, 0.5, 3.0, 0.1), 1.0);
  EXPECT_NEAR(jacobi(1, 1.0, 0.0, 0.0), 0.5, 1e-15);
  const double oracle = std::tgamma(4.5) / (std::tgamma(4.0) * std::tgamma(1.5));
  EXPECT_NEAR(jacobi(3, 0.5, 0.0, 1.0), oracle, 1e-13);
  EXPECT_NEAR(jacobi(3, 0.5, 0.0, 1.0), 2.1875, 1e-13);
}

// Legendre is the (0,0) member; Gegenbauer with λ = α + 1/2 is proportional
// to the symmetric (α,α) member.
TEST(Jacobi, SpecialCases) {
  for (int l = 0; l <= 30; ++l) {
    for (double t : grid(17)) {
      EXPECT_NEAR(jacobi(l, 0.0, 0.0, t), oracle::legendre(l, t), 1e-12);
      const double alpha = 1.0;  // m = 4
      const double ratio = jacobi(l, alpha, alpha, t) / jacobi_at_one(l, alpha);
      EXPECT_NEAR(ratio, ratio_at(l, 4, t), 1e-11);
    }
  }
}

TEST(Jacobi, NormalizationForEveryFamily) {
  for (double beta : {-0.5, 0.0, 1.0, 3.0}) {
    for (int d : {2, 4, 8, 16}) {
      const double alpha = (d - 2) / 2.0;
      for (int l = 0; l <= 40; ++l) {
        const double oracle = std::tgamma(l + alpha + 1) / (std::tgamma(l + 1.0) * std::tgamma(alpha + 1));
        EXPECT_NEAR(jacobi(l, alpha, beta, 1.0), oracle, 1e-10 * oracle) << l << " " << alpha << " " << beta;
      }
      for (double t : grid(11)) {
        const double closed = (alpha + 1) + (alpha + beta + 2) * (t - 1) / 2;
        EXPECT_NEAR(jacobi(1, alpha, beta, t), closed, 1e-14);
      }
    }
  }
}

TEST(Jacobi, InvalidParameters) {
  EXPECT_EQ(code_of([] { jacobi(2, -1.0, 0.0, 0.0); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([] { jacobi(2, 0.0, -1.5, 0.0); }), ErrorCode::InvalidParameters);
}

TEST(RatioAt, Examples) {
  for (int l : {0, 3, 17}) EXPECT_NEAR(ratio_at(l, 5, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(ratio_at(5, 4, -1.0), -1.0, 1e-14);
  EXPECT_NEAR(ratio_at(2, 2, 0.0), -0.5, 1e-15);
}

TEST(RatioAt, DecaysInDegree) {
  for (double t : {0.0, 0.5, -0.5, 0.9, -0.9}) {
    for (int m : {2, 3, 5}) {
      double low = 0.0;
      double high = 0.0;
      for (int l = 5; l <= 20; ++l) low = std::max(low, std::abs(ratio_at(l, m, t)));
      for (int l = 80; l <= 120; ++l) high = std::max(high, std::abs(ratio_at(l, m, t)));
      EXPECT_LT(high, low) << "t=" << t << " m=" << m;
    }
  }
}

TEST(Orthopoly, LongDoubleInstantiation) {
  EXPECT_NEAR(static_cast<double>(gegenbauer<long double>(7, 3, 0.25L)), gegenbauer(7, 3, 0.25), 1e-13);
}
