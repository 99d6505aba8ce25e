#ifndef SPDSPHERE_ORTHOPOLY_HPP
#define SPDSPHERE_ORTHOPOLY_HPP

// Zonal polynomial families used by the kernel expansions:
//
//   circle_poly   P_k^1,   P_0^1 = 1, P_k^1(cos θ) = (2/k) cos kθ
//   gegenbauer    P_n^m,   ultraspherical with λ = (m-1)/2, P_n^m(1) = C(n+m-2, n)
//   jacobi        P_l^(α,β), standard normalization P_l(1) = C(l+α, l)
//
// All evaluators are templated on the scalar type and run three-term
// recurrences with incrementally built coefficients. Degrees above
// kMaxDegree are rejected.

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <type_traits>

#include "spdsphere/error.hpp"

namespace spdsphere {

inline constexpr int kMaxDegree = 10000;
inline constexpr double kArgumentSlack = 1e-12;

template <typename Real>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

namespace detail {

inline void check_degree(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidParameters, "negative degree " + std::to_string(n));
  if (n > kMaxDegree) throw Error(ErrorCode::UnsupportedDegree, "degree " + std::to_string(n) + " exceeds 10000");
}

inline void check_dimension(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "sphere dimension m must be >= 2, got " + std::to_string(m));
}

template <typename Real>
Real checked_argument(Real t) {
  using std::abs;
  if (!(abs(t) <= Real(1) + Real(kArgumentSlack)))
    throw Error(ErrorCode::OutOfRange, "argument outside [-1,1]");
  if (t > Real(1)) return Real(1);
  if (t < Real(-1)) return Real(-1);
  return t;
}

}  // namespace detail

/// C(n+m-2, n), the value of P_n^m at 1, as a product of m-2 ratios.
template <typename Real = double>
Real gegenbauer_at_one(int n, int m) {
  detail::check_degree(n);
  detail::check_dimension(m);
  Real value(1);
  for (int i = 1; i <= m - 2; ++i) value *= Real(n + i) / Real(i);
  return value;
}

/// Normalized values P_l^m(t) / P_l^m(1) for l = 0..n. The ratio recurrence
/// keeps every iterate in [-1,1], so large degrees do not overflow.
template <typename Real>
VectorX<Real> gegenbauer_ratio_all(int n, int m, Real t) {
  detail::check_degree(n);
  detail::check_dimension(m);
  t = detail::checked_argument(t);
  const Real lambda = Real(m - 1) / Real(2);
  VectorX<Real> r(n + 1);
  r(0) = Real(1);
  if (n >= 1) r(1) = t;
  for (int l = 2; l <= n; ++l) {
    r(l) = (Real(2) * t * (Real(l) + lambda - Real(1)) * r(l - 1) - Real(l - 1) * r(l - 2)) /
           (Real(l) + Real(2) * lambda - Real(1));
  }
  return r;
}

template <typename Real>
VectorX<Real> gegenbauer_all(int n, int m, Real t) {
  VectorX<Real> values = gegenbauer_ratio_all(n, m, t);
  Real at_one(1);
  for (int l = 1; l <= n; ++l) {
    at_one *= Real(l + m - 2) / Real(l);
    values(l) *= at_one;
  }
  return values;
}

template <typename Real>
Real gegenbauer(int n, int m, Real t) {
  return gegenbauer_ratio_all(n, m, t)(n) * gegenbauer_at_one<Real>(n, m);
}

/// P_n^m(t) / P_n^m(1); tends to 0 in n for fixed |t| < 1.
template <typename Real>
Real ratio_at(int n, int m, Real t) {
  return gegenbauer_ratio_all(n, m, t)(n);
}

/// P_k^1 for k = 0..n, through the Chebyshev recurrence T_k = 2t T_{k-1} - T_{k-2}.
template <typename Real>
VectorX<Real> circle_poly_all(int n, Real t) {
  detail::check_degree(n);
  t = detail::checked_argument(t);
  VectorX<Real> values(n + 1);
  Real prev(1);
  Real cur = t;
  values(0) = Real(1);
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      const Real next = Real(2) * t * cur - prev;
      prev = cur;
      cur = next;
    }
    values(k) = Real(2) * cur / Real(k);
  }
  return values;
}

template <typename Real>
Real circle_poly(int k, Real t) {
  return circle_poly_all(k, t)(k);
}

/// Generalized binomial C(l+α, l) = Γ(l+α+1) / (Γ(l+1) Γ(α+1)).
template <typename Real = double>
Real jacobi_at_one(int l, Real alpha) {
  using std::exp;
  using std::lgamma;
  detail::check_degree(l);
  if (!(alpha > Real(-1))) throw Error(ErrorCode::InvalidParameters, "jacobi requires alpha > -1");
  return exp(lgamma(Real(l) + alpha + Real(1)) - lgamma(Real(l) + Real(1)) - lgamma(alpha + Real(1)));
}

template <typename Real>
VectorX<Real> jacobi_all(int n, Real alpha, Real beta, Real t) {
  detail::check_degree(n);
  if (!(alpha > Real(-1)) || !(beta > Real(-1)))
    throw Error(ErrorCode::InvalidParameters, "jacobi requires alpha > -1 and beta > -1");
  t = detail::checked_argument(t);
  VectorX<Real> p(n + 1);
  p(0) = Real(1);
  if (n >= 1) p(1) = (alpha + Real(1)) + (alpha + beta + Real(2)) * (t - Real(1)) / Real(2);
  const Real ab = alpha + beta;
  const Real a2b2 = alpha * alpha - beta * beta;
  for (int l = 2; l <= n; ++l) {
    const Real lr(l);
    const Real c = Real(2) * lr + ab;
    const Real lead = Real(2) * lr * (lr + ab) * (c - Real(2));
    const Real mid = (c - Real(1)) * (c * (c - Real(2)) * t + a2b2);
    const Real tail = Real(2) * (lr + alpha - Real(1)) * (lr + beta - Real(1)) * c;
    p(l) = (mid * p(l - 1) - tail * p(l - 2)) / lead;
  }
  return p;
}

template <typename Real>
Real jacobi(int l, Real alpha, Real beta, Real t) {
  return jacobi_all(l, alpha, beta, t)(l);
}

}  // namespace spdsphere

#endif  // SPDSPHERE_ORTHOPOLY_HPP
