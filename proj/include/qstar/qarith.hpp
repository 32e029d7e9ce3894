#ifndef QSTAR_QARITH_HPP
#define QSTAR_QARITH_HPP

/// \file qarith.hpp
/// Scalar q-arithmetic: q-numbers, q-factorials, q-Pochhammer symbols and
/// the q-Gamma function at positive integers.
///
/// Everything here is a pure function of its arguments and is templated on
/// the real scalar type.

#include <cmath>
#include <string>

#include "qstar/errors.hpp"

namespace qstar {

/// How the kernel coefficients Lambda_{n+p} are formed.
///
/// LimitConsistent uses [mu+1,q]_n / [n,q]!, which tends to the binomial
/// coefficients of (1-z)^{-(mu+1)} as q -> 1-. Literal uses the shifted
/// form [mu+1,q]_{n+p} / [n+p,q]!.
enum class LambdaConvention { LimitConsistent, Literal };

inline const char* to_string(LambdaConvention c) {
  return c == LambdaConvention::LimitConsistent ? "limit" : "literal";
}

/// Valence p, base q and operator order mu shared by every operator.
template <typename Real>
class QContext {
 public:
  QContext(int p, Real q, Real mu,
           LambdaConvention convention = LambdaConvention::LimitConsistent)
      : p_(p), q_(q), mu_(mu), convention_(convention) {
    if (p < 1) throw ParameterError("valence p must be a positive integer");
    if (!(q > Real(0) && q < Real(1)))
      throw ParameterError("q must lie strictly inside (0, 1)");
    if (!(mu > Real(-1))) throw ParameterError("mu must satisfy mu > -1");
  }

  int p() const { return p_; }
  Real q() const { return q_; }
  Real mu() const { return mu_; }
  LambdaConvention convention() const { return convention_; }

 private:
  int p_;
  Real q_;
  Real mu_;
  LambdaConvention convention_;
};

/// [n,q] = 1 + q + ... + q^(n-1), summed explicitly so that q close to 1
/// does not lose digits to the cancellation in (1 - q^n) / (1 - q).
template <typename Real>
Real q_number(int n, Real q) {
  if (n < 0) throw ParameterError("q_number needs n >= 0");
  Real sum = 0;
  Real power = 1;
  for (int k = 0; k < n; ++k) {
    sum += power;
    power *= q;
  }
  return sum;
}

/// [x,q] = (1 - q^x) / (1 - q) for real x. Integer arguments are routed to
/// the explicit sum; otherwise expm1/log1p keep the quotient accurate as
/// q -> 1-.
template <typename Real>
Real q_number_real(Real x, Real q) {
  using std::expm1;
  using std::floor;
  using std::log1p;
  if (x >= Real(0) && x <= Real(1 << 20) && floor(x) == x)
    return q_number(static_cast<int>(x), q);
  const Real one_minus_q = Real(1) - q;
  return -expm1(x * log1p(-one_minus_q)) / one_minus_q;
}

/// [n,q]! for n >= 0. Negative arguments are rejected.
template <typename Real>
Real q_factorial(int n, Real q) {
  if (n < 0) throw ParameterError("q_factorial is defined for n >= 0 only");
  Real result = 1;
  for (int k = 1; k <= n; ++k) result *= q_number(k, q);
  return result;
}

/// [x,q]_n = [x,q][x+1,q]...[x+n-1,q], with [x,q]_0 = 1.
template <typename Real>
Real q_pochhammer(Real x, int n, Real q) {
  if (!(x > Real(0))) throw ParameterError("q_pochhammer needs x > 0");
  if (n < 0) throw ParameterError("q_pochhammer needs n >= 0");
  Real result = 1;
  for (int k = 0; k < n; ++k) result *= q_number_real(x + Real(k), q);
  return result;
}

/// Gamma_q(n) for positive integers, from Gamma_q(x+1) = [x,q] Gamma_q(x)
/// and Gamma_q(1) = 1.
template <typename Real>
Real q_gamma_int(int n, Real q) {
  if (n < 1) throw ParameterError("q_gamma_int needs a positive integer");
  return q_factorial(n - 1, q);
}

/// Classical rising factorial (x)_n, used as the q -> 1- reference.
template <typename Real>
Real rising_factorial(Real x, int n) {
  Real result = 1;
  for (int k = 0; k < n; ++k) result *= x + Real(k);
  return result;
}

}  // namespace qstar

#endif  // QSTAR_QARITH_HPP
