#ifndef QSTAR_JANOWSKI_HPP
#define QSTAR_JANOWSKI_HPP

#include <complex>

#include "qstar/errors.hpp"

namespace qstar {

/// The pair (A, B) of the circular target domain (1+Az)/(1+Bz),
/// with -1 <= B < A <= 1.
template <typename Real>
class JanowskiParams {
 public:
  JanowskiParams(Real A, Real B) : A_(A), B_(B) {
    if (!(Real(-1) <= B && B < A && A <= Real(1)))
      throw ParameterError("Janowski parameters need -1 <= B < A <= 1");
  }

  Real A() const { return A_; }
  Real B() const { return B_; }
  Real width() const { return A_ - B_; }

 private:
  Real A_;
  Real B_;
};

/// (1 + A z) / (1 + B z).
template <typename Real>
std::complex<Real> janowski_value(const std::complex<Real>& z, const JanowskiParams<Real>& jp) {
  const std::complex<Real> den = Real(1) + jp.B() * z;
  if (den == std::complex<Real>(0))
    throw EvaluationError("pole of the Janowski function",
                          std::complex<double>(double(z.real()), double(z.imag())));
  return (Real(1) + jp.A() * z) / den;
}

}  // namespace qstar

#endif  // QSTAR_JANOWSKI_HPP
