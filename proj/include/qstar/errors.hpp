#ifndef QSTAR_ERRORS_HPP
#define QSTAR_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace qstar {

// Invalid parameter (q outside (0,1), B >= A, eta <= -p, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structural problem with a series operation (valence mismatch, division
// by a series with zero leading coefficient, insufficient truncation).
class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A pointwise evaluation hit a pole or an unusable sample. Carries the
// offending point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::complex<double> witness)
      : std::runtime_error(what), witness_(witness) {}

  std::complex<double> witness() const { return witness_; }

 private:
  std::complex<double> witness_;
};

}  // namespace qstar

#endif  // QSTAR_ERRORS_HPP
