#ifndef QSTAR_SERIES_HPP
#define QSTAR_SERIES_HPP

/// \file series.hpp
/// Truncated power series c_lead z^lead + ... + c_{lead+N} z^{lead+N} with
/// complex coefficients, and the arithmetic the operators are built from.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <utility>

#include "qstar/errors.hpp"
#include "qstar/qarith.hpp"

namespace qstar {

template <typename Real>
class TruncSeries {
 public:
  using Scalar = std::complex<Real>;
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  TruncSeries(int lead, Coeffs coeffs) : lead_(lead), coeffs_(std::move(coeffs)) {
    if (lead_ < 0) throw SeriesError("negative leading exponent");
    if (coeffs_.size() == 0) throw SeriesError("series needs at least one coefficient");
  }

  TruncSeries(int lead, std::initializer_list<Scalar> coeffs)
      : TruncSeries(lead, from_list(coeffs)) {}

  /// z^lead with N zero coefficients after it.
  static TruncSeries monomial(int lead, int order) {
    Coeffs c = Coeffs::Zero(order + 1);
    c(0) = Scalar(1);
    return TruncSeries(lead, std::move(c));
  }

  /// z^lead / (1 - z) truncated at order N: the Hadamard identity.
  static TruncSeries geometric(int lead, int order) {
    return TruncSeries(lead, Coeffs::Constant(order + 1, Scalar(1)));
  }

  int lead() const { return lead_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const { return coeffs_; }

  /// Coefficient at offset j (exponent lead + j).
  const Scalar& operator[](int j) const { return coeffs_(j); }

  /// Coefficient of z^k; zero outside the stored window.
  Scalar coefficient(int k) const {
    const int j = k - lead_;
    if (j < 0 || j > order()) return Scalar(0);
    return coeffs_(j);
  }

  TruncSeries truncated(int order) const {
    const int keep = std::min(order, this->order()) + 1;
    return TruncSeries(lead_, coeffs_.head(keep));
  }

  friend TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) {
    check_same_shape(f, g);
    return TruncSeries(f.lead_, f.coeffs_ + g.coeffs_);
  }

  friend TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) {
    check_same_shape(f, g);
    return TruncSeries(f.lead_, f.coeffs_ - g.coeffs_);
  }

  friend TruncSeries operator*(const Scalar& a, const TruncSeries& f) {
    return TruncSeries(f.lead_, a * f.coeffs_);
  }

 private:
  static Coeffs from_list(std::initializer_list<Scalar> list) {
    Coeffs c(static_cast<Eigen::Index>(list.size()));
    Eigen::Index i = 0;
    for (const auto& v : list) c(i++) = v;
    return c;
  }

  static void check_same_shape(const TruncSeries& f, const TruncSeries& g) {
    if (f.lead_ != g.lead_ || f.order() != g.order())
      throw SeriesError("series shapes differ");
  }

  int lead_;
  Coeffs coeffs_;
};

/// A member candidate of A_p: lead = p and unit leading coefficient.
template <typename Real>
class NormalizedMember {
 public:
  NormalizedMember(QContext<Real> ctx, TruncSeries<Real> series)
      : ctx_(ctx), series_(std::move(series)) {
    if (series_.lead() != ctx_.p())
      throw SeriesError("member series must start at z^p");
    if (series_[0] != typename TruncSeries<Real>::Scalar(1))
      throw SeriesError("member series must have unit leading coefficient");
  }

  const QContext<Real>& ctx() const { return ctx_; }
  const TruncSeries<Real>& series() const { return series_; }
  int order() const { return series_.order(); }

  /// a_{p+n}.
  std::complex<Real> a(int n) const { return series_.coefficient(ctx_.p() + n); }

 private:
  QContext<Real> ctx_;
  TruncSeries<Real> series_;
};

/// Coefficientwise product matched by exponent. Both series must share the
/// leading exponent; the longer one is truncated to the shorter.
template <typename Real>
TruncSeries<Real> hadamard(const TruncSeries<Real>& f, const TruncSeries<Real>& g) {
  if (f.lead() != g.lead())
    throw SeriesError("hadamard product of series with different valence");
  const int n = std::min(f.order(), g.order()) + 1;
  return TruncSeries<Real>(f.lead(),
                           f.coeffs().head(n).cwiseProduct(g.coeffs().head(n)));
}

/// Ordinary series product; the result is known up to min(Nf, Ng).
template <typename Real>
TruncSeries<Real> cauchy_product(const TruncSeries<Real>& f, const TruncSeries<Real>& g) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  const int order = std::min(f.order(), g.order());
  Coeffs c = Coeffs::Zero(order + 1);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) c(i + j) += f[i] * g[j];
  return TruncSeries<Real>(f.lead() + g.lead(), std::move(c));
}

/// h with h * g = f to the common truncation order.
template <typename Real>
TruncSeries<Real> ratio(const TruncSeries<Real>& f, const TruncSeries<Real>& g) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  using Scalar = typename TruncSeries<Real>::Scalar;
  if (g[0] == Scalar(0)) throw SeriesError("division by a series with zero leading coefficient");
  if (f.lead() < g.lead()) throw SeriesError("quotient would need negative exponents");
  const int order = std::min(f.order(), g.order());
  Coeffs h(order + 1);
  for (int n = 0; n <= order; ++n) {
    Scalar acc = f[n];
    for (int k = 1; k <= n; ++k) acc -= g[k] * h(n - k);
    h(n) = acc / g[0];
  }
  return TruncSeries<Real>(f.lead() - g.lead(), std::move(h));
}

/// z^k for k >= 0 by repeated squaring (exact at z = 0).
template <typename Real>
std::complex<Real> ipow(std::complex<Real> z, int k) {
  std::complex<Real> result(1);
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

/// Horner evaluation of the truncated polynomial.
template <typename Real>
std::complex<Real> evaluate(const TruncSeries<Real>& f, const std::complex<Real>& z) {
  std::complex<Real> acc(0);
  for (int j = f.order(); j >= 0; --j) acc = acc * z + f[j];
  return acc * ipow(z, f.lead());
}

/// Geometric majorant |c_{lead+j}| <= scale * ratio^j for the coefficients
/// beyond the truncation order.
template <typename Real>
struct GeometricMajorant {
  Real scale = 0;
  Real ratio = 0;
};

/// Upper bound on |sum_{j>N} c_{lead+j} z^{lead+j}| for |z| <= r under the
/// supplied majorant: scale * (ratio r)^{N+1} / (1 - ratio r).
template <typename Real>
Real tail_bound(const TruncSeries<Real>& f, Real r, const GeometricMajorant<Real>& m) {
  if (!(r > Real(0) && r < Real(1))) throw ParameterError("tail_bound needs r in (0, 1)");
  if (m.scale == Real(0)) return Real(0);
  const Real x = m.ratio * r;
  if (!(x < Real(1))) throw SeriesError("majorant ratio >= 1/r: tail is unbounded");
  return m.scale * std::pow(x, f.order() + 1) / (Real(1) - x);
}

}  // namespace qstar

#endif  // QSTAR_SERIES_HPP
