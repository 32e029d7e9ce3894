#ifndef QSTAR_OPERATORS_HPP
#define QSTAR_OPERATORS_HPP

/// \file operators.hpp
/// q-difference operator, the kernel Phi_p(q, mu; z) and the convolution
/// operator L_q^{mu+p-1}, the classical Ruscheweyh limit, and the q-Bernardi
/// integral operator in series and Jackson-sum form.

#include <cmath>
#include <complex>
#include <limits>

#include "qstar/qarith.hpp"
#include "qstar/series.hpp"

namespace qstar {

/// Termwise c_k z^k -> [k,q] c_k z^{k-1}. Equals (f(z) - f(qz)) / (z(1-q)).
template <typename Real>
TruncSeries<Real> q_derivative(const TruncSeries<Real>& f, Real q) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  if (f.lead() == 0) {
    // The constant term is annihilated; the series keeps lead 0.
    if (f.order() == 0) return TruncSeries<Real>(0, Coeffs::Zero(1));
    Coeffs c(f.order());
    for (int j = 1; j <= f.order(); ++j) c(j - 1) = q_number(j, q) * f[j];
    return TruncSeries<Real>(0, std::move(c));
  }
  Coeffs c(f.order() + 1);
  for (int j = 0; j <= f.order(); ++j) c(j) = q_number(f.lead() + j, q) * f[j];
  return TruncSeries<Real>(f.lead() - 1, std::move(c));
}

/// Lambda_{n+p}, n >= 1, under the context's convention.
template <typename Real>
Real lambda_coeff(int n, const QContext<Real>& ctx) {
  if (n < 1) throw ParameterError("lambda_coeff needs n >= 1");
  const int length =
      ctx.convention() == LambdaConvention::LimitConsistent ? n : n + ctx.p();
  // [mu+1,q]_m / [m,q]! as a product of ratios [mu+1+j,q] / [j+1,q].
  Real value = 1;
  for (int j = 0; j < length; ++j)
    value *= q_number_real(ctx.mu() + Real(1 + j), ctx.q()) / q_number(j + 1, ctx.q());
  return value;
}

/// Lambda_{p+1} ... Lambda_{p+N}, precomputed once per context.
template <typename Real>
class LambdaTable {
 public:
  using Values = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  LambdaTable(const QContext<Real>& ctx, int order) : ctx_(ctx), values_(order) {
    for (int n = 1; n <= order; ++n) values_(n - 1) = lambda_coeff(n, ctx);
  }

  const QContext<Real>& ctx() const { return ctx_; }
  int order() const { return static_cast<int>(values_.size()); }
  const Values& values() const { return values_; }

  /// Lambda_{n+p}; n = 0 gives the unit weight of the leading term.
  Real operator()(int n) const { return n == 0 ? Real(1) : values_(n - 1); }

 private:
  QContext<Real> ctx_;
  Values values_;
};

/// Phi_p(q, mu; z) = z^p + sum Lambda_{n+p} z^{n+p}, truncated at order N.
template <typename Real>
TruncSeries<Real> kernel_series(const QContext<Real>& ctx, int order) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  const LambdaTable<Real> table(ctx, order);
  Coeffs c(order + 1);
  for (int n = 0; n <= order; ++n) c(n) = table(n);
  return TruncSeries<Real>(ctx.p(), std::move(c));
}

/// L_q^{mu+p-1} f = Phi_p * f for any series of lead p.
template <typename Real>
TruncSeries<Real> apply_L(const QContext<Real>& ctx, const TruncSeries<Real>& f) {
  return hadamard(kernel_series(ctx, f.order()), f);
}

template <typename Real>
TruncSeries<Real> apply_L(const NormalizedMember<Real>& f) {
  return apply_L(f.ctx(), f.series());
}

/// f * z^p / (1-z)^{mu+1}: coefficient factor (mu+1)_n / n! at z^{n+p}.
template <typename Real>
TruncSeries<Real> ruscheweyh_classical(const TruncSeries<Real>& f, Real mu) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  Coeffs c(f.order() + 1);
  Real factor = 1;
  for (int n = 0; n <= f.order(); ++n) {
    if (n > 0) factor *= (mu + Real(n)) / Real(n);
    c(n) = factor * f[n];
  }
  return TruncSeries<Real>(f.lead(), std::move(c));
}

/// Parameters of the q-Bernardi operator F_{eta,p}.
template <typename Real>
class BernardiParams {
 public:
  /// Non-integer eta is only accepted for the Jackson-sum evaluation when
  /// allow_fractional is set (principal powers are used).
  BernardiParams(Real eta, QContext<Real> ctx, bool allow_fractional = false)
      : eta_(eta), ctx_(ctx), allow_fractional_(allow_fractional) {
    if (!(eta + Real(ctx.p()) > Real(0))) throw ParameterError("Bernardi operator needs eta > -p");
  }

  Real eta() const { return eta_; }
  const QContext<Real>& ctx() const { return ctx_; }
  bool allow_fractional() const { return allow_fractional_; }
  bool integer_eta() const { return std::floor(eta_) == eta_; }

  /// [eta+p,q] / [eta+p+n,q].
  Real factor(int n) const {
    const Real base = eta_ + Real(ctx_.p());
    return q_number_real(base, ctx_.q()) / q_number_real(base + Real(n), ctx_.q());
  }

 private:
  Real eta_;
  QContext<Real> ctx_;
  bool allow_fractional_;
};

/// F_{eta,p} f as a series: termwise scaling by [eta+p,q] / [eta+p+n,q].
template <typename Real>
TruncSeries<Real> bernardi_series(const TruncSeries<Real>& f, const BernardiParams<Real>& bp) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  Coeffs c(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) c(n) = bp.factor(n) * f[n];
  return TruncSeries<Real>(f.lead(), std::move(c));
}

template <typename Real>
TruncSeries<Real> bernardi_series(const NormalizedMember<Real>& f, const BernardiParams<Real>& bp) {
  return bernardi_series(f.series(), bp);
}

/// F_{eta,p} f(z) from the Jackson integral
///   ([eta+p,q] / z^eta) * z (1-q) sum_k q^k g(q^k z),  g(t) = t^{eta-1} f(t).
/// The sum stops once q^k < 1e-12 or after `terms` terms.
template <typename Real>
std::complex<Real> bernardi_jackson(const NormalizedMember<Real>& f, const BernardiParams<Real>& bp,
                                    const std::complex<Real>& z, int terms) {
  using Complex = std::complex<Real>;
  if (terms < 1) throw ParameterError("Jackson sum needs at least one term");
  if (!bp.integer_eta() && !bp.allow_fractional())
    throw ParameterError("non-integer eta needs an explicit branch choice (allow_fractional)");
  if (!(std::abs(z) < Real(1))) throw ParameterError("Jackson sum needs |z| < 1");
  if (z == Complex(0)) return Complex(0);

  const Real q = bp.ctx().q();
  const Real eta = bp.eta();
  const bool integral = bp.integer_eta();
  const auto power = [&](const Complex& t, Real e) -> Complex {
    if (integral) {
      const int k = static_cast<int>(e);
      return k >= 0 ? ipow(t, k) : Complex(1) / ipow(t, -k);
    }
    return std::pow(t, e);
  };

  Complex sum(0);
  Real qk = 1;
  for (int k = 0; k < terms && qk >= Real(1e-12); ++k) {
    const Complex t = qk * z;
    sum += qk * power(t, eta - Real(1)) * evaluate(f.series(), t);
    qk *= q;
  }
  const Real scale = q_number_real(eta + Real(f.ctx().p()), q);
  return scale * z * (Real(1) - q) * sum / power(z, eta);
}

}  // namespace qstar

#endif  // QSTAR_OPERATORS_HPP
