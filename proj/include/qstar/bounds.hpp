#ifndef QSTAR_BOUNDS_HPP
#define QSTAR_BOUNDS_HPP

/// \file bounds.hpp
/// Closed-form coefficient, Fekete-Szego and third-coefficient bounds for
/// S*_p(q, mu, A, B) and for its image under the q-Bernardi operator, and
/// the functionals they bound.

#include <algorithm>
#include <cmath>
#include <complex>

#include "qstar/janowski.hpp"
#include "qstar/operators.hpp"
#include "qstar/qarith.hpp"
#include "qstar/series.hpp"

namespace qstar {

/// psi_n = [p,q] / ([n+p,q] - [p,q]). The denominator is evaluated as
/// q^p [n,q], which is the same number without the subtraction.
template <typename Real>
Real psi(int n, const QContext<Real>& ctx) {
  if (n < 1) throw ParameterError("psi needs n >= 1");
  const Real q = ctx.q();
  return q_number(ctx.p(), q) / (std::pow(q, ctx.p()) * q_number(n, q));
}

template <typename Real>
class PsiTable {
 public:
  using Values = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  PsiTable(const QContext<Real>& ctx, int order) : ctx_(ctx), values_(order) {
    for (int n = 1; n <= order; ++n) values_(n - 1) = psi(n, ctx);
  }

  const QContext<Real>& ctx() const { return ctx_; }
  const Values& values() const { return values_; }
  Real operator()(int n) const { return values_(n - 1); }

 private:
  QContext<Real> ctx_;
  Values values_;
};

/// Bound on |a_{p+n}|: (A-B) psi_n / Lambda_{n+p} * prod_{t<n} (1 + (A-B) psi_t).
template <typename Real>
Real coeff_bound(int n, const QContext<Real>& ctx, const JanowskiParams<Real>& jp) {
  if (n < 1) throw ParameterError("coeff_bound needs n >= 1");
  const Real width = jp.width();
  const Real qp = q_number(ctx.p(), ctx.q());
  Real product = 1;
  for (int t = 1; t < n; ++t)
    product *= Real(1) + qp * width / (q_number(ctx.p() + t, ctx.q()) - qp);
  return width * psi(n, ctx) / lambda_coeff(n, ctx) * product;
}

/// Geometric majorant for Lambda_{p+j} |a_{p+j}|, j > N, derived from the
/// product bound: psi_t decreases, so each further factor is at most
/// 1 + (A-B) psi_{N+1}.
template <typename Real>
GeometricMajorant<Real> coefficient_majorant(const QContext<Real>& ctx,
                                            const JanowskiParams<Real>& jp, int order) {
  const Real ratio = Real(1) + jp.width() * psi(order + 1, ctx);
  const Real at_next = coeff_bound(order + 1, ctx, jp) * lambda_coeff(order + 1, ctx);
  return {at_next / std::pow(ratio, order + 1), ratio};
}

/// upsilon = (B - (A-B) psi_1) + Lambda_{p+2} psi_1^2 / (Lambda_{p+1}^2 psi_2) (A-B) lambda.
template <typename Real>
std::complex<Real> fekete_szego_upsilon(const std::complex<Real>& lambda, const QContext<Real>& ctx,
                                        const JanowskiParams<Real>& jp) {
  const Real psi1 = psi(1, ctx);
  const Real psi2 = psi(2, ctx);
  const Real lam1 = lambda_coeff(1, ctx);
  const Real lam2 = lambda_coeff(2, ctx);
  const Real width = jp.width();
  return (jp.B() - width * psi1) + lam2 * psi1 * psi1 / (lam1 * lam1 * psi2) * width * lambda;
}

/// The lambda at which upsilon vanishes.
template <typename Real>
std::complex<Real> fekete_szego_null_lambda(const QContext<Real>& ctx, const JanowskiParams<Real>& jp) {
  const Real psi1 = psi(1, ctx);
  const Real psi2 = psi(2, ctx);
  const Real lam1 = lambda_coeff(1, ctx);
  const Real lam2 = lambda_coeff(2, ctx);
  const Real width = jp.width();
  return -(jp.B() - width * psi1) * lam1 * lam1 * psi2 / (width * lam2 * psi1 * psi1);
}

/// (A-B) psi_2 / Lambda_{p+2} * max{1, |upsilon|}.
template <typename Real>
Real fekete_szego_bound(const std::complex<Real>& lambda, const QContext<Real>& ctx,
                        const JanowskiParams<Real>& jp) {
  const Real base = jp.width() * psi(2, ctx) / lambda_coeff(2, ctx);
  return base * std::max(Real(1), std::abs(fekete_szego_upsilon(lambda, ctx, jp)));
}

/// |a_{p+2} - lambda a_{p+1}^2|.
template <typename Real>
Real fekete_szego_value(const TruncSeries<Real>& f, int p, const std::complex<Real>& lambda) {
  if (f.lead() != p || f.order() < 2)
    throw SeriesError("Fekete-Szego functional needs a_{p+1} and a_{p+2}");
  return std::abs(f[2] - lambda * f[1] * f[1]);
}

template <typename Real>
Real fekete_szego_value(const NormalizedMember<Real>& f, const std::complex<Real>& lambda) {
  return fekete_szego_value(f.series(), f.ctx().p(), lambda);
}

/// |a_{p+3} - ((q+2)/(q^2+q+1)) (Lambda_1 Lambda_2 / Lambda_3) a_{p+2} a_{p+1}
///   + (1/[3,q]) (Lambda_1^3 / Lambda_3) a_{p+1}^3|.
template <typename Real>
Real third_functional_value(const NormalizedMember<Real>& f) {
  if (f.order() < 3) throw SeriesError("third-coefficient functional needs a_{p+3}");
  const auto& ctx = f.ctx();
  const Real q = ctx.q();
  const Real lam1 = lambda_coeff(1, ctx);
  const Real lam2 = lambda_coeff(2, ctx);
  const Real lam3 = lambda_coeff(3, ctx);
  const Real middle = (q + Real(2)) / (q * q + q + Real(1)) * lam1 * lam2 / lam3;
  const Real cubic = lam1 * lam1 * lam1 / (q_number(3, q) * lam3);
  const auto a1 = f.a(1);
  const auto a2 = f.a(2);
  const auto a3 = f.a(3);
  return std::abs(a3 - middle * a2 * a1 + cubic * a1 * a1 * a1);
}

/// (A-B) (4(2B-1)^2 + 1) / (8 Lambda_{3+p}) psi_3. Note 4(2B-1)^2 + 1 = 16B^2 - 16B + 5.
template <typename Real>
Real third_functional_bound(const QContext<Real>& ctx, const JanowskiParams<Real>& jp) {
  const Real s = Real(2) * jp.B() - Real(1);
  return jp.width() * (Real(4) * s * s + Real(1)) / (Real(8) * lambda_coeff(3, ctx)) * psi(3, ctx);
}

/// Bound on |b_{p+n}| for F_{eta,p} f.
template <typename Real>
Real bernardi_coeff_bound(int n, const BernardiParams<Real>& bp, const JanowskiParams<Real>& jp) {
  return bp.factor(n) * coeff_bound(n, bp.ctx(), jp);
}

/// sigma rescaled to the lambda of the untransformed problem:
/// sigma [eta+p,q][eta+p+2,q] / [eta+p+1,q]^2.
template <typename Real>
std::complex<Real> bernardi_effective_lambda(const std::complex<Real>& sigma,
                                             const BernardiParams<Real>& bp) {
  const Real base = bp.eta() + Real(bp.ctx().p());
  const Real q = bp.ctx().q();
  const Real n0 = q_number_real(base, q);
  const Real n1 = q_number_real(base + Real(1), q);
  const Real n2 = q_number_real(base + Real(2), q);
  return sigma * (n0 * n2 / (n1 * n1));
}

/// Bound on |b_{p+2} - sigma b_{p+1}^2| with upsilon written out in full.
template <typename Real>
Real bernardi_fekete_bound(const std::complex<Real>& sigma, const BernardiParams<Real>& bp,
                           const JanowskiParams<Real>& jp) {
  const auto& ctx = bp.ctx();
  const Real q = ctx.q();
  const Real psi1 = psi(1, ctx);
  const Real psi2 = psi(2, ctx);
  const Real lam1 = lambda_coeff(1, ctx);
  const Real lam2 = lambda_coeff(2, ctx);
  const Real width = jp.width();
  const Real base = bp.eta() + Real(ctx.p());
  const Real n0 = q_number_real(base, q);
  const Real n1 = q_number_real(base + Real(1), q);
  const Real n2 = q_number_real(base + Real(2), q);
  const std::complex<Real> upsilon =
      (jp.B() - width * psi1) + lam2 * psi1 * psi1 / (lam1 * lam1 * psi2) * width * (n0 * n2 / (n1 * n1)) * sigma;
  return n0 / n2 * width * psi2 / lam2 * std::max(Real(1), std::abs(upsilon));
}

/// Observed functional against its bound.
template <typename Real>
struct BoundReport {
  Real functional_value = 0;
  Real bound = 0;
  bool satisfied = false;
  Real slack = 0;
};

template <typename Real>
BoundReport<Real> make_report(Real value, Real bound, Real tolerance = Real(1e-9)) {
  return {value, bound, value <= bound + tolerance, bound - value};
}

}  // namespace qstar

#endif  // QSTAR_BOUNDS_HPP
