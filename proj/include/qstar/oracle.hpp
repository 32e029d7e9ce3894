#ifndef QSTAR_ORACLE_HPP
#define QSTAR_ORACLE_HPP

/// \file oracle.hpp
/// Ground-truth members of S*_p(q, mu, A, B) built from Schwarz polynomials.
///
/// Given w with w(0) = 0 and sum |w_j| <= 1, the function
/// p(z) = (1 + A w(z)) / (1 + B w(z)) = 1 + sum d_n z^n is subordinate to
/// the Janowski function, and the coefficients a_{p+n} solving
///
///   Lambda_{n+p} ([n+p,q] - [p,q]) a_{n+p}
///       = [p,q] (d_n + sum_{k=1}^{n-1} Lambda_{k+p} a_{k+p} d_{n-k})
///
/// make z d_q L f / ([p,q] L f) equal to p(z) up to the truncation order.
/// The recursion is solved directly, not through series division, so it can
/// be checked against the series module.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qstar/bounds.hpp"
#include "qstar/janowski.hpp"
#include "qstar/operators.hpp"
#include "qstar/series.hpp"

namespace qstar {

/// w(z) = w_1 z + ... + w_k z^k with sum |w_j| <= 1.
template <typename Real>
class SchwarzPoly {
 public:
  using Coeffs = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

  explicit SchwarzPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw ParameterError("Schwarz polynomial needs at least one coefficient");
    if (!(l1_norm() <= Real(1)))
      throw ParameterError("Schwarz certificate violated: sum |w_j| > 1");
  }

  SchwarzPoly(std::initializer_list<std::complex<Real>> list) : SchwarzPoly(to_coeffs(list)) {}

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const Coeffs& coeffs() const { return coeffs_; }

  /// w_j for j >= 1; zero beyond the degree.
  std::complex<Real> w(int j) const { return j >= 1 && j <= degree() ? coeffs_(j - 1) : std::complex<Real>(0); }

  Real l1_norm() const { return coeffs_.cwiseAbs().sum(); }

  /// w as a lead-0 series truncated at `order`.
  TruncSeries<Real> series(int order) const {
    typename TruncSeries<Real>::Coeffs c = TruncSeries<Real>::Coeffs::Zero(order + 1);
    for (int j = 1; j <= std::min(order, degree()); ++j) c(j) = w(j);
    return TruncSeries<Real>(0, std::move(c));
  }

  std::complex<Real> operator()(const std::complex<Real>& z) const {
    std::complex<Real> acc(0);
    for (int j = degree(); j >= 1; --j) acc = (acc + w(j)) * z;
    return acc;
  }

 private:
  static Coeffs to_coeffs(std::initializer_list<std::complex<Real>> list) {
    Coeffs c(static_cast<Eigen::Index>(list.size()));
    Eigen::Index i = 0;
    for (const auto& v : list) c(i++) = v;
    return c;
  }

  Coeffs coeffs_;
};

/// d_1 ... d_N of (1 + A w) / (1 + B w) = 1 + sum d_n z^n.
template <typename Real>
class JanowskiExpansion {
 public:
  using Coeffs = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

  JanowskiExpansion(Coeffs d, const JanowskiParams<Real>& jp) : d_(std::move(d)) {
    // Rogosinski: |d_n| <= |k_1| = A - B for a convex univalent majorant.
    const Real limit = jp.width() * (Real(1) + Real(64) * std::numeric_limits<Real>::epsilon());
    for (Eigen::Index i = 0; i < d_.size(); ++i)
      if (!(std::abs(d_(i)) <= limit))
        throw std::logic_error("Janowski expansion coefficient exceeds A - B");
  }

  int order() const { return static_cast<int>(d_.size()); }
  const Coeffs& coeffs() const { return d_; }
  std::complex<Real> d(int n) const { return d_(n - 1); }

 private:
  Coeffs d_;
};

template <typename Real>
JanowskiExpansion<Real> janowski_expand(const SchwarzPoly<Real>& w, const JanowskiParams<Real>& jp,
                                        int order) {
  const TruncSeries<Real> ws = w.series(order);
  const TruncSeries<Real> one = TruncSeries<Real>::monomial(0, order);
  const TruncSeries<Real> num = one + std::complex<Real>(jp.A()) * ws;
  const TruncSeries<Real> den = one + std::complex<Real>(jp.B()) * ws;
  const TruncSeries<Real> h = ratio(num, den);
  return JanowskiExpansion<Real>(h.coeffs().tail(order), jp);
}

/// Solves the coefficient recursion for a_{p+1} ... a_{p+N}.
template <typename Real>
NormalizedMember<Real> schwarz_to_member(const SchwarzPoly<Real>& w, const QContext<Real>& ctx,
                                         const JanowskiParams<Real>& jp, int order) {
  using Complex = std::complex<Real>;
  const JanowskiExpansion<Real> d = janowski_expand(w, jp, order);
  const LambdaTable<Real> lambda(ctx, order);
  const Real qp = q_number(ctx.p(), ctx.q());

  // weighted(k) = Lambda_{k+p} a_{k+p}; weighted(0) = 1.
  std::vector<Complex> weighted(order + 1, Complex(0));
  weighted[0] = Complex(1);
  typename TruncSeries<Real>::Coeffs a(order + 1);
  a(0) = Complex(1);
  for (int n = 1; n <= order; ++n) {
    Complex rhs(0);
    for (int k = 0; k < n; ++k) rhs += weighted[k] * d.d(n - k);
    const Real divisor = lambda(n) * (q_number(n + ctx.p(), ctx.q()) - qp);
    a(n) = qp * rhs / divisor;
    weighted[n] = lambda(n) * a(n);
  }
  return NormalizedMember<Real>(ctx, TruncSeries<Real>(ctx.p(), std::move(a)));
}

/// Deterministic random Schwarz polynomial of degree k: coefficients drawn
/// uniformly in the unit disk, rescaled so that sum |w_j| is a uniform draw
/// in (0, 1].
template <typename Real>
SchwarzPoly<Real> random_schwarz(int k, std::uint64_t seed) {
  if (k < 1) throw ParameterError("random_schwarz needs k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  typename SchwarzPoly<Real>::Coeffs c(k);
  for (int j = 0; j < k; ++j) {
    const double radius = std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    c(j) = std::polar(Real(radius), Real(angle));
  }
  const Real target = Real(1.0 - unit(rng));  // (0, 1]
  const Real norm = c.cwiseAbs().sum();
  if (norm > Real(0)) c *= target / norm;
  // Rounding can push the l1 norm a hair above the target.
  while (c.cwiseAbs().sum() > Real(1)) c *= Real(1) - std::numeric_limits<Real>::epsilon();
  return SchwarzPoly<Real>(std::move(c));
}

/// Two inequalities on Schwarz coefficients:
/// lhs1 = |w_2 - lambda w_1^2| against rhs1 = max{1, |lambda|}, and
/// lhs2 = |w_3 + w_1 w_2 / 4 + w_1^3 / 16| against 1.
template <typename Real>
struct SchwarzInequalityValues {
  Real lhs1 = 0;
  Real rhs1 = 0;
  Real lhs2 = 0;
};

template <typename Real>
SchwarzInequalityValues<Real> schwarz_inequalities(const SchwarzPoly<Real>& w, const std::complex<Real>& lambda) {
  const auto w1 = w.w(1);
  const auto w2 = w.w(2);
  const auto w3 = w.w(3);
  SchwarzInequalityValues<Real> out;
  out.lhs1 = std::abs(w2 - lambda * w1 * w1);
  out.rhs1 = std::max(Real(1), std::abs(lambda));
  out.lhs2 = std::abs(w3 + w1 * w2 / Real(4) + w1 * w1 * w1 / Real(16));
  return out;
}

/// One corpus entry: the seed, the Schwarz polynomial and the member.
template <typename Real>
struct CorpusEntry {
  std::uint64_t seed;
  SchwarzPoly<Real> w;
  NormalizedMember<Real> member;
};

/// Degrees 1..max_degree, `per_degree` seeds each. Seeds are
/// base_seed + running index, so the Schwarz polynomials do not depend on
/// the parameter point.
template <typename Real>
std::vector<CorpusEntry<Real>> generate_corpus(const QContext<Real>& ctx, const JanowskiParams<Real>& jp,
                                               int order, int per_degree = 50, int max_degree = 4,
                                               std::uint64_t base_seed = 0) {
  std::vector<CorpusEntry<Real>> corpus;
  corpus.reserve(static_cast<std::size_t>(per_degree) * max_degree);
  std::uint64_t seed = base_seed;
  for (int k = 1; k <= max_degree; ++k) {
    for (int i = 0; i < per_degree; ++i, ++seed) {
      SchwarzPoly<Real> w = random_schwarz<Real>(k, seed);
      NormalizedMember<Real> f = schwarz_to_member(w, ctx, jp, order);
      corpus.push_back({seed, std::move(w), std::move(f)});
    }
  }
  return corpus;
}

}  // namespace qstar

#endif  // QSTAR_ORACLE_HPP
