#ifndef QSTAR_CLASSIFY_HPP
#define QSTAR_CLASSIFY_HPP

/// \file classify.hpp
/// Membership tests for S*_p(q, mu, A, B).
///
/// Three tests of increasing cost and decreasing strength:
///  - sufficiency_test: the coefficient-sum criterion. A pass proves
///    membership; a failure proves nothing.
///  - boundary_sample_test: the modulus form of the subordination,
///      |(h - 1) / (A - B h)| < 1,  h = z d_q L f / ([p,q] L f),
///    sampled on a circle |z| = r with h expanded as a truncated series.
///  - convolution_test: the non-vanishing of
///      e^{i theta} (B - [p,q] A) / z * (L f * K_{N,L})(z)
///    over a theta grid, by sampling and by locating the zeros of the
///    truncated convolution.
///
/// The boundary test optionally takes a GeometricMajorant for the omitted
/// coefficients of h, and then reports Inconclusive when the truncation
/// error could flip the verdict.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "qstar/janowski.hpp"
#include "qstar/operators.hpp"
#include "qstar/series.hpp"

namespace qstar {

enum class VerdictKind {
  SufficiencyPass,
  SufficiencyFail,
  BoundaryPass,
  BoundaryFail,
  BoundaryInconclusive,
  ConvolutionPass,
  ConvolutionFail,
};

inline const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::SufficiencyPass: return "SufficiencyPass";
    case VerdictKind::SufficiencyFail: return "SufficiencyFail";
    case VerdictKind::BoundaryPass: return "BoundaryPass";
    case VerdictKind::BoundaryFail: return "BoundaryFail";
    case VerdictKind::BoundaryInconclusive: return "BoundaryInconclusive";
    case VerdictKind::ConvolutionPass: return "ConvolutionPass";
    case VerdictKind::ConvolutionFail: return "ConvolutionFail";
  }
  return "?";
}

inline bool is_fail(VerdictKind kind) {
  return kind == VerdictKind::SufficiencyFail || kind == VerdictKind::BoundaryFail ||
         kind == VerdictKind::ConvolutionFail;
}

inline bool is_pass(VerdictKind kind) {
  return kind == VerdictKind::SufficiencyPass || kind == VerdictKind::BoundaryPass ||
         kind == VerdictKind::ConvolutionPass;
}

using Witness = std::variant<std::monostate, std::complex<double>, int>;

/// Outcome of a membership test. margin is negative exactly for the Fail
/// kinds; Inconclusive carries margin 0.
struct MembershipVerdict {
  VerdictKind kind;
  double margin = 0;
  Witness witness;
  std::optional<double> theta;  // convolution witnesses only
};

namespace detail {

template <typename Real>
std::complex<double> to_double(const std::complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Ascending coefficients c_0 + c_1 z + ... .
template <typename Real>
using Poly = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
std::complex<Real> horner(const Poly<Real>& c, const std::complex<Real>& z) {
  std::complex<Real> acc(0);
  for (Eigen::Index j = c.size() - 1; j >= 0; --j) acc = acc * z + c(j);
  return acc;
}

template <typename Real>
Real horner_abs(const Poly<Real>& c, Real r) {
  Real acc = 0;
  for (Eigen::Index j = c.size() - 1; j >= 0; --j) acc = acc * r + std::abs(c(j));
  return acc;
}

// Zeros of the polynomial via the eigenvalues of its companion matrix,
// each polished by a few Newton steps.
template <typename Real>
std::vector<std::complex<Real>> polynomial_roots(const Poly<Real>& c) {
  using Complex = std::complex<Real>;
  const Real scale = c.cwiseAbs().maxCoeff();
  std::vector<Complex> roots;
  if (scale == Real(0)) return roots;
  Eigen::Index degree = c.size() - 1;
  while (degree > 0 && std::abs(c(degree)) <= Real(1e-14) * scale) --degree;
  if (degree == 0) return roots;

  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> companion =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(degree, degree);
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = Complex(1);
  for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -c(i) / c(degree);
  Eigen::ComplexEigenSolver<decltype(companion)> solver(companion, false);
  if (solver.info() != Eigen::Success) return roots;

  const Poly<Real> trimmed = c.head(degree + 1);
  Poly<Real> slope(degree);
  for (Eigen::Index j = 1; j <= degree; ++j) slope(j - 1) = Real(j) * trimmed(j);
  for (Eigen::Index i = 0; i < degree; ++i) {
    Complex z = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const Complex d = horner(slope, z);
      if (d == Complex(0)) break;
      const Complex step = horner(trimmed, z) / d;
      z -= step;
      if (std::abs(step) <= std::numeric_limits<Real>::epsilon() * (Real(1) + std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}


}  // namespace detail

/// Coefficient-sum criterion
///   sum Lambda_{n+p} ([n+p,q](1-B) - [p,q](1-A)) |a_{n+p}| <= [p,q](A-B)
/// over the stored coefficients. margin = RHS - LHS; a failure names the
/// first index at which the partial sum exceeds the right side.
template <typename Real>
MembershipVerdict sufficiency_test(const NormalizedMember<Real>& f, const JanowskiParams<Real>& jp) {
  const auto& ctx = f.ctx();
  const Real q = ctx.q();
  const Real qp = q_number(ctx.p(), q);
  const Real rhs = qp * jp.width();
  const LambdaTable<Real> lambda(ctx, f.order());
  Real lhs = 0;
  int first_excess = 0;
  for (int n = 1; n <= f.order(); ++n) {
    const Real weight = q_number(n + ctx.p(), q) * (Real(1) - jp.B()) - qp * (Real(1) - jp.A());
    lhs += lambda(n) * weight * std::abs(f.a(n));
    if (first_excess == 0 && lhs > rhs) first_excess = n;
  }
  MembershipVerdict v;
  v.margin = static_cast<double>(rhs - lhs);
  if (lhs <= rhs) {
    v.kind = VerdictKind::SufficiencyPass;
  } else {
    v.kind = VerdictKind::SufficiencyFail;
    v.witness = first_excess;
  }
  return v;
}

/// The p = 1, mu = 0 specialisation written out independently:
///   sum_{n>=2} ([n,q](1-B) - 1 + A) |a_n| <= A - B.
template <typename Real>
MembershipVerdict corollary_reduction(const NormalizedMember<Real>& f, const JanowskiParams<Real>& jp) {
  const auto& ctx = f.ctx();
  if (ctx.p() != 1 || ctx.mu() != Real(0) || ctx.convention() != LambdaConvention::LimitConsistent)
    throw ParameterError("corollary_reduction applies to p = 1, mu = 0 (limit convention) only");
  const Real rhs = jp.A() - jp.B();
  Real lhs = 0;
  int first_excess = 0;
  for (int n = 2; n <= f.order() + 1; ++n) {
    lhs += (q_number(n, ctx.q()) * (Real(1) - jp.B()) - Real(1) + jp.A()) *
           std::abs(f.series().coefficient(n));
    if (first_excess == 0 && lhs > rhs) first_excess = n - 1;
  }
  MembershipVerdict v;
  v.margin = static_cast<double>(rhs - lhs);
  if (lhs <= rhs) {
    v.kind = VerdictKind::SufficiencyPass;
  } else {
    v.kind = VerdictKind::SufficiencyFail;
    v.witness = first_excess;
  }
  return v;
}

/// Order to which the quotient h is expanded when the member is shorter.
inline constexpr int kBoundarySeriesOrder = 8;

/// For a member of the class the Taylor coefficients of h are those of a
/// function subordinate to (1 + A z) / (1 + B z), so |h_n| <= A - B.
template <typename Real>
GeometricMajorant<Real> quotient_majorant(const JanowskiParams<Real>& jp) {
  return {jp.width(), Real(1)};
}

/// h = z d_q L f / ([p,q] L f) as a series to order max(N, 8).
template <typename Real>
TruncSeries<Real> subordination_quotient(const NormalizedMember<Real>& f) {
  const auto& ctx = f.ctx();
  const int order = std::max(f.order(), kBoundarySeriesOrder);
  typename TruncSeries<Real>::Coeffs padded = TruncSeries<Real>::Coeffs::Zero(order + 1);
  padded.head(f.order() + 1) = f.series().coeffs();
  const TruncSeries<Real> lf = apply_L(ctx, TruncSeries<Real>(ctx.p(), std::move(padded)));
  const TruncSeries<Real> num = q_derivative(lf, ctx.q());
  const TruncSeries<Real> den(ctx.p() - 1, lf.coeffs() * std::complex<Real>(q_number(ctx.p(), ctx.q())));
  return ratio(num, den);
}

/// |(h - 1) / (A - B h)| at z, with h the truncated quotient series.
template <typename Real>
Real subordination_modulus(const NormalizedMember<Real>& f, const JanowskiParams<Real>& jp,
                           const std::complex<Real>& z) {
  const std::complex<Real> h = evaluate(subordination_quotient(f), z);
  const std::complex<Real> den = jp.A() - jp.B() * h;
  if (den == std::complex<Real>(0))
    throw EvaluationError("vanishing denominator A - B h", detail::to_double(z));
  return std::abs((h - Real(1)) / den);
}

/// Samples |(h - 1) / (A - B h)| at m equispaced points of |z| = r, with h
/// the truncated quotient series.
///
/// Without a majorant the truncated h is taken as is: Pass if every sample
/// is below 1, Fail otherwise. A majorant c s^n for the omitted
/// coefficients of h widens each sample to an interval; Pass needs the
/// upper ends below 1, Fail a lower end at or above 1, and anything else
/// is Inconclusive.
template <typename Real>
MembershipVerdict boundary_sample_test(const NormalizedMember<Real>& f, const JanowskiParams<Real>& jp,
                                       Real r, int m,
                                       const std::optional<GeometricMajorant<Real>>& tail = std::nullopt) {
  using Complex = std::complex<Real>;
  if (!(r > Real(0) && r < Real(1))) throw ParameterError("boundary sampling needs r in (0, 1)");
  if (m < 1) throw ParameterError("boundary sampling needs m >= 1");

  const TruncSeries<Real> lf = apply_L(f);
  const TruncSeries<Real> h = subordination_quotient(f);
  Real t = 0;
  if (tail) {
    try {
      t = tail_bound(h, r, *tail);
    } catch (const SeriesError&) {
      return {VerdictKind::BoundaryInconclusive, 0.0, {}, {}};
    }
  }
  const Real slack_den = std::abs(jp.B()) * t;

  const Real tiny_l = Real(1e-14) * detail::horner_abs(lf.coeffs(), r);
  const Real tiny_q = Real(1e-14) * (std::abs(jp.A()) + std::abs(jp.B()) * detail::horner_abs(h.coeffs(), r));
  Real max_upper = 0, max_lower = 0;
  Complex upper_at(r), lower_at(r);
  for (int k = 0; k < m; ++k) {
    const Complex z = std::polar(r, Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(m));
    if (std::abs(detail::horner(lf.coeffs(), z)) <= tiny_l)
      throw EvaluationError("L f vanishes on the sample circle", detail::to_double(z));
    const Complex hz = evaluate(h, z);
    const Real pv = std::abs(hz - Real(1));
    const Real qv = std::abs(jp.A() - jp.B() * hz);
    if (qv <= tiny_q) throw EvaluationError("vanishing denominator A - B h", detail::to_double(z));
    const Real upper = qv > slack_den ? (pv + t) / (qv - slack_den) : std::numeric_limits<Real>::infinity();
    const Real lower = std::max(Real(0), pv - t) / (qv + slack_den);
    if (upper > max_upper) max_upper = upper, upper_at = z;
    if (lower > max_lower) max_lower = lower, lower_at = z;
  }

  MembershipVerdict v;
  if (max_upper < Real(1)) {
    v.kind = VerdictKind::BoundaryPass;
    v.witness = detail::to_double(upper_at);
    v.margin = static_cast<double>(Real(1) - max_upper);
  } else if (max_lower >= Real(1)) {
    v.kind = VerdictKind::BoundaryFail;
    v.witness = detail::to_double(lower_at);
    v.margin = std::min(-std::numeric_limits<double>::denorm_min(), static_cast<double>(Real(1) - max_lower));
  } else {
    v.kind = VerdictKind::BoundaryInconclusive;
    v.witness = detail::to_double(upper_at);
  }
  return v;
}

/// The pair (N, L) parametrising the convolution kernel.
template <typename Real>
struct KernelPair {
  std::complex<Real> N;
  std::complex<Real> L;
};

/// The theta-independent pair (N, L) = (0, 1); convolving with it returns
/// L f itself.
template <typename Real>
constexpr KernelPair<Real> degenerate_kernel() {
  return {std::complex<Real>(0), std::complex<Real>(1)};
}

/// N_theta = ([p,q] - 1) e^{-i theta} / ([p,q] A - B),
/// L_theta = (e^{-i theta} + [p,q] A) / ([p,q] A - B).
template <typename Real>
KernelPair<Real> convolution_kernel(Real theta, const JanowskiParams<Real>& jp, const QContext<Real>& ctx) {
  const Real qp = q_number(ctx.p(), ctx.q());
  const Real den = qp * jp.A() - jp.B();
  if (den == Real(0)) throw ParameterError("convolution kernel undefined: [p,q] A = B");
  const std::complex<Real> rot = std::polar(Real(1), -theta);
  return {(qp - Real(1)) * rot / den, (rot + qp * jp.A()) / den};
}

/// ((N+1) z^p - q L z^{p+1}) / ((1-z)(1-qz)) by series division.
template <typename Real>
TruncSeries<Real> convolution_kernel_series(const KernelPair<Real>& kp, const QContext<Real>& ctx, int order) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  using Complex = std::complex<Real>;
  const Real q = ctx.q();
  Coeffs num = Coeffs::Zero(order + 1);
  num(0) = kp.N + Complex(1);
  if (order >= 1) num(1) = -q * kp.L;
  Coeffs den = Coeffs::Zero(order + 1);
  den(0) = Complex(1);
  if (order >= 1) den(1) = Complex(-(Real(1) + q));
  if (order >= 2) den(2) = Complex(q);
  return ratio(TruncSeries<Real>(ctx.p(), std::move(num)), TruncSeries<Real>(0, std::move(den)));
}

/// Which kernel family the convolution test scans.
///
/// Printed: ((N+1) z^p - q L z^{p+1}) / ((1-z)(1-qz)) with (N_theta, L_theta).
/// Derived: the kernel obtained from
///   (1 + B e^{i theta}) z d_q L f - [p,q] (1 + A e^{i theta}) L f
/// using L f * sum_{k>=p} [k,q] z^k = z d_q L f, i.e. numerator
///   z^p ([p,q](B - A) e^{i theta} + q z ([p,q] - [p-1,q] + ([p,q]A - [p-1,q]B) e^{i theta})).
/// The two agree for p = 1. For p >= 2 the printed family is not the
/// expansion of the subordination condition and can vanish on members.
enum class KernelForm { Printed, Derived };

/// Kernel of the derived family at theta, already carrying the
/// e^{i theta} (B - [p,q] A) normalisation of the printed expression.
template <typename Real>
TruncSeries<Real> derived_kernel_series(Real theta, const JanowskiParams<Real>& jp,
                                        const QContext<Real>& ctx, int order) {
  using Coeffs = typename TruncSeries<Real>::Coeffs;
  using Complex = std::complex<Real>;
  const Real q = ctx.q();
  const Real qp = q_number(ctx.p(), q);
  const Real qp1 = q_number(ctx.p() - 1, q);
  const Complex rot = std::polar(Real(1), theta);
  Coeffs num = Coeffs::Zero(order + 1);
  num(0) = qp * (jp.B() - jp.A()) * rot;
  if (order >= 1) num(1) = q * ((qp - qp1) + (qp * jp.A() - qp1 * jp.B()) * rot);
  Coeffs den = Coeffs::Zero(order + 1);
  den(0) = Complex(1);
  if (order >= 1) den(1) = Complex(-(Real(1) + q));
  if (order >= 2) den(2) = Complex(q);
  return ratio(TruncSeries<Real>(ctx.p(), std::move(num)), TruncSeries<Real>(0, std::move(den)));
}

/// Where to look for zeros of the convolution expression.
struct ConvolutionGrid {
  int thetas = 64;
  std::vector<double> radii{0.3, 0.6, 0.9};
  int angles = 360;
  bool root_search = true;  // also locate zeros of the truncated polynomial
  KernelForm form = KernelForm::Printed;
};

/// |value| below this counts as a zero of the convolution expression.
inline constexpr double kConvolutionZeroTolerance = 1e-7;

/// Minimum of |prefactor / z (L f * K)(z)| over the grid for one kernel,
/// with the location attaining it.
template <typename Real>
struct ConvolutionMinimum {
  Real value = std::numeric_limits<Real>::infinity();
  std::complex<Real> at{0};
};

template <typename Real>
ConvolutionMinimum<Real> convolution_minimum(const TruncSeries<Real>& lf, const TruncSeries<Real>& kernel,
                                             const std::complex<Real>& prefactor, const ConvolutionGrid& grid) {
  using Complex = std::complex<Real>;
  const TruncSeries<Real> h = hadamard(lf, kernel);
  const detail::Poly<Real>& reduced = h.coeffs();  // (L f * K) / z^p
  const int shift = lf.lead() - 1;
  const auto value = [&](const Complex& z) {
    return std::abs(prefactor * ipow(z, shift) * detail::horner(reduced, z));
  };

  ConvolutionMinimum<Real> best;
  Real r_max = 0;
  for (double rd : grid.radii) {
    const Real r = Real(rd);
    r_max = std::max(r_max, r);
    for (int k = 0; k < grid.angles; ++k) {
      const Complex z = std::polar(r, Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(grid.angles));
      const Real v = value(z);
      if (v < best.value) best = {v, z};
    }
  }
  if (grid.root_search) {
    // Zeros in the punctured disk 0 < |z| < max radius.
    for (const Complex& z0 : detail::polynomial_roots(reduced)) {
      const Real radius = std::abs(z0);
      if (!(radius > Real(0) && radius < r_max)) continue;
      const Real v = value(z0);
      if (v < best.value) best = {v, z0};
    }
  }
  return best;
}

/// Scans theta_j = 2 pi j / thetas and the degenerate pair (0, 1).
/// ConvolutionFail when the smallest value drops below the zero tolerance.
template <typename Real>
MembershipVerdict convolution_test(const NormalizedMember<Real>& f, const JanowskiParams<Real>& jp,
                                   const ConvolutionGrid& grid = {}) {
  using Complex = std::complex<Real>;
  if (grid.thetas < 1 || grid.angles < 1 || grid.radii.empty())
    throw ParameterError("convolution grid is empty");
  for (double r : grid.radii)
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("convolution radii must lie in (0, 1)");

  const auto& ctx = f.ctx();
  const int order = f.order();
  const TruncSeries<Real> lf = apply_L(f);
  const Real scale = jp.B() - q_number(ctx.p(), ctx.q()) * jp.A();

  ConvolutionMinimum<Real> best = convolution_minimum(
      lf, convolution_kernel_series(degenerate_kernel<Real>(), ctx, order), Complex(scale), grid);
  std::optional<Real> best_theta;  // empty: the degenerate pair
  for (int j = 0; j < grid.thetas; ++j) {
    const Real theta = Real(2) * std::numbers::pi_v<Real> * Real(j) / Real(grid.thetas);
    const auto m =
        grid.form == KernelForm::Printed
            ? convolution_minimum(lf, convolution_kernel_series(convolution_kernel(theta, jp, ctx), ctx, order),
                                  std::polar(Real(1), theta) * scale, grid)
            : convolution_minimum(lf, derived_kernel_series(theta, jp, ctx, order), Complex(1), grid);
    if (m.value < best.value) best = m, best_theta = theta;
  }

  MembershipVerdict v;
  v.margin = static_cast<double>(best.value) - kConvolutionZeroTolerance;
  v.witness = detail::to_double(best.at);
  if (best_theta) v.theta = static_cast<double>(*best_theta);
  v.kind = v.margin < 0 ? VerdictKind::ConvolutionFail : VerdictKind::ConvolutionPass;
  return v;
}

}  // namespace qstar

#endif  // QSTAR_CLASSIFY_HPP
