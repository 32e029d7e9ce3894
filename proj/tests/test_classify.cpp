#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace qstar;
using namespace qstar::test;
using doctest::Approx;

namespace {

double witness_modulus(const Member& f, const Jp& jp, const MembershipVerdict& v) {
  return subordination_modulus(f, jp, std::get<Complex>(v.witness));
}

}  // namespace

TEST_CASE("JanowskiParams validation") {
  CHECK_NOTHROW(Jp(1, -1));
  CHECK_NOTHROW(Jp(0.2, 0.1));
  CHECK_THROWS_AS(Jp(1, 1), ParameterError);
  CHECK_THROWS_AS(Jp(1.1, 0), ParameterError);
  CHECK_THROWS_AS(Jp(0, -1.1), ParameterError);
  CHECK_THROWS_AS(Jp(-0.5, 0), ParameterError);
  CHECK(Jp(0.75, -1).width() == 1.75);
}

TEST_CASE("janowski_value examples") {
  CHECK(janowski_value(Complex(0), Jp(0.3, -0.2)) == Complex(1));
  CHECK(janowski_value(Complex(0.5), Jp(1, -1)) == Complex(3));
  CHECK(janowski_value(Complex(0, 0.5), Jp(1, 0)) == Complex(1, 0.5));
  CHECK_THROWS_AS(janowski_value(Complex(1), Jp(1, -1)), EvaluationError);
  try {
    janowski_value(Complex(-2), Jp(1, 0.5));
  } catch (const EvaluationError& e) {
    CHECK(e.witness() == Complex(-2));
  }
}

TEST_CASE("verdict kinds") {
  CHECK(is_fail(VerdictKind::SufficiencyFail));
  CHECK(is_fail(VerdictKind::BoundaryFail));
  CHECK(is_fail(VerdictKind::ConvolutionFail));
  CHECK_FALSE(is_fail(VerdictKind::BoundaryInconclusive));
  CHECK_FALSE(is_pass(VerdictKind::BoundaryInconclusive));
  CHECK(std::string(to_string(VerdictKind::ConvolutionPass)) == "ConvolutionPass");
}

TEST_CASE("sufficiency_test examples") {
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.5, 1.0);
    const Jp jp(0.5, -0.5);
    const auto v = sufficiency_test(Member(ctx, Series::monomial(p, 8)), jp);
    CHECK(v.kind == VerdictKind::SufficiencyPass);
    CHECK(v.margin == Approx(q_number(p, 0.5) * 1.0));
  }
  const Ctx ctx(1, 0.5, 0.0);
  const Jp jp(1, -1);
  const auto pass = sufficiency_test(member_from(ctx, {1, 0.5}), jp);
  CHECK(pass.kind == VerdictKind::SufficiencyPass);
  CHECK(pass.margin == Approx(0.5));
  const auto fail = sufficiency_test(member_from(ctx, {1, 1}), jp);
  CHECK(fail.kind == VerdictKind::SufficiencyFail);
  CHECK(fail.margin == Approx(-1));
  CHECK(std::get<int>(fail.witness) == 1);
}

TEST_CASE("corollary_reduction examples") {
  const Ctx ctx(1, 0.5, 0.0);
  const Jp jp(1, -1);
  CHECK(corollary_reduction(member_from(ctx, {1}), jp).kind == VerdictKind::SufficiencyPass);
  const auto v = corollary_reduction(member_from(ctx, {1, 0.5}), jp);
  CHECK(v.kind == VerdictKind::SufficiencyPass);
  CHECK(v.margin == Approx(0.5));
  CHECK_THROWS_AS(corollary_reduction(Member(Ctx(2, 0.5, 0.0), Series::monomial(2, 2)), jp), ParameterError);
  CHECK_THROWS_AS(corollary_reduction(Member(Ctx(1, 0.5, 1.0), Series::monomial(1, 2)), jp), ParameterError);
  CHECK_THROWS_AS(corollary_reduction(Member(Ctx(1, 0.5, 0.0, LambdaConvention::Literal), Series::monomial(1, 2)), jp),
                  ParameterError);
}

TEST_CASE("corollary_reduction and sufficiency_test agree") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Ctx ctx(1, 0.01 + 0.98 * u(rng), 0.0);
    const double B = -1 + 1.9 * u(rng);
    const Jp jp(B + (1 - B) * (0.05 + 0.95 * u(rng)), B);
    const Member f = random_member(rng, ctx, 1 + trial % 8, 0.3 * u(rng));
    const auto a = sufficiency_test(f, jp), b = corollary_reduction(f, jp);
    CHECK(std::abs(a.margin - b.margin) <= 1e-12);
    CHECK(a.kind == b.kind);
  }
}

TEST_CASE("Silverman-type reduction holds with A = 1 - 2 alpha") {
  // At q -> 1-, B = -1 the corollary reads sum (2n - 2 + 2 - 2 alpha') |a_n| <= 2 - 2 alpha'
  // for A = 1 - 2 alpha', which is sum (n - alpha') |a_n| <= 1 - alpha'.
  std::mt19937_64 rng(37);
  const Ctx ctx(1, 1 - 1e-6, 0.0);
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    const Jp jp(1 - 2 * alpha, -1);
    for (int trial = 0; trial < 100; ++trial) {
      const Member f = random_member(rng, ctx, 6, 0.15);
      double lhs = 0;
      for (int n = 2; n <= 7; ++n) lhs += (n - alpha) * std::abs(f.series().coefficient(n));
      const double silverman = 1 - lhs / (1 - alpha);
      const double corollary = corollary_reduction(f, jp).margin / jp.width();
      CHECK(std::abs(silverman - corollary) <= 1e-4);
    }
  }
}

TEST_CASE("subordination modulus vanishes for z^p") {
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.7, 2.5);
    const Member f(ctx, Series::monomial(p, 8));
    for (int k = 0; k < 16; ++k)
      CHECK(subordination_modulus(f, Jp(0.5, -0.5), std::polar(0.9, k * 0.39)) == 0.0);
  }
}

TEST_CASE("boundary_sample_test examples") {
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.5, 1.0);
    const auto v = boundary_sample_test(Member(ctx, Series::monomial(p, 8)), Jp(1, 0), 0.9, 720);
    CHECK(v.kind == VerdictKind::BoundaryPass);
    CHECK(v.margin == 1.0);
  }
  std::mt19937_64 rng(41);
  for_each_grid_point([&](const Ctx& ctx, const Jp& jp) {
    if (ctx.mu() != 1.0) return;
    const Member f = schwarz_to_member(random_schwarz<double>(2, rng()), ctx, jp, 8);
    const auto v = boundary_sample_test(f, jp, 0.9, 720);
    // h is the order-8 truncation of (1 + A w)/(1 + B w). When its
    // coefficients do not decay the truncation alone can push a sample past
    // 1; the verdict with the tail allowance must then stay open.
    const auto honest = boundary_sample_test(f, jp, 0.9, 720, std::optional(quotient_majorant(jp)));
    CHECK(honest.kind != VerdictKind::BoundaryFail);
    if (v.kind != VerdictKind::BoundaryPass) CHECK(honest.kind == VerdictKind::BoundaryInconclusive);
    else CHECK(v.margin > 0);
  });

  const Ctx ctx(1, 0.5, 0.0);
  const Jp jp(1, -1);
  const Member bad = member_from(ctx, {1, 5});
  const auto v = boundary_sample_test(bad, jp, 0.9, 720);
  CHECK(v.kind == VerdictKind::BoundaryFail);
  CHECK(v.margin < 0);
  REQUIRE(std::holds_alternative<Complex>(v.witness));
  CHECK(std::abs(std::get<Complex>(v.witness)) == Approx(0.9));
  CHECK(witness_modulus(bad, jp, v) >= 1.0);
}

TEST_CASE("boundary_sample_test finds sample-circle violations") {
  // f = z + z^2 at q = 0.5, A = 1, B = 0: h - 1 = 0.5 z / (1 + z), which
  // reaches 4.5 at z = -0.9; the only zero of 1 + z lies outside the circle.
  const Ctx ctx(1, 0.5, 0.0);
  const Jp jp(1, 0);
  const Member f = member_from(ctx, {1, 1});
  const auto v = boundary_sample_test(f, jp, 0.9, 720);
  CHECK(v.kind == VerdictKind::BoundaryFail);
  CHECK(witness_modulus(f, jp, v) >= 1.0);
}

TEST_CASE("boundary_sample_test argument checks") {
  const Ctx ctx(1, 0.5, 0.0);
  const Member f = member_from(ctx, {1, 0.1});
  CHECK_THROWS_AS(boundary_sample_test(f, Jp(1, -1), 1.0, 10), ParameterError);
  CHECK_THROWS_AS(boundary_sample_test(f, Jp(1, -1), 0.5, 0), ParameterError);
  // L f = z (1 + 2z) vanishes at -0.5, which lies on the circle.
  CHECK_THROWS_AS(boundary_sample_test(member_from(ctx, {1, 2}), Jp(1, -1), 0.5, 4), EvaluationError);
}

TEST_CASE("boundary_sample_test with a tail majorant") {
  std::mt19937_64 rng(43);
  const Ctx ctx(1, 0.9, 0.0);
  const Jp jp(0.5, -0.5);
  const Member f = schwarz_to_member(random_schwarz<double>(2, 5), ctx, jp, 12);
  const auto maj = quotient_majorant(jp);
  const auto v = boundary_sample_test(f, jp, 0.5, 360, std::optional(maj));
  CHECK(v.kind == VerdictKind::BoundaryPass);
  CHECK(v.margin <= boundary_sample_test(f, jp, 0.5, 360).margin);
  // The h coefficients of a member are bounded by A - B.
  const Series h = subordination_quotient(f);
  for (int n = 1; n <= h.order(); ++n) CHECK(std::abs(h[n]) <= jp.width() + 1e-12);
  // A majorant growing faster than 1/r leaves the verdict open.
  const GeometricMajorant<double> steep{1.0, 2.0};
  CHECK(boundary_sample_test(f, jp, 0.9, 360, std::optional(steep)).kind == VerdictKind::BoundaryInconclusive);
  // A loose one at r = 0.9 straddles 1.
  const GeometricMajorant<double> loose{50.0, 1.0};
  CHECK(boundary_sample_test(f, jp, 0.9, 360, std::optional(loose)).kind == VerdictKind::BoundaryInconclusive);
}

TEST_CASE("boundary verdict is invariant under rotation") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.5, 1.0);
    const Jp jp(1, -1);
    for (int trial = 0; trial < 20; ++trial) {
      const Member f = trial % 2 ? schwarz_to_member(random_schwarz<double>(3, rng()), ctx, jp, 8)
                                 : random_member(rng, ctx, 8, 0.8);
      const double phi = u(rng);
      // e^{-ip phi} f(e^{i phi} z) multiplies a_{p+n} by e^{i n phi}.
      Series::Coeffs c = f.series().coeffs();
      for (int n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, n * phi);
      const Member g(ctx, Series(p, c));
      const auto vf = boundary_sample_test(f, jp, 0.9, 720);
      const auto vg = boundary_sample_test(g, jp, 0.9, 720);
      CHECK(vf.kind == vg.kind);
    }
  }
}

TEST_CASE("convolution_kernel examples") {
  for (double theta : {0.0, 1.0, 4.0}) CHECK(convolution_kernel(theta, Jp(0.3, -0.4), Ctx(1, 0.4, 0.0)).N == Complex(0));
  const auto k1 = convolution_kernel(0.0, Jp(1, -1), Ctx(1, 0.5, 0.0));
  CHECK(std::abs(k1.L - Complex(1)) < 1e-15);
  const auto k2 = convolution_kernel(0.0, Jp(1, 0), Ctx(2, 0.5, 0.0));
  CHECK(std::abs(k2.N - Complex(1.0 / 3)) < 1e-15);
  CHECK(std::abs(k2.L - Complex(5.0 / 3)) < 1e-15);
  CHECK(degenerate_kernel<double>().N == Complex(0));
  CHECK(degenerate_kernel<double>().L == Complex(1));
  // [2,0.5] = 1.5, so A = -0.5, B = -0.75 makes [p,q]A = B.
  CHECK_THROWS_AS(convolution_kernel(0.0, Jp(-0.5, -0.75), Ctx(2, 0.5, 0.0)), ParameterError);
}

TEST_CASE("kernel coefficient identity z^p/((1-z)(1-qz))") {
  for (int p : {1, 2, 3})
    for (double q : {0.3, 0.5, 0.99}) {
      const Ctx ctx(p, q, 0.0);
      // N = 0, q L = 0 leaves z^p / ((1-z)(1-qz)); that is L = 0.
      const Series k = convolution_kernel_series(KernelPair<double>{Complex(0), Complex(0)}, ctx, 8);
      for (int j = 0; j <= 8; ++j) CHECK(std::abs(k[j] - q_number(j + 1, q)) <= 1e-13 * q_number(j + 1, q));
      // Convolving L f with it gives z^p d_q (L f / z^{p-1}), which is
      // z d_q L f only for p = 1.
      std::mt19937_64 rng(p);
      const Member f = random_member(rng, ctx, 8, 1.0);
      const Series lf = apply_L(f);
      const Series conv = hadamard(lf, k);
      const Series shifted = q_derivative(Series(1, lf.coeffs()), q);
      const Series zd = q_derivative(lf, q);
      for (int j = 0; j <= 8; ++j) {
        CHECK(std::abs(conv[j] - shifted[j]) <= 1e-12 * (1 + std::abs(shifted[j])));
        if (p == 1) CHECK(std::abs(conv[j] - zd[j]) <= 1e-12 * (1 + std::abs(zd[j])));
      }
      if (p > 1) CHECK(std::abs(conv[1] - zd[1]) > 1e-3);
    }
}

TEST_CASE("convolution_test examples") {
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.5, 1.0);
    CHECK(convolution_test(Member(ctx, Series::monomial(p, 8)), Jp(1, -1)).kind == VerdictKind::ConvolutionPass);
  }
  // Sampling only: the zeros of a truncated member series cluster near the
  // circle and are caught by the root search.
  ConvolutionGrid sampled;
  sampled.root_search = false;
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 4; ++trial) {
    const Ctx ctx(1, 0.5, 1.0);
    const Jp jp(1, -1);
    const Member f = schwarz_to_member(random_schwarz<double>(1 + trial, rng()), ctx, jp, 8);
    CHECK(convolution_test(f, jp, sampled).kind == VerdictKind::ConvolutionPass);
  }
  const Ctx ctx(1, 0.5, 0.0);
  const auto v = convolution_test(member_from(ctx, {1, 5}), Jp(1, -1));
  CHECK(v.kind == VerdictKind::ConvolutionFail);
  CHECK(v.margin < 0);
  CHECK(std::abs(std::get<Complex>(v.witness) - Complex(-0.2)) < 1e-9);
}

TEST_CASE("derived kernel agrees with the printed one for p = 1") {
  const Ctx ctx(1, 0.6, 1.0);
  const Jp jp(0.75, -1);
  std::mt19937_64 rng(59);
  const Member f = random_member(rng, ctx, 8, 0.5);
  const Series lf = apply_L(f);
  for (double theta : {0.0, 0.5, 2.0, 5.5}) {
    const Series printed = hadamard(lf, convolution_kernel_series(convolution_kernel(theta, jp, ctx), ctx, 8));
    const Series derived = hadamard(lf, derived_kernel_series(theta, jp, ctx, 8));
    const Complex scale = std::polar(1.0, theta) * (jp.B() - jp.A());
    for (int j = 0; j <= 8; ++j) CHECK(std::abs(scale * printed[j] - derived[j]) < 1e-12 * (1 + std::abs(derived[j])));
  }
}

TEST_CASE("derived kernel vanishes exactly where h meets the Janowski boundary") {
  // The derived expression at z is (1 + B e^{it}) z d_q L f - [p,q](1 + A e^{it}) L f,
  // divided by z^{p}; it is zero iff h(z) = (1 + A e^{it})/(1 + B e^{it}).
  std::mt19937_64 rng(61);
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.7, 1.0);
    const Jp jp(0.5, -0.5);
    const Member f = random_member(rng, ctx, 8, 0.3);
    const Series lf = apply_L(f);
    const Series zd = q_derivative(lf, ctx.q());
    const double qp = q_number(p, ctx.q());
    for (double theta : {0.3, 2.2}) {
      const Complex e = std::polar(1.0, theta);
      const Series h = hadamard(lf, derived_kernel_series(theta, jp, ctx, 8));
      const Complex z(0.2, 0.1);
      const Complex expected = ((1.0 + jp.B() * e) * z * evaluate(zd, z) - qp * (1.0 + jp.A() * e) * evaluate(lf, z)) / ipow(z, p);
      CHECK(std::abs(evaluate(h, z) / ipow(z, p) - expected / 1.0) < 1e-12);
    }
  }
}

TEST_CASE("printed kernel vanishes on a certified member for p = 3") {
  // A sufficiency-certified member whose printed-kernel expression has a
  // zero; the derived kernel does not vanish on it.
  const Ctx ctx(3, 0.99, 0.0);
  const Jp jp(0.5, -0.5);
  bool found = false;
  for (const auto& e : generate_corpus(ctx, jp, 8, 10, 4, 0)) {
    if (sufficiency_test(e.member, jp).kind != VerdictKind::SufficiencyPass) continue;
    if (convolution_test(e.member, jp).kind != VerdictKind::ConvolutionFail) continue;
    ConvolutionGrid derived;
    derived.form = KernelForm::Derived;
    CHECK(convolution_test(e.member, jp, derived).kind == VerdictKind::ConvolutionPass);
    found = true;
    break;
  }
  CHECK(found);
}

TEST_CASE("convolution_test with the derived kernel on all valences") {
  std::mt19937_64 rng(67);
  ConvolutionGrid g;
  g.form = KernelForm::Derived;
  g.thetas = 16;
  for (int p : {1, 2, 3}) {
    const Ctx ctx(p, 0.9, 1.0);
    const Jp jp(0.5, -0.5);
    const Member f = schwarz_to_member(random_schwarz<double>(2, rng()), ctx, jp, 8);
    CHECK(convolution_test(f, jp, g).kind == VerdictKind::ConvolutionPass);
  }
  CHECK(convolution_test(member_from(Ctx(1, 0.5, 0.0), {1, 5}), Jp(1, -1), g).kind == VerdictKind::ConvolutionFail);
}

TEST_CASE("convolution_test grid checks") {
  ConvolutionGrid g;
  g.radii = {1.0};
  const Ctx ctx(1, 0.5, 0.0);
  CHECK_THROWS_AS(convolution_test(member_from(ctx, {1, 0.1}), Jp(1, -1), g), ParameterError);
  g.radii = {};
  CHECK_THROWS_AS(convolution_test(member_from(ctx, {1, 0.1}), Jp(1, -1), g), ParameterError);
}

TEST_CASE("verdict coherence on a corpus sample") {
  std::mt19937_64 rng(71);
  ConvolutionGrid g;
  g.form = KernelForm::Derived;
  g.thetas = 16;
  for_each_grid_point([&](const Ctx& ctx, const Jp& jp) {
    if (ctx.mu() != 0.0 || ctx.q() < 0.9) return;
    for (int k = 1; k <= 4; ++k) {
      const Member f = schwarz_to_member(random_schwarz<double>(k, rng()), ctx, jp, 8);
      if (sufficiency_test(f, jp).kind != VerdictKind::SufficiencyPass) continue;
      CHECK(boundary_sample_test(f, jp, 0.9, 720).kind == VerdictKind::BoundaryPass);
      CHECK(convolution_test(f, jp, g).kind == VerdictKind::ConvolutionPass);
    }
  });
}
