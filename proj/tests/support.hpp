#ifndef QSTAR_TESTS_SUPPORT_HPP
#define QSTAR_TESTS_SUPPORT_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qstar/qstar.hpp"

namespace qstar::test {

using Complex = std::complex<double>;
using Series = TruncSeries<double>;
using Member = NormalizedMember<double>;
using Ctx = QContext<double>;
using Jp = JanowskiParams<double>;

inline const std::vector<double> kGridQ{0.3, 0.5, 0.7, 0.9, 0.99};
inline const std::vector<int> kGridP{1, 2, 3};
inline const std::vector<double> kGridMu{0, 1, 2.5};
inline const std::vector<std::pair<double, double>> kGridAB{{1, -1}, {1, 0}, {0.5, -0.5}, {0.75, -1}};

// Visits every point of the default parameter grid.
template <typename F>
void for_each_grid_point(F&& f) {
  for (double q : kGridQ)
    for (int p : kGridP)
      for (double mu : kGridMu)
        for (const auto& [A, B] : kGridAB) f(Ctx(p, q, mu), Jp(A, B));
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline Series random_series(std::mt19937_64& rng, int lead, int order, double scale = 1.0) {
  Series::Coeffs c(order + 1);
  for (int j = 0; j <= order; ++j) c(j) = random_complex(rng, scale);
  return Series(lead, std::move(c));
}

// Unit leading coefficient, the rest uniform in [-scale, scale]^2.
inline Member random_member(std::mt19937_64& rng, const Ctx& ctx, int order, double scale) {
  Series::Coeffs c(order + 1);
  c(0) = 1;
  for (int j = 1; j <= order; ++j) c(j) = random_complex(rng, scale);
  return Member(ctx, Series(ctx.p(), std::move(c)));
}

inline Member member_from(const Ctx& ctx, std::initializer_list<Complex> coeffs) {
  return Member(ctx, Series(ctx.p(), coeffs));
}

}  // namespace qstar::test

#endif  // QSTAR_TESTS_SUPPORT_HPP
