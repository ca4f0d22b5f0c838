#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "trotter/bounds.hpp"
#include "trotter/cosine_integral.hpp"
#include "trotter/formula.hpp"
#include "trotter/spectral_tails.hpp"
#include "quadrature_oracle.hpp"

using trotter::DeltaRegime;
using trotter::MomentData;
using trotter::SecondOrderData;
using trotter::ShiftData;
using trotter::TailProfile;

namespace {
constexpr double kEulerGamma = 0.577215664901532860606512;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("cosine integral against tabulated references", "[cosine-integral]") {
  // References computed with an independent special-function library.
  const struct {
    double x, ci;
  } table[20] = {
      {0.01, -4.0279795209823916e+00}, {0.05, -2.4191415435519081e+00},
      {0.1, -1.7278683866572964e+00},  {0.25, -8.2466306258094568e-01},
      {0.5, -1.7778407880661296e-01},  {0.75, 1.5216360098033033e-01},
      {1, 3.3740392290096821e-01},     {1.5, 4.7035631719539994e-01},
      {2, 4.2298082877486504e-01},     {3, 1.1962978600800039e-01},
      {4, -1.4098169788693049e-01},    {5, -1.9002974965664385e-01},
      {6.5, 1.1101519514930106e-02},   {8, 1.2243388253200956e-01},
      {10, -4.5456433004455371e-02},   {15, 4.6278677674360447e-02},
      {20, 4.4419820845353314e-02},    {30, -3.3032417282071139e-02},
      {40, 1.9020007896208769e-02},    {50, -5.6283863241163050e-03},
  };
  for (const auto& ref : table) {
    CAPTURE(ref.x);
    REQUIRE(std::fabs(trotter::cosine_integral(ref.x) - ref.ci) < 1e-12);
  }
  // Continuity across the series/continued-fraction crossover.
  REQUIRE(std::fabs(trotter::cosine_integral(4.0 - 1e-12) -
                    trotter::cosine_integral(4.0 + 1e-12)) < 1e-11);
  REQUIRE_THROWS_AS(trotter::cosine_integral(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(trotter::cosine_integral(-1.0), std::invalid_argument);
}

TEST_CASE("g-function small-argument asymptotics", "[g-functions]") {
  for (const double x : {1e-4, 1e-3, 1e-2}) {
    CAPTURE(x);
    const auto g = trotter::g_functions(x);
    const double x2 = x * x, x4 = x2 * x2, x6 = x4 * x2;
    REQUIRE(g.g0 / x2 + std::log(x) ==
            Catch::Approx(1.5 - kEulerGamma).margin(1e-4));
    REQUIRE(g.g1 / x4 + std::log(x) ==
            Catch::Approx(1.75 - kEulerGamma).margin(1e-4));
    REQUIRE(g.g2 / x6 + std::log(x) ==
            Catch::Approx(2.0 - kEulerGamma).margin(1e-3));
    REQUIRE(g.g2_tilde / x6 + std::log(2.0 * x) ==
            Catch::Approx(1.75 - kEulerGamma).margin(1e-3));
  }
  REQUIRE_THROWS_AS(trotter::g_functions(0.0), std::invalid_argument);
}

TEST_CASE("g1 small-x cap", "[g-functions]") {
  for (double x = 0.02; x <= 1.0; x += 0.02) {
    CAPTURE(x);
    const double cap = -std::pow(x, 4) * std::log(x) + 1.2003 * std::pow(x, 4);
    REQUIRE(trotter::g_functions(x).g1 <= cap);
  }
}

TEST_CASE("both evaluation branches agree with references at the cutoff",
          "[g-functions]") {
  // High-precision references straddling the series/direct switch; agreement
  // on both sides rules out a jump between the two evaluation strategies.
  const auto lo = trotter::g_functions(2.0 - 1e-9);
  REQUIRE(lo.g0 == Catch::Approx(1.542818374972374256).epsilon(1e-12));
  REQUIRE(lo.g1 == Catch::Approx(9.3663774538451941752).epsilon(1e-12));
  REQUIRE(lo.g2 == Catch::Approx(51.319434763582750862).epsilon(1e-12));
  REQUIRE(lo.g2_tilde == Catch::Approx(8.0723429736151733657).epsilon(1e-12));
  const auto hi = trotter::g_functions(2.0 + 1e-9);
  REQUIRE(hi.g0 == Catch::Approx(1.5428183752257173331).epsilon(1e-12));
  REQUIRE(hi.g1 == Catch::Approx(9.3663774785302881768).epsilon(1e-12));
  REQUIRE(hi.g2 == Catch::Approx(51.319435016400761896).epsilon(1e-12));
  REQUIRE(hi.g2_tilde == Catch::Approx(8.0723429947509752369).epsilon(1e-12));
}

TEST_CASE("delta1 regimes", "[delta-bounds]") {
  // 1 < delta < 2: pure power law; delta = 3/2 collapses to pi (lambda0 s)^3.
  const TailProfile tp{1.5, 2.0};
  const double s = 0.3;
  const auto sub = trotter::delta1_bound(tp, s);
  REQUIRE(sub.regime == DeltaRegime::sub_critical);
  REQUIRE(sub.value == Catch::Approx(kPi * std::pow(0.6, 3)).epsilon(1e-13));

  const auto crit = trotter::delta1_bound({2.0, 1.0}, 0.1, 1.5);
  REQUIRE(crit.regime == DeltaRegime::critical_log);
  REQUIRE(crit.value > 0);
  REQUIRE(trotter::delta1_bound({2.0, 1.0}, 0.1, 0.0).value == 0.0);

  const auto dom = trotter::delta1_bound({2.5, 1.0}, 0.2, {}, 3.0);
  REQUIRE(dom.regime == DeltaRegime::domain_satisfied);
  REQUIRE(dom.value == Catch::Approx(0.25 * 9.0 * std::pow(0.2, 4)).epsilon(1e-14));

  REQUIRE_THROWS_AS(trotter::delta1_bound({1.0, 1.0}, 0.1), std::invalid_argument);
  REQUIRE_THROWS_WITH(trotter::delta1_bound({2.5, 1.0}, 0.2),
                      Catch::Matchers::ContainsSubstring("H^2 phi"));
  REQUIRE_THROWS_AS(trotter::delta1_bound({1.5, -1.0}, 0.1), std::invalid_argument);
}

TEST_CASE("delta0 and second-order kernels", "[delta-bounds]") {
  const auto d0 = trotter::delta0_bound({0.5, 1.0}, 0.2);
  REQUIRE(d0.regime == DeltaRegime::sub_critical);
  // 2 pi d / (Gamma(2d+1) sin(pi d)) = pi at d = 1/2.
  REQUIRE(d0.value == Catch::Approx(kPi * 0.2).epsilon(1e-13));
  REQUIRE(trotter::delta0_bound({0.5, 1.0}, 0.2, 4.0).value ==
          Catch::Approx(4.0 * kPi * 0.2).epsilon(1e-13));
  REQUIRE(trotter::delta0_bound({1.0, 1.0}, 0.2).regime ==
          DeltaRegime::critical_log);
  REQUIRE(trotter::delta0_bound({1.5, 1.0}, 0.2, 1.0, 2.0).value ==
          Catch::Approx(4.0 * 0.04).epsilon(1e-14));

  REQUIRE(trotter::delta2_bound({2.5, 1.0}, 0.2).regime ==
          DeltaRegime::sub_critical);
  REQUIRE(trotter::delta2_bound({3.5, 1.0}, 0.2, {}, 6.0).value ==
          Catch::Approx(std::pow(0.2, 6)).epsilon(1e-13));
  REQUIRE_THROWS_AS(trotter::delta2_bound({2.0, 1.0}, 0.2), std::invalid_argument);

  // The symmetrized kernel fills the removable singularity at delta = 2.
  const double at2 = trotter::delta2_tilde_bound({2.0, 1.3}, 0.1).value;
  REQUIRE(at2 == Catch::Approx(4.0 * std::pow(0.13, 4)).epsilon(1e-13));
  const double near2 = trotter::delta2_tilde_bound({2.0 + 1e-7, 1.3}, 0.1).value;
  REQUIRE(near2 == Catch::Approx(at2).epsilon(1e-5));
  REQUIRE(trotter::delta2_tilde_bound({3.5, 1.0}, 0.2, {}, 3.0).value ==
          Catch::Approx((4.0 / 9.0) * 9.0 * std::pow(0.2, 6)).epsilon(1e-13));
  REQUIRE_THROWS_AS(trotter::delta2_tilde_bound({1.0, 1.0}, 0.2),
                    std::invalid_argument);
}

TEST_CASE("delta bounds dominate the saturating-density quadrature",
          "[delta-bounds][oracle]") {
  for (const double delta : {1.2, 1.5, 1.8}) {
    for (const double lambda0 : {0.5, 1.0, 3.0}) {
      for (const double s : {0.01, 0.1, 0.5, 2.0}) {
        if (lambda0 * s > 3.0) continue;
        CAPTURE(delta, lambda0, s);
        const double quad =
            oracle::delta1_saturating_quadrature(delta, lambda0, s);
        const double bound = trotter::delta1_bound({delta, lambda0}, s).value;
        REQUIRE(quad <= bound * (1.0 + 1e-6));
      }
    }
  }
  // Critical delta = 2 path, with the saturating density's own first moment.
  for (const double lambda0 : {0.5, 1.0, 2.0}) {
    for (const double s : {0.01, 0.1, 0.5}) {
      CAPTURE(lambda0, s);
      const double quad = oracle::delta1_saturating_quadrature(2.0, lambda0, s);
      const double bound =
          trotter::delta1_bound({2.0, lambda0}, s,
                                oracle::saturating_norm_H(2.0, lambda0)).value;
      REQUIRE(quad <= bound * (1.0 + 1e-6));
    }
  }
  // Critical delta = 1 path of the zeroth kernel exercises g0.
  for (const double lambda0 : {0.5, 1.0, 2.0}) {
    for (const double s : {0.01, 0.1, 0.5}) {
      CAPTURE(lambda0, s);
      const double quad = oracle::delta0_saturating_quadrature(1.0, lambda0, s);
      const double bound = trotter::delta0_bound({1.0, lambda0}, s).value;
      REQUIRE(quad <= bound * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("sub-critical delta1 bound is asymptotically tight",
          "[delta-bounds][oracle]") {
  for (const double delta : {1.2, 1.5, 1.8}) {
    CAPTURE(delta);
    const double lambda0 = 1.0;
    const double y = 0.01;  // lambda0 * s
    const double quad = oracle::delta1_saturating_quadrature(delta, lambda0, y);
    const double bound = trotter::delta1_bound({delta, lambda0}, y).value;
    // Missing mass below y contributes ~ y^{4-2d}/(4(4-2d)) relative to the
    // full integral I = (1/2d) pi / (Gamma(2d-1) sin((d-1) pi)).
    const double I = kPi / (2.0 * delta * std::tgamma(2.0 * delta - 1.0) *
                            std::sin((delta - 1.0) * kPi));
    const double missing =
        std::pow(y, 4.0 - 2.0 * delta) / (4.0 * (4.0 - 2.0 * delta) * I);
    REQUIRE(quad / bound >= 1.0 - 1.5 * missing);
    REQUIRE(quad / bound <= 1.0 + 1e-6);
  }
}

TEST_CASE("delta1 bound is monotone in s and lambda0", "[delta-bounds]") {
  for (const double delta : {1.3, 2.0, 2.5}) {
    CAPTURE(delta);
    double prev = 0.0;
    for (double s = 0.05; s <= 1.0; s += 0.05) {
      const double v =
          trotter::delta1_bound({delta, 1.0}, s,
                                oracle::saturating_norm_H(std::max(delta, 1.5), 1.0),
                                delta > 2 ? std::optional<double>(
                                                oracle::saturating_norm_H2(delta, 1.0))
                                          : std::nullopt).value;
      REQUIRE(v >= prev);
      prev = v;
    }
    double prev_l = 0.0;
    for (double l0 = 0.2; l0 <= 2.0; l0 += 0.2) {
      const double v =
          trotter::delta1_bound({delta, l0}, 0.3,
                                oracle::saturating_norm_H(std::max(delta, 1.5), l0),
                                delta > 2 ? std::optional<double>(
                                                oracle::saturating_norm_H2(delta, l0))
                                          : std::nullopt).value;
      REQUIRE(v >= prev_l);
      prev_l = v;
    }
  }
}

TEST_CASE("regime continuity near the critical exponent", "[delta-bounds]") {
  // Exponents approaching 2 are compared at the argument scale where the
  // windows overlap: y = exp(-1/(2 eps)).
  for (const double eps : {0.05, 0.02}) {
    CAPTURE(eps);
    const double lambda0 = 1.0;
    const double y = std::exp(-1.0 / (2.0 * eps));
    const double at2 =
        trotter::delta1_bound({2.0, lambda0}, y,
                              oracle::saturating_norm_H(2.0, lambda0)).value;
    const double below = trotter::delta1_bound({2.0 - eps, lambda0}, y).value;
    const double above =
        trotter::delta1_bound({2.0 + eps, lambda0}, y, {},
                              oracle::saturating_norm_H2(2.0 + eps, lambda0)).value;
    REQUIRE(below / at2 > 0.1);
    REQUIRE(below / at2 < 10.0);
    REQUIRE(above / at2 > 0.1);
    REQUIRE(above / at2 < 10.0);
  }
}

TEST_CASE("first-order fractional assembly", "[fractional]") {
  REQUIRE(trotter::first_order_fractional({1.25, 1.0}, {1.5, 1.0}, 0.0, 4) == 0.0);

  // Both exponents beyond 2: reduces to (t^2/2N)(||H1^2 phi|| + ||H2^2 phi||).
  MomentData m1, m2;
  m1.norm_H2_phi = 3.0;
  m2.norm_H2_phi = 5.0;
  const double v =
      trotter::first_order_fractional({2.5, 1.0}, {2.5, 1.0}, 2.0, 8, {}, m1, m2);
  REQUIRE(v == Catch::Approx(4.0 / 16.0 * 8.0).epsilon(1e-13));

  // Shift contribution on top of the tail terms.
  ShiftData shift;
  shift.g = 0.5;
  shift.norm_Hj_phi = 2.0;
  const double with_shift =
      trotter::first_order_fractional({2.5, 1.0}, {2.5, 1.0}, 2.0, 8, shift, m1, m2);
  REQUIRE(with_shift - v ==
          Catch::Approx(0.25 * 4.0 / 16.0 + 0.5 * 4.0 * 2.0 / 8.0).epsilon(1e-12));

  // Sub-critical window: N-scaling exponent is 1 - delta.
  const double t = 1.0;
  const double a = trotter::first_order_fractional({1.25, 1.0}, {1.5, 1.0}, t, 100);
  const double b = trotter::first_order_fractional({1.25, 1.0}, {1.5, 1.0}, t, 200);
  // The two terms scale as N^{-1/4} and N^{-1/2}; the slower one dominates.
  const double slope = std::log2(a / b);
  REQUIRE(slope > 0.24);
  REQUIRE(slope < 0.5);

  REQUIRE_THROWS_AS(
      trotter::first_order_fractional({0.9, 1.0}, {1.5, 1.0}, 1.0, 4),
      std::invalid_argument);
}

TEST_CASE("second-order fractional assembly", "[fractional]") {
  // All moments finite: the assembly reproduces the exact second-order
  // derived-bound coefficients 1/24, 1/8, 1/12.
  SecondOrderData data;
  data.h1 = {3.5, 1.0};
  data.h2 = {3.5, 1.0};
  data.m1.norm_H_phi = 1.0;
  data.m1.norm_H2_phi = 1.1;
  data.m1.norm_H3_phi = 1.7;
  data.m2.norm_H_phi = 1.0;
  data.m2.norm_H2_phi = 0.9;
  data.m2.norm_H3_phi = 2.3;
  data.norm_h2_h1sq_phi = 1.3;
  const double t = 1.0;
  const long N = 10;
  const double assembled = trotter::second_order_fractional(data, t, N);

  const auto be = trotter::derive_bound(trotter::suzuki_times(2));
  const std::map<trotter::Word, double> norms = {
      {"aaa", 1.7}, {"baa", 1.3}, {"bbb", 2.3}};
  const double direct = trotter::evaluate_bound(be, norms, t, N);
  REQUIRE(assembled == Catch::Approx(direct).epsilon(1e-12));

  // Fractional window: never worse than half the first-order assembly.
  SecondOrderData frac;
  frac.h1 = {1.25, 1.0};
  frac.h2 = {1.5, 1.0};
  const double second = trotter::second_order_fractional(frac, 1.0, 50);
  const double first =
      trotter::first_order_fractional(frac.h1, frac.h2, 1.0, 50);
  REQUIRE(second <= 0.5 * first * (1.0 + 1e-13));
  REQUIRE(second > 0.0);

  REQUIRE(trotter::second_order_fractional(frac, 0.0, 5) == 0.0);

  SecondOrderData starved;
  starved.h1 = {0.5, 1.0};
  starved.h2 = {0.5, 1.0};
  REQUIRE_THROWS_AS(trotter::second_order_fractional(starved, 1.0, 5),
                    std::invalid_argument);
}

TEST_CASE("superposition combination", "[fractional]") {
  using trotter::SuperpositionTerm;
  REQUIRE(trotter::superposition_bound({{1.0, 0.3}}) == Catch::Approx(0.3));
  REQUIRE(trotter::superposition_bound({}) == 0.0);
  REQUIRE(trotter::superposition_bound({{0.6, 0.0}, {0.8, 0.0}}) == 0.0);

  const double c = 1.0 / std::sqrt(2.0);
  const double two =
      trotter::superposition_bound({{c, 0.3}, {c, 0.4}});
  REQUIRE(two == Catch::Approx(0.7 * c).epsilon(1e-13));
  const double swapped =
      trotter::superposition_bound({{c, 0.4}, {c, 0.3}});
  REQUIRE(two == Catch::Approx(swapped).epsilon(1e-15));

  const double inf = std::numeric_limits<double>::infinity();
  REQUIRE(std::isinf(trotter::superposition_bound({{0.5, inf}, {0.5, 0.1}})));
  // Zero-weight eigenstates are absent from the combination.
  REQUIRE(trotter::superposition_bound({{0.0, inf}, {1.0, 0.2}}) ==
          Catch::Approx(0.2));
}
