#include "trotter/spectral_tails.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "trotter/cosine_integral.hpp"

namespace trotter {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512;
constexpr double kPi = std::numbers::pi;
constexpr int kSeriesLen = 44;  // coefficients of x^{2m}, m < kSeriesLen
constexpr double kSeriesCutoff = 2.0;

double one_minus_cos(double x) {
  const double h = std::sin(0.5 * x);
  return 2.0 * h * h;
}

double x_minus_sin(double x) {
  if (std::fabs(x) > 0.5) return x - std::sin(x);
  // x^3/6 - x^5/120 + ...
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k <= 12; ++k) {
    term *= -x2 / ((2 * k) * (2 * k + 1));
    sum += term;
  }
  return sum;
}

double f1_kernel(double x) {
  const double a = one_minus_cos(x);
  const double b = x_minus_sin(x);
  return a * a + b * b;
}

using Series = std::array<double, kSeriesLen>;

// Series in x^2 of the elementary (Ci-free) part of each g-function, plus the
// Ci power-series tail folded in. The leading orders below the known x^{2j}
// onset cancel identically and are pinned to zero so tiny arguments keep full
// relative accuracy.
struct GSeriesTables {
  Series d0{}, d1{}, d2{}, d2t{};

  GSeriesTables() {
    Series C{}, C2{}, XS{}, X2S{}, O{};
    C[0] = 1.0;
    C2[0] = 1.0;
    double fact = 1.0;  // (2m)!
    for (int m = 1; m < kSeriesLen; ++m) {
      fact *= (2 * m - 1) * (2 * m);
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      C[m] = sgn / fact;
      C2[m] = sgn * std::pow(4.0, m) / fact;
      XS[m] = -sgn * (2.0 * m) / fact;        // x sin x
      X2S[m] = -sgn * std::pow(4.0, m) * (2.0 * m) / fact;  // 2x sin 2x / 2^(2m)... exact below
      if (m >= 1) O[m] = -sgn / (fact * (2 * m + 1));  // (x - sin x), coeff of x^{2m+1}
    }
    // x sin x: coeff of x^{2m} is (-1)^{m-1}/(2m-1)! = (-1)^{m-1} 2m/(2m)!.
    // 2x sin 2x: coeff of x^{2m} is (-1)^{m-1} 4^m 2m/(2m)!   (m >= 1).
    // (x - sin x): coeff of x^{2m+1} is (-1)^{m+1}/(2m+1)! = (-1)^{m+1}/((2m)!(2m+1)).

    // g0 bracket: (1 - cos x) + x sin x.
    Series b0{};
    for (int m = 1; m < kSeriesLen; ++m) b0[m] = -C[m] + XS[m];

    // g1 bracket: (1 + x^2/2) f1 - 2x^3 (x - sin x) + (3/2) x^4.
    Series P{}, Q{}, T{}, F{};
    for (int m = 1; m < kSeriesLen; ++m) P[m] = -C[m];
    for (int m = 2; m < kSeriesLen; ++m)
      for (int i = 1; i < m; ++i) Q[m] += P[i] * P[m - i];
    for (int m = 3; m < kSeriesLen; ++m)
      for (int i = 1; i < m - 1; ++i) T[m] += O[i] * O[m - 1 - i];
    for (int m = 0; m < kSeriesLen; ++m) F[m] = Q[m] + T[m];
    Series b1{};
    for (int m = 2; m < kSeriesLen; ++m) {
      b1[m] = F[m] + 0.5 * F[m - 1];
      if (m >= 3) b1[m] -= 2.0 * O[m - 2];
      if (m == 2) b1[m] += 1.5;
    }

    // g2 bracket: 12 + (9/2)x^4 - (12 - 6x^2 + x^4) cos x - x(12 + 2x^2 - x^4) sin x.
    Series b2{};
    for (int m = 3; m < kSeriesLen; ++m) {
      const double cospart = 12.0 * C[m] - 6.0 * C[m - 1] + C[m - 2];
      const double sinpart = 12.0 * XS[m] + 2.0 * XS[m - 1] - XS[m - 2];
      b2[m] = -cospart - sinpart;
    }

    // g2~ bracket: (1/8)[6 + 9x^2 - (6 - 3x^2 + 2x^4) cos 2x - (6 + x^2 - 2x^4) 2x sin 2x].
    Series b2t{};
    for (int m = 3; m < kSeriesLen; ++m) {
      double cospart = 6.0 * C2[m] - 3.0 * C2[m - 1] + 2.0 * C2[m - 2];
      double sinpart = 6.0 * X2S[m] + X2S[m - 1] - 2.0 * X2S[m - 2];
      b2t[m] = 0.125 * (-cospart - sinpart);
    }

    // Fold in the Ci power series: -x^{2j} Ci(cx) contributes
    // -(-1)^k c^{2k}/(2k (2k)!) at x^{2(j+k)}, c = 1 except c = 2 for g2~.
    const auto fold = [](Series& dst, const Series& bracket, int j, double csq) {
      for (int m = 0; m < kSeriesLen; ++m) dst[m] = m < j ? 0.0 : bracket[m];
      double fk = 1.0;   // (2k)!
      double ck = 1.0;   // c^{2k}
      for (int k = 1; j + k < kSeriesLen; ++k) {
        fk *= (2 * k - 1) * (2 * k);
        ck *= csq;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        dst[j + k] -= sgn * ck / (2 * k * fk);
      }
    };
    fold(d0, b0, 1, 1.0);
    fold(d1, b1, 2, 1.0);
    fold(d2, b2, 3, 1.0);
    fold(d2t, b2t, 3, 4.0);
  }
};

const GSeriesTables& g_tables() {
  static const GSeriesTables tables;
  return tables;
}

double eval_series(const Series& d, int j, double x, double log_shift) {
  const double x2 = x * x;
  double poly = 0.0;
  for (int m = kSeriesLen - 1; m >= j; --m) poly = poly * x2 + d[m];
  double xpow = 1.0;
  for (int i = 0; i < j; ++i) xpow *= x2;
  for (int m = 0; m < j; ++m) poly *= x2;  // restore the x^{2j} onset
  // poly now equals sum_{m>=j} d[m] x^{2m}
  return xpow * (-kEulerGamma - log_shift - std::log(x)) + poly;
}

GFunctions g_small(double x) {
  const auto& t = g_tables();
  GFunctions g;
  g.g0 = eval_series(t.d0, 1, x, 0.0);
  g.g1 = eval_series(t.d1, 2, x, 0.0);
  g.g2 = eval_series(t.d2, 3, x, 0.0);
  g.g2_tilde = eval_series(t.d2t, 3, x, std::log(2.0));
  return g;
}

GFunctions g_direct(double x) {
  const double ci1 = cosine_integral(x);
  const double ci2 = cosine_integral(2.0 * x);
  const double x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x6 = x4 * x2;
  const double sx = std::sin(x), cx = std::cos(x);
  const double s2x = std::sin(2.0 * x), c2x = std::cos(2.0 * x);
  GFunctions g;
  g.g0 = -x2 * ci1 + (1.0 - cx) + x * sx;
  g.g1 = -x4 * ci1 + (1.0 + 0.5 * x2) * f1_kernel(x) - 2.0 * x3 * (x - sx) +
         1.5 * x4;
  g.g2 = -x6 * ci1 + 12.0 + 4.5 * x4 - (12.0 - 6.0 * x2 + x4) * cx -
         x * (12.0 + 2.0 * x2 - x4) * sx;
  g.g2_tilde = -x6 * ci2 +
               0.125 * (6.0 + 9.0 * x2 - (6.0 - 3.0 * x2 + 2.0 * x4) * c2x -
                        2.0 * x * (2.0 - x2) * (3.0 + 2.0 * x2) * s2x);
  return g;
}

void check_tail_profile(const TailProfile& tp, double s) {
  if (!(tp.delta > 0) || !(tp.lambda0 > 0))
    throw std::invalid_argument("tail profile needs delta > 0 and lambda0 > 0");
  if (!(s >= 0)) throw std::invalid_argument("duration must be nonnegative");
}

double require_norm(const std::optional<double>& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string("missing moment data: ") + what);
  if (!(*v >= 0)) throw std::invalid_argument(std::string("negative norm: ") + what);
  return *v;
}

}  // namespace

GFunctions g_functions(double x) {
  if (!(x > 0)) throw std::invalid_argument("g functions need x > 0");
  return x <= kSeriesCutoff ? g_small(x) : g_direct(x);
}

DeltaBoundValue delta0_bound(const TailProfile& tp, double s, double mass,
                             std::optional<double> norm_H_psi) {
  check_tail_profile(tp, s);
  if (!(mass >= 0)) throw std::invalid_argument("mass must be nonnegative");
  const double d = tp.delta;
  const double y = tp.lambda0 * s;
  if (d < 1.0) {
    const double c = 2.0 * kPi * d / (std::tgamma(2.0 * d + 1.0) * std::sin(d * kPi));
    return {mass * c * std::pow(y, 2.0 * d), DeltaRegime::sub_critical};
  }
  if (d == 1.0) {
    const double val = s == 0 ? 0.0 : y * y + 2.0 * g_functions(y).g0;
    return {mass * val, DeltaRegime::critical_log};
  }
  const double n = require_norm(norm_H_psi, "norm of H psi");
  return {n * n * s * s, DeltaRegime::domain_satisfied};
}

DeltaBoundValue delta1_bound(const TailProfile& tp, double s,
                             std::optional<double> norm_H_phi,
                             std::optional<double> norm_H2_phi) {
  check_tail_profile(tp, s);
  const double d = tp.delta;
  if (d <= 1.0)
    throw std::invalid_argument("delta1 bound needs tail exponent > 1");
  const double y = tp.lambda0 * s;
  if (d < 2.0) {
    const double c =
        kPi / (std::tgamma(2.0 * d - 1.0) * std::sin((d - 1.0) * kPi));
    return {c * std::pow(y, 2.0 * d), DeltaRegime::sub_critical};
  }
  if (d == 2.0) {
    const double n = require_norm(norm_H_phi, "norm of H phi");
    if (n == 0 || s == 0) return {0.0, DeltaRegime::critical_log};
    // Quasi-optimal splitting scale L = sqrt(2) lambda0^2 / ||H phi||.
    const double L = std::sqrt(2.0) * tp.lambda0 * tp.lambda0 / n;
    const double r = tp.lambda0 / L;
    const double val = 0.25 * L * L * n * n * std::pow(s, 4) +
                       std::pow(r, 4) * g_functions(L * s).g1;
    return {val, DeltaRegime::critical_log};
  }
  const double n2 = require_norm(norm_H2_phi, "norm of H^2 phi");
  return {0.25 * n2 * n2 * std::pow(s, 4), DeltaRegime::domain_satisfied};
}

DeltaBoundValue delta2_bound(const TailProfile& tp, double s,
                             std::optional<double> norm_H2_psi,
                             std::optional<double> norm_H3_psi) {
  check_tail_profile(tp, s);
  const double d = tp.delta;
  if (d <= 2.0)
    throw std::invalid_argument("delta2 bound needs tail exponent > 2");
  const double y = tp.lambda0 * s;
  if (d < 3.0) {
    const double c =
        kPi / (2.0 * std::tgamma(2.0 * d - 2.0) * std::sin((d - 2.0) * kPi));
    return {c * std::pow(y, 2.0 * d), DeltaRegime::sub_critical};
  }
  if (d == 3.0) {
    const double n = require_norm(norm_H2_psi, "norm of H^2 psi");
    if (n == 0 || s == 0) return {0.0, DeltaRegime::critical_log};
    const double l0 = tp.lambda0;
    const double L = std::sqrt(3.0) * l0 * l0 * l0 / n;
    const double r6 = std::pow(l0 / L, 6);
    const double val = (1.0 / 36.0) * L * L * n * n * std::pow(s, 6) +
                       (r6 / 6.0) * g_functions(L * s).g2;
    return {val, DeltaRegime::critical_log};
  }
  const double n3 = require_norm(norm_H3_psi, "norm of H^3 psi");
  return {(1.0 / 36.0) * n3 * n3 * std::pow(s, 6), DeltaRegime::domain_satisfied};
}

DeltaBoundValue delta2_tilde_bound(const TailProfile& tp, double s,
                                   std::optional<double> norm_H2_phi,
                                   std::optional<double> norm_H3_phi) {
  check_tail_profile(tp, s);
  const double d = tp.delta;
  if (d <= 1.0)
    throw std::invalid_argument("symmetrized delta2 bound needs tail exponent > 1");
  const double y = tp.lambda0 * s;
  if (d < 3.0) {
    // (d-2)/sin((d-2) pi) has a removable singularity at d = 2 with limit 1/pi.
    const double ratio =
        d == 2.0 ? 1.0 / kPi : (d - 2.0) / std::sin((d - 2.0) * kPi);
    const double c =
        std::pow(2.0, 2.0 * d - 1.0) * kPi * ratio / std::tgamma(2.0 * d - 1.0);
    return {c * std::pow(y, 2.0 * d), DeltaRegime::sub_critical};
  }
  if (d == 3.0) {
    const double n = require_norm(norm_H2_phi, "norm of H^2 phi");
    if (n == 0 || s == 0) return {0.0, DeltaRegime::critical_log};
    const double l0 = tp.lambda0;
    const double L = std::sqrt(3.0) * l0 * l0 * l0 / n;
    const double r6 = std::pow(l0 / L, 6);
    const double val = (4.0 / 9.0) * L * L * n * n * std::pow(s, 6) +
                       (8.0 / 3.0) * r6 * g_functions(L * s).g2_tilde;
    return {val, DeltaRegime::critical_log};
  }
  const double n3 = require_norm(norm_H3_phi, "norm of H^3 phi");
  return {(4.0 / 9.0) * n3 * n3 * std::pow(s, 6), DeltaRegime::domain_satisfied};
}

double first_order_fractional(const TailProfile& tp1, const TailProfile& tp2,
                              double t, long N, const ShiftData& shift,
                              const MomentData& m1, const MomentData& m2) {
  if (!(t >= 0)) throw std::invalid_argument("time must be nonnegative");
  if (N < 1) throw std::invalid_argument("step count must be positive");
  const double s = t / static_cast<double>(N);
  const double d1 = delta1_bound(tp1, s, m1.norm_H_phi, m1.norm_H2_phi).value;
  const double d2 = delta1_bound(tp2, s, m2.norm_H_phi, m2.norm_H2_phi).value;
  const double hbar2 = shift.hbar * shift.hbar;
  const double shift_terms =
      shift.g * shift.g * t * t / (2.0 * N * hbar2) +
      std::fabs(shift.g) * t * t * shift.norm_Hj_phi / (N * hbar2);
  return N * (std::sqrt(d1) + std::sqrt(d2)) + shift_terms;
}

double second_order_fractional(const SecondOrderData& data, double t, long N) {
  if (!(t >= 0)) throw std::invalid_argument("time must be nonnegative");
  if (N < 1) throw std::invalid_argument("step count must be positive");
  const double s_half = t / (2.0 * N);
  const double s_full = t / static_cast<double>(N);
  double best = std::numeric_limits<double>::infinity();
  bool any = false;

  const auto consider = [&](double v) {
    best = std::min(best, v);
    any = true;
  };

  try {
    const double dt2 =
        delta2_tilde_bound(data.h2, s_half, data.m2.norm_H2_phi,
                           data.m2.norm_H3_phi).value;
    try {
      const double d1 = delta1_bound(data.h1, s_half, data.m1.norm_H_phi,
                                     data.m1.norm_H2_phi).value;
      consider(2.0 * N * std::sqrt(d1) + N * std::sqrt(dt2));
    } catch (const std::invalid_argument&) {
    }
    try {
      const double d2 = delta2_bound(data.h1, s_half, data.m1.norm_H2_phi,
                                     data.m1.norm_H3_phi).value;
      double residual = std::numeric_limits<double>::infinity();
      bool have_residual = false;
      if (data.norm_h2_h1sq_phi) {
        residual = *data.norm_h2_h1sq_phi * s_full;
        have_residual = true;
      }
      if (data.h2_at_h1sq && data.norm_h1sq_phi) {
        try {
          const double mass = *data.norm_h1sq_phi * *data.norm_h1sq_phi;
          const double d0 = delta0_bound(*data.h2_at_h1sq, s_full, mass,
                                         data.norm_h2_h1sq_phi).value;
          residual = std::min(residual, std::sqrt(d0));
          have_residual = true;
        } catch (const std::invalid_argument&) {
        }
      }
      if (have_residual)
        consider(2.0 * N * std::sqrt(d2) + N * std::sqrt(dt2) +
                 t * t / (8.0 * N) * residual);
    } catch (const std::invalid_argument&) {
    }
  } catch (const std::invalid_argument&) {
  }

  try {
    consider(0.5 * first_order_fractional(data.h1, data.h2, t, N, data.shift,
                                          data.m1, data.m2));
  } catch (const std::invalid_argument&) {
  }

  if (!any)
    throw std::invalid_argument(
        "insufficient tail or moment data for any second-order assembly");
  return best;
}

double superposition_bound(const std::vector<SuperpositionTerm>& terms) {
  double weighted = 0.0;
  double sum_sq = 0.0;
  for (const auto& term : terms) {
    if (term.weight_abs == 0) continue;
    weighted += term.weight_abs * term.bound;
    sum_sq += term.bound * term.bound;
  }
  return std::min(weighted, std::sqrt(sum_sq));
}

}  // namespace trotter
