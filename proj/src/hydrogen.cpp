#include "trotter/hydrogen.hpp"

#include <cmath>
#include <stdexcept>

namespace trotter {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_level(const HydrogenLevel& level) {
  if (level.n < 1) throw std::invalid_argument("principal quantum number n must be >= 1");
  if (level.l < 0 || level.l >= level.n)
    throw std::invalid_argument("orbital quantum number l must satisfy 0 <= l < n");
  if (level.m < -level.l || level.m > level.l)
    throw std::invalid_argument("magnetic quantum number m must satisfy |m| <= l");
}

// L_k^{(alpha)}(x) by the three-term recurrence; stable for the small k
// used here, unlike the alternating factorial sum.
double laguerre(int k, double alpha, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int i = 2; i <= k; ++i) {
    const double next =
        ((2.0 * i - 1.0 + alpha - x) * cur - (i - 1.0 + alpha) * prev) / i;
    prev = cur;
    cur = next;
  }
  return cur;
}

// C_k^{(alpha)}(x) by the three-term recurrence.
double gegenbauer(int k, double alpha, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * alpha * x;
  for (int i = 2; i <= k; ++i) {
    const double next =
        (2.0 * (i + alpha - 1.0) * x * cur - (i + 2.0 * alpha - 2.0) * prev) / i;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Leading constant of the momentum distribution,
// 4^{2l+3} n^2 (l!)^2 (n-l-1)! / (2 pi (n+l)!).
double momentum_constant(const HydrogenLevel& level) {
  const double n = level.n, l = level.l;
  const double log_c = (2.0 * l + 3.0) * std::log(4.0) + 2.0 * std::log(n) +
                       2.0 * std::lgamma(l + 1.0) + std::lgamma(n - l) -
                       std::log(2.0 * kPi) - std::lgamma(n + l + 1.0);
  return std::exp(log_c);
}

// Gegenbauer-capped bound on ||H1^k Psi||, finite for l > 2k - 5/2; exact
// for nodeless states n = l + 1. The 4k-th moment of the capped momentum
// distribution is a beta integral.
double capped_kinetic_norm(const HydrogenLevel& level, int k) {
  const double n = level.n, l = level.l;
  // Cap on the squared Gegenbauer factor: [(n+l)!/((2l+1)!(n-l-1)!)]^2.
  const double log_poly_cap =
      2.0 * (std::lgamma(n + l + 1.0) - std::lgamma(2.0 * l + 2.0) -
             std::lgamma(n - l));
  const double log_moment =
      std::log(momentum_constant(level)) + log_poly_cap +
      log_beta(l + 2.0 * k + 1.5, l - 2.0 * k + 2.5) -
      std::log(2.0) - (4.0 * k + 1.0) * std::log(n);
  return std::exp(0.5 * log_moment) / std::pow(2.0, k);
}

}  // namespace

ReducedTime::ReducedTime(double t_tilde) : t_tilde_(t_tilde) {
  if (!(t_tilde >= 0))
    throw std::invalid_argument("reduced time must be nonnegative");
}

double energy(const HydrogenLevel& level) {
  check_level(level);
  return -0.5 / (static_cast<double>(level.n) * level.n);
}

double radial_wavefunction(const HydrogenLevel& level, double u) {
  check_level(level);
  if (!(u >= 0)) throw std::invalid_argument("radius must be nonnegative");
  const double n = level.n, l = level.l;
  const double log_norm =
      1.5 * std::log(2.0 / n) +
      0.5 * (std::lgamma(n - l) - std::log(2.0 * n) - std::lgamma(n + l + 1.0));
  const double x = 2.0 * u / n;
  return std::exp(log_norm) * std::exp(-u / n) * std::pow(x, l) *
         laguerre(level.n - level.l - 1, 2.0 * l + 1.0, x);
}

double momentum_distribution(const HydrogenLevel& level, double u) {
  check_level(level);
  if (!(u >= 0)) throw std::invalid_argument("momentum must be nonnegative");
  const double n = level.n, l = level.l;
  const double w = n * n * u * u;
  const double poly =
      gegenbauer(level.n - level.l - 1, l + 1.0, (w - 1.0) / (w + 1.0));
  return momentum_constant(level) * std::pow(w, l + 1.0) /
         std::pow(w + 1.0, 2.0 * l + 4.0) * poly * poly;
}

PotentialMoments potential_moments(const HydrogenLevel& level) {
  check_level(level);
  const double n = level.n, l = level.l;
  const double n3 = n * n * n;
  PotentialMoments moments;
  moments.inv_r = 1.0 / (n * n);
  moments.inv_r2 = 1.0 / ((l + 0.5) * n3);
  if (level.l >= 1) {
    moments.inv_r3 = 1.0 / (l * (l + 1.0) * (l + 0.5) * n3);
    moments.inv_r4 = (3.0 * n * n - l * (l + 1.0)) /
                     (2.0 * l * (l + 1.0) * (l + 0.5) * (l - 0.5) * (l + 1.5) *
                      n3 * n * n);
  }
  return moments;
}

TailData tail_exponents(const HydrogenLevel& level) {
  check_level(level);
  const double n = level.n, l = level.l;
  TailData tails;
  const double delta1 = 0.5 * l + 1.25;
  const double delta2 = l + 1.5;
  const double log_shared = std::lgamma(n + l + 1.0) -
                            (2.0 * l + 4.0) * std::log(n) -
                            2.0 * std::lgamma(2.0 * l + 2.0) -
                            std::lgamma(n - l);
  tails.rho1_coefficient =
      std::exp((3.0 * l + 1.5) * std::log(2.0) + 2.0 * std::lgamma(l + 1.0) -
               std::log(kPi) + log_shared);
  tails.rho2_coefficient = std::exp((2.0 * l + 2.0) * std::log(2.0) + log_shared);
  tails.kinetic = {delta1, std::pow(tails.rho1_coefficient / (2.0 * delta1),
                                    1.0 / (2.0 * delta1))};
  tails.potential = {delta2, std::pow(tails.rho2_coefficient / (2.0 * delta2),
                                      1.0 / (2.0 * delta2))};
  return tails;
}

MixedTails mixed_tail_exponents(const HydrogenLevel& level) {
  check_level(level);
  MixedTails mixed;
  if (level.l >= 1) mixed.delta21 = 0.5 * level.l - 0.25;
  if (level.l >= 4) {
    mixed.delta12 = 2.5;
  } else if (level.l >= 2) {
    mixed.delta12 = 0.5;
  }
  return mixed;
}

std::optional<double> kinetic_fourth_moment_term(const HydrogenLevel& level) {
  check_level(level);
  if (level.l <= 1) return std::nullopt;
  return 0.25 * capped_kinetic_norm(level, 2);
}

std::vector<BoundTerm> first_order_terms(const HydrogenLevel& level) {
  check_level(level);
  const double n = level.n;
  const auto tails = tail_exponents(level);
  const auto moments = potential_moments(level);
  const double g = 0.5 / (n * n);

  std::vector<BoundTerm> terms;
  if (level.l <= 1) {
    const double delta1 = tails.kinetic.delta;
    terms.push_back({delta1, delta1 - 1.0,
                     std::sqrt(delta1_bound(tails.kinetic, 1.0).value)});
  }
  if (level.l == 0) {
    const double delta2 = tails.potential.delta;
    terms.push_back({delta2, delta2 - 1.0,
                     std::sqrt(delta1_bound(tails.potential, 1.0).value)});
  }

  double order_one = 0.5 * g * g + g * std::sqrt(moments.inv_r2);
  if (level.l >= 2) order_one += 0.5 * *kinetic_fourth_moment_term(level);
  if (level.l >= 1) order_one += 0.5 * std::sqrt(*moments.inv_r4);
  terms.push_back({2.0, 1.0, order_one});
  return terms;
}

double first_order_bound(const HydrogenLevel& level, ReducedTime t, long N) {
  if (N < 1) throw std::invalid_argument("step count must be >= 1");
  double sum = 0;
  for (const auto& term : first_order_terms(level)) {
    sum += term.coefficient * std::pow(t.value(), term.t_power) /
           std::pow(static_cast<double>(N), term.n_power);
  }
  return sum;
}

SecondOrderData second_order_data(const HydrogenLevel& level,
                                  bool potential_outer) {
  check_level(level);
  const double n = level.n;
  const auto tails = tail_exponents(level);
  const auto moments = potential_moments(level);

  MomentData kinetic;
  // On the eigenstate, H1 Psi = (E_n + 1/r) Psi, so the second kinetic
  // moment reduces to potential moments: <H1^2> = <1/r^2> - 3/(4 n^4).
  kinetic.norm_H_phi = std::sqrt(moments.inv_r2 - 0.75 / std::pow(n, 4));
  if (level.l >= 2) kinetic.norm_H2_phi = capped_kinetic_norm(level, 2);
  if (level.l >= 4) kinetic.norm_H3_phi = capped_kinetic_norm(level, 3);

  MomentData potential;
  potential.norm_H_phi = std::sqrt(moments.inv_r2);
  if (moments.inv_r4) potential.norm_H2_phi = std::sqrt(*moments.inv_r4);

  SecondOrderData data;
  if (potential_outer) {
    data.h1 = tails.potential;
    data.m1 = potential;
    data.h2 = tails.kinetic;
    data.m2 = kinetic;
  } else {
    data.h1 = tails.kinetic;
    data.m1 = kinetic;
    data.h2 = tails.potential;
    data.m2 = potential;
  }
  data.shift.g = 0.5 / (n * n);
  data.shift.norm_Hj_phi = std::sqrt(moments.inv_r2);
  return data;
}

ScalingClass scaling_class(const HydrogenLevel& level) {
  check_level(level);
  ScalingClass sc;
  switch (level.l) {
    case 0:
      sc = {0.25, 0.25, 0.25};
      break;
    case 1:
      sc = {0.75, 0.75, 0.75};
      break;
    case 2:
      sc = {1.0, 1.25, 1.25};
      break;
    case 3:
      sc = {1.0, 1.5, 1.75};
      break;
    default:
      sc = {1.0, 2.0, 2.0};
      break;
  }
  return sc;
}

double sto3g_state(double u) {
  if (!(u >= 0)) throw std::invalid_argument("radius must be nonnegative");
  const double u2 = u * u;
  return 0.44 * std::exp(-0.11 * u2) + 0.53 * std::exp(-0.41 * u2) +
         0.15 * std::exp(-2.23 * u2);
}

}  // namespace trotter
