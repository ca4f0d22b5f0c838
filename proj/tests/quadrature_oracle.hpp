#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

// High-accuracy quadrature of the Delta kernels against the density that
// exactly saturates the tail cap: rho(l) = 2 d l0^{2d} l^{-2d-1} on
// [l0, infinity). Any admissible spectral measure is dominated by this one in
// tail mass, so the library bounds must dominate these values.

namespace oracle {

inline double f0_kernel(double x) {
  const double h = std::sin(0.5 * x);
  return 4.0 * h * h;
}

inline double f1_kernel(double x) {
  const double h = std::sin(0.5 * x);
  const double a = 2.0 * h * h;
  double b;
  if (std::fabs(x) > 0.5) {
    b = x - std::sin(x);
  } else {
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    b = term;
    for (int k = 2; k <= 12; ++k) {
      term *= -x2 / ((2 * k) * (2 * k + 1));
      b += term;
    }
  }
  return a * a + b * b;
}

// Int_{y0}^inf f(x) x^{-2d-1} dx with the quadrature on [y0, 400] and the
// monotone part of f's large-x form added in closed form. The neglected
// oscillatory remainder is below 2e-6 for f1 (below 1e-7 for f0), far inside
// the comparison margins used by the callers.
inline double tail_weighted_integral_f1(double y0, double delta) {
  const auto integrand = [delta](double x) {
    return f1_kernel(x) * std::pow(x, -2.0 * delta - 1.0);
  };
  const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, y0, 400.0, 15, 1e-10);
  // f1(x) = x^2 + 2 - 2x sin x - 2 cos x; the monotone part integrates to:
  const double cut = 400.0;
  const double tail = std::pow(cut, 2.0 - 2.0 * delta) / (2.0 * delta - 2.0) +
                      2.0 * std::pow(cut, -2.0 * delta) / (2.0 * delta);
  return body + tail;
}

inline double tail_weighted_integral_f0(double y0, double delta) {
  const auto integrand = [delta](double x) {
    return f0_kernel(x) * std::pow(x, -2.0 * delta - 1.0);
  };
  const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, y0, 400.0, 15, 1e-10);
  const double cut = 400.0;
  // f0(x) = 2 - 2 cos x; monotone part 2.
  const double tail = 2.0 * std::pow(cut, -2.0 * delta) / (2.0 * delta);
  return body + tail;
}

inline double delta1_saturating_quadrature(double delta, double lambda0,
                                           double s) {
  const double y0 = lambda0 * s;
  return 2.0 * delta * std::pow(y0, 2.0 * delta) *
         tail_weighted_integral_f1(y0, delta);
}

inline double delta0_saturating_quadrature(double delta, double lambda0,
                                           double s) {
  const double y0 = lambda0 * s;
  return 2.0 * delta * std::pow(y0, 2.0 * delta) *
         tail_weighted_integral_f0(y0, delta);
}

// Operator moments of the saturating density, finite when the exponent allows.
inline double saturating_norm_H(double delta, double lambda0) {
  return lambda0 * std::sqrt(2.0 * delta / (2.0 * delta - 2.0));
}

inline double saturating_norm_H2(double delta, double lambda0) {
  return lambda0 * lambda0 * std::sqrt(2.0 * delta / (2.0 * delta - 4.0));
}

}  // namespace oracle
