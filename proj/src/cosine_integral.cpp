#include "trotter/cosine_integral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace trotter {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512;

// gamma + log x + sum_{m>=1} (-1)^m x^{2m} / (2m (2m)!); converges to below
// 1e-15 within ~20 terms for x <= 4.
double ci_series(double x) {
  const double x2 = x * x;
  double term = 1.0;  // running x^{2m}/(2m)!
  double sum = 0.0;
  for (int m = 1; m <= 60; ++m) {
    term *= -x2 / ((2 * m - 1) * (2 * m));
    const double contrib = term / (2 * m);
    sum += contrib;
    if (std::fabs(contrib) < 1e-17 * (1.0 + std::fabs(sum))) break;
  }
  return kEulerGamma + std::log(x) + sum;
}

// Ci(x) = -Re E1(ix); the continued fraction for E1 evaluated by the modified
// Lentz algorithm converges rapidly for x above the series crossover.
double ci_continued_fraction(double x) {
  const std::complex<double> iu(0.0, 1.0);
  std::complex<double> b = 1.0 + iu * x;
  std::complex<double> c = 1.0 / 1e-30;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 300; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  h *= std::complex<double>(std::cos(x), -std::sin(x));
  return -h.real();
}

}  // namespace

double cosine_integral(double x) {
  if (!(x > 0)) throw std::invalid_argument("cosine integral needs x > 0");
  return x <= 4.0 ? ci_series(x) : ci_continued_fraction(x);
}

}  // namespace trotter
