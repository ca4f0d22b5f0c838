#include "trotter/algebraic.hpp"

#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace trotter {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>>;

template <typename F>
F basis_value(int a, int b) {
  static const F cbrt = boost::multiprecision::pow(F(2), F(1) / 3);
  static const F fifth = boost::multiprecision::pow(F(2), F(1) / 5);
  return boost::multiprecision::pow(cbrt, a) *
         boost::multiprecision::pow(fifth, b);
}

template <typename F>
F evaluate(const Algebraic& x) {
  F acc = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 5; ++b) {
      const Rational& c = x.coeff(a, b);
      if (c != 0) acc += static_cast<F>(c) * basis_value<F>(a, b);
    }
  }
  return acc;
}

}  // namespace

Algebraic Algebraic::rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Algebraic(Rational(num, den));
}

Algebraic Algebraic::monomial(int a, int b, const Rational& c) {
  if (a < 0 || a > 2 || b < 0 || b > 4)
    throw std::invalid_argument("basis exponent out of range");
  Algebraic x;
  x.c_[5 * a + b] = c;
  return x;
}

Algebraic& Algebraic::operator+=(const Algebraic& o) {
  for (int i = 0; i < 15; ++i) c_[i] += o.c_[i];
  return *this;
}

Algebraic& Algebraic::operator-=(const Algebraic& o) {
  for (int i = 0; i < 15; ++i) c_[i] -= o.c_[i];
  return *this;
}

Algebraic& Algebraic::operator*=(const Algebraic& o) {
  std::array<Rational, 15> out{};
  for (int a1 = 0; a1 < 3; ++a1) {
    for (int b1 = 0; b1 < 5; ++b1) {
      const Rational& x = c_[5 * a1 + b1];
      if (x == 0) continue;
      for (int a2 = 0; a2 < 3; ++a2) {
        for (int b2 = 0; b2 < 5; ++b2) {
          const Rational& y = o.c_[5 * a2 + b2];
          if (y == 0) continue;
          // 2^((a1+a2)/3) * 2^((b1+b2)/5) reduces with an integer carry of 2
          // per full power of the root.
          const int a = a1 + a2, b = b1 + b2;
          Rational term = x * y;
          if (a >= 3) term *= 2;
          if (b >= 5) term *= 2;
          out[5 * (a % 3) + (b % 5)] += term;
        }
      }
    }
  }
  c_ = out;
  return *this;
}

Algebraic Algebraic::operator-() const {
  Algebraic x;
  for (int i = 0; i < 15; ++i) x.c_[i] = -c_[i];
  return x;
}

bool Algebraic::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool Algebraic::is_rational() const {
  for (int i = 1; i < 15; ++i)
    if (c_[i] != 0) return false;
  return true;
}

Algebraic Algebraic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) return Algebraic(Rational(1) / c_[0]);
  // Solve M y = e0 where column j of M holds the coordinates of
  // (*this) * basis_j; Gaussian elimination stays exact over the rationals.
  std::array<std::array<Rational, 16>, 15> m{};
  for (int a2 = 0; a2 < 3; ++a2) {
    for (int b2 = 0; b2 < 5; ++b2) {
      const int col = 5 * a2 + b2;
      const Algebraic prod = *this * monomial(a2, b2);
      for (int row = 0; row < 15; ++row) m[row][col] = prod.c_[row];
    }
  }
  m[0][15] = 1;
  for (int col = 0; col < 15; ++col) {
    int pivot = -1;
    for (int row = col; row < 15; ++row) {
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("singular multiplication matrix");
    std::swap(m[col], m[pivot]);
    const Rational inv = Rational(1) / m[col][col];
    for (int j = col; j <= 15; ++j) m[col][j] *= inv;
    for (int row = 0; row < 15; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (int j = col; j <= 15; ++j) m[row][j] -= f * m[col][j];
    }
  }
  Algebraic y;
  for (int row = 0; row < 15; ++row) y.c_[row] = m[row][15];
  return y;
}

int Algebraic::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return c_[0] < 0 ? -1 : 1;
  const Float50 v = evaluate<Float50>(*this);
  if (boost::multiprecision::abs(v) > Float50("1e-35")) return v < 0 ? -1 : 1;
  const Float100 w = evaluate<Float100>(*this);
  if (boost::multiprecision::abs(w) > Float100("1e-85")) return w < 0 ? -1 : 1;
  throw std::domain_error("sign of algebraic value too close to zero");
}

Algebraic Algebraic::abs() const { return sign() < 0 ? -*this : *this; }

double Algebraic::to_double() const {
  return static_cast<double>(evaluate<Float50>(*this));
}

std::string Algebraic::to_decimal(int significant_digits) const {
  std::ostringstream os;
  os.precision(significant_digits);
  os << evaluate<Float50>(*this);
  return os.str();
}

std::string Algebraic::to_exact_string() const {
  using boost::multiprecision::cpp_int;
  if (is_rational()) {
    std::ostringstream os;
    os << numerator(c_[0]);
    if (denominator(c_[0]) != 1) os << "/" << denominator(c_[0]);
    return os.str();
  }
  cpp_int den = 1;
  for (const auto& v : c_)
    if (v != 0) den = lcm(den, denominator(v));
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 5; ++b) {
      const Rational& v = c_[5 * a + b];
      if (v == 0) continue;
      const cpp_int n = numerator(v) * (den / denominator(v));
      if (!first) os << (n < 0 ? " - " : " + ");
      else if (n < 0) os << "-";
      first = false;
      cpp_int mag = n < 0 ? cpp_int(-n) : n;
      const bool unit_basis = (a == 0 && b == 0);
      if (mag != 1 || unit_basis) os << mag;
      if (!unit_basis) {
        if (mag != 1) os << "*";
        if (a > 0) os << "2^(" << a << "/3)";
        if (a > 0 && b > 0) os << "*";
        if (b > 0) os << "2^(" << b << "/5)";
      }
    }
  }
  os << ")";
  if (den != 1) os << "/" << den;
  return os.str();
}

}  // namespace trotter
