#pragma once

#include <array>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace trotter {

using Rational = boost::multiprecision::cpp_rational;

// Element of the field Q(2^(1/3), 2^(1/5)), stored as exact rational
// coordinates over the power basis 2^(a/3) * 2^(b/5) with a in {0,1,2},
// b in {0,...,4}. All arithmetic is exact; numeric output is a rendering.
class Algebraic {
 public:
  Algebraic() = default;
  Algebraic(long v) { c_[0] = v; }
  Algebraic(const Rational& v) { c_[0] = v; }

  static Algebraic rational(long num, long den);
  // c * 2^(a/3) * 2^(b/5)
  static Algebraic monomial(int a, int b, const Rational& c = Rational(1));
  static Algebraic cbrt2() { return monomial(1, 0); }
  static Algebraic fifth_root2() { return monomial(0, 1); }

  Algebraic& operator+=(const Algebraic& o);
  Algebraic& operator-=(const Algebraic& o);
  Algebraic& operator*=(const Algebraic& o);
  friend Algebraic operator+(Algebraic x, const Algebraic& y) { return x += y; }
  friend Algebraic operator-(Algebraic x, const Algebraic& y) { return x -= y; }
  friend Algebraic operator*(Algebraic x, const Algebraic& y) { return x *= y; }
  Algebraic operator-() const;
  bool operator==(const Algebraic& o) const { return c_ == o.c_; }
  bool operator!=(const Algebraic& o) const { return !(*this == o); }
  // Hidden friend so that unrelated scalar types never get probed for a
  // Rational conversion during overload resolution in mixed translation
  // units; argument-dependent lookup still finds it for Algebraic operands.
  friend Algebraic operator*(const Rational& r, const Algebraic& x) {
    Algebraic result(r);
    result *= x;
    return result;
  }

  bool is_zero() const;
  bool is_rational() const;
  const Rational& coeff(int a, int b) const { return c_[5 * a + b]; }

  // Exact multiplicative inverse (15x15 rational linear solve); throws on zero.
  Algebraic inverse() const;
  Algebraic operator/(const Algebraic& o) const { return *this * o.inverse(); }
  // Sign is decided by evaluation with enough precision to be reliable for
  // exact nonzero values; exact zero stays zero.
  int sign() const;
  Algebraic abs() const;

  double to_double() const;
  std::string to_decimal(int significant_digits = 15) const;
  // "p/q" for rationals, otherwise "(n0 + n1*2^(1/3) + ...)/D" over a common
  // denominator with only nonzero basis terms listed.
  std::string to_exact_string() const;

 private:
  std::array<Rational, 15> c_{};
};

}  // namespace trotter
