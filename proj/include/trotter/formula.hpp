#pragma once

#include <string>
#include <vector>

#include "trotter/algebraic.hpp"

namespace trotter {

// Operator word over {'a', 'b'}: 'a' is the (shifted) H1 generator, 'b' the
// (shifted) H2 generator. The rightmost letter acts first on the state;
// lexicographic string order is the display and lookup order.
using Word = std::string;

// Switching times tau_1..tau_M of a product formula of declared order p.
// Slot parity fixes the generator: by default slot 1 applies H1 and the
// generators alternate; starts_with_h2 flips the assignment (the BAB layout).
// The H1-slot times sum to 1 and the H2-slot times sum to 1. Negative times
// are allowed.
class ProductFormula {
 public:
  ProductFormula(std::vector<Algebraic> taus, int order_p,
                 bool starts_with_h2 = false);

  int order() const { return order_p_; }
  int slots() const { return static_cast<int>(taus_.size()); }
  const Algebraic& tau(int j) const { return taus_.at(j - 1); }  // 1-based
  char slot_letter(int j) const {
    return (j % 2 == 1) != starts_with_h2_ ? 'a' : 'b';
  }
  const std::vector<Algebraic>& taus() const { return taus_; }

 private:
  std::vector<Algebraic> taus_;
  int order_p_;
  bool starts_with_h2_;
};

// tau = [1, 1], p = 1.
ProductFormula first_order_formula();

// Suzuki fractal switching times for even p (exact algebraic constants);
// slot count 2 * 3^(p/2 - 1) + 1. Orders above 6 would need roots outside
// Q(2^(1/3), 2^(1/5)) and are rejected.
ProductFormula suzuki_times(int p);

}  // namespace trotter
