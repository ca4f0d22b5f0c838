#pragma once

#include <map>
#include <string>
#include <vector>

#include "trotter/formula.hpp"

namespace trotter {

// Polynomial in the in-slot variable u = s - (j-1) t/N. The u^m monomial of a
// degree-k action carries an implicit factor (t/N)^(k-m), so every term has
// total time degree k.
using SlotPolynomial = std::map<int, Algebraic>;

struct IntegralAction {
  int slot = 0;    // j, 1-based
  int degree = 0;  // k
  std::map<Word, SlotPolynomial> terms;
};

// S_k(s) for s inside slot j, as the exact multi-index sum.
IntegralAction integral_action(const ProductFormula& pf, int k, int j);

// Word-coefficient map of S_k at the end of one cycle, with the overall
// (t/N)^k factored out.
std::map<Word, Algebraic> action_at_cycle_end(const ProductFormula& pf, int k);

struct OrderCheck {
  bool ok = false;
  int first_failing_k = 0;  // 0 when ok
};

// True iff the cycle-end coefficient of every length-k word equals 1/k! for
// all k = 1..p (the noncommutative expansion of exp to order p).
OrderCheck verify_order(const ProductFormula& pf);

// Sum over operator words of positive coefficients, with the global factor
// t^(p+1)/N^p; every word has length p+1 = time_power.
struct BoundExpression {
  int time_power = 0;  // p + 1
  int step_power = 0;  // p
  std::map<Word, Algebraic> terms;
};

// Per-slot integration of the order-p action against the slot generator with
// the triangle inequality applied per word after the optional zero-eigenstate
// rewrite (trailing-letter flip using H1 phi = -H2 phi).
BoundExpression derive_bound(const ProductFormula& pf,
                             bool simplify_zero_eigenstate = true);

struct LooseBound {
  Algebraic tau_star;                  // sum of |tau_j|
  int word_length = 0;                 // p + 1
  Rational inverse_factorial;          // 1/(p+1)!
  std::vector<Word> realizable_words;  // words entering the max norm K_(p+1)
};

// (tau_star t)^(p+1) / ((p+1)! N^p) * max over realizable words of the
// shifted-word norm; a word is realizable when its letters, taken in applied
// order, admit a nondecreasing slot assignment of matching parity.
LooseBound loose_bound(const ProductFormula& pf);

// Numeric instantiation: sum of coeff * norms[word] * t^(p+1)/N^p. A missing
// norm entry raises an error naming the word.
double evaluate_bound(const BoundExpression& be,
                      const std::map<Word, double>& norms, double t, long N);

// {"order": p, "terms": [{"word", "coeff_exact", "coeff_float"}, ...],
//  "global_factor": "t^3/N^2"}; terms in lexicographic word order.
std::string bound_to_json(const BoundExpression& be);

}  // namespace trotter
