#include "trotter/bounds.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace trotter {

namespace {

using WordMap = std::map<Word, Algebraic>;

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// columns[j][q] holds the word-coefficient map of the degree-q part of the
// time-ordered expansion through slots 1..j, with (t/N)^q factored out.
// Transition: prepend sigma(j)^m with weight tau_j^m / m!.
std::vector<std::vector<WordMap>> action_columns(const ProductFormula& pf,
                                                 int max_degree) {
  const int M = pf.slots();
  std::vector<std::vector<WordMap>> cols(
      M + 1, std::vector<WordMap>(max_degree + 1));
  cols[0][0][Word()] = Algebraic(1);
  for (int j = 1; j <= M; ++j) {
    const char letter = pf.slot_letter(j);
    std::vector<Algebraic> tau_pow(max_degree + 1, Algebraic(1));
    for (int m = 1; m <= max_degree; ++m) tau_pow[m] = tau_pow[m - 1] * pf.tau(j);
    for (int q = 0; q <= max_degree; ++q) {
      for (int m = 0; m <= q; ++m) {
        const Algebraic weight =
            tau_pow[m] * Algebraic(Rational(1) / factorial(m));
        const Word prefix(m, letter);
        for (const auto& [w, c] : cols[j - 1][q - m]) {
          if (c.is_zero()) continue;
          cols[j][q][prefix + w] += weight * c;
        }
      }
    }
  }
  return cols;
}

}  // namespace

IntegralAction integral_action(const ProductFormula& pf, int k, int j) {
  if (k <= 0 || k > pf.order()) throw std::invalid_argument("degree k out of range");
  if (j < 1 || j > pf.slots()) throw std::invalid_argument("slot index out of range");
  const auto cols = action_columns(pf, k);
  IntegralAction action;
  action.slot = j;
  action.degree = k;
  const char letter = pf.slot_letter(j);
  Algebraic tau_pow(1);
  for (int m = 0; m <= k; ++m) {
    if (m > 0) tau_pow *= pf.tau(j);
    const Algebraic weight = tau_pow * Algebraic(Rational(1) / factorial(m));
    const Word prefix(m, letter);
    for (const auto& [w, c] : cols[j - 1][k - m]) {
      if (c.is_zero()) continue;
      Algebraic v = weight * c;
      if (!v.is_zero()) action.terms[prefix + w][m] += v;
    }
  }
  return action;
}

std::map<Word, Algebraic> action_at_cycle_end(const ProductFormula& pf, int k) {
  if (k <= 0) throw std::invalid_argument("degree k out of range");
  const auto cols = action_columns(pf, k);
  WordMap out;
  for (const auto& [w, c] : cols[pf.slots()][k])
    if (!c.is_zero()) out[w] = c;
  return out;
}

OrderCheck verify_order(const ProductFormula& pf) {
  const int p = pf.order();
  const auto cols = action_columns(pf, p);
  for (int k = 1; k <= p; ++k) {
    const Algebraic target(Rational(1) / factorial(k));
    const WordMap& got = cols[pf.slots()][k];
    for (unsigned long bits = 0; bits < (1UL << k); ++bits) {
      Word w(k, 'a');
      for (int i = 0; i < k; ++i)
        if (bits & (1UL << i)) w[i] = 'b';
      const auto it = got.find(w);
      if (it == got.end() || it->second != target) return {false, k};
    }
  }
  return {true, 0};
}

BoundExpression derive_bound(const ProductFormula& pf,
                             bool simplify_zero_eigenstate) {
  const OrderCheck check = verify_order(pf);
  if (!check.ok) {
    std::ostringstream os;
    os << "formula fails the order condition at k = " << check.first_failing_k;
    throw std::invalid_argument(os.str());
  }
  const int p = pf.order();
  const int M = pf.slots();
  const auto cols = action_columns(pf, p);

  BoundExpression be;
  be.time_power = p + 1;
  be.step_power = p;
  for (int j = 1; j <= M; ++j) {
    const char letter = pf.slot_letter(j);
    // Integrand of slot j: tau_j * sigma(j) applied to S_p(s); the prefix
    // merges with the top-slot block, giving sigma(j)^(m+1) at u^m.
    std::map<Word, SlotPolynomial> poly;
    Algebraic tau_pow = pf.tau(j);
    for (int m = 0; m <= p; ++m) {
      if (m > 0) tau_pow *= pf.tau(j);
      const Algebraic weight = tau_pow * Algebraic(Rational(1) / factorial(m));
      const Word prefix(m + 1, letter);
      for (const auto& [w, c] : cols[j - 1][p - m]) {
        if (c.is_zero()) continue;
        const Algebraic v = weight * c;
        if (!v.is_zero()) poly[prefix + w][m] += v;
      }
    }
    if (simplify_zero_eigenstate) {
      // Rewrite words whose two earliest-acting letters differ: the trailing
      // letter flips onto its neighbor with a sign, since (H1+H2) phi = 0.
      std::map<Word, SlotPolynomial> folded;
      for (auto& [w, pol] : poly) {
        Word target = w;
        bool negate = false;
        const size_t n = w.size();
        if (n >= 2 && w[n - 1] != w[n - 2]) {
          target[n - 1] = w[n - 2];
          negate = true;
        }
        for (const auto& [m, c] : pol) {
          if (negate)
            folded[target][m] -= c;
          else
            folded[target][m] += c;
        }
      }
      poly = std::move(folded);
    }
    for (const auto& [w, pol] : poly) {
      // Exact monomial integration over u in [0, t/N]: u^m contributes
      // 1/(m+1), and the slot total carries (t/N)^(p+1).
      Algebraic integral;
      for (const auto& [m, c] : pol)
        integral += c * Algebraic::rational(1, m + 1);
      if (!integral.is_zero()) be.terms[w] += integral.abs();
    }
  }
  for (auto it = be.terms.begin(); it != be.terms.end();) {
    if (it->second.is_zero())
      it = be.terms.erase(it);
    else
      ++it;
  }
  return be;
}

LooseBound loose_bound(const ProductFormula& pf) {
  const OrderCheck check = verify_order(pf);
  if (!check.ok)
    throw std::invalid_argument("formula fails its declared order condition");
  const int p = pf.order();
  const int M = pf.slots();
  LooseBound lb;
  lb.word_length = p + 1;
  lb.inverse_factorial = Rational(1) / factorial(p + 1);
  for (int j = 1; j <= M; ++j) lb.tau_star += pf.tau(j).abs();
  for (unsigned long bits = 0; bits < (1UL << (p + 1)); ++bits) {
    Word w(p + 1, 'a');
    for (int i = 0; i < p + 1; ++i)
      if (bits & (1UL << i)) w[i] = 'b';
    // Letters in applied order are the reversed string; greedily assign the
    // smallest admissible slot, nondecreasing with repeats allowed.
    int slot = 1;
    bool ok = true;
    for (int i = p; i >= 0; --i) {
      const char want = w[i];
      while (slot <= M && pf.slot_letter(slot) != want) ++slot;
      if (slot > M) {
        ok = false;
        break;
      }
    }
    if (ok) lb.realizable_words.push_back(w);
  }
  return lb;
}

double evaluate_bound(const BoundExpression& be,
                      const std::map<Word, double>& norms, double t, long N) {
  if (t < 0) throw std::invalid_argument("time must be nonnegative");
  if (N < 1) throw std::invalid_argument("step count must be positive");
  double sum = 0;
  for (const auto& [w, c] : be.terms) {
    const auto it = norms.find(w);
    if (it == norms.end())
      throw std::out_of_range("missing norm entry for word \"" + w + "\"");
    sum += c.to_double() * it->second;
  }
  double factor = 1;
  for (int i = 0; i < be.time_power; ++i) factor *= t;
  for (int i = 0; i < be.step_power; ++i) factor /= static_cast<double>(N);
  return sum * factor;
}

std::string bound_to_json(const BoundExpression& be) {
  nlohmann::ordered_json doc;
  doc["order"] = be.step_power;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [w, c] : be.terms) {
    nlohmann::ordered_json term;
    term["word"] = w;
    term["coeff_exact"] = c.to_exact_string();
    // Floats rounded to 9 significant digits before insertion so the dumped
    // document is byte-stable.
    std::ostringstream os;
    os.precision(9);
    os << c.to_double();
    term["coeff_float"] = std::stod(os.str());
    terms.push_back(term);
  }
  doc["terms"] = terms;
  std::ostringstream gf;
  gf << "t^" << be.time_power << "/N^" << be.step_power;
  doc["global_factor"] = gf.str();
  return doc.dump(2);
}

}  // namespace trotter
