#include "trotter/formula.hpp"

#include <stdexcept>

namespace trotter {

ProductFormula::ProductFormula(std::vector<Algebraic> taus, int order_p,
                               bool starts_with_h2)
    : taus_(std::move(taus)),
      order_p_(order_p),
      starts_with_h2_(starts_with_h2) {
  if (order_p_ < 1) throw std::invalid_argument("order must be positive");
  if (static_cast<int>(taus_.size()) < order_p_)
    throw std::invalid_argument("a p-th order formula needs at least p slots");
  Algebraic h1_total, h2_total;
  for (int j = 1; j <= slots(); ++j) {
    if (slot_letter(j) == 'a')
      h1_total += tau(j);
    else
      h2_total += tau(j);
  }
  if (h1_total != Algebraic(1) || h2_total != Algebraic(1))
    throw std::invalid_argument(
        "H1-slot and H2-slot switching times must each sum to 1");
}

ProductFormula first_order_formula() {
  return ProductFormula({Algebraic(1), Algebraic(1)}, 1);
}

namespace {

std::vector<Algebraic> suzuki_taus(int p) {
  if (p == 2) {
    return {Algebraic::rational(1, 2), Algebraic(1), Algebraic::rational(1, 2)};
  }
  if (p > 6)
    throw std::invalid_argument(
        "switching-time constants for order > 6 leave Q(2^(1/3), 2^(1/5))");
  const std::vector<Algebraic> inner = suzuki_taus(p - 2);
  // s_p = 1 / (2 - 2^(1/(p-1))); p = 4 uses 2^(1/3), p = 6 uses 2^(1/5).
  const Algebraic root =
      p == 4 ? Algebraic::cbrt2() : Algebraic::fifth_root2();
  const Algebraic s = (Algebraic(2) - root).inverse();
  const Algebraic mid = Algebraic(1) - Algebraic(2) * s;
  std::vector<Algebraic> out;
  const auto append_scaled = [&](const Algebraic& f) {
    for (size_t i = 0; i < inner.size(); ++i) {
      Algebraic v = inner[i] * f;
      // Adjacent copies share an H1 boundary slot; the two halves merge.
      if (i == 0 && !out.empty()) {
        out.back() += v;
      } else {
        out.push_back(v);
      }
    }
  };
  append_scaled(s);
  append_scaled(mid);
  append_scaled(s);
  return out;
}

}  // namespace

ProductFormula suzuki_times(int p) {
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("Suzuki switching times need even order >= 2");
  return ProductFormula(suzuki_taus(p), p);
}

}  // namespace trotter
