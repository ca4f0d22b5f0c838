#pragma once

#include <optional>
#include <vector>

#include "trotter/spectral_tails.hpp"

namespace trotter {

// Bound-state label in Hartree atomic units (hbar = m_e = a0 = 1). The
// magnetic quantum number only labels degeneracies; the radial dynamics and
// every bound in this module depend on (n, l) alone.
struct HydrogenLevel {
  int n = 1;
  int l = 0;
  int m = 0;
};

// Dimensionless evolution time t / t0 with t0 = m_e a0^2 / hbar.
class ReducedTime {
 public:
  explicit ReducedTime(double t_tilde);
  double value() const { return t_tilde_; }

 private:
  double t_tilde_;
};

// E_n = -1/(2 n^2).
double energy(const HydrogenLevel& level);

// Radial eigenfunction R_nl(u) against the measure u^2 du, evaluated through
// the generalized-Laguerre three-term recurrence.
double radial_wavefunction(const HydrogenLevel& level, double u);

// Momentum distribution Xi_nl(u) against du, via the Gegenbauer recurrence.
// The kinetic spectral density at the eigenstate is its pushforward under
// lambda = u^2/2.
double momentum_distribution(const HydrogenLevel& level, double u);

// Expectation values of 1/r^k, k = 1..4, in units a0^{-k}. The third and
// fourth moments diverge for s-orbitals and come back disengaged, so callers
// can dispatch to the fractional machinery instead of catching errors.
struct PotentialMoments {
  double inv_r = 0;
  double inv_r2 = 0;
  std::optional<double> inv_r3;
  std::optional<double> inv_r4;
};
PotentialMoments potential_moments(const HydrogenLevel& level);

// Power-law caps on the kinetic (j = 1) and potential (j = 2) spectral
// densities at the eigenstate: rho_j(lambda) <= rho_j_coefficient *
// lambda^{-2 delta_j - 1}, with delta_1 = l/2 + 5/4 and delta_2 = l + 3/2.
// The TailProfiles carry the equivalent integrated-tail scales lambda_j with
// lambda_j^{2 delta_j} = rho_j_coefficient / (2 delta_j).
struct TailData {
  TailProfile kinetic;
  TailProfile potential;
  double rho1_coefficient = 0;
  double rho2_coefficient = 0;
};
TailData tail_exponents(const HydrogenLevel& level);

// Tail exponents of the mixed states entering second-order residual terms:
// delta12 for the potential at H1^2 Psi (absent for l <= 1, where H1^2 Psi
// does not exist), delta21 for the kinetic generator at H2^2 Psi (absent for
// l = 0). The l >= 4 value of delta12 is a floor, already deep enough to
// saturate every second-order kernel.
struct MixedTails {
  std::optional<double> delta12;
  std::optional<double> delta21;
};
MixedTails mixed_tail_exponents(const HydrogenLevel& level);

// Coefficient of t^2/(2N) contributed by the kinetic generator for l >= 2,
// from the Gegenbauer-capped eighth moment of the momentum distribution
// (exact for nodeless states n = l + 1). Disengaged for l = 0, 1, whose
// kinetic fourth moment diverges.
std::optional<double> kinetic_fourth_moment_term(const HydrogenLevel& level);

// One term coefficient * t_tilde^{t_power} / N^{n_power} of a bound curve.
struct BoundTerm {
  double t_power = 0;
  double n_power = 0;
  double coefficient = 0;
};

// Closed-form first-order error bound for e^{-i(t/N)H2} e^{-i(t/N)H1} cycles,
// with the potential shifted by the eigenvalue E_n. Dispatches on l: the
// l = 0, 1 branches route the divergent-moment generators through the
// fractional tail bounds; the l >= 2 branch uses finite moments throughout.
std::vector<BoundTerm> first_order_terms(const HydrogenLevel& level);
double first_order_bound(const HydrogenLevel& level, ReducedTime t, long N);

// Data pack for the second-order assemblies: tails always, moments where a
// closed form exists. potential_outer = false puts the kinetic generator on
// the half-step slots (H1 H2 H1); true swaps the roles (H2 H1 H2).
SecondOrderData second_order_data(const HydrogenLevel& level,
                                  bool potential_outer = false);

// Bound-curve exponents in 1/N by orbital angular momentum: first order and
// the two second-order orderings (kinetic-outer, potential-outer).
struct ScalingClass {
  double first_order = 0;
  double second_order_ABA = 0;
  double second_order_BAB = 0;
};
ScalingClass scaling_class(const HydrogenLevel& level);

// Gaussian-contracted ground-state approximation
// 0.44 e^{-0.11 u^2} + 0.53 e^{-0.41 u^2} + 0.15 e^{-2.23 u^2};
// not normalized, callers measure its norm and overlap by quadrature.
double sto3g_state(double u);

}  // namespace trotter
