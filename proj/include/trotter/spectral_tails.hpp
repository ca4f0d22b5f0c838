#pragma once

#include <optional>
#include <vector>

namespace trotter {

// Power-law cap on a spectral measure: mu({|lambda| >= L}) <= (lambda0/L)^(2 delta)
// for every L > 0, for a normalized state.
struct TailProfile {
  double delta = 0;
  double lambda0 = 0;
};

enum class DeltaRegime {
  sub_critical,      // tail exponent strictly inside the power-law window
  critical_log,      // borderline exponent; bound carries a logarithmic factor
  domain_satisfied,  // enough operator moments exist; polynomial bound
};

struct DeltaBoundValue {
  double value = 0;
  DeltaRegime regime = DeltaRegime::sub_critical;
};

// The four auxiliary functions entering the critical-exponent bounds; each is
// exact in terms of Ci, sin, cos. Small arguments switch to power series to
// avoid cancellation. Rejects x <= 0.
struct GFunctions {
  double g0 = 0;
  double g1 = 0;
  double g2 = 0;
  double g2_tilde = 0;
};
GFunctions g_functions(double x);

// ||(e^{-iHs} - 1) psi||^2 bound. Regimes: 0 < delta < 1 power law,
// delta = 1 logarithmic, delta > 1 via ||H psi|| (required). mass = ||psi||^2
// scales the tail cap for unnormalized states.
DeltaBoundValue delta0_bound(const TailProfile& tp, double s, double mass = 1.0,
                             std::optional<double> norm_H_psi = {});

// First-commutator kernel bound. Regimes: 1 < delta < 2 power law, delta = 2
// logarithmic with the quasi-optimal splitting scale (needs ||H phi||),
// delta > 2 via ||H^2 phi||. Rejects delta <= 1.
DeltaBoundValue delta1_bound(const TailProfile& tp, double s,
                             std::optional<double> norm_H_phi = {},
                             std::optional<double> norm_H2_phi = {});

// Second-order kernel bound. Regimes: 2 < delta < 3 power law, delta = 3
// logarithmic (needs ||H^2 psi||), delta > 3 via ||H^3 psi||.
// Rejects delta <= 2.
DeltaBoundValue delta2_bound(const TailProfile& tp, double s,
                             std::optional<double> norm_H2_psi = {},
                             std::optional<double> norm_H3_psi = {});

// Symmetrized second-order kernel bound. Regimes: 1 < delta < 3 power law
// (the removable singularity at delta = 2 is filled with its limit),
// delta = 3 logarithmic (needs ||H^2 phi||), delta > 3 via ||H^3 phi||.
// Rejects delta <= 1.
DeltaBoundValue delta2_tilde_bound(const TailProfile& tp, double s,
                                   std::optional<double> norm_H2_phi = {},
                                   std::optional<double> norm_H3_phi = {});

// Constant shift applied to the generator pair; contributes
// g^2 t^2/(2 N hbar^2) + |g| t^2 ||H_j phi||/(N hbar^2) to first-order bounds.
struct ShiftData {
  double g = 0;
  double norm_Hj_phi = 0;
  double hbar = 1;
};

// Operator moments of one generator in the evolved state; only the regimes
// that need them read them.
struct MomentData {
  std::optional<double> norm_H_phi;
  std::optional<double> norm_H2_phi;
  std::optional<double> norm_H3_phi;
};

// N (sqrt(Delta1_1(t/N)) + sqrt(Delta1_2(t/N))) plus the shift terms.
// Requires both tail exponents > 1.
double first_order_fractional(const TailProfile& tp1, const TailProfile& tp2,
                              double t, long N, const ShiftData& shift = {},
                              const MomentData& m1 = {},
                              const MomentData& m2 = {});

struct SecondOrderData {
  TailProfile h1;
  TailProfile h2;
  MomentData m1;  // moments of H1 in phi
  MomentData m2;  // moments of H2 in phi
  // Data of H2 in the (unnormalized) state H1^2 phi, for the residual term of
  // the moment-rich assembly.
  std::optional<TailProfile> h2_at_h1sq;
  std::optional<double> norm_h1sq_phi;     // ||H1^2 phi||
  std::optional<double> norm_h2_h1sq_phi;  // ||H2 H1^2 phi||
  ShiftData shift;
};

// Minimum over every assembly the supplied data can evaluate:
//   2N sqrt(Delta1_1(t/2N)) + N sqrt(Delta2~_2(t/2N))
//   2N sqrt(Delta2_1(t/2N)) + N sqrt(Delta2~_2(t/2N)) + (t^2/8N) sqrt(Delta0(t/N))
//   (1/2) * first_order_fractional
// Throws when no assembly is computable from the data.
double second_order_fractional(const SecondOrderData& data, double t, long N);

struct SuperpositionTerm {
  double weight_abs = 0;  // |c|
  double bound = 0;       // per-eigenstate bound; may be +infinity
};

// min( sum |c| xi, sqrt(sum xi^2) ); a divergent series yields +infinity,
// never an exception.
double superposition_bound(const std::vector<SuperpositionTerm>& terms);

}  // namespace trotter
