#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "trotter/formula.hpp"
#include "trotter/hydrogen.hpp"

namespace trotter {

// Truncated spherical-Bessel spectral basis for the radial problem at fixed
// angular momentum on [0, R]. Modes are j_l(alpha_k r / R) with alpha_k the
// positive zeros of j_l; collocation points are the scaled zeros
// r_i = alpha_i R / alpha_{M+1}. The stored mode-to-grid map is the polar
// orthogonalization of the weighted collocation matrix, so the discrete
// transform pair is exactly inverse and every diagonal phase step is unitary.
struct BesselBasis {
  int l = 0;
  double radius = 0.0;
  int modes = 0;
  std::vector<double> zeros;   // alpha_1 .. alpha_M
  double boundary_zero = 0.0;  // alpha_{M+1}, sets the grid scale
  Eigen::VectorXd grid;        // r_i
  Eigen::VectorXd weights;     // quadrature weights for the r^2 dr measure
  Eigen::VectorXd kinetic;     // (alpha_k / R)^2 / 2
  Eigen::MatrixXd to_grid;     // orthogonal, mode coefficients -> weighted samples
};

// Zeros are located by scanning brackets of width pi/2 (zeros of j_l are
// simple and at least pi apart) and polished by safeguarded Newton iteration
// to 1e-13 relative width; a failed bracket is reported in the exception.
BesselBasis build_basis(int l, double radius, int modes);

// State in mode representation; the basis must outlive the state.
struct RadialState {
  Eigen::VectorXcd coeffs;
  int l = 0;
  const BesselBasis* basis = nullptr;
};

struct Projection {
  RadialState state;  // renormalized to unit discrete norm
  double loss = 0.0;  // mass missing from the truncated discrete space
};

// Samples a radial function (normalized against the r^2 dr measure) at the
// collocation points and transforms to mode space.
Projection project_function(const BesselBasis& basis,
                            const std::function<double(double)>& psi);
Projection project_level(const BesselBasis& basis, const HydrogenLevel& level);

// One formula cycle of length dt: slot j applies a diagonal phase of
// duration tau_j * dt, kinetic slots in mode space and potential slots in
// grid space with pointwise -1/r_i.
RadialState trotter_step(const RadialState& state, const ProductFormula& pf,
                         double dt);

// N cycles of length t / N.
RadialState evolve(const RadialState& state, const ProductFormula& pf,
                   double t, long cycles);

// Exact discretized evolution e^{-iHt} through one Hermitian
// eigendecomposition of H = kinetic + potential in mode space.
RadialState exact_evolve(const RadialState& state, double t);

// Unitary count over N cycles when equal-generator boundary slots of
// adjacent cycles are merged and counted once.
long fused_unitary_count(const ProductFormula& pf, long cycles);

// Dense mode-space generator matrices, e.g. for cross-checks against the
// brute-force oracle: the kinetic diagonal and the conjugated potential.
Eigen::MatrixXcd kinetic_matrix(const BesselBasis& basis);
Eigen::MatrixXcd potential_matrix(const BesselBasis& basis);

struct CurvePoint {
  long steps = 0;
  double error = 0.0;
};

struct CurveOptions {
  double projection_loss_threshold = 1e-6;
};

// Error curve for a hydrogen eigenlevel: the reference is the analytic
// eigenphase e^{-i E_n t} applied to the projected initial state. Aborts if
// the projection loss exceeds the threshold, naming R and the mode count.
std::vector<CurvePoint> trotter_error_curve(const HydrogenLevel& level,
                                            const ProductFormula& pf, double t,
                                            const std::vector<long>& steps,
                                            const BesselBasis& basis,
                                            const CurveOptions& options = {});

// Error curve for an arbitrary prepared state: the reference is the exact
// discretized evolution.
std::vector<CurvePoint> trotter_error_curve(const RadialState& initial,
                                            const ProductFormula& pf, double t,
                                            const std::vector<long>& steps);

// Mass outside the span of the discretized bound eigenfunctions R_{n' l},
// n' = l+1 .. n_max, orthonormalized in the discrete inner product.
double bound_space_leakage(const RadialState& state, int n_max);

// Leakage of the Trotterized evolution of the given level.
double ionization_probability(const HydrogenLevel& level,
                              const ProductFormula& pf, double t, long cycles,
                              const BesselBasis& basis, int n_max);

}  // namespace trotter
