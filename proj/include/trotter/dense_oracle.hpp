#pragma once

#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "trotter/bounds.hpp"

namespace trotter {

// A finite-dimensional two-term Hamiltonian splitting together with an exact
// eigenstate of the sum. The eigenstate requirement is what makes the
// measured error comparable against the derived bounds.
struct HermitianPair {
  Eigen::MatrixXcd h1;
  Eigen::MatrixXcd h2;
  Eigen::VectorXcd phi;
  double eigenvalue = 0.0;
};

// Checks square equal dimensions d <= 64, Hermiticity of both generators,
// unit norm of phi, and the eigenstate residual, all at 1e-12. Throws
// std::invalid_argument describing the first violation.
void validate_pair(const HermitianPair& pair);

// Applies N cycles of the product formula to phi, slot 1 acting first, each
// slot j evolving for tau_j * t / N under its generator. Exponentials are
// taken through a per-generator Hermitian eigendecomposition in extended
// precision so that the result stays unitary well below the 1e-12 budget.
Eigen::VectorXcd apply_formula(const HermitianPair& pair,
                               const ProductFormula& pf, double t, long N);

// Euclidean distance between the product-formula state and the exact phase
// e^{-i t h} phi.
double trotter_error(const HermitianPair& pair, const ProductFormula& pf,
                     double t, long N);

struct BoundValidation {
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
  double shift = 0.0;  // the grid value of g realizing the reported bound
};

// Measured error next to the derived symbolic bound instantiated with word
// norms of the shifted generators H1 - g and H2 - (h - g); g is grid-searched
// over 21 evenly spaced points spanning [-|H1|, |H1|] and the minimizing
// value is reported.
BoundValidation bound_validation(const HermitianPair& pair,
                                 const ProductFormula& pf, double t, long N);

struct ScalingReport {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Least-squares fit of log(error) against log(N). Requires at least four
// points with positive N and positive error; throws std::invalid_argument
// otherwise.
ScalingReport slope_fit(const std::vector<std::pair<double, double>>& points);

// The 3x3 counterexample pair: the commutator annihilates phi while the
// product formula still misses the exact evolution at any finite N.
HermitianPair no_go_pair();

// Block pair with strongly noncommuting lower blocks and a state supported
// where both generators vanish. At coupling 0 the formula is exact on phi;
// a nonzero coupling replaces phi by the nearest exact eigenstate of the sum.
HermitianPair block_pair(double coupling = 0.0);

// Seeded Gaussian Hermitian pair of the given dimension; phi is an
// eigenvector of the sum picked uniformly at random.
HermitianPair random_pair(int dim, std::mt19937_64& rng);

}  // namespace trotter
