#include "trotter/bessel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>

namespace trotter {

namespace {

double bessel_j(int l, double x) {
  return boost::math::sph_bessel(static_cast<unsigned>(l), x);
}

double bessel_j_derivative(int l, double x) {
  if (l == 0) {
    return -bessel_j(1, x);
  }
  return bessel_j(l - 1, x) - ((l + 1) / x) * bessel_j(l, x);
}

// Safeguarded Newton iteration inside a sign-change bracket; falls back to
// bisection whenever the Newton step leaves the bracket, so convergence is
// guaranteed for the simple zeros of j_l.
double refine_zero(int l, double lo, double hi) {
  double flo = bessel_j(l, lo);
  double fhi = bessel_j(l, hi);
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream message;
    message << "spherical Bessel zero search lost the sign change in ["
            << lo << ", " << hi << "] for l = " << l;
    throw std::runtime_error(message.str());
  }
  double x = 0.5 * (lo + hi);
  for (int iteration = 0; iteration < 200; ++iteration) {
    if (hi - lo <= 1e-13 * hi) {
      break;
    }
    const double fx = bessel_j(l, x);
    if (fx == 0.0) {
      return x;
    }
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double dfx = bessel_j_derivative(l, x);
    double next = (dfx != 0.0) ? x - fx / dfx : lo;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

// Consecutive zeros of j_l are at least pi apart, so a scan step below pi
// meets every sign change exactly once. The first zero exceeds l + 1/2.
std::vector<double> bessel_zeros(int l, int count) {
  std::vector<double> zeros;
  zeros.reserve(count);
  const double step = 1.5;
  double x = (l == 0) ? 0.5 : l + 0.5;
  const double limit = (l + count + 2) * std::numbers::pi + 10.0;
  double fx = bessel_j(l, x);
  while (static_cast<int>(zeros.size()) < count) {
    if (x > limit) {
      std::ostringstream message;
      message << "spherical Bessel zero scan for l = " << l
              << " passed x = " << limit << " with only " << zeros.size()
              << " zeros found";
      throw std::runtime_error(message.str());
    }
    const double next = x + step;
    const double fnext = bessel_j(l, next);
    if ((fx < 0.0) != (fnext < 0.0)) {
      zeros.push_back(refine_zero(l, x, next));
    }
    x = next;
    fx = fnext;
  }
  return zeros;
}

void require_state(const RadialState& state) {
  if (state.basis == nullptr) {
    throw std::invalid_argument("radial state is not attached to a basis");
  }
  if (state.coeffs.size() != state.basis->modes) {
    throw std::invalid_argument(
        "radial state size does not match the basis mode count");
  }
  if (state.l != state.basis->l) {
    throw std::invalid_argument(
        "radial state angular momentum does not match the basis");
  }
}

Eigen::VectorXcd real_times_complex(const Eigen::MatrixXd& m,
                                    const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(m.rows());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

Eigen::MatrixXd discrete_hamiltonian(const BesselBasis& basis) {
  Eigen::MatrixXd h = basis.kinetic.asDiagonal();
  const Eigen::VectorXd potential = -basis.grid.cwiseInverse();
  h.noalias() += basis.to_grid.transpose() * potential.asDiagonal() *
                 basis.to_grid;
  return h;
}

// Discretized bound eigenfunctions R_{n' l}, n' = l+1 .. n_max, written as
// columns and orthonormalized in the discrete inner product.
Eigen::MatrixXd bound_space(const BesselBasis& basis, int n_max) {
  const int count = n_max - basis.l;
  Eigen::MatrixXd raw(basis.modes, count);
  for (int column = 0; column < count; ++column) {
    const HydrogenLevel level{basis.l + 1 + column, basis.l, 0};
    raw.col(column) = project_level(basis, level).state.coeffs.real();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  Eigen::MatrixXd thin = Eigen::MatrixXd::Identity(basis.modes, count);
  return qr.householderQ() * thin;
}

}  // namespace

BesselBasis build_basis(int l, double radius, int modes) {
  if (l < 0) {
    throw std::invalid_argument("angular momentum must be nonnegative");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("basis radius must be positive");
  }
  if (modes < 8) {
    throw std::invalid_argument("basis needs at least 8 modes");
  }

  BesselBasis basis;
  basis.l = l;
  basis.radius = radius;
  basis.modes = modes;
  std::vector<double> zeros = bessel_zeros(l, modes + 1);
  basis.boundary_zero = zeros.back();
  zeros.pop_back();
  basis.zeros = std::move(zeros);

  const double end = basis.boundary_zero;
  basis.grid.resize(modes);
  basis.weights.resize(modes);
  basis.kinetic.resize(modes);
  Eigen::VectorXd envelope(modes);
  for (int i = 0; i < modes; ++i) {
    const double alpha = basis.zeros[static_cast<std::size_t>(i)];
    basis.grid[i] = alpha * radius / end;
    envelope[i] = std::abs(bessel_j(l + 1, alpha));
    basis.weights[i] = std::numbers::pi * radius * radius * radius /
                       (end * end * end * envelope[i] * envelope[i]);
    basis.kinetic[i] = 0.5 * (alpha / radius) * (alpha / radius);
  }

  // Weighted collocation matrix between unit modes and quadrature samples;
  // the closed form is symmetric in (i, k).
  const double scale = std::sqrt(2.0 * std::numbers::pi / (end * end * end));
  Eigen::MatrixXd collocation(modes, modes);
  for (int i = 0; i < modes; ++i) {
    const double alpha_i = basis.zeros[static_cast<std::size_t>(i)];
    for (int k = 0; k <= i; ++k) {
      const double alpha_k = basis.zeros[static_cast<std::size_t>(k)];
      const double value = scale * bessel_j(l, alpha_i * alpha_k / end) /
                           (envelope[i] * envelope[k]);
      collocation(i, k) = value;
      collocation(k, i) = value;
    }
  }

  // Polar orthogonalization: the nearest orthogonal matrix to the
  // collocation map makes the transform pair exactly inverse while staying
  // within the discretization error of the quadrature.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      collocation, Eigen::ComputeThinU | Eigen::ComputeThinV);
  basis.to_grid.noalias() = svd.matrixU() * svd.matrixV().transpose();
  return basis;
}

Projection project_function(const BesselBasis& basis,
                            const std::function<double(double)>& psi) {
  Eigen::VectorXd samples(basis.modes);
  for (int i = 0; i < basis.modes; ++i) {
    samples[i] = psi(basis.grid[i]) * std::sqrt(basis.weights[i]);
  }
  Eigen::VectorXd coeffs = basis.to_grid.transpose() * samples;
  const double captured = coeffs.squaredNorm();
  if (!(captured > 0.0)) {
    throw std::invalid_argument("projected state has no mass in the basis");
  }
  Projection projection;
  projection.loss = std::max(0.0, 1.0 - captured);
  projection.state.l = basis.l;
  projection.state.basis = &basis;
  projection.state.coeffs =
      (coeffs / std::sqrt(captured)).cast<std::complex<double>>();
  return projection;
}

Projection project_level(const BesselBasis& basis, const HydrogenLevel& level) {
  if (level.l != basis.l) {
    throw std::invalid_argument(
        "level angular momentum does not match the basis");
  }
  return project_function(
      basis, [&level](double r) { return radial_wavefunction(level, r); });
}

RadialState evolve(const RadialState& state, const ProductFormula& pf,
                   double t, long cycles) {
  require_state(state);
  if (cycles < 1) {
    throw std::invalid_argument("cycle count must be positive");
  }
  const BesselBasis& basis = *state.basis;
  const double dt = t / static_cast<double>(cycles);

  // Per-slot diagonal phases are cycle-independent, so build them once.
  const int slots = pf.slots();
  std::vector<Eigen::VectorXcd> phases(static_cast<std::size_t>(slots));
  std::vector<char> letters(static_cast<std::size_t>(slots));
  for (int j = 1; j <= slots; ++j) {
    const double theta = pf.tau(j).to_double() * dt;
    const char letter = pf.slot_letter(j);
    letters[static_cast<std::size_t>(j - 1)] = letter;
    Eigen::VectorXcd phase(basis.modes);
    for (int i = 0; i < basis.modes; ++i) {
      const double angle = (letter == 'a') ? -theta * basis.kinetic[i]
                                           : theta / basis.grid[i];
      phase[i] = std::polar(1.0, angle);
    }
    phases[static_cast<std::size_t>(j - 1)] = std::move(phase);
  }

  Eigen::VectorXcd coeffs = state.coeffs;
  const auto apply = [&](const Eigen::VectorXcd& phase, char letter) {
    if (letter == 'a') {
      coeffs.array() *= phase.array();
    } else {
      Eigen::VectorXcd grid_values = real_times_complex(basis.to_grid, coeffs);
      grid_values.array() *= phase.array();
      coeffs = real_times_complex(basis.to_grid.transpose(), grid_values);
    }
  };

  // Equal-generator boundary slots of adjacent cycles share a representation,
  // so their phases merge into one diagonal unitary; the applied unitary
  // count then matches fused_unitary_count.
  const bool mergeable =
      slots > 1 && letters.front() == letters.back() && cycles > 1;
  if (mergeable) {
    Eigen::VectorXcd fused =
        phases.back().cwiseProduct(phases.front());
    apply(phases.front(), letters.front());
    for (long cycle = 0; cycle + 1 < cycles; ++cycle) {
      for (int j = 1; j + 1 < slots; ++j) {
        apply(phases[static_cast<std::size_t>(j)],
              letters[static_cast<std::size_t>(j)]);
      }
      apply(fused, letters.front());
    }
    for (int j = 1; j < slots; ++j) {
      apply(phases[static_cast<std::size_t>(j)],
            letters[static_cast<std::size_t>(j)]);
    }
  } else {
    for (long cycle = 0; cycle < cycles; ++cycle) {
      for (int j = 0; j < slots; ++j) {
        apply(phases[static_cast<std::size_t>(j)],
              letters[static_cast<std::size_t>(j)]);
      }
    }
  }

  RadialState out;
  out.coeffs = std::move(coeffs);
  out.l = state.l;
  out.basis = state.basis;
  return out;
}

RadialState trotter_step(const RadialState& state, const ProductFormula& pf,
                         double dt) {
  return evolve(state, pf, dt, 1);
}

RadialState exact_evolve(const RadialState& state, double t) {
  require_state(state);
  const BesselBasis& basis = *state.basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      discrete_hamiltonian(basis));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("discretized Hamiltonian eigensolve failed");
  }
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  Eigen::VectorXcd spectral =
      real_times_complex(vectors.transpose(), state.coeffs);
  for (int i = 0; i < spectral.size(); ++i) {
    spectral[i] *= std::polar(1.0, -solver.eigenvalues()[i] * t);
  }
  RadialState out;
  out.coeffs = real_times_complex(vectors, spectral);
  out.l = state.l;
  out.basis = state.basis;
  return out;
}

long fused_unitary_count(const ProductFormula& pf, long cycles) {
  if (cycles < 1) {
    throw std::invalid_argument("cycle count must be positive");
  }
  const long per_cycle = pf.slots();
  const bool mergeable = pf.slot_letter(1) == pf.slot_letter(pf.slots());
  return per_cycle * cycles - (mergeable ? cycles - 1 : 0);
}

Eigen::MatrixXcd kinetic_matrix(const BesselBasis& basis) {
  Eigen::MatrixXd diagonal = basis.kinetic.asDiagonal();
  return diagonal.cast<std::complex<double>>();
}

Eigen::MatrixXcd potential_matrix(const BesselBasis& basis) {
  const Eigen::VectorXd potential = -basis.grid.cwiseInverse();
  Eigen::MatrixXd conjugated = basis.to_grid.transpose() *
                               potential.asDiagonal() * basis.to_grid;
  return conjugated.cast<std::complex<double>>();
}

std::vector<CurvePoint> trotter_error_curve(const HydrogenLevel& level,
                                            const ProductFormula& pf, double t,
                                            const std::vector<long>& steps,
                                            const BesselBasis& basis,
                                            const CurveOptions& options) {
  const Projection projection = project_level(basis, level);
  if (projection.loss > options.projection_loss_threshold) {
    std::ostringstream message;
    message << "projection loss " << projection.loss << " exceeds "
            << options.projection_loss_threshold << " for the basis with R = "
            << basis.radius << " and " << basis.modes << " modes";
    throw std::runtime_error(message.str());
  }
  const std::complex<double> reference_phase =
      std::polar(1.0, -energy(level) * t);
  std::vector<CurvePoint> curve;
  curve.reserve(steps.size());
  for (long n : steps) {
    const RadialState final_state = evolve(projection.state, pf, t, n);
    CurvePoint point;
    point.steps = n;
    point.error =
        (final_state.coeffs - reference_phase * projection.state.coeffs)
            .norm();
    curve.push_back(point);
  }
  return curve;
}

std::vector<CurvePoint> trotter_error_curve(const RadialState& initial,
                                            const ProductFormula& pf, double t,
                                            const std::vector<long>& steps) {
  require_state(initial);
  const RadialState reference = exact_evolve(initial, t);
  std::vector<CurvePoint> curve;
  curve.reserve(steps.size());
  for (long n : steps) {
    const RadialState final_state = evolve(initial, pf, t, n);
    CurvePoint point;
    point.steps = n;
    point.error = (final_state.coeffs - reference.coeffs).norm();
    curve.push_back(point);
  }
  return curve;
}

double bound_space_leakage(const RadialState& state, int n_max) {
  require_state(state);
  const BesselBasis& basis = *state.basis;
  if (n_max < basis.l + 1) {
    throw std::invalid_argument(
        "n_max admits no bound level at this angular momentum");
  }
  const Eigen::MatrixXd projector = bound_space(basis, n_max);
  const double captured =
      (projector.transpose() * state.coeffs.real()).squaredNorm() +
      (projector.transpose() * state.coeffs.imag()).squaredNorm();
  const double total = state.coeffs.squaredNorm();
  return std::max(0.0, 1.0 - captured / total);
}

double ionization_probability(const HydrogenLevel& level,
                              const ProductFormula& pf, double t, long cycles,
                              const BesselBasis& basis, int n_max) {
  if (n_max < level.n) {
    throw std::invalid_argument("n_max must include the initial level");
  }
  const Projection projection = project_level(basis, level);
  const RadialState evolved = evolve(projection.state, pf, t, cycles);
  return bound_space_leakage(evolved, n_max);
}

}  // namespace trotter
