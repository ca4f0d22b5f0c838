#include "trotter/dense_oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace trotter {

namespace {

using LongComplex = std::complex<long double>;
using LongMatrix =
    Eigen::Matrix<LongComplex, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Matrix<LongComplex, Eigen::Dynamic, 1>;

constexpr double kTolerance = 1e-12;

double operator_norm(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// One cycle of the formula as a dense matrix, slot 1 applied first, built in
// extended precision from the eigendecompositions of the two generators.
LongMatrix cycle_matrix(const HermitianPair& pair, const ProductFormula& pf,
                        double t, long N) {
  const long dim = pair.h1.rows();
  Eigen::SelfAdjointEigenSolver<LongMatrix> es1(
      pair.h1.cast<LongComplex>());
  Eigen::SelfAdjointEigenSolver<LongMatrix> es2(
      pair.h2.cast<LongComplex>());
  if (es1.info() != Eigen::Success || es2.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  LongMatrix cycle = LongMatrix::Identity(dim, dim);
  for (int j = 1; j <= pf.slots(); ++j) {
    const bool first = pf.slot_letter(j) == 'a';
    const auto& es = first ? es1 : es2;
    const long double theta =
        static_cast<long double>(pf.tau(j).to_double()) *
        static_cast<long double>(t) / static_cast<long double>(N);
    LongVector phases(dim);
    for (long k = 0; k < dim; ++k) {
      phases(k) = std::polar<long double>(
          1.0L, -theta * es.eigenvalues()(k));
    }
    const LongMatrix slot = es.eigenvectors() * phases.asDiagonal() *
                            es.eigenvectors().adjoint();
    cycle = slot * cycle;
  }
  return cycle;
}

struct FormulaCacheEntry {
  BoundExpression bound;
};

// derive_bound runs exact rational arithmetic, so memoize it per formula
// layout; validation batteries call with the same formula thousands of times.
const FormulaCacheEntry& cached_bound(const ProductFormula& pf) {
  static std::mutex mutex;
  static std::map<std::string, FormulaCacheEntry> cache;
  std::string key;
  for (int j = 1; j <= pf.slots(); ++j) {
    key += pf.slot_letter(j);
    key += pf.tau(j).to_exact_string();
    key += ';';
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const OrderCheck check = verify_order(pf);
    if (!check.ok) {
      throw std::invalid_argument(
          "formula does not reproduce the declared order");
    }
    it = cache.emplace(key, FormulaCacheEntry{derive_bound(pf)}).first;
  }
  return it->second;
}

double shifted_word_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                         const Eigen::VectorXcd& phi, const Word& word) {
  Eigen::VectorXcd state = phi;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    state = (*it == 'a' ? a : b) * state;
  }
  return state.norm();
}

}  // namespace

void validate_pair(const HermitianPair& pair) {
  const long dim = pair.h1.rows();
  if (dim < 1 || dim > 64) {
    throw std::invalid_argument("dimension must be between 1 and 64");
  }
  if (pair.h1.cols() != dim || pair.h2.rows() != dim ||
      pair.h2.cols() != dim || pair.phi.size() != dim) {
    throw std::invalid_argument("dimension mismatch between h1, h2, and phi");
  }
  if ((pair.h1 - pair.h1.adjoint()).norm() > kTolerance * (1.0 + pair.h1.norm())) {
    throw std::invalid_argument("h1 is not Hermitian");
  }
  if ((pair.h2 - pair.h2.adjoint()).norm() > kTolerance * (1.0 + pair.h2.norm())) {
    throw std::invalid_argument("h2 is not Hermitian");
  }
  if (std::abs(pair.phi.norm() - 1.0) > kTolerance) {
    throw std::invalid_argument("phi must have unit norm");
  }
  const double residual =
      ((pair.h1 + pair.h2) * pair.phi - pair.eigenvalue * pair.phi).norm();
  if (residual > kTolerance) {
    throw std::invalid_argument(
        "phi is not an eigenstate of h1 + h2 at the stated eigenvalue");
  }
}

Eigen::VectorXcd apply_formula(const HermitianPair& pair,
                               const ProductFormula& pf, double t, long N) {
  validate_pair(pair);
  if (N < 1) {
    throw std::invalid_argument("N must be at least 1");
  }
  const LongMatrix cycle = cycle_matrix(pair, pf, t, N);
  LongVector state = pair.phi.cast<LongComplex>();
  for (long n = 0; n < N; ++n) {
    state = cycle * state;
  }
  return state.cast<std::complex<double>>();
}

double trotter_error(const HermitianPair& pair, const ProductFormula& pf,
                     double t, long N) {
  validate_pair(pair);
  if (N < 1) {
    throw std::invalid_argument("N must be at least 1");
  }
  const LongMatrix cycle = cycle_matrix(pair, pf, t, N);
  LongVector state = pair.phi.cast<LongComplex>();
  for (long n = 0; n < N; ++n) {
    state = cycle * state;
  }
  const LongComplex phase = std::polar<long double>(
      1.0L, -static_cast<long double>(t) *
                static_cast<long double>(pair.eigenvalue));
  const LongVector reference = phase * pair.phi.cast<LongComplex>();
  return static_cast<double>((state - reference).norm());
}

BoundValidation bound_validation(const HermitianPair& pair,
                                 const ProductFormula& pf, double t, long N) {
  validate_pair(pair);
  const BoundExpression& be = cached_bound(pf).bound;
  const double radius = operator_norm(pair.h1);
  const long dim = pair.h1.rows();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);

  BoundValidation result;
  result.measured = trotter_error(pair, pf, t, N);
  result.bound = std::numeric_limits<double>::infinity();
  constexpr int kGridPoints = 21;
  for (int i = 0; i < kGridPoints; ++i) {
    const double g =
        -radius + 2.0 * radius * static_cast<double>(i) / (kGridPoints - 1);
    const Eigen::MatrixXcd a = pair.h1 - g * identity;
    const Eigen::MatrixXcd b = pair.h2 - (pair.eigenvalue - g) * identity;
    std::map<Word, double> norms;
    for (const auto& [word, coeff] : be.terms) {
      norms[word] = shifted_word_norm(a, b, pair.phi, word);
    }
    const double value = evaluate_bound(be, norms, t, N);
    if (value < result.bound) {
      result.bound = value;
      result.shift = g;
    }
  }
  result.holds =
      result.measured <= result.bound + kTolerance * (1.0 + result.bound);
  return result;
}

ScalingReport slope_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) {
    throw std::invalid_argument("slope fit needs at least four points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, err] : points) {
    if (!(n > 0.0) || !(err > 0.0)) {
      throw std::invalid_argument(
          "slope fit requires positive N and positive errors");
    }
    const double x = std::log(n);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) {
    throw std::invalid_argument("slope fit needs distinct N values");
  }
  ScalingReport report;
  report.slope = (m * sxy - sx * sy) / denom;
  report.intercept = (sy - report.slope * sx) / m;
  double ss = 0.0;
  for (const auto& [n, err] : points) {
    const double r =
        std::log(err) - (report.intercept + report.slope * std::log(n));
    ss += r * r;
  }
  report.residual_rms = std::sqrt(ss / m);
  return report;
}

HermitianPair no_go_pair() {
  HermitianPair pair;
  pair.h1 = Eigen::MatrixXcd::Zero(3, 3);
  pair.h1 << 0, 1, 0, 1, 0, 1, 0, 1, 1;
  pair.h2 = Eigen::MatrixXcd::Zero(3, 3);
  pair.h2 << 0, -1, 0, -1, 0, -1, 0, -1, 0;
  pair.phi = Eigen::VectorXcd::Zero(3);
  pair.phi(0) = 1.0;
  pair.eigenvalue = 0.0;
  return pair;
}

HermitianPair block_pair(double coupling) {
  // Lower 2x2 blocks 5*sigma_x and 5*sigma_z: their commutator has norm 100
  // while both generators annihilate the first basis vector when the
  // coupling vanishes.
  HermitianPair pair;
  pair.h1 = Eigen::MatrixXcd::Zero(3, 3);
  pair.h1(0, 1) = coupling;
  pair.h1(1, 0) = coupling;
  pair.h1(1, 2) = 5.0;
  pair.h1(2, 1) = 5.0;
  pair.h2 = Eigen::MatrixXcd::Zero(3, 3);
  pair.h2(0, 1) = coupling;
  pair.h2(1, 0) = coupling;
  pair.h2(1, 1) = 5.0;
  pair.h2(2, 2) = -5.0;
  if (coupling == 0.0) {
    pair.phi = Eigen::VectorXcd::Zero(3);
    pair.phi(0) = 1.0;
    pair.eigenvalue = 0.0;
    return pair;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pair.h1 + pair.h2);
  long best = 0;
  double best_weight = -1.0;
  for (long k = 0; k < 3; ++k) {
    const double w = std::abs(es.eigenvectors()(0, k));
    if (w > best_weight) {
      best_weight = w;
      best = k;
    }
  }
  pair.phi = es.eigenvectors().col(best);
  pair.phi.normalize();
  pair.eigenvalue = es.eigenvalues()(best);
  return pair;
}

HermitianPair random_pair(int dim, std::mt19937_64& rng) {
  if (dim < 1 || dim > 64) {
    throw std::invalid_argument("dimension must be between 1 and 64");
  }
  // Explicit Box-Muller on 53-bit uniforms keeps the stream identical across
  // standard libraries, which distribution classes do not guarantee.
  const auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  const auto gaussian = [&]() {
    const double u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * 3.14159265358979323846 * v);
  };
  const auto hermitian = [&]() {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      h(i, i) = gaussian();
      for (int j = i + 1; j < dim; ++j) {
        const std::complex<double> z(gaussian(), gaussian());
        h(i, j) = z / std::sqrt(2.0);
        h(j, i) = std::conj(h(i, j));
      }
    }
    return h;
  };
  HermitianPair pair;
  pair.h1 = hermitian();
  pair.h2 = hermitian();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pair.h1 + pair.h2);
  const long which = static_cast<long>(rng() % static_cast<unsigned long>(dim));
  pair.phi = es.eigenvectors().col(which);
  pair.phi.normalize();
  pair.eigenvalue = es.eigenvalues()(which);
  return pair;
}

}  // namespace trotter
