#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>

#include "trotter/dense_oracle.hpp"
#include "trotter/formula.hpp"

using trotter::HermitianPair;
using trotter::ProductFormula;

namespace {

double matrix_norm(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

HermitianPair scaled_pair(int dim, double target_norm, std::mt19937_64& rng) {
  HermitianPair pair = trotter::random_pair(dim, rng);
  const double scale = target_norm / matrix_norm(pair.h1 + pair.h2);
  pair.h1 *= scale;
  pair.h2 *= scale;
  pair.eigenvalue *= scale;
  return pair;
}

ProductFormula formula_for(int p) {
  return p == 1 ? trotter::first_order_formula() : trotter::suzuki_times(p);
}

}  // namespace

TEST_CASE("pair validation", "[dense]") {
  HermitianPair good = trotter::no_go_pair();
  REQUIRE_NOTHROW(trotter::validate_pair(good));

  HermitianPair skew = good;
  skew.h1(0, 1) = std::complex<double>(0.0, 1.0);
  REQUIRE_THROWS_AS(trotter::validate_pair(skew), std::invalid_argument);
  REQUIRE_THROWS_AS(
      trotter::trotter_error(skew, trotter::first_order_formula(), 1.0, 2),
      std::invalid_argument);

  HermitianPair wrong_state = good;
  wrong_state.phi(2) = 0.3;
  wrong_state.phi.normalize();
  REQUIRE_THROWS_AS(trotter::validate_pair(wrong_state),
                    std::invalid_argument);

  HermitianPair unnormalized = good;
  unnormalized.phi *= 2.0;
  REQUIRE_THROWS_AS(trotter::validate_pair(unnormalized),
                    std::invalid_argument);

  HermitianPair mismatched = good;
  mismatched.h2 = Eigen::MatrixXcd::Zero(2, 2);
  REQUIRE_THROWS_AS(trotter::validate_pair(mismatched),
                    std::invalid_argument);

  HermitianPair too_big;
  too_big.h1 = Eigen::MatrixXcd::Zero(65, 65);
  too_big.h2 = Eigen::MatrixXcd::Zero(65, 65);
  too_big.phi = Eigen::VectorXcd::Zero(65);
  too_big.phi(0) = 1.0;
  REQUIRE_THROWS_AS(trotter::validate_pair(too_big), std::invalid_argument);

  REQUIRE_THROWS_AS(
      trotter::trotter_error(good, trotter::first_order_formula(), 1.0, 0),
      std::invalid_argument);
}

TEST_CASE("commutator no-go example", "[dense]") {
  const HermitianPair pair = trotter::no_go_pair();
  // The commutator annihilates phi, so any bound proportional to
  // |[H1,H2] phi| would claim zero error.
  const Eigen::MatrixXcd commutator =
      pair.h1 * pair.h2 - pair.h2 * pair.h1;
  REQUIRE((commutator * pair.phi).norm() <= 1e-14);
  // The measured error is nevertheless strictly positive at finite N.
  REQUIRE(trotter::trotter_error(pair, trotter::first_order_formula(), 1.0,
                                 4) > 1e-6);
  REQUIRE(trotter::trotter_error(pair, trotter::suzuki_times(2), 1.0, 4) >
          1e-6);
}

TEST_CASE("block example with vanishing coupling is exact", "[dense]") {
  const HermitianPair pair = trotter::block_pair(0.0);
  // The lower blocks commute badly while phi sees neither generator.
  const Eigen::MatrixXcd commutator =
      pair.h1 * pair.h2 - pair.h2 * pair.h1;
  REQUIRE(matrix_norm(Eigen::MatrixXcd(
              std::complex<double>(0, 1) * commutator)) >= 49.9);
  REQUIRE((pair.h1 * pair.phi).norm() <= 1e-14);
  REQUIRE((pair.h2 * pair.phi).norm() <= 1e-14);
  for (const long N : {1L, 5L, 32L}) {
    CAPTURE(N);
    REQUIRE(trotter::trotter_error(pair, trotter::first_order_formula(), 1.0,
                                   N) <= 1e-13);
  }
  // The grid includes g = 0, where both shifted squares annihilate phi, so
  // the reported bound is exactly zero and still holds.
  const auto report = trotter::bound_validation(
      pair, trotter::first_order_formula(), 1.0, 4);
  REQUIRE(report.bound <= 1e-13);
  REQUIRE(report.measured <= 1e-13);
  REQUIRE(report.holds);
  REQUIRE(report.shift == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("commuting diagonal pair has zero error", "[dense]") {
  HermitianPair pair;
  pair.h1 = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  pair.h2 = Eigen::Vector3d(-0.5, 4.0, 0.25).asDiagonal();
  pair.phi = Eigen::VectorXcd::Zero(3);
  pair.phi(1) = 1.0;
  pair.eigenvalue = 6.0;
  for (const int p : {1, 2, 4}) {
    for (const long N : {1L, 3L}) {
      CAPTURE(p, N);
      REQUIRE(trotter::trotter_error(pair, formula_for(p), 1.7, N) <= 1e-13);
    }
  }
}

TEST_CASE("slot exponentials preserve the norm", "[dense]") {
  std::mt19937_64 rng(20240817);
  const HermitianPair pair = trotter::random_pair(6, rng);
  for (const int p : {1, 2, 4}) {
    CAPTURE(p);
    const Eigen::VectorXcd state =
        trotter::apply_formula(pair, formula_for(p), 1.0, 32);
    REQUIRE(std::abs(state.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("slope fit", "[dense]") {
  std::vector<std::pair<double, double>> pure;
  for (int n = 2; n <= 40; n += 3) {
    pure.emplace_back(n, 0.8 / n);
  }
  const auto fit = trotter::slope_fit(pure);
  REQUIRE(fit.slope == Catch::Approx(-1.0).margin(1e-9));
  REQUIRE(fit.residual_rms <= 1e-12);

  std::vector<std::pair<double, double>> quarter;
  for (int n = 2; n <= 40; n += 3) {
    quarter.emplace_back(n, 2.0 * std::pow(n, -0.25));
  }
  REQUIRE(trotter::slope_fit(quarter).slope ==
          Catch::Approx(-0.25).margin(1e-9));

  // Sum of a slow and a fast term with the ground-state curve weights; over
  // a window of small N the apparent slope sits strictly between the pure
  // exponents.
  std::vector<std::pair<double, double>> mixed;
  for (int n = 2; n <= 30; ++n) {
    mixed.emplace_back(n, 1.343653 * std::pow(n, -0.25) + 0.832107 / n);
  }
  const auto mixed_fit = trotter::slope_fit(mixed);
  REQUIRE(mixed_fit.slope > -0.65);
  REQUIRE(mixed_fit.slope < -0.25);

  REQUIRE_THROWS_AS(trotter::slope_fit({{1.0, 0.5}, {2.0, 0.4}, {3.0, 0.3}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      trotter::slope_fit({{1.0, 0.5}, {2.0, 0.0}, {3.0, 0.3}, {4.0, 0.2}}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      trotter::slope_fit({{1.0, 0.5}, {2.0, -0.1}, {3.0, 0.3}, {4.0, 0.2}}),
      std::invalid_argument);
}

TEST_CASE("validation battery over random pairs", "[dense][battery]") {
  // Trimmed version of the full battery run by the acceptance tool: every
  // measured error stays below the grid-optimized bound.
  std::mt19937_64 rng(987654321);
  for (int trial = 0; trial < 60; ++trial) {
    const HermitianPair pair = trotter::random_pair(4, rng);
    for (const int p : {1, 2, 4}) {
      const ProductFormula pf = formula_for(p);
      for (const long N : {1L, 2L, 5L, 13L, 32L}) {
        const auto report = trotter::bound_validation(pair, pf, 1.0, N);
        CAPTURE(trial, p, N, report.measured, report.bound);
        REQUIRE(report.holds);
      }
    }
  }
}

TEST_CASE("measured error follows the formula order", "[dense][order]") {
  std::mt19937_64 rng(20250101);
  const HermitianPair pair = scaled_pair(8, 2.0, rng);
  const std::vector<long> window = {64, 91, 128, 181, 256, 362, 512};
  for (const int p : {1, 2, 4}) {
    const ProductFormula pf = formula_for(p);
    std::vector<std::pair<double, double>> points;
    for (const long N : window) {
      points.emplace_back(static_cast<double>(N),
                          trotter::trotter_error(pair, pf, 1.0, N));
    }
    const auto fit = trotter::slope_fit(points);
    CAPTURE(p, fit.slope);
    REQUIRE(fit.slope == Catch::Approx(-p).margin(0.05));
  }
}

TEST_CASE("random pairs are reproducible and valid", "[dense]") {
  std::mt19937_64 a(42), b(42);
  const HermitianPair pa = trotter::random_pair(4, a);
  const HermitianPair pb = trotter::random_pair(4, b);
  REQUIRE((pa.h1 - pb.h1).norm() == 0.0);
  REQUIRE((pa.phi - pb.phi).norm() == 0.0);
  REQUIRE(pa.eigenvalue == pb.eigenvalue);
  REQUIRE_NOTHROW(trotter::validate_pair(pa));

  std::mt19937_64 c(43);
  REQUIRE((trotter::random_pair(4, c).h1 - pa.h1).norm() > 1e-3);
}
