#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wnr/ensemble.hpp"
#include "wnr/errors.hpp"
#include "wnr/phase_search.hpp"
#include "wnr/radius.hpp"

using namespace wnr;

TEST_SUITE("radius") {

TEST_CASE("known radii") {
  CHECK(numerical_radius(ComplexMatrix::Identity(3, 3)).value == doctest::Approx(1.0).epsilon(1e-12));
  const RadiusResult j2 = numerical_radius(oracle::shift(2));
  CHECK(std::abs(j2.value - 0.5) <= 1e-10);
  CHECK(j2.certified_error <= 1e-10);
  CHECK(j2.converged);

  const RadiusResult zero = numerical_radius(ComplexMatrix::Zero(3, 3));
  CHECK(zero.value == 0.0);
  CHECK(zero.theta_star == 0.0);
  CHECK(zero.certified_error == 0.0);
}

TEST_CASE("Jordan blocks have radius cos(pi / (n + 1))") {
  // W(J_n) is the disk of that radius, so the phase function is flat and
  // certification goes through level sets.
  for (int n = 2; n <= 6; ++n) {
    const RadiusResult r = numerical_radius(oracle::shift(n));
    CHECK(std::abs(r.value - std::cos(std::numbers::pi / (n + 1))) <= 1e-10);
    CHECK(r.certified_error <= 1e-10);
  }
}

TEST_CASE("agreement with a dense phase grid and random probes") {
  for (unsigned seed = 100; seed < 130; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const ComplexMatrix t = oracle::random_matrix(seed, n);
    const double norm = oracle::jacobi_norm(t);
    const RadiusResult r = numerical_radius(t);
    const double brute = oracle::brute_radius(t, 20000);
    CHECK(r.certified_error <= 1e-10 * std::max(norm, 1.0));
    CHECK(std::abs(r.value - brute) <= 1e-6 * norm);
    // Every brute sample is a lower bound on the true radius.
    CHECK(brute <= r.value + r.certified_error + 1e-13 * norm);
    CHECK(oracle::probe_radius(t, seed, 200) <= r.value + r.certified_error + 1e-13 * norm);
  }
}

TEST_CASE("sandwich and Hermitian equality") {
  for (unsigned seed = 200; seed < 220; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const ComplexMatrix t = oracle::random_matrix(seed, n);
    const double w = numerical_radius(t).value;
    const double norm = oracle::jacobi_norm(t);
    CHECK(w >= 0.5 * norm - 1e-12 * norm);
    CHECK(w <= norm + 1e-12 * norm);

    const ComplexMatrix h = t + t.adjoint();
    CHECK(std::abs(numerical_radius(h).value - oracle::jacobi_norm(h)) <=
          1e-10 * std::max(oracle::jacobi_norm(h), 1.0));
  }
}

TEST_CASE("homogeneity and unitary invariance") {
  const ComplexMatrix t = oracle::random_matrix(5, 4);
  const double w = numerical_radius(t).value;
  const Complex c(-1.5, 2.0);
  CHECK(numerical_radius(c * t).value == doctest::Approx(std::abs(c) * w).epsilon(1e-9));
  const ComplexMatrix u = generate({"unitary", 4, 1.0, 77});
  CHECK(numerical_radius(u * t * u.adjoint()).value == doctest::Approx(w).epsilon(1e-9));
}

TEST_CASE("serial and parallel searches are bitwise identical") {
  for (unsigned seed = 300; seed < 310; ++seed) {
    const ComplexMatrix t = oracle::random_matrix(seed, 3 + static_cast<int>(seed % 3));
    RadiusOptions serial;
    serial.parallel = false;
    RadiusOptions parallel;
    parallel.parallel = true;
    const RadiusResult a = search_numerical_radius(t, serial);
    const RadiusResult b = search_numerical_radius(t, parallel);
    CHECK(a.value == b.value);
    CHECK(a.certified_error == b.certified_error);
    CHECK(a.theta_star == b.theta_star);
  }
}

TEST_CASE("a finer initial grid gives the same certified value") {
  for (unsigned seed = 400; seed < 410; ++seed) {
    const ComplexMatrix t = oracle::random_matrix(seed, 4);
    RadiusOptions fine;
    fine.grid_points = 1024;
    const RadiusResult a = search_numerical_radius(t);
    const RadiusResult b = search_numerical_radius(t, fine);
    CHECK(std::abs(a.value - b.value) <= a.certified_error + b.certified_error + 1e-14);
  }
}

TEST_CASE("without level sets a flat phase function exhausts the budget") {
  RadiusOptions opt;
  opt.level_set = false;
  const ComplexMatrix j = oracle::shift(2);
  const RadiusResult r = search_numerical_radius(j, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.value <= 0.5 + 1e-15);
  CHECK(r.value + r.certified_error >= 0.5);
  CHECK_THROWS_AS(numerical_radius(j, opt), ToleranceNotReached);
  try {
    numerical_radius(j, opt);
  } catch (const ToleranceNotReached &e) {
    CHECK(e.result.value + e.result.certified_error >= 0.5);
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(numerical_radius(ComplexMatrix::Zero(2, 3)), NotSquare);
  CHECK_THROWS_AS(numerical_radius(ComplexMatrix::Identity(2, 2), -1.0), DomainError);
  CHECK_THROWS_AS(Weight(1.5), DomainError);
  CHECK_THROWS_AS(Weight(-0.1), DomainError);
}

TEST_CASE("weighted radius and norm") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  for (double t : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    CHECK(weighted_numerical_radius(id, Weight(t)).value ==
          doctest::Approx(std::abs(2.0 - 2.0 * t)).epsilon(1e-12));
    CHECK(weighted_norm(id, Weight(t)) == doctest::Approx(std::abs(2.0 - 2.0 * t)).epsilon(1e-12));
  }
  // At t = 1/2 the combination is T itself.
  const ComplexMatrix t = oracle::random_matrix(9, 4);
  CHECK(weighted_combination(t, Weight(0.5)) == t);
  CHECK(weighted_numerical_radius(t, Weight(0.5)).value == numerical_radius(t).value);
  CHECK(weighted_norm(t, Weight(0.5)) == spectral_norm(t));
}

TEST_CASE("weighted real and imaginary parts combine") {
  const ComplexMatrix t = oracle::random_matrix(10, 3);
  for (double s : {0.0, 0.2, 0.5, 0.9}) {
    const Weight w(s);
    const ComplexMatrix sum = weighted_real_part(t, w) + kI * weighted_imag_part(t, w);
    CHECK((sum - weighted_combination(t, w)).norm() <= 1e-13 * t.norm());
  }
}

TEST_CASE("Aluthge transform") {
  CHECK(aluthge(oracle::shift(2)).norm() <= 1e-14);
  for (unsigned seed = 500; seed < 510; ++seed) {
    const ComplexMatrix t = oracle::random_matrix(seed, 3);
    const ComplexMatrix a = aluthge(t);
    CHECK(numerical_radius(a).value <= numerical_radius(t).value + 1e-9);
    // Same spectrum: equal traces.
    CHECK(std::abs(a.trace() - t.trace()) <= 1e-10 * t.norm());
  }
  const ComplexMatrix normal = generate({"normal", 4, 1.0, 3});
  CHECK((aluthge(normal) - normal).norm() <= 1e-10 * normal.norm());
}

TEST_CASE("the two weighted radius definitions differ on scalars") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const WeightedRadiusForms f = compare_weighted_radius_forms(id, Weight(0.3));
  CHECK(f.operative.value == doctest::Approx(1.4));
  CHECK(f.sup_form.value == doctest::Approx(1.0));
  CHECK(f.difference == doctest::Approx(0.4));
  const ComplexMatrix t = oracle::random_matrix(12, 3);
  CHECK(std::abs(compare_weighted_radius_forms(t, Weight(0.5)).difference) <= 1e-9);
}

TEST_CASE("grid kernels: serial and parallel agree bitwise") {
  const HermitianPartEvaluator eval(oracle::random_matrix(14, 6));
  const auto a = evaluate_grid_serial(eval, 257);
  const auto b = evaluate_grid_parallel(eval, 257);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].value == b[i].value);
  }
}

TEST_CASE("phase samples are support values with consistent witnesses") {
  const ComplexMatrix t = oracle::random_matrix(15, 4);
  HermitianPartEvaluator eval(t);
  for (double th : {0.0, 0.7, 2.0, 4.5}) {
    const PhaseSample s = eval(th);
    // value = Re(e^{i theta} witness) for the top eigenvector.
    CHECK(s.value == doctest::Approx((std::polar(1.0, th) * s.witness).real()).epsilon(1e-12));
    const auto [top, bottom] = eval.antipodal(th);
    CHECK(top.value == s.value);
    CHECK(bottom.value == doctest::Approx(eval(wrap_phase(th + std::numbers::pi)).value).epsilon(1e-12));
  }
}

} // TEST_SUITE
