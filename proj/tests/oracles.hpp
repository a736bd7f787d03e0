#pragma once

// Independent reference computations for the tests. None of these call the
// library's search, eigen or norm routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "wnr/linalg.hpp"

namespace oracle {

using wnr::Complex;
using wnr::ComplexMatrix;
using wnr::ComplexVector;

/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by
/// Faddeev-LeVerrier.
inline std::vector<Complex> char_poly(const ComplexMatrix &a) {
  const auto n = a.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1.0;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

/// All roots of a monic polynomial by Durand-Kerner.
inline std::vector<Complex> poly_roots(const std::vector<Complex> &c) {
  const std::size_t n = c.size() - 1;
  auto eval = [&](Complex z) {
    Complex v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;)
      v = v * z + c[k];
    return v;
  };
  double radius = 1.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, 1.0 + std::abs(c[k]));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(0.5 * radius, 0.4 + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                              static_cast<double>(n));
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i)
          den *= z[i] - z[j];
      const Complex step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * radius)
      break;
  }
  return z;
}

/// Eigenvalues of a Hermitian matrix from its characteristic polynomial,
/// ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
  std::vector<double> ev;
  for (Complex z : poly_roots(char_poly(h)))
    ev.push_back(z.real());
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Spectral norm by one-sided Jacobi SVD.
inline double jacobi_norm(const ComplexMatrix &a) {
  if (a.size() == 0)
    return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> s(a);
  return s.singularValues()(0);
}

/// max_k lambda_max(Re(e^{i theta_k} T)) on `points` equispaced phases in
/// [0, pi), using lambda_max(H(theta + pi)) = -lambda_min(H(theta)).
inline double brute_radius(const ComplexMatrix &t, int points) {
  const ComplexMatrix re = 0.5 * (t + t.adjoint());
  const ComplexMatrix im = Complex(0.0, -0.5) * (t - t.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t.rows());
  ComplexMatrix h(t.rows(), t.rows());
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const double th = std::numbers::pi * k / points;
    h = std::cos(th) * re - std::sin(th) * im;
    es.compute(h, Eigen::EigenvaluesOnly);
    best = std::max({best, es.eigenvalues()(t.rows() - 1), -es.eigenvalues()(0)});
  }
  return best;
}

/// max |<Tx, x>| over random unit vectors: a lower bound on w(T).
inline double probe_radius(const ComplexMatrix &t, unsigned seed, int probes) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  double best = 0.0;
  for (int k = 0; k < probes; ++k) {
    ComplexVector x(t.rows());
    for (auto &z : x)
      z = Complex(nd(gen), nd(gen));
    x.normalize();
    best = std::max(best, std::abs(x.dot(t * x)));
  }
  return best;
}

/// Jordan block: ones on the superdiagonal.
inline ComplexMatrix shift(int n) {
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i)
    s(i, i + 1) = 1.0;
  return s;
}

inline ComplexMatrix random_matrix(unsigned seed, int n) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  ComplexMatrix m(n, n);
  for (auto &z : m.reshaped())
    z = Complex(nd(gen), nd(gen));
  return m;
}

inline ComplexVector random_vector(unsigned seed, int n) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  ComplexVector v(n);
  for (auto &z : v)
    z = Complex(nd(gen), nd(gen));
  return v;
}

} // namespace oracle
