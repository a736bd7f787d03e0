#include "wnr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "wnr/errors.hpp"

namespace wnr {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdClamp = 1e-10;
constexpr double kPhaseFloor = 1e-12;

void normalise_phases(ComplexMatrix &vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const Complex c = vectors(i, j);
      const double mag = std::abs(c);
      if (mag > kPhaseFloor) {
        vectors.col(j) *= std::conj(c) / mag;
        vectors(i, j) = Complex(std::abs(vectors(i, j)), 0.0);
        break;
      }
    }
  }
}

// Eigen returns ascending eigenvalues; reverse to descending.
SpectralDecomposition solve_symmetrised(const ComplexMatrix &h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  SpectralDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  normalise_phases(out.eigenvectors);
  return out;
}

} // namespace

ComplexMatrix adjoint(const ComplexMatrix &a) { return a.adjoint(); }

void require_square(const ComplexMatrix &a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw NotSquare(a.rows(), a.cols());
}

void require_finite(const ComplexMatrix &a) {
  if (!a.allFinite())
    throw NonFinite();
}

void require_operator(const ComplexMatrix &a) {
  require_square(a);
  require_finite(a);
}

SpectralDecomposition hermitian_eigen(const ComplexMatrix &a) {
  require_operator(a);
  const double scale = spectral_norm(a);
  const ComplexMatrix skew = a - a.adjoint();
  const double asym = skew.size() ? spectral_norm(skew) : 0.0;
  if (asym > kHermitianTol * scale)
    throw NotHermitian(scale > 0 ? asym / scale : asym);
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  return solve_symmetrised(h);
}

SingularValueDecomposition svd(const ComplexMatrix &a) {
  require_finite(a);
  Eigen::JacobiSVD<ComplexMatrix> js(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {js.matrixU(), js.singularValues(), js.matrixV()};
}

double spectral_norm(const ComplexMatrix &a) {
  if (a.size() == 0)
    return 0.0;
  // sqrt(lambda_max(A* A)): the top singular value keeps full relative
  // accuracy this way and the Hermitian solver is far cheaper than an SVD.
  const ComplexMatrix g = a.rows() >= a.cols() ? ComplexMatrix(a.adjoint() * a)
                                               : ComplexMatrix(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues()(g.rows() - 1), 0.0));
}

ComplexMatrix psd_power(const ComplexMatrix &a, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw DomainError("psd_power exponent must be a finite nonnegative real");
  const SpectralDecomposition sd = hermitian_eigen(a);
  const Eigen::Index n = a.rows();
  const double top = sd.eigenvalues(0);
  const double floor = -kPsdClamp * std::max(top, 0.0);
  RealVector powered(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double l = sd.eigenvalues(i);
    if (l < floor)
      throw NotPSD(l);
    l = std::max(l, 0.0);
    powered(i) = (p == 0.0) ? 1.0 : std::pow(l, p);
  }
  return sd.eigenvectors * powered.asDiagonal() * sd.eigenvectors.adjoint();
}

ComplexMatrix abs_op(const ComplexMatrix &t) {
  require_operator(t);
  // Same operator as psd_power(T*T, 1/2) but built from the SVD so small
  // singular values are not lost to squaring.
  Eigen::JacobiSVD<ComplexMatrix> js(t, Eigen::ComputeFullV);
  const ComplexMatrix &w = js.matrixV();
  return w * js.singularValues().asDiagonal() * w.adjoint();
}

double default_rank_tol(const ComplexMatrix &t) {
  return 1e-12 * spectral_norm(t) * static_cast<double>(t.rows());
}

PolarParts polar(const ComplexMatrix &t, double rank_tol) {
  require_operator(t);
  Eigen::JacobiSVD<ComplexMatrix> js(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector &s = js.singularValues();
  if (!(rank_tol > 0.0))
    rank_tol = 1e-12 * (s.size() ? s(0) : 0.0) * static_cast<double>(t.rows());
  RealVector support(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    support(i) = s(i) > rank_tol ? 1.0 : 0.0;
  const ComplexMatrix &v = js.matrixU();
  const ComplexMatrix &w = js.matrixV();
  PolarParts parts;
  parts.modulus = w * s.asDiagonal() * w.adjoint();
  parts.isometry = v * support.asDiagonal() * w.adjoint();
  return parts;
}

Complex inner(const ComplexVector &x, const ComplexVector &y) {
  if (x.size() != y.size())
    throw DimensionMismatch("inner product of vectors with different lengths");
  return y.dot(x);
}

} // namespace wnr
