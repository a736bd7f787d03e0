#pragma once

// Dense complex linear algebra used by every other module.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace wnr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
/// Each eigenvector is phase-normalised so that its first component of
/// magnitude above 1e-12 is real and nonnegative.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

struct SingularValueDecomposition {
  ComplexMatrix u;
  RealVector singular_values; // descending
  ComplexMatrix v;
};

/// T = isometry * modulus, with isometry a partial isometry whose initial
/// space is range(modulus).
struct PolarParts {
  ComplexMatrix isometry;
  ComplexMatrix modulus;
};

ComplexMatrix adjoint(const ComplexMatrix &a);

/// Throws NotSquare unless rows == cols.
void require_square(const ComplexMatrix &a);
/// Throws NonFinite if any entry is NaN or Inf.
void require_finite(const ComplexMatrix &a);
/// Square and finite; the precondition of every operator-valued input.
void require_operator(const ComplexMatrix &a);

/// Hermitian eigendecomposition, eigenvalues descending. The input is
/// symmetrised as (A + A*)/2 after checking ||A - A*|| <= 1e-10 ||A||.
SpectralDecomposition hermitian_eigen(const ComplexMatrix &a);

/// Full SVD, A = U diag(s) V*.
SingularValueDecomposition svd(const ComplexMatrix &a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix &a);

/// Spectral calculus V diag(l^p) V* for Hermitian PSD A. Eigenvalues in
/// [-1e-10 l_max, 0) are clamped to zero; anything more negative raises
/// NotPSD. Uses 0^0 = 1, so p = 0 returns the identity.
ComplexMatrix psd_power(const ComplexMatrix &a, double p);

/// |T| = (T*T)^{1/2}.
ComplexMatrix abs_op(const ComplexMatrix &t);

/// Default rank tolerance 1e-12 * s_max * n.
double default_rank_tol(const ComplexMatrix &t);

/// Polar decomposition from the SVD T = V S W*: modulus W S W*, isometry
/// V diag(s_i > rank_tol) W*. A non-positive rank_tol selects the default.
PolarParts polar(const ComplexMatrix &t, double rank_tol = 0.0);

/// <x, y> linear in the first argument: sum_i x_i conj(y_i).
Complex inner(const ComplexVector &x, const ComplexVector &y);

} // namespace wnr
