#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "wnr/phase_search.hpp"

namespace wnr {

/// f(theta) = scale * || e^{i theta} P + e^{-i theta} Q ||.
///
/// With (u, v) the top singular pair, f = scale * Re(u* C v), a sinusoid in
/// theta with amplitude |u* P v + conj(u* Q v)|, so f is a support function
/// and witness = scale * (u* P v + conj(u* Q v)).
class TrigNormEvaluator {
public:
  TrigNormEvaluator(ComplexMatrix p, ComplexMatrix q, double scale)
      : p_(std::move(p)), q_(std::move(q)), scale_(scale) {}

  PhaseSample operator()(double theta) {
    const Complex e = std::polar(1.0, theta);
    c_ = e * p_ + std::conj(e) * q_;
    // Top right singular vector v from C* C; u = C v / sigma.
    gram_.noalias() = c_.adjoint() * c_;
    solver_.compute(gram_, Eigen::ComputeEigenvectors);
    const Eigen::Index last = gram_.rows() - 1;
    const double sigma = std::sqrt(std::max(solver_.eigenvalues()(last), 0.0));
    PhaseSample s;
    s.theta = theta;
    s.value = scale_ * sigma;
    if (sigma > 0.0) {
      const auto v = solver_.eigenvectors().col(last);
      const ComplexVector u = (c_ * v) / sigma;
      s.witness = scale_ * (u.dot(p_ * v) + std::conj(u.dot(q_ * v)));
    }
    return s;
  }

  /// |f'| <= scale (||P|| + ||Q||).
  double lipschitz() const { return scale_ * (spectral_norm(p_) + spectral_norm(q_)); }

private:
  ComplexMatrix p_;
  ComplexMatrix q_;
  double scale_;
  ComplexMatrix c_;
  ComplexMatrix gram_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
};

} // namespace wnr
