#pragma once

// Numerical radius and its weighted variants.
//
//   w(T)    = sup_theta lambda_max(H(theta)),  H(theta) = (e^{i theta} T + e^{-i theta} T*) / 2
//   w_t(T)  = w((1 - 2t) T* + T)
//   ||T||_t = ||(1 - 2t) T* + T||

#include <cstddef>
#include <utility>

#include "wnr/errors.hpp"
#include "wnr/linalg.hpp"
#include "wnr/phase_search.hpp"

namespace wnr {

/// Weight t in [0, 1].
class Weight {
public:
  explicit Weight(double t);
  double value() const { return t_; }

private:
  double t_;
};

struct RadiusResult {
  double value = 0.0;
  double theta_star = 0.0;
  /// Upper bound on |true - value|; the true radius lies in
  /// [value, value + certified_error].
  double certified_error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// The search hit its iteration cap. `result` still carries an honest
/// bracket.
class ToleranceNotReached : public Error {
public:
  explicit ToleranceNotReached(const RadiusResult &r);
  RadiusResult result;
};

struct RadiusOptions {
  /// Absolute tolerance; <= 0 selects 1e-10 * max(||T||, 1).
  double tol = 0.0;
  /// Initial grid; <= 0 selects max(64, 16 n).
  int grid_points = 0;
  bool parallel = true;
  /// Fall back to level-set certification when bisection stalls.
  bool level_set = true;
};

double default_radius_tol(const ComplexMatrix &t);

/// f(theta) = lambda_max(cos(theta) Re T - sin(theta) Im T), the support
/// function of W(T). Witness is v* T v for the top eigenvector v.
class HermitianPartEvaluator {
public:
  explicit HermitianPartEvaluator(const ComplexMatrix &t);
  PhaseSample operator()(double theta);
  std::pair<PhaseSample, PhaseSample> antipodal(double theta);

  const ComplexMatrix &real_part() const { return re_; }
  const ComplexMatrix &imag_part() const { return im_; }

private:
  void decompose(double theta);
  PhaseSample sample_from(double theta, Eigen::Index col, double sign);

  ComplexMatrix t_;
  ComplexMatrix re_;
  ComplexMatrix im_;
  ComplexMatrix h_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
};

ComplexMatrix weighted_real_part(const ComplexMatrix &t, Weight w);
ComplexMatrix weighted_imag_part(const ComplexMatrix &t, Weight w);
/// (1 - 2t) T* + T = Re_t(T) + i Im_t(T).
ComplexMatrix weighted_combination(const ComplexMatrix &t, Weight w);

/// Never throws ToleranceNotReached; check `converged`.
RadiusResult search_numerical_radius(const ComplexMatrix &t, const RadiusOptions &opt = {});

/// Throws ToleranceNotReached if the bracket does not close to `tol`.
RadiusResult numerical_radius(const ComplexMatrix &t, double tol);
RadiusResult numerical_radius(const ComplexMatrix &t);
/// As search_numerical_radius, but throws ToleranceNotReached.
RadiusResult numerical_radius(const ComplexMatrix &t, const RadiusOptions &opt);

RadiusResult weighted_numerical_radius(const ComplexMatrix &t, Weight w, double tol);
RadiusResult weighted_numerical_radius(const ComplexMatrix &t, Weight w);

double weighted_norm(const ComplexMatrix &t, Weight w);

/// |T|^{1/2} U |T|^{1/2} from the polar decomposition T = U|T|.
ComplexMatrix aluthge(const ComplexMatrix &t);

/// The two definitions of the weighted radius side by side:
/// operative w((1-2t)T* + T) and sup_theta ||Re_t(e^{i theta} T)||.
struct WeightedRadiusForms {
  RadiusResult operative;
  RadiusResult sup_form;
  double difference = 0.0;
};
WeightedRadiusForms compare_weighted_radius_forms(const ComplexMatrix &t, Weight w);

} // namespace wnr
