#include "wnr/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "level_set.hpp"
#include "wnr/phase_search.hpp"
#include "wnr/trig_norm.hpp"

namespace wnr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

Weight::Weight(double t) : t_(t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("weight t must lie in [0, 1], got " + std::to_string(t));
}

ToleranceNotReached::ToleranceNotReached(const RadiusResult &r)
    : Error("numerical radius search stopped with certified error " +
            std::to_string(r.certified_error)),
      result(r) {}

double default_radius_tol(const ComplexMatrix &t) {
  return 1e-10 * std::max(spectral_norm(t), 1.0);
}

ComplexMatrix weighted_real_part(const ComplexMatrix &t, Weight w) {
  require_operator(t);
  const double s = w.value();
  return (1.0 - s) * t.adjoint() + s * t;
}

ComplexMatrix weighted_imag_part(const ComplexMatrix &t, Weight w) {
  require_operator(t);
  const double s = w.value();
  // Dividing by i is multiplying by -i.
  return -kI * ((1.0 - s) * t - s * t.adjoint());
}

ComplexMatrix weighted_combination(const ComplexMatrix &t, Weight w) {
  require_operator(t);
  return (1.0 - 2.0 * w.value()) * t.adjoint() + t;
}

HermitianPartEvaluator::HermitianPartEvaluator(const ComplexMatrix &t)
    : t_(t), re_(0.5 * (t + t.adjoint())), im_(Complex(0.0, -0.5) * (t - t.adjoint())),
      solver_(t.rows()) {}

void HermitianPartEvaluator::decompose(double theta) {
  h_.noalias() = std::cos(theta) * re_;
  h_.noalias() -= std::sin(theta) * im_;
  solver_.compute(h_, Eigen::ComputeEigenvectors);
}

PhaseSample HermitianPartEvaluator::sample_from(double theta, Eigen::Index col, double sign) {
  const auto v = solver_.eigenvectors().col(col);
  PhaseSample s;
  s.theta = theta;
  s.value = sign * solver_.eigenvalues()(col);
  s.witness = v.dot(t_ * v);
  return s;
}

PhaseSample HermitianPartEvaluator::operator()(double theta) {
  decompose(theta);
  return sample_from(theta, t_.rows() - 1, 1.0);
}

std::pair<PhaseSample, PhaseSample> HermitianPartEvaluator::antipodal(double theta) {
  decompose(theta);
  PhaseSample top = sample_from(theta, t_.rows() - 1, 1.0);
  // lambda_max(H(theta + pi)) = -lambda_min(H(theta)).
  PhaseSample bottom = sample_from(wrap_phase(theta + 0.5 * kTwoPi), 0, -1.0);
  return {top, bottom};
}

RadiusResult search_numerical_radius(const ComplexMatrix &t, const RadiusOptions &opt) {
  require_operator(t);
  const double norm = spectral_norm(t);
  RadiusResult out;
  if (norm == 0.0)
    return out;

  const auto n = static_cast<int>(t.rows());
  PhaseSearchOptions ps;
  ps.grid_points = opt.grid_points > 0 ? opt.grid_points : std::max(64, 16 * n);
  ps.lipschitz = norm;
  ps.tol = opt.tol > 0.0 ? opt.tol : 1e-10 * std::max(norm, 1.0);
  ps.slack = 8.0 * n * kEps * norm;
  ps.refine_budget = static_cast<std::size_t>(2 * ps.grid_points + 128);
  ps.parallel = opt.parallel;

  const HermitianPartEvaluator eval(t);
  PhaseSearchResult res = certified_phase_search(eval, ps);
  if (!res.converged && opt.level_set)
    res = certify_by_level_sets(eval, std::move(res), ps);

  out.value = res.lower;
  out.theta_star = res.theta_star;
  out.certified_error = std::max(res.upper - res.lower, 0.0);
  out.converged = res.converged;
  out.evaluations = res.evaluations;
  return out;
}

RadiusResult numerical_radius(const ComplexMatrix &t, double tol) {
  if (!(tol > 0.0))
    throw DomainError("tolerance must be positive");
  RadiusOptions opt;
  opt.tol = tol;
  RadiusResult r = search_numerical_radius(t, opt);
  if (!r.converged)
    throw ToleranceNotReached(r);
  return r;
}

RadiusResult numerical_radius(const ComplexMatrix &t) {
  require_operator(t);
  return numerical_radius(t, default_radius_tol(t));
}

RadiusResult numerical_radius(const ComplexMatrix &t, const RadiusOptions &opt) {
  RadiusResult r = search_numerical_radius(t, opt);
  if (!r.converged)
    throw ToleranceNotReached(r);
  return r;
}

RadiusResult weighted_numerical_radius(const ComplexMatrix &t, Weight w, double tol) {
  return numerical_radius(weighted_combination(t, w), tol);
}

RadiusResult weighted_numerical_radius(const ComplexMatrix &t, Weight w) {
  return numerical_radius(weighted_combination(t, w));
}

double weighted_norm(const ComplexMatrix &t, Weight w) {
  return spectral_norm(weighted_combination(t, w));
}

ComplexMatrix aluthge(const ComplexMatrix &t) {
  const PolarParts parts = polar(t);
  const ComplexMatrix root = psd_power(parts.modulus, 0.5);
  return root * parts.isometry * root;
}

WeightedRadiusForms compare_weighted_radius_forms(const ComplexMatrix &t, Weight w) {
  WeightedRadiusForms forms;
  forms.operative = weighted_numerical_radius(t, w);

  // Re_t(e^{i theta} T) = e^{i theta} t T + e^{-i theta} (1 - t) T*.
  const double s = w.value();
  TrigNormEvaluator eval(s * t, (1.0 - s) * ComplexMatrix(t.adjoint()), 1.0);
  const double norm = spectral_norm(t);
  PhaseSearchOptions ps;
  ps.grid_points = std::max(64, 16 * static_cast<int>(t.rows()));
  ps.lipschitz = eval.lipschitz();
  ps.tol = 1e-10 * std::max(norm, 1.0);
  ps.slack = 8.0 * static_cast<double>(t.rows()) * kEps * norm;
  ps.refine_budget = 20000;
  const PhaseSearchResult res = certified_phase_search(eval, ps);
  forms.sup_form.value = res.lower;
  forms.sup_form.theta_star = res.theta_star;
  forms.sup_form.certified_error = std::max(res.upper - res.lower, 0.0);
  forms.sup_form.converged = res.converged;
  forms.sup_form.evaluations = res.evaluations;
  forms.difference = forms.operative.value - forms.sup_form.value;
  return forms;
}

} // namespace wnr
