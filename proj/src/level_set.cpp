#include "level_set.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "wnr/errors.hpp"

namespace wnr {

namespace {

constexpr int kMaxRounds = 30;
constexpr int kGoldenIterations = 60;
constexpr double kRealTol = 1e-5;
// f is quadratic near a peak, so a 1e-9 phase bracket is far below tol.
constexpr double kGoldenWidth = 1e-9;

} // namespace

std::vector<double> level_crossings(const ComplexMatrix &re, const ComplexMatrix &im, double r,
                                    double pivot) {
  // With phi = pivot + pi and u = tan(theta' / 2), theta = phi + theta',
  //   (1 + u^2)(r - H(theta)) = u^2 (A + r) + 2u B + (r - A)
  // where A = H(phi) and B = sin(phi) Re T + cos(phi) Im T. u = inf maps to
  // theta = pivot, where r - H is definite, so no crossing is lost there.
  const Eigen::Index n = re.rows();
  const double phi = pivot + 0.5 * kTwoPi;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const ComplexMatrix a = c * re - s * im;
  const ComplexMatrix b = s * re + c * im;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  ComplexMatrix lhs = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix rhs = ComplexMatrix::Zero(2 * n, 2 * n);
  lhs.topLeftCorner(n, n) = -2.0 * b;
  lhs.topRightCorner(n, n) = a - r * id;
  lhs.bottomLeftCorner(n, n) = id;
  rhs.topLeftCorner(n, n) = a + r * id;
  rhs.bottomRightCorner(n, n) = id;

  const lapack_int m = static_cast<lapack_int>(2 * n);
  ComplexVector alpha(m);
  ComplexVector beta(m);
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', m, lhs.data(), m, rhs.data(),
                                        m, alpha.data(), beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw Error("generalised eigensolver failed with code " + std::to_string(info));

  std::vector<double> thetas;
  for (lapack_int k = 0; k < m; ++k) {
    if (std::abs(beta(k)) <= 1e-14 * std::abs(alpha(k)))
      continue;
    const Complex u = alpha(k) / beta(k);
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
      continue;
    if (std::abs(u.imag()) > kRealTol * (1.0 + std::abs(u)))
      continue;
    thetas.push_back(wrap_phase(phi + 2.0 * std::atan(u.real())));
  }
  std::sort(thetas.begin(), thetas.end());
  return thetas;
}

PhaseSearchResult certify_by_level_sets(const HermitianPartEvaluator &eval, PhaseSearchResult res,
                                        const PhaseSearchOptions &opt) {
  std::vector<PhaseSample> &samples = res.samples;
  HermitianPartEvaluator local(eval);

  for (int round = 0; round < kMaxRounds; ++round) {
    const double r = res.lower + 0.5 * opt.tol;
    const auto lowest = std::min_element(
        samples.begin(), samples.end(),
        [](const PhaseSample &p, const PhaseSample &q) { return p.value < q.value; });
    const double pivot = lowest->theta;

    const std::vector<double> cross = level_crossings(eval.real_part(), eval.imag_part(), r, pivot);

    // One probe per gap between consecutive crossings (cyclically).
    std::vector<double> probes;
    if (cross.empty()) {
      probes.push_back(pivot);
    } else {
      for (std::size_t i = 0; i < cross.size(); ++i) {
        const double a = cross[i];
        const double b = (i + 1 == cross.size()) ? cross.front() + kTwoPi : cross[i + 1];
        probes.push_back(wrap_phase(a + 0.5 * (b - a)));
      }
    }
    std::vector<PhaseSample> probed = opt.parallel ? evaluate_batch_parallel(eval, probes)
                                                   : evaluate_batch_serial(eval, probes);
    res.evaluations += probed.size();

    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_gap = 0;
    for (std::size_t i = 0; i < probed.size(); ++i) {
      if (probed[i].value > worst) {
        worst = probed[i].value;
        worst_gap = i;
      }
    }
    std::vector<PhaseSample> seen = probed;

    if (worst <= r) {
      merge_samples(samples, std::move(seen));
      summarise_samples(samples, res.lower, res.theta_star);
      res.upper = std::max(std::max(r, worst) + opt.slack, res.lower);
      res.converged = res.upper - res.lower <= opt.tol;
      return res;
    }

    // Climb the highest excursion.
    double a = 0.0;
    double b = kTwoPi;
    if (!cross.empty()) {
      a = cross[worst_gap];
      b = (worst_gap + 1 == cross.size()) ? cross.front() + kTwoPi : cross[worst_gap + 1];
    }
    golden_section_max(local, a, b, kGoldenIterations, &seen, kGoldenWidth);
    res.evaluations += seen.size() - probed.size();
    merge_samples(samples, std::move(seen));
    summarise_samples(samples, res.lower, res.theta_star);
  }
  res.upper = std::max(samples_upper_bound(samples, opt.lipschitz) + opt.slack, res.lower);
  res.converged = res.upper - res.lower <= opt.tol;
  return res;
}

} // namespace wnr
