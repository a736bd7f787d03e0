#pragma once

// Certified global maximisation of a 2*pi-periodic support function
//
//   f(theta) = max_{z in S} Re(e^{i theta} z)
//
// of a bounded set S in the complex plane. max_theta f = max_{z in S} |z|.
// Every evaluation returns f(theta) and a witness z in S with
// Re(e^{i theta} z) = f(theta); |z| is then a lower bound on the maximum.
//
// Upper bounds on a cell [a, b] come from two facts:
//   * Lipschitz: |f'| <= L gives max <= (f(a) + f(b) + L (b - a)) / 2.
//   * Support lines: S lies in {Re(e^{ia} z) <= f(a)} and
//     {Re(e^{ib} z) <= f(b)}, so on [a, b] f is at most the support function
//     of that wedge, a sinusoid through both endpoint values.
// Cells whose bound cannot beat the incumbent by more than tol are dropped;
// the rest are bisected until the bracket closes or the budget runs out.
//
// The grid and batch evaluations come in two flavours: a serial reference
// and an OpenMP version. Both fill the output by index, so they agree bit
// for bit.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wnr/linalg.hpp"

namespace wnr {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PhaseSample {
  double theta = 0.0;
  double value = 0.0;
  Complex witness{0.0, 0.0};
};

/// A support-function evaluator: copyable, callable on a phase.
template <class E>
concept PhaseEvaluator = std::copy_constructible<E> && requires(E e, double th) {
  { e(th) } -> std::same_as<PhaseSample>;
};

/// Evaluators that get f(theta + pi) for free alongside f(theta).
template <class E>
concept AntipodalEvaluator = PhaseEvaluator<E> && requires(E e, double th) {
  { e.antipodal(th) } -> std::same_as<std::pair<PhaseSample, PhaseSample>>;
};

struct PhaseSearchOptions {
  int grid_points = 64;
  double lipschitz = 0.0;
  double tol = 1e-10;
  /// Rounding allowance added to every upper bound.
  double slack = 0.0;
  /// Refinement evaluations allowed after the initial grid.
  std::size_t refine_budget = 400;
  bool parallel = true;
};

struct PhaseSearchResult {
  double lower = 0.0;
  double upper = 0.0;
  double theta_star = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  /// All samples, sorted by theta in [0, 2 pi).
  std::vector<PhaseSample> samples;
};

double wrap_phase(double theta);

/// Upper bound on max f over [a, b] from the endpoint samples.
double cell_upper_bound(const PhaseSample &a, const PhaseSample &b, double b_theta,
                        double lipschitz);

/// Incumbent: max over samples of max(f, |witness|), with the phase of the
/// best f value (lowest theta on ties).
void summarise_samples(std::span<const PhaseSample> samples, double &lower,
                       double &theta_star);

/// Max over cells of cell_upper_bound (cells wrap around 2 pi).
double samples_upper_bound(std::span<const PhaseSample> samples, double lipschitz);

// ---------------------------------------------------------------- kernels

template <PhaseEvaluator E>
std::vector<PhaseSample> evaluate_batch_serial(const E &eval, std::span<const double> thetas) {
  std::vector<PhaseSample> out(thetas.size());
  E local(eval);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    out[i] = local(thetas[i]);
  return out;
}

template <PhaseEvaluator E>
std::vector<PhaseSample> evaluate_batch_parallel(const E &eval, std::span<const double> thetas) {
  std::vector<PhaseSample> out(thetas.size());
  const long count = static_cast<long>(thetas.size());
#pragma omp parallel if (count > 16)
  {
    E local(eval);
#pragma omp for schedule(static)
    for (long i = 0; i < count; ++i)
      out[i] = local(thetas[i]);
  }
  return out;
}

/// Uniform grid of n phases 2 pi k / n, serial reference.
template <PhaseEvaluator E>
std::vector<PhaseSample> evaluate_grid_serial(const E &eval, int n) {
  std::vector<PhaseSample> out(static_cast<std::size_t>(n));
  E local(eval);
  if constexpr (AntipodalEvaluator<E>) {
    if (n % 2 == 0) {
      const int half = n / 2;
      for (int k = 0; k < half; ++k) {
        auto [p, q] = local.antipodal(kTwoPi * k / n);
        q.theta = kTwoPi * (k + half) / n;
        out[k] = p;
        out[k + half] = q;
      }
      return out;
    }
  }
  for (int k = 0; k < n; ++k)
    out[k] = local(kTwoPi * k / n);
  return out;
}

/// Uniform grid of n phases, OpenMP over grid points.
template <PhaseEvaluator E>
std::vector<PhaseSample> evaluate_grid_parallel(const E &eval, int n) {
  std::vector<PhaseSample> out(static_cast<std::size_t>(n));
  if constexpr (AntipodalEvaluator<E>) {
    if (n % 2 == 0) {
      const int half = n / 2;
#pragma omp parallel if (half > 16)
      {
        E local(eval);
#pragma omp for schedule(static)
        for (int k = 0; k < half; ++k) {
          auto [p, q] = local.antipodal(kTwoPi * k / n);
          q.theta = kTwoPi * (k + half) / n;
          out[k] = p;
          out[k + half] = q;
        }
      }
      return out;
    }
  }
#pragma omp parallel if (n > 16)
  {
    E local(eval);
#pragma omp for schedule(static)
    for (int k = 0; k < n; ++k)
      out[k] = local(kTwoPi * k / n);
  }
  return out;
}

/// Bisects every cell that could still hide a value above lower + tol.
/// Returns the new phases (midpoints), capped at `limit`.
std::vector<double> live_cell_midpoints(std::span<const PhaseSample> samples, double lower,
                                        double tol, double lipschitz, double slack,
                                        std::size_t limit);

/// Merges sorted `fresh` samples into sorted `samples`.
void merge_samples(std::vector<PhaseSample> &samples, std::vector<PhaseSample> fresh);

template <PhaseEvaluator E>
PhaseSearchResult refine_phase_search(const E &eval, std::vector<PhaseSample> samples,
                                      const PhaseSearchOptions &opt) {
  PhaseSearchResult res;
  res.evaluations = samples.size();
  std::size_t refined = 0;
  for (;;) {
    summarise_samples(samples, res.lower, res.theta_star);
    res.upper =
        std::max(samples_upper_bound(samples, opt.lipschitz) + opt.slack, res.lower);
    if (res.upper - res.lower <= opt.tol) {
      res.converged = true;
      break;
    }
    if (refined >= opt.refine_budget)
      break;
    std::vector<double> mids = live_cell_midpoints(samples, res.lower, opt.tol, opt.lipschitz,
                                                   opt.slack, opt.refine_budget - refined);
    if (mids.empty())
      break;
    refined += mids.size();
    res.evaluations += mids.size();
    std::vector<PhaseSample> fresh = opt.parallel ? evaluate_batch_parallel(eval, mids)
                                                  : evaluate_batch_serial(eval, mids);
    merge_samples(samples, std::move(fresh));
  }
  res.samples = std::move(samples);
  return res;
}

/// Grid + branch-and-bound. Fully certified when `converged`; otherwise
/// [lower, upper] is still a valid bracket.
template <PhaseEvaluator E>
PhaseSearchResult certified_phase_search(const E &eval, const PhaseSearchOptions &opt) {
  std::vector<PhaseSample> grid = opt.parallel ? evaluate_grid_parallel(eval, opt.grid_points)
                                               : evaluate_grid_serial(eval, opt.grid_points);
  return refine_phase_search(eval, std::move(grid), opt);
}

/// Golden-section search for a local maximum of f on [a, b]; stops after
/// `iterations` steps or once the bracket is narrower than `min_width`.
/// Returns the best sample seen.
template <PhaseEvaluator E>
PhaseSample golden_section_max(E &eval, double a, double b, int iterations,
                               std::vector<PhaseSample> *seen = nullptr, double min_width = 0.0) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  PhaseSample fc = eval(wrap_phase(c));
  PhaseSample fd = eval(wrap_phase(d));
  PhaseSample best = fc.value >= fd.value ? fc : fd;
  auto record = [&](const PhaseSample &s) {
    if (seen)
      seen->push_back(s);
    if (s.value > best.value)
      best = s;
  };
  if (seen) {
    seen->push_back(fc);
    seen->push_back(fd);
  }
  for (int it = 0; it < iterations && b - a > min_width; ++it) {
    if (fc.value >= fd.value) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(wrap_phase(c));
      record(fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(wrap_phase(d));
      record(fd);
    }
  }
  return best;
}

} // namespace wnr
