#include "wnr/phase_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wnr {

namespace {

constexpr double kMinCellWidth = 1e-13;

} // namespace

double wrap_phase(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

double cell_upper_bound(const PhaseSample &a, const PhaseSample &b, double b_theta,
                        double lipschitz) {
  const double fa = a.value;
  const double fb = b.value;
  const double h = b_theta - a.theta;
  const double endpoint_max = std::max(fa, fb);
  if (!(h > 0.0))
    return endpoint_max;

  double bound = std::numeric_limits<double>::infinity();
  if (lipschitz > 0.0)
    bound = 0.5 * (fa + fb + lipschitz * h);

  if (h < 0.5 * kTwoPi) {
    // In coordinates with a at phase 0 the wedge vertex v satisfies
    // Re(v) = fa and Re(e^{ih} v) = fb; its support function on [0, h] is
    // g(s) = x cos s - y sin s.
    const double sh = std::sin(h);
    const double x = fa;
    const double y = (fa * std::cos(h) - fb) / sh;
    double peak = -std::atan2(y, x);
    if (peak < 0.0)
      peak += kTwoPi;
    double wedge = endpoint_max;
    if (peak <= h)
      wedge = std::max(endpoint_max, (fa * std::sin(h - peak) + fb * std::sin(peak)) / sh);
    bound = std::min(bound, wedge);
  }
  return std::isfinite(bound) ? bound : endpoint_max;
}

void summarise_samples(std::span<const PhaseSample> samples, double &lower, double &theta_star) {
  double best_value = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_witness = -1.0;
  Complex witness{0.0, 0.0};
  for (const PhaseSample &s : samples) {
    if (s.value > best_value) {
      best_value = s.value;
      best_theta = s.theta;
    }
    const double m = std::abs(s.witness);
    if (m > best_witness) {
      best_witness = m;
      witness = s.witness;
    }
  }
  if (best_witness > best_value) {
    lower = best_witness;
    theta_star = wrap_phase(-std::arg(witness));
  } else {
    lower = best_value;
    theta_star = best_theta;
  }
}

double samples_upper_bound(std::span<const PhaseSample> samples, double lipschitz) {
  const std::size_t n = samples.size();
  if (n == 0)
    return 0.0;
  double upper = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const PhaseSample &a = samples[i];
    const PhaseSample &b = samples[(i + 1) % n];
    const double b_theta = (i + 1 == n) ? b.theta + kTwoPi : b.theta;
    upper = std::max(upper, cell_upper_bound(a, b, b_theta, lipschitz));
  }
  return upper;
}

std::vector<double> live_cell_midpoints(std::span<const PhaseSample> samples, double lower,
                                        double tol, double lipschitz, double slack,
                                        std::size_t limit) {
  struct Live {
    double bound;
    double mid;
  };
  std::vector<Live> live;
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PhaseSample &a = samples[i];
    const PhaseSample &b = samples[(i + 1) % n];
    const double b_theta = (i + 1 == n) ? b.theta + kTwoPi : b.theta;
    const double h = b_theta - a.theta;
    if (h < kMinCellWidth)
      continue;
    const double ub = cell_upper_bound(a, b, b_theta, lipschitz) + slack;
    if (ub > lower + tol)
      live.push_back({ub, wrap_phase(a.theta + 0.5 * h)});
  }
  if (live.size() > limit) {
    std::stable_sort(live.begin(), live.end(),
                     [](const Live &p, const Live &q) { return p.bound > q.bound; });
    live.resize(limit);
  }
  std::vector<double> mids;
  mids.reserve(live.size());
  for (const Live &l : live)
    mids.push_back(l.mid);
  std::sort(mids.begin(), mids.end());
  return mids;
}

void merge_samples(std::vector<PhaseSample> &samples, std::vector<PhaseSample> fresh) {
  auto by_theta = [](const PhaseSample &p, const PhaseSample &q) { return p.theta < q.theta; };
  std::sort(fresh.begin(), fresh.end(), by_theta);
  const auto middle = static_cast<std::ptrdiff_t>(samples.size());
  samples.insert(samples.end(), fresh.begin(), fresh.end());
  std::inplace_merge(samples.begin(), samples.begin() + middle, samples.end(), by_theta);
}

} // namespace wnr
