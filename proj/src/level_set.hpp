#pragma once

#include <vector>

#include "wnr/phase_search.hpp"
#include "wnr/radius.hpp"

namespace wnr {

/// Closes a bracket that bisection could not, by solving for every phase at
/// which some eigenvalue of H(theta) equals r = lower + tol / 2. Between
/// consecutive crossings f - r keeps one sign, so one evaluation per gap
/// either certifies f <= r or exposes an excursion, whose peak raises lower.
PhaseSearchResult certify_by_level_sets(const HermitianPartEvaluator &eval, PhaseSearchResult res,
                                        const PhaseSearchOptions &opt);

/// Phases theta in [0, 2 pi) where r is an eigenvalue of H(theta), found
/// from a quadratic eigenproblem after rotating so that the excluded phase
/// sits at `pivot`. Requires lambda_max(H(pivot)) < r.
std::vector<double> level_crossings(const ComplexMatrix &re, const ComplexMatrix &im, double r,
                                    double pivot);

} // namespace wnr
