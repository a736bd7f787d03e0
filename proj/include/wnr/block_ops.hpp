#pragma once

// 2x2 block operator matrices [[X, Y], [Z, W]] and the closed forms of their
// weighted numerical radius. Each closed form is paired with the direct
// computation on the assembled 2n x 2n matrix.

#include "wnr/linalg.hpp"
#include "wnr/radius.hpp"

namespace wnr {

struct Block2x2 {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
  ComplexMatrix w;
};

/// Throws DimensionMismatch unless all four blocks are n x n for one n.
ComplexMatrix assemble(const Block2x2 &b);
/// Inverse of assemble; the input must be 2n x 2n.
Block2x2 extract(const ComplexMatrix &m);

/// Both routes to one block identity. `value` is the closed form.
struct BlockRoutes {
  double value = 0.0;
  double direct = 0.0;
  double gap = 0.0;
  /// Relative scale for the agreement test: max(||assembled||, 1).
  double scale = 1.0;
};

/// Agreement tolerance between routes, relative to `scale`.
inline constexpr double kRouteTol = 1e-6;

/// w_t(diag(X, Y)) = max{w_t(X), w_t(Y)}.
BlockRoutes diag_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t);
/// w_t([[0, X], [X, 0]]) = w_t(X).
BlockRoutes offdiag_sym_routes(const ComplexMatrix &x, Weight t);
/// w_t([[X, Y], [Y, X]]) = max{w_t(X + Y), w_t(X - Y)}.
BlockRoutes circulant_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t);
/// w_t([[0, X], [Y, 0]]) = sup_theta (1/2) ||e^{i theta} P + e^{-i theta} Q||
/// with P = X + (1 - 2t) Y*, Q = (1 - 2t) X + Y*.
BlockRoutes antidiag_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t,
                            int theta_grid = 0);

/// Closed-form values; throw RouteMismatch if the routes disagree by more
/// than kRouteTol * scale.
double wt_diag(const ComplexMatrix &x, const ComplexMatrix &y, Weight t);
double wt_offdiag_sym(const ComplexMatrix &x, Weight t);
double wt_circulant(const ComplexMatrix &x, const ComplexMatrix &y, Weight t);
double wt_antidiag(const ComplexMatrix &x, const ComplexMatrix &y, Weight t, int theta_grid = 0);

/// The trigonometric-norm route of wt_antidiag alone. A non-positive `tol`
/// selects 1e-8 * max(||X||, ||Y||, 1). Flat maxima (e.g. X nilpotent,
/// Y = 0, t = 1/2) may stop unconverged; the bracket is still honest.
RadiusResult antidiag_sup_norm(const ComplexMatrix &x, const ComplexMatrix &y, Weight t,
                               int theta_grid = 0, double tol = 0.0);

} // namespace wnr
