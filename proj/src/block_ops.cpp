#include "wnr/block_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wnr/errors.hpp"
#include "wnr/phase_search.hpp"
#include "wnr/trig_norm.hpp"

namespace wnr {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_operator(a);
  require_operator(b);
  if (a.rows() != b.rows())
    throw DimensionMismatch("blocks must share one dimension, got " + std::to_string(a.rows()) +
                            " and " + std::to_string(b.rows()));
}

BlockRoutes finish(double value, double direct, const ComplexMatrix &assembled) {
  BlockRoutes r;
  r.value = value;
  r.direct = direct;
  r.gap = value - direct;
  r.scale = std::max(spectral_norm(assembled), 1.0);
  return r;
}

double checked(const BlockRoutes &r, const char *what) {
  if (std::abs(r.gap) > kRouteTol * r.scale)
    throw RouteMismatch(what, r.value, r.direct);
  return r.value;
}

} // namespace

ComplexMatrix assemble(const Block2x2 &b) {
  require_same_dim(b.x, b.y);
  require_same_dim(b.x, b.z);
  require_same_dim(b.x, b.w);
  const Eigen::Index n = b.x.rows();
  ComplexMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = b.x;
  m.topRightCorner(n, n) = b.y;
  m.bottomLeftCorner(n, n) = b.z;
  m.bottomRightCorner(n, n) = b.w;
  return m;
}

Block2x2 extract(const ComplexMatrix &m) {
  require_operator(m);
  if (m.rows() % 2 != 0)
    throw DimensionMismatch("block matrix must have even dimension, got " +
                            std::to_string(m.rows()));
  const Eigen::Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
          m.bottomRightCorner(n, n)};
}

BlockRoutes diag_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t) {
  require_same_dim(x, y);
  const ComplexMatrix zero = ComplexMatrix::Zero(x.rows(), x.cols());
  const ComplexMatrix m = assemble({x, zero, zero, y});
  const double closed = std::max(weighted_numerical_radius(x, t).value,
                                 weighted_numerical_radius(y, t).value);
  return finish(closed, weighted_numerical_radius(m, t).value, m);
}

BlockRoutes offdiag_sym_routes(const ComplexMatrix &x, Weight t) {
  require_operator(x);
  const ComplexMatrix zero = ComplexMatrix::Zero(x.rows(), x.cols());
  const ComplexMatrix m = assemble({zero, x, x, zero});
  return finish(weighted_numerical_radius(x, t).value, weighted_numerical_radius(m, t).value, m);
}

BlockRoutes circulant_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t) {
  require_same_dim(x, y);
  const ComplexMatrix m = assemble({x, y, y, x});
  const double closed = std::max(weighted_numerical_radius(x + y, t).value,
                                 weighted_numerical_radius(x - y, t).value);
  return finish(closed, weighted_numerical_radius(m, t).value, m);
}

RadiusResult antidiag_sup_norm(const ComplexMatrix &x, const ComplexMatrix &y, Weight t,
                               int theta_grid, double tol) {
  require_same_dim(x, y);
  const double s = 1.0 - 2.0 * t.value();
  const ComplexMatrix ys = y.adjoint();
  // (1-2t)(e^{-i th} X + e^{i th} Y*) + (e^{i th} X + e^{-i th} Y*)
  //   = e^{i th} (X + (1-2t) Y*) + e^{-i th} ((1-2t) X + Y*).
  TrigNormEvaluator eval(x + s * ys, s * x + ys, 0.5);
  // |d/dtheta| <= (||P|| + ||Q||) / 2 <= (|1-2t| + 1)(||X|| + ||Y||) / 2.
  const double lip = eval.lipschitz();
  const double scale = std::max(spectral_norm(x), spectral_norm(y));
  RadiusResult out;
  if (lip == 0.0)
    return out;
  const auto n = static_cast<int>(x.rows());
  PhaseSearchOptions ps;
  ps.grid_points = theta_grid > 0 ? theta_grid : std::max(64, 32 * n);
  ps.lipschitz = lip;
  ps.tol = tol > 0.0 ? tol : 1e-8 * std::max(scale, 1.0);
  ps.slack = 16.0 * n * std::numeric_limits<double>::epsilon() * lip;
  ps.refine_budget = 8000;
  const PhaseSearchResult res = certified_phase_search(eval, ps);
  out.value = res.lower;
  out.theta_star = res.theta_star;
  out.certified_error = std::max(res.upper - res.lower, 0.0);
  out.converged = res.converged;
  out.evaluations = res.evaluations;
  return out;
}

BlockRoutes antidiag_routes(const ComplexMatrix &x, const ComplexMatrix &y, Weight t,
                            int theta_grid) {
  require_same_dim(x, y);
  const ComplexMatrix zero = ComplexMatrix::Zero(x.rows(), x.cols());
  const ComplexMatrix m = assemble({zero, x, y, zero});
  const RadiusResult closed = antidiag_sup_norm(x, y, t, theta_grid);
  return finish(closed.value, weighted_numerical_radius(m, t).value, m);
}

double wt_diag(const ComplexMatrix &x, const ComplexMatrix &y, Weight t) {
  return checked(diag_routes(x, y, t), "w_t(diag(X, Y))");
}

double wt_offdiag_sym(const ComplexMatrix &x, Weight t) {
  return checked(offdiag_sym_routes(x, t), "w_t([[0, X], [X, 0]])");
}

double wt_circulant(const ComplexMatrix &x, const ComplexMatrix &y, Weight t) {
  return checked(circulant_routes(x, y, t), "w_t([[X, Y], [Y, X]])");
}

double wt_antidiag(const ComplexMatrix &x, const ComplexMatrix &y, Weight t, int theta_grid) {
  return checked(antidiag_routes(x, y, t, theta_grid), "w_t([[0, X], [Y, 0]])");
}

} // namespace wnr
