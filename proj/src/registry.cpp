#include "wnr/registry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <utility>

#include "wnr/block_ops.hpp"
#include "wnr/errors.hpp"

namespace wnr {

// ------------------------------------------------------------------ basics

std::string_view arity_name(Arity a) {
  switch (a) {
  case Arity::vectors:
    return "vector triple";
  case Arity::single:
    return "single matrix";
  case Arity::pair:
    return "matrix pair";
  case Arity::quad:
    return "block quadruple";
  }
  return "unknown";
}

std::size_t arity_matrices(Arity a) {
  switch (a) {
  case Arity::vectors:
  case Arity::single:
    return 1;
  case Arity::pair:
    return 2;
  case Arity::quad:
    return 4;
  }
  return 0;
}

bool BoundSpec::uses(std::string_view param) const {
  return std::find(params.begin(), params.end(), param) != params.end();
}

void EngineStats::merge(const EngineStats &o) {
  radius_calls += o.radius_calls;
  unconverged += o.unconverged;
  max_relative_error = std::max(max_relative_error, o.max_relative_error);
  evaluations += o.evaluations;
}

RadiusOptions registry_engine() {
  RadiusOptions o;
  o.grid_points = 16;
  o.parallel = false;
  return o;
}

// ------------------------------------------------------------------- facts

namespace {

std::string key_of(const ComplexMatrix &m) {
  const auto rows = static_cast<std::int64_t>(m.rows());
  const std::size_t bytes = static_cast<std::size_t>(m.size()) * sizeof(Complex);
  std::string key(sizeof(rows) + bytes, '\0');
  std::memcpy(key.data(), &rows, sizeof(rows));
  if (bytes)
    std::memcpy(key.data() + sizeof(rows), m.data(), bytes);
  return key;
}

} // namespace

Facts::Facts(Instance inst, RadiusOptions engine) : inst_(std::move(inst)), engine_(engine) {
  for (const ComplexMatrix &m : inst_.mats)
    require_operator(m);
}

const ComplexMatrix &Facts::mat(std::size_t i) const {
  if (i >= inst_.mats.size())
    throw DimensionMismatch("instance has " + std::to_string(inst_.mats.size()) +
                            " matrices, entry needs at least " + std::to_string(i + 1));
  return inst_.mats[i];
}

double Facts::w(const ComplexMatrix &m) {
  std::string key = key_of(m);
  if (auto it = radii_.find(key); it != radii_.end())
    return it->second;
  const RadiusResult r = search_numerical_radius(m, engine_);
  ++stats_.radius_calls;
  stats_.evaluations += r.evaluations;
  if (!r.converged)
    ++stats_.unconverged;
  stats_.max_relative_error =
      std::max(stats_.max_relative_error, r.certified_error / std::max(norm(m), 1.0));
  radii_.emplace(std::move(key), r.value);
  return r.value;
}

double Facts::wt(const ComplexMatrix &m, double t) { return w(weighted_combination(m, Weight(t))); }

double Facts::norm(const ComplexMatrix &m) {
  std::string key = key_of(m);
  if (auto it = norms_.find(key); it != norms_.end())
    return it->second;
  const double v = spectral_norm(m);
  norms_.emplace(std::move(key), v);
  return v;
}

const ComplexMatrix &Facts::aluthge_of(const ComplexMatrix &m) {
  std::string key = key_of(m);
  auto it = aluthge_.find(key);
  if (it == aluthge_.end())
    it = aluthge_.emplace(std::move(key), aluthge(m)).first;
  return it->second;
}

// ----------------------------------------------------------------- formulas

namespace {

using Sides = Registry::Sides;

double sq(double v) { return v * v; }
double pow4(double v) { return sq(sq(v)); }

ComplexMatrix gram(const ComplexMatrix &a) { return a.adjoint() * a; }   // |A|^2
ComplexMatrix cogram(const ComplexMatrix &a) { return a * a.adjoint(); } // |A*|^2

ComplexMatrix antidiag(const ComplexMatrix &y, const ComplexMatrix &z) {
  const ComplexMatrix zero = ComplexMatrix::Zero(y.rows(), y.cols());
  return assemble({zero, y, z, zero});
}

struct Quad {
  const ComplexMatrix &x;
  const ComplexMatrix &y;
  const ComplexMatrix &z;
  const ComplexMatrix &w;
};

double max_w_xw(Facts &f, const Quad &q) { return std::max(f.w(q.x), f.w(q.w)); }
double max_w_yz(Facts &f, const Quad &q) { return std::max(f.w(q.y * q.z), f.w(q.z * q.y)); }

// max{|| |Z|^2 + |Y*|^2 ||, || |Y|^2 + |Z*|^2 ||}
double max_m2(Facts &f, const Quad &q) {
  return std::max(f.norm(gram(q.z) + cogram(q.y)), f.norm(gram(q.y) + cogram(q.z)));
}

// max{|| |Z|^4 + |Y*|^4 ||, || |Y|^4 + |Z*|^4 ||}
double max_m4(Facts &f, const Quad &q) {
  const ComplexMatrix gz = gram(q.z), cy = cogram(q.y), gy = gram(q.y), cz = cogram(q.z);
  return std::max(f.norm(gz * gz + cy * cy), f.norm(gy * gy + cz * cz));
}

double rhs_op2(Facts &f, const Quad &q, double t) {
  const double u2 = sq(1.0 - t);
  return 8.0 * u2 * sq(max_w_xw(f, q)) + 2.0 * u2 * max_m2(f, q) + 4.0 * u2 * max_w_yz(f, q);
}

double rhs_op3(Facts &f, const Quad &q, double t) {
  const double u2 = sq(1.0 - t);
  const double mixed =
      std::max(f.norm(2.0 * gram(q.x) + 3.0 * cogram(q.y) + gram(q.z)),
               f.norm(2.0 * gram(q.w) + 3.0 * cogram(q.z) + gram(q.y)));
  return 4.0 * u2 * sq(max_w_xw(f, q)) + 4.0 * u2 * f.w(antidiag(q.y * q.w, q.z * q.x)) +
         2.0 * u2 * max_w_yz(f, q) + u2 * mixed;
}

double rhs_op4(Facts &f, const Quad &q, double t, double a) {
  const double u4 = pow4(1.0 - t);
  return 128.0 * u4 * pow4(max_w_xw(f, q)) + 16.0 * u4 * (1.0 + a) * max_m4(f, q) +
         16.0 * u4 * (3.0 - a) * max_m2(f, q) * max_w_yz(f, q);
}

double rhs_op5(Facts &f, const Quad &q, double t, double a) {
  const double u4 = pow4(1.0 - t);
  const double wyz = max_w_yz(f, q);
  const double m2 = max_m2(f, q);
  const double ws2 = sq(f.w(antidiag(q.y, q.z)));
  return 128.0 * u4 * pow4(max_w_xw(f, q)) + 16.0 * a * u4 * max_m4(f, q) +
         32.0 * a * u4 * wyz * m2 + 32.0 * a * u4 * std::max(sq(f.w(q.y * q.z)), sq(f.w(q.z * q.y))) +
         32.0 * (1.0 - a) * u4 * m2 * ws2 + 64.0 * (1.0 - a) * u4 * wyz * ws2;
}

double kittaneh_norm(Facts &f, const ComplexMatrix &m) { return f.norm(gram(m) + cogram(m)); }

Quad quad_of(Facts &f) { return {f.mat(0), f.mat(1), f.mat(2), f.mat(3)}; }

ComplexMatrix block_of(const Quad &q) { return assemble({q.x, q.y, q.z, q.w}); }

// Corollary lhs: w_t of [[X, Y], [Y, X]] directly, with the circulant
// identity max{w_t(X + Y), w_t(X - Y)} as the second route.
struct CirculantLhs {
  double value;
  double gap;
  double scale;
};

CirculantLhs circulant_lhs(Facts &f, const ComplexMatrix &x, const ComplexMatrix &y, double t) {
  const ComplexMatrix c = assemble({x, y, y, x});
  const double direct = f.wt(c, t);
  const double closed = std::max(f.wt(x + y, t), f.wt(x - y, t));
  return {direct, direct - closed, std::max(f.norm(c), 1.0)};
}

// ------------------------------------------------------------ vector lemmas

Sides buzano_sides(const ComplexVector &x, const ComplexVector &y, const ComplexVector &e) {
  return {std::abs(inner(x, e) * inner(e, y)), 0.5 * (std::abs(inner(x, y)) + x.norm() * y.norm())};
}

Sides power_sides(const ComplexMatrix &p, const ComplexVector &x, double r) {
  const double base = std::max(inner(p * x, x).real(), 0.0);
  return {std::pow(base, r), inner(psd_power(p, r) * x, x).real()};
}

Sides mixed_schwarz_sides(const ComplexMatrix &t, const ComplexVector &x, const ComplexVector &y,
                          double a) {
  const double lhs = std::norm(inner(t * x, y));
  const double rx = inner(psd_power(gram(t), a) * x, x).real();
  const double ry = inner(psd_power(cogram(t), 1.0 - a) * y, y).real();
  return {lhs, rx * ry};
}

Sides polarization_sides(const ComplexMatrix &t, const ComplexVector &x, const ComplexVector &y) {
  auto q = [&](const ComplexVector &v) { return inner(t * v, v); };
  const Complex lhs = inner(t * x, y);
  const Complex rhs = 0.25 * (q(x + y) - q(x - y)) + Complex(0.0, 0.25) * (q(x + kI * y) - q(x - kI * y));
  Sides s{std::abs(lhs), std::abs(rhs)};
  s.route_gap = std::abs(lhs - rhs);
  s.scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return s;
}

Sides ext_buzano_sides(const ComplexVector &x, const ComplexVector &y, const ComplexVector &e,
                       double a) {
  const double nx = x.norm(), ny = y.norm(), xy = std::abs(inner(x, y));
  return {std::norm(inner(x, e) * inner(e, y)),
          0.25 * ((1.0 + a) * sq(nx * ny) + (3.0 - a) * nx * ny * xy)};
}

Sides buzano_gen_sides(const ComplexVector &x, const ComplexVector &y, const ComplexVector &e,
                       double a) {
  const double nx = x.norm(), ny = y.norm(), xy = std::abs(inner(x, y));
  const double prod = std::abs(inner(x, e) * inner(e, y));
  return {sq(prod), 0.25 * a * (sq(nx * ny) + 2.0 * nx * ny * xy + sq(xy)) +
                        0.5 * (1.0 - a) * (nx * ny + xy) * prod};
}

ComplexVector unit(const ComplexVector &v) {
  const double n = v.norm();
  if (n == 0.0)
    throw DomainError("e must be a nonzero vector");
  return v / n;
}

void require_vectors(const Instance &in) {
  const auto n = in.mats.empty() ? in.x.size() : in.mats[0].rows();
  if (in.x.size() != n || in.y.size() != n || in.e.size() != n)
    throw DimensionMismatch("vectors must match the operator dimension");
}

} // namespace

// ----------------------------------------------------------------- registry

Registry::Registry() {
  const Interval half{0.0, 0.5};
  const Interval full{0.0, 1.0};
  auto add = [&](std::string id, Arity arity, std::vector<std::string> params, Interval tv,
                 BoundKind kind, double tol, std::string desc, Evaluator ev) {
    specs_.push_back({id, arity, std::move(params), tv, kind, tol, std::move(desc)});
    evaluators_.emplace(std::move(id), std::move(ev));
  };
  const auto ineq = BoundKind::inequality;
  const auto ident = BoundKind::identity;

  // Vector lemmas. e is normalised; power uses |A| and x = e.
  add("buzano", Arity::vectors, {}, full, ineq, 1e-10,
      "|<x,e><e,y>| <= (|<x,y>| + ||x|| ||y||) / 2",
      [](Facts &f, const BoundParams &) {
        const Instance &in = f.instance();
        return buzano_sides(in.x, in.y, unit(in.e));
      });
  add("power", Arity::vectors, {"r"}, full, ineq, 1e-10, "<Px,x>^r <= <P^r x,x>, P >= 0, r >= 1",
      [](Facts &f, const BoundParams &p) {
        if (p.r < 1.0)
          throw DomainError("power inequality needs r >= 1");
        return power_sides(abs_op(f.mat(0)), unit(f.instance().e), p.r);
      });
  add("mixed_schwarz", Arity::vectors, {"alpha"}, full, ineq, 1e-10,
      "|<Tx,y>|^2 <= <|T|^{2a} x,x> <|T*|^{2(1-a)} y,y>",
      [](Facts &f, const BoundParams &p) {
        const Instance &in = f.instance();
        return mixed_schwarz_sides(f.mat(0), in.x, in.y, p.alpha);
      });
  add("polarization", Arity::vectors, {}, full, ident, 1e-12,
      "<Tx,y> = 1/4 sum_k i^k <T(x + i^k y), x + i^k y>",
      [](Facts &f, const BoundParams &) {
        const Instance &in = f.instance();
        return polarization_sides(f.mat(0), in.x, in.y);
      });
  add("ext_buzano", Arity::vectors, {"alpha"}, full, ineq, 1e-10,
      "|<x,e><e,y>|^2 <= ((1+a) ||x||^2||y||^2 + (3-a) ||x|| ||y|| |<x,y>|) / 4",
      [](Facts &f, const BoundParams &p) {
        const Instance &in = f.instance();
        return ext_buzano_sides(in.x, in.y, unit(in.e), p.alpha);
      });
  add("buzano_gen", Arity::vectors, {"alpha"}, full, ineq, 1e-10,
      "|<x,e><e,y>|^2 <= a/4 (||x|| ||y|| + |<x,y>|)^2 + (1-a)/2 (||x|| ||y|| + |<x,y>|) |<x,e><e,y>|",
      [](Facts &f, const BoundParams &p) {
        const Instance &in = f.instance();
        return buzano_gen_sides(in.x, in.y, unit(in.e), p.alpha);
      });

  // Classical single-matrix bounds.
  add("sandwich_lower", Arity::single, {}, full, ineq, 1e-7, "||T|| / 2 <= w(T)",
      [](Facts &f, const BoundParams &) {
        return Sides{0.5 * f.norm(f.mat(0)), f.w(f.mat(0))};
      });
  add("sandwich_upper", Arity::single, {}, full, ineq, 1e-7, "w(T) <= ||T||",
      [](Facts &f, const BoundParams &) {
        return Sides{f.w(f.mat(0)), f.norm(f.mat(0))};
      });
  add("kittaneh_lower", Arity::single, {}, full, ineq, 1e-7, "||T*T + TT*|| / 4 <= w^2(T)",
      [](Facts &f, const BoundParams &) {
        return Sides{0.25 * kittaneh_norm(f, f.mat(0)), sq(f.w(f.mat(0)))};
      });
  add("kittaneh_upper", Arity::single, {}, full, ineq, 1e-7, "w^2(T) <= ||T*T + TT*|| / 2",
      [](Facts &f, const BoundParams &) {
        return Sides{sq(f.w(f.mat(0))), 0.5 * kittaneh_norm(f, f.mat(0))};
      });
  add("pintu", Arity::single, {}, full, ineq, 1e-7,
      "||T|| / 2 + | ||Re T|| - ||Im T|| | / 2 <= w(T)",
      [](Facts &f, const BoundParams &) {
        const ComplexMatrix &t = f.mat(0);
        const double re = f.norm(weighted_real_part(t, Weight(0.5)));
        const double im = f.norm(weighted_imag_part(t, Weight(0.5)));
        return Sides{0.5 * f.norm(t) + 0.5 * std::abs(re - im), f.w(t)};
      });
  add("yamazaki", Arity::single, {}, full, ineq, 1e-7, "w(T) <= (||T|| + w(aluthge(T))) / 2",
      [](Facts &f, const BoundParams &) {
        const ComplexMatrix &t = f.mat(0);
        return Sides{f.w(t), 0.5 * (f.norm(t) + f.w(f.aluthge_of(t)))};
      });
  add("triangle", Arity::pair, {"t"}, full, ineq, 1e-7, "w_t(X + Y) <= w_t(X) + w_t(Y)",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        return Sides{f.wt(x + y, p.t), f.wt(x, p.t) + f.wt(y, p.t)};
      });

  // Weighted single-matrix theorems.
  add("th2", Arity::single, {"t"}, half, ineq, 1e-7,
      "w_t^2(T) <= (1-2t)^2 w^2(T) + (1-2t) w(T^2) + (1-t) ||T*T + TT*||",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        const double s = 1.0 - 2.0 * p.t;
        return Sides{sq(f.wt(t, p.t)), sq(s) * sq(f.w(t)) + s * f.w(t * t) +
                                           (1.0 - p.t) * kittaneh_norm(f, t)};
      });
  add("t_product", Arity::pair, {"t"}, half, ineq, 1e-7,
      "||TS||_t^2 <= (2-4t+4t^2) ||TS||^2 + (1-2t) w((TS)^2) + (1-2t) w((S*T*)^2)",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix ts = f.mat(0) * f.mat(1);
        const ComplexMatrix st = f.mat(1).adjoint() * f.mat(0).adjoint();
        const double s = 1.0 - 2.0 * p.t;
        const double c = 2.0 - 4.0 * p.t + 4.0 * sq(p.t);
        return Sides{sq(f.norm(weighted_combination(ts, Weight(p.t)))),
                     c * sq(f.norm(ts)) + s * f.w(ts * ts) + s * f.w(st * st)};
      });
  add("th3", Arity::single, {"t"}, half, ineq, 1e-7,
      "w_t^2(T) <= (1-2t+2t^2) ||TT* + T*T|| + (1-2t) w(T^2 + T*^2)",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        const ComplexMatrix ts = t.adjoint();
        const double s = 1.0 - 2.0 * p.t;
        return Sides{sq(f.wt(t, p.t)), (1.0 - 2.0 * p.t + 2.0 * sq(p.t)) * kittaneh_norm(f, t) +
                                           s * f.w(t * t + ts * ts)};
      });
  add("th3_remark", Arity::single, {"t"}, half, ineq, 1e-7,
      "(1-2t+2t^2) ||TT* + T*T|| + (1-2t) w(T^2 + T*^2) <= 4(1-t)^2 ||T||^2",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        const ComplexMatrix ts = t.adjoint();
        const double s = 1.0 - 2.0 * p.t;
        return Sides{(1.0 - 2.0 * p.t + 2.0 * sq(p.t)) * kittaneh_norm(f, t) +
                         s * f.w(t * t + ts * ts),
                     4.0 * sq(1.0 - p.t) * sq(f.norm(t))};
      });
  add("th4", Arity::single, {"t"}, half, ineq, 1e-7,
      "w_t^2(T) <= (2-4t+4t^2) w^2(T) + (1-2t) w(T^2) + (1-2t)/2 ||TT* + T*T||",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        const double s = 1.0 - 2.0 * p.t;
        return Sides{sq(f.wt(t, p.t)), (2.0 - 4.0 * p.t + 4.0 * sq(p.t)) * sq(f.w(t)) +
                                           s * f.w(t * t) + 0.5 * s * kittaneh_norm(f, t)};
      });
  add("th4_remark", Arity::single, {"t"}, half, ineq, 1e-7,
      "(2-4t+4t^2) w^2(T) + (1-2t) w(T^2) + (1-2t)/2 ||TT* + T*T|| <= 4(1-t)^2 ||T||^2",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        const double s = 1.0 - 2.0 * p.t;
        return Sides{(2.0 - 4.0 * p.t + 4.0 * sq(p.t)) * sq(f.w(t)) + s * f.w(t * t) +
                         0.5 * s * kittaneh_norm(f, t),
                     4.0 * sq(1.0 - p.t) * sq(f.norm(t))};
      });
  add("aluthge_weighted", Arity::single, {"t"}, half, ineq, 1e-7,
      "w_t(T) <= (1-t)(||T|| + w(aluthge(T)))",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &t = f.mat(0);
        return Sides{f.wt(t, p.t), (1.0 - p.t) * (f.norm(t) + f.w(f.aluthge_of(t)))};
      });

  // Block identities. lhs = direct route, rhs = closed form.
  auto routes = [](const BlockRoutes &r) {
    Sides s{r.direct, r.value};
    s.route_gap = r.gap;
    s.scale = r.scale;
    return s;
  };
  add("wop_i", Arity::pair, {"t"}, full, ident, kRouteTol,
      "w_t([[X, 0], [0, Y]]) = max{w_t(X), w_t(Y)}",
      [routes](Facts &f, const BoundParams &p) {
        return routes(diag_routes(f.mat(0), f.mat(1), Weight(p.t)));
      });
  add("wop_ii", Arity::single, {"t"}, full, ident, kRouteTol, "w_t([[0, X], [X, 0]]) = w_t(X)",
      [routes](Facts &f, const BoundParams &p) {
        return routes(offdiag_sym_routes(f.mat(0), Weight(p.t)));
      });
  add("wop_iii", Arity::pair, {"t"}, full, ident, kRouteTol,
      "w_t([[X, Y], [Y, X]]) = max{w_t(X + Y), w_t(X - Y)}",
      [routes](Facts &f, const BoundParams &p) {
        return routes(circulant_routes(f.mat(0), f.mat(1), Weight(p.t)));
      });
  add("wop_iv", Arity::pair, {"t"}, full, ident, kRouteTol,
      "w_t([[0, X], [Y, 0]]) = sup_th 1/2 ||(1-2t)(e^{-ith} X + e^{ith} Y*) + e^{ith} X + e^{-ith} Y*||",
      [routes](Facts &f, const BoundParams &p) {
        return routes(antidiag_routes(f.mat(0), f.mat(1), Weight(p.t)));
      });

  // Block bounds.
  add("op1", Arity::pair, {"t"}, half, ineq, 1e-7,
      "w_t^2([[0, X], [Y, 0]]) <= (1-2t+2t^2) || |X|^2 + |Y*|^2 || + (2-4t+4t^2) w(YX) + "
      "(1-2t)(||X||^2 + ||YX|| + ||Y||^2)",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        const ComplexMatrix yx = y * x;
        const double s = 1.0 - 2.0 * p.t;
        const double rhs = (1.0 - 2.0 * p.t + 2.0 * sq(p.t)) * f.norm(gram(x) + cogram(y)) +
                           (2.0 - 4.0 * p.t + 4.0 * sq(p.t)) * f.w(yx) +
                           s * (sq(f.norm(x)) + f.norm(yx) + sq(f.norm(y)));
        return Sides{sq(f.wt(antidiag(x, y), p.t)), rhs};
      });
  add("op1_cor", Arity::single, {}, full, ineq, 1e-7,
      "w^2(T) <= ||T*T + TT*|| / 4 + w(T^2) / 2",
      [](Facts &f, const BoundParams &) {
        const ComplexMatrix &t = f.mat(0);
        return Sides{sq(f.w(t)), 0.25 * kittaneh_norm(f, t) + 0.5 * f.w(t * t)};
      });
  add("op2", Arity::quad, {"t"}, half, ineq, 1e-7,
      "w_t^2([[X, Y], [Z, W]]) <= 8(1-t)^2 max{w^2(X), w^2(W)} + 2(1-t)^2 max{|| |Z|^2 + |Y*|^2 ||, "
      "|| |Y|^2 + |Z*|^2 ||} + 4(1-t)^2 max{w(YZ), w(ZY)}",
      [](Facts &f, const BoundParams &p) {
        const Quad q = quad_of(f);
        return Sides{sq(f.wt(block_of(q), p.t)), rhs_op2(f, q, p.t)};
      });
  add("op3", Arity::quad, {"t"}, half, ineq, 1e-7,
      "w_t^2([[X, Y], [Z, W]]) <= 4(1-t)^2 max{w^2(X), w^2(W)} + 4(1-t)^2 w([[0, YW], [ZX, 0]]) + "
      "2(1-t)^2 max{w(YZ), w(ZY)} + (1-t)^2 max{||2|X|^2 + 3|Y*|^2 + |Z|^2||, "
      "||2|W|^2 + 3|Z*|^2 + |Y|^2||}",
      [](Facts &f, const BoundParams &p) {
        const Quad q = quad_of(f);
        return Sides{sq(f.wt(block_of(q), p.t)), rhs_op3(f, q, p.t)};
      });
  add("op4", Arity::quad, {"t", "alpha"}, half, ineq, 1e-7,
      "w_t^4([[X, Y], [Z, W]]) <= 128(1-t)^4 max{w^4(X), w^4(W)} + 16(1-t)^4 (1+a) max{|| |Z|^4 + "
      "|Y*|^4 ||, || |Y|^4 + |Z*|^4 ||} + 16(1-t)^4 (3-a) max{|| |Z|^2 + |Y*|^2 ||, || |Y|^2 + "
      "|Z*|^2 ||} max{w(YZ), w(ZY)}",
      [](Facts &f, const BoundParams &p) {
        const Quad q = quad_of(f);
        return Sides{pow4(f.wt(block_of(q), p.t)), rhs_op4(f, q, p.t, p.alpha)};
      });
  add("op5", Arity::quad, {"t", "alpha"}, half, ineq, 1e-7,
      "w_t^4([[X, Y], [Z, W]]) <= 128(1-t)^4 max{w^4(X), w^4(W)} + 16a(1-t)^4 M4 + 32a(1-t)^4 "
      "max{w(YZ), w(ZY)} M2 + 32a(1-t)^4 max{w^2(YZ), w^2(ZY)} + 32(1-a)(1-t)^4 M2 w^2(S) + "
      "64(1-a)(1-t)^4 max{w(YZ), w(ZY)} w^2(S), S = [[0, Y], [Z, 0]]",
      [](Facts &f, const BoundParams &p) {
        const Quad q = quad_of(f);
        return Sides{pow4(f.wt(block_of(q), p.t)), rhs_op5(f, q, p.t, p.alpha)};
      });

  // Corollaries on [[X, Y], [Y, X]]: stated rhs, checked against the
  // parent theorem's rhs at (X, Y, Y, X) and the circulant identity.
  auto corollary = [](Facts &f, double power, double printed, double parent, double t) {
    const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
    const CirculantLhs c = circulant_lhs(f, x, y, t);
    Sides s{std::pow(c.value, power), printed};
    s.route_gap = c.gap / c.scale;
    s.rhs_gap = printed - parent;
    return s;
  };
  add("cor1", Arity::pair, {"t"}, half, ineq, 1e-7,
      "w_t^2([[X, Y], [Y, X]]) <= 8(1-t)^2 w^2(X) + 4(1-t)^2 w(Y^2) + 2(1-t)^2 || |Y|^2 + |Y*|^2 ||",
      [corollary](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        const double u2 = sq(1.0 - p.t);
        const double printed =
            8.0 * u2 * sq(f.w(x)) + 4.0 * u2 * f.w(y * y) + 2.0 * u2 * kittaneh_norm(f, y);
        return corollary(f, 2.0, printed, rhs_op2(f, {x, y, y, x}, p.t), p.t);
      });
  add("cor2", Arity::pair, {"t"}, half, ineq, 1e-7,
      "w_t^2([[X, Y], [Y, X]]) <= 4(1-t)^2 (w^2(X) + w(YX)) + 2(1-t)^2 w(Y^2) + (1-t)^2 "
      "||2|X|^2 + 3|Y*|^2 + |Y|^2||",
      [corollary](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        const double u2 = sq(1.0 - p.t);
        const double printed = 4.0 * u2 * (sq(f.w(x)) + f.w(y * x)) + 2.0 * u2 * f.w(y * y) +
                               u2 * f.norm(2.0 * gram(x) + 3.0 * cogram(y) + gram(y));
        return corollary(f, 2.0, printed, rhs_op3(f, {x, y, y, x}, p.t), p.t);
      });
  add("cor3", Arity::pair, {"t", "alpha"}, half, ineq, 1e-7,
      "w_t^4([[X, Y], [Y, X]]) <= 128(1-t)^4 w^4(X) + 16(1-t)^4 (1+a) || |Y|^4 + |Y*|^4 || + "
      "16(1-t)^4 (3-a) || |Y|^2 + |Y*|^2 || w(Y^2)",
      [corollary](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        const double u4 = pow4(1.0 - p.t);
        const ComplexMatrix gy = gram(y), cy = cogram(y);
        const double printed = 128.0 * u4 * pow4(f.w(x)) +
                               16.0 * u4 * (1.0 + p.alpha) * f.norm(gy * gy + cy * cy) +
                               16.0 * u4 * (3.0 - p.alpha) * kittaneh_norm(f, y) * f.w(y * y);
        return corollary(f, 4.0, printed, rhs_op4(f, {x, y, y, x}, p.t, p.alpha), p.t);
      });
  add("cor4", Arity::pair, {"t", "alpha"}, half, ineq, 1e-7,
      "w_t^4([[X, Y], [Y, X]]) <= 128(1-t)^4 w^4(X) + 16a(1-t)^4 || |Y|^4 + |Y*|^4 || + 32a(1-t)^4 "
      "w(Y^2) || |Y|^2 + |Y*|^2 || + 32a(1-t)^4 w^2(Y^2) + 32(1-a)(1-t)^4 w^2(Y) || |Y|^2 + "
      "|Y*|^2 || + 64(1-a)(1-t)^4 w(Y^2) w^2(Y)",
      [corollary](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0), &y = f.mat(1);
        const double a = p.alpha;
        const double u4 = pow4(1.0 - p.t);
        const ComplexMatrix gy = gram(y), cy = cogram(y);
        const double k = kittaneh_norm(f, y);
        const double wy2 = f.w(y * y);
        const double wy = f.w(y);
        const double printed = 128.0 * u4 * pow4(f.w(x)) + 16.0 * a * u4 * f.norm(gy * gy + cy * cy) +
                               32.0 * a * u4 * wy2 * k + 32.0 * a * u4 * sq(wy2) +
                               32.0 * (1.0 - a) * u4 * sq(wy) * k +
                               64.0 * (1.0 - a) * u4 * wy2 * sq(wy);
        return corollary(f, 4.0, printed, rhs_op5(f, {x, y, y, x}, p.t, a), p.t);
      });

  // Remarks: corollaries at Y = X, checked against the parent at Y = X.
  add("cor1_remark", Arity::single, {"t"}, half, ineq, 1e-7,
      "w_t^2(X) <= 2(1-t)^2 w^2(X) + (1-t)^2 w(X^2) + (1-t)^2/2 || |X|^2 + |X*|^2 ||",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0);
        const double u2 = sq(1.0 - p.t);
        const double k = kittaneh_norm(f, x);
        const double printed = 2.0 * u2 * sq(f.w(x)) + u2 * f.w(x * x) + 0.5 * u2 * k;
        Sides s{sq(f.wt(x, p.t)), printed};
        s.rhs_gap = printed - 0.25 * rhs_op2(f, {x, x, x, x}, p.t);
        return s;
      });
  add("cor2_remark", Arity::single, {"t"}, half, ineq, 1e-7,
      "4 w_t^2(X) <= 4(1-t)^2 w^2(X) + 6(1-t)^2 w(X^2) + 3(1-t)^2 || |X|^2 + |X*|^2 ||",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0);
        const double u2 = sq(1.0 - p.t);
        const double printed =
            4.0 * u2 * sq(f.w(x)) + 6.0 * u2 * f.w(x * x) + 3.0 * u2 * kittaneh_norm(f, x);
        Sides s{4.0 * sq(f.wt(x, p.t)), printed};
        s.rhs_gap = printed - rhs_op3(f, {x, x, x, x}, p.t);
        return s;
      });
  add("cor3_remark", Arity::single, {"alpha"}, full, ineq, 1e-7,
      "w^4(X) <= (1+a)/8 || |X|^4 + |X*|^4 || + (3-a)/8 || |X|^2 + |X*|^2 || w(X^2)",
      [](Facts &f, const BoundParams &p) {
        const ComplexMatrix &x = f.mat(0);
        const ComplexMatrix gx = gram(x), cx = cogram(x);
        const double printed = (1.0 + p.alpha) / 8.0 * f.norm(gx * gx + cx * cx) +
                               (3.0 - p.alpha) / 8.0 * kittaneh_norm(f, x) * f.w(x * x);
        Sides s{pow4(f.w(x)), printed};
        // 16 w^4(X) <= op4 rhs at (X, X, X, X), t = 1/2, minus the 8 w^4(X)
        // it contains, over 8.
        s.rhs_gap = printed - (rhs_op4(f, {x, x, x, x}, 0.5, p.alpha) - 8.0 * pow4(f.w(x))) / 8.0;
        return s;
      });

  std::sort(specs_.begin(), specs_.end(),
            [](const BoundSpec &a, const BoundSpec &b) { return a.id < b.id; });
}

const Registry &Registry::get() {
  static const Registry registry;
  return registry;
}

const BoundSpec &Registry::spec(std::string_view id) const {
  for (const BoundSpec &s : specs_)
    if (s.id == id)
      return s;
  throw UnknownBound(std::string(id));
}

bool Registry::contains(std::string_view id) const {
  return evaluators_.count(std::string(id)) > 0;
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  for (const BoundSpec &s : specs_)
    out.push_back(s.id);
  return out;
}

std::vector<std::string> Registry::default_sweep_ids() const {
  std::vector<std::string> out;
  for (const BoundSpec &s : specs_)
    if (s.id.rfind("wop_", 0) != 0)
      out.push_back(s.id);
  return out;
}

BoundResult Registry::evaluate(std::string_view id, Facts &facts, const BoundParams &p,
                               bool probe) const {
  const BoundSpec &sp = spec(id);
  BoundResult res;
  res.id = sp.id;
  res.params = p;
  if (sp.uses("t") && !sp.t_valid.contains(p.t)) {
    if (!probe)
      throw DomainError(sp.id + ": t = " + std::to_string(p.t) + " outside [" +
                        std::to_string(sp.t_valid.lo) + ", " + std::to_string(sp.t_valid.hi) +
                        "]; use probe mode");
    res.in_domain = false;
  }
  if (sp.uses("t") && !(p.t >= 0.0 && p.t <= 1.0))
    throw DomainError("t must lie in [0, 1]");
  if (sp.uses("alpha") && !(p.alpha >= 0.0 && p.alpha <= 1.0))
    throw DomainError("alpha must lie in [0, 1]");
  if (sp.arity == Arity::vectors)
    require_vectors(facts.instance());

  const Sides s = evaluators_.at(sp.id)(facts, p);
  res.lhs = s.lhs;
  res.rhs = s.rhs;
  res.margin = s.rhs - s.lhs;
  res.scale = s.scale.value_or(std::max({std::abs(s.lhs), std::abs(s.rhs), 1.0}));
  res.tight = std::abs(res.margin) <= kTightTol * res.scale;
  res.route_gap = s.route_gap;
  res.rhs_gap = s.rhs_gap;

  bool bad = false;
  if (sp.kind == BoundKind::identity) {
    bad = std::abs(res.margin) > sp.tolerance * res.scale;
    if (s.route_gap)
      bad = bad || std::abs(*s.route_gap) > sp.tolerance * res.scale;
  } else {
    bad = res.margin < -sp.tolerance * res.scale;
    // Corollary route gaps are already relative to the block norm.
    if (s.route_gap)
      bad = bad || std::abs(*s.route_gap) > kRouteTol;
    if (s.rhs_gap)
      bad = bad || std::abs(*s.rhs_gap) > kSubstitutionTol * std::max(std::abs(s.rhs), 1.0);
  }
  res.violated = bad;
  return res;
}

// ------------------------------------------------------------ direct checks

BoundResult check_bound(std::string_view id, Instance inst, const BoundParams &p, bool probe) {
  Facts facts(std::move(inst));
  return Registry::get().evaluate(id, facts, p, probe);
}

namespace {

Instance vectors_instance(ComplexMatrix a, ComplexVector x, ComplexVector y, ComplexVector e) {
  Instance in;
  in.mats.push_back(std::move(a));
  in.x = std::move(x);
  in.y = std::move(y);
  in.e = std::move(e);
  return in;
}

ComplexMatrix zero_like(const ComplexVector &v) { return ComplexMatrix::Zero(v.size(), v.size()); }

BoundParams with_t(double t) {
  BoundParams p;
  p.t = t;
  return p;
}

BoundParams with_t_alpha(double t, double a) {
  BoundParams p;
  p.t = t;
  p.alpha = a;
  return p;
}

} // namespace

BoundResult check_buzano(const ComplexVector &x, const ComplexVector &y, const ComplexVector &e) {
  return check_bound("buzano", vectors_instance(zero_like(x), x, y, e), {});
}

BoundResult check_power_inequality(const ComplexMatrix &t, const ComplexVector &x, double r) {
  require_operator(t);
  (void)psd_power(t, 1.0); // NotHermitian / NotPSD
  BoundParams p;
  p.r = r;
  return check_bound("power", vectors_instance(t, x, x, x), p);
}

BoundResult check_mixed_schwarz(const ComplexMatrix &t, const ComplexVector &x,
                                const ComplexVector &y, double alpha) {
  BoundParams p;
  p.alpha = alpha;
  return check_bound("mixed_schwarz", vectors_instance(t, x, y, x), p);
}

BoundResult check_polarization(const ComplexMatrix &t, const ComplexVector &x,
                               const ComplexVector &y) {
  // e is unused; any unit vector of the right size will do.
  ComplexVector e = ComplexVector::Zero(x.size());
  if (e.size())
    e(0) = 1.0;
  return check_bound("polarization", vectors_instance(t, x, y, e), {});
}

BoundResult check_ext_buzano(const ComplexVector &x, const ComplexVector &y,
                             const ComplexVector &e, double alpha) {
  BoundParams p;
  p.alpha = alpha;
  return check_bound("ext_buzano", vectors_instance(zero_like(x), x, y, e), p);
}

BoundResult check_buzano_gen(const ComplexVector &x, const ComplexVector &y,
                             const ComplexVector &e, double alpha) {
  BoundParams p;
  p.alpha = alpha;
  return check_bound("buzano_gen", vectors_instance(zero_like(x), x, y, e), p);
}

BoundResult check_th2(const ComplexMatrix &t, double weight, bool probe) {
  return check_bound("th2", {{t}}, with_t(weight), probe);
}

BoundResult check_ts_product(const ComplexMatrix &t, const ComplexMatrix &s, double weight,
                             bool probe) {
  return check_bound("t_product", {{t, s}}, with_t(weight), probe);
}

BoundResult check_th3(const ComplexMatrix &t, double weight, bool probe) {
  return check_bound("th3", {{t}}, with_t(weight), probe);
}

BoundResult check_th4(const ComplexMatrix &t, double weight, bool probe) {
  return check_bound("th4", {{t}}, with_t(weight), probe);
}

BoundResult check_aluthge_weighted(const ComplexMatrix &t, double weight, bool probe) {
  return check_bound("aluthge_weighted", {{t}}, with_t(weight), probe);
}

BoundResult check_op1(const ComplexMatrix &x, const ComplexMatrix &y, double weight, bool probe) {
  return check_bound("op1", {{x, y}}, with_t(weight), probe);
}

BoundResult check_op2(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, bool probe) {
  return check_bound("op2", {{x, y, z, w}}, with_t(weight), probe);
}

BoundResult check_op3(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, bool probe) {
  return check_bound("op3", {{x, y, z, w}}, with_t(weight), probe);
}

BoundResult check_op4(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, double alpha, bool probe) {
  return check_bound("op4", {{x, y, z, w}}, with_t_alpha(weight, alpha), probe);
}

BoundResult check_op5(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, double alpha, bool probe) {
  return check_bound("op5", {{x, y, z, w}}, with_t_alpha(weight, alpha), probe);
}

std::vector<BoundResult> check_corollaries(const ComplexMatrix &x, const ComplexMatrix &y,
                                           double weight, double alpha, bool probe) {
  Facts facts(Instance{{x, y}});
  const Registry &reg = Registry::get();
  const BoundParams p = with_t_alpha(weight, alpha);
  std::vector<BoundResult> out;
  for (const char *id : {"cor1", "cor2", "cor3", "cor4", "cor1_remark", "cor2_remark"})
    out.push_back(reg.evaluate(id, facts, p, probe));
  out.push_back(reg.evaluate("cor3_remark", facts, p, probe));
  return out;
}

} // namespace wnr
