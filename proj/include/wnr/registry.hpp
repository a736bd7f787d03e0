#pragma once

// Declarative catalogue of vector lemmas, classical numerical radius bounds,
// weighted bounds and block-matrix bounds. Every entry evaluates both sides
// on an Instance and reports margin = rhs - lhs.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wnr/linalg.hpp"
#include "wnr/radius.hpp"

namespace wnr {

/// Which inputs an entry consumes from an Instance.
///   vectors: mats[0] = A (any operator), x, y, e with ||e|| = 1
///   single:  mats[0] = T
///   pair:    mats[0..1] = (X, Y) or (T, S)
///   quad:    mats[0..3] = (X, Y, Z, W) of the block [[X, Y], [Z, W]]
enum class Arity { vectors, single, pair, quad };

std::string_view arity_name(Arity a);
/// Number of matrices an entry reads.
std::size_t arity_matrices(Arity a);

enum class BoundKind { inequality, identity };

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Parameters an entry may read; unused ones are ignored.
struct BoundParams {
  double t = 0.5;
  double alpha = 0.5;
  double r = 1.0;
};

struct BoundSpec {
  std::string id;
  Arity arity = Arity::single;
  /// Subset of {"t", "alpha", "r"}, in that order.
  std::vector<std::string> params;
  Interval t_valid;
  BoundKind kind = BoundKind::inequality;
  /// Relative tolerance: an inequality is violated when
  /// margin < -tolerance * scale; an identity when either side or the route
  /// gap differs by more than tolerance * scale.
  double tolerance = 1e-7;
  /// The inequality as a formula string.
  std::string description;

  bool uses(std::string_view param) const;
};

struct BoundResult {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs exactly as computed.
  double margin = 0.0;
  BoundParams params;
  /// max(|lhs|, |rhs|, 1) unless the entry sets its own.
  double scale = 1.0;
  /// |margin| <= 1e-7 * scale.
  bool tight = false;
  bool in_domain = true;
  bool violated = false;
  /// Two routes to the lhs (block identities, corollary lhs).
  std::optional<double> route_gap;
  /// Corollary rhs as stated minus the parent theorem's rhs after
  /// substitution.
  std::optional<double> rhs_gap;
};

inline constexpr double kTightTol = 1e-7;
/// Corollary substitution check, relative to max(|rhs|, 1).
inline constexpr double kSubstitutionTol = 1e-9;

struct Instance {
  std::vector<ComplexMatrix> mats;
  ComplexVector x;
  ComplexVector y;
  ComplexVector e;
};

struct EngineStats {
  std::size_t radius_calls = 0;
  std::size_t unconverged = 0;
  /// max over calls of certified_error / max(||M||, 1).
  double max_relative_error = 0.0;
  std::size_t evaluations = 0;

  void merge(const EngineStats &o);
};

/// Engine settings used by the registry: 16-point initial grid, serial.
RadiusOptions registry_engine();

/// Per-instance memo of radii and norms, keyed by the exact matrix bytes so
/// that equal matrices reached by different formulas share one computation.
class Facts {
public:
  explicit Facts(Instance inst, RadiusOptions engine = registry_engine());

  const Instance &instance() const { return inst_; }
  const ComplexMatrix &mat(std::size_t i) const;

  /// Numerical radius (certified lower end of the bracket).
  double w(const ComplexMatrix &m);
  /// w((1 - 2t) M* + M).
  double wt(const ComplexMatrix &m, double t);
  double norm(const ComplexMatrix &m);
  /// Aluthge transform, memoised.
  const ComplexMatrix &aluthge_of(const ComplexMatrix &m);

  const EngineStats &stats() const { return stats_; }

private:
  Instance inst_;
  RadiusOptions engine_;
  std::unordered_map<std::string, double> radii_;
  std::unordered_map<std::string, double> norms_;
  std::unordered_map<std::string, ComplexMatrix> aluthge_;
  EngineStats stats_;
};

class Registry {
public:
  static const Registry &get();

  /// Sorted by id.
  const std::vector<BoundSpec> &specs() const { return specs_; }
  /// Throws UnknownBound.
  const BoundSpec &spec(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Throws DomainError if t is outside t_valid and probe is false; in probe
  /// mode the result is marked in_domain = false instead.
  BoundResult evaluate(std::string_view id, Facts &facts, const BoundParams &p,
                       bool probe = false) const;

  /// Ids of every entry, and of the default sweep set (everything except
  /// the block identities, which have their own suite).
  std::vector<std::string> ids() const;
  std::vector<std::string> default_sweep_ids() const;

  struct Sides {
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> scale;
    std::optional<double> route_gap;
    std::optional<double> rhs_gap;
  };
  using Evaluator = std::function<Sides(Facts &, const BoundParams &)>;

private:
  Registry();
  std::vector<BoundSpec> specs_;
  std::unordered_map<std::string, Evaluator> evaluators_;
};

// ------------------------------------------------------------ direct checks
// Convenience wrappers: build an Instance and evaluate one entry.

BoundResult check_buzano(const ComplexVector &x, const ComplexVector &y, const ComplexVector &e);
/// T must be PSD (NotPSD otherwise), r >= 1, ||x|| = 1.
BoundResult check_power_inequality(const ComplexMatrix &t, const ComplexVector &x, double r);
BoundResult check_mixed_schwarz(const ComplexMatrix &t, const ComplexVector &x,
                                const ComplexVector &y, double alpha);
BoundResult check_polarization(const ComplexMatrix &t, const ComplexVector &x,
                               const ComplexVector &y);
BoundResult check_ext_buzano(const ComplexVector &x, const ComplexVector &y,
                             const ComplexVector &e, double alpha);
BoundResult check_buzano_gen(const ComplexVector &x, const ComplexVector &y,
                             const ComplexVector &e, double alpha);

BoundResult check_th2(const ComplexMatrix &t, double weight, bool probe = false);
BoundResult check_ts_product(const ComplexMatrix &t, const ComplexMatrix &s, double weight,
                             bool probe = false);
BoundResult check_th3(const ComplexMatrix &t, double weight, bool probe = false);
BoundResult check_th4(const ComplexMatrix &t, double weight, bool probe = false);
BoundResult check_aluthge_weighted(const ComplexMatrix &t, double weight, bool probe = false);
BoundResult check_op1(const ComplexMatrix &x, const ComplexMatrix &y, double weight,
                      bool probe = false);
BoundResult check_op2(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, bool probe = false);
BoundResult check_op3(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, bool probe = false);
BoundResult check_op4(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, double alpha, bool probe = false);
BoundResult check_op5(const ComplexMatrix &x, const ComplexMatrix &y, const ComplexMatrix &z,
                      const ComplexMatrix &w, double weight, double alpha, bool probe = false);
/// cor1..cor4 on the pair (X, Y) plus the single-matrix remarks on X.
std::vector<BoundResult> check_corollaries(const ComplexMatrix &x, const ComplexMatrix &y,
                                           double weight, double alpha, bool probe = false);

/// Evaluates any entry on explicit inputs.
BoundResult check_bound(std::string_view id, Instance inst, const BoundParams &p,
                        bool probe = false);

} // namespace wnr
