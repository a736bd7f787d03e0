#pragma once

// Seeded sweeps, tightness scans and counterexample search over the
// registry. Every run is a pure function of its configuration: trials are
// evaluated in parallel into per-trial slots and reduced serially in trial
// order, so reports are byte-identical across runs and thread counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wnr/ensemble.hpp"
#include "wnr/registry.hpp"

namespace wnr {

struct SweepConfig {
  /// Empty selects Registry::default_sweep_ids().
  std::vector<std::string> bounds;
  std::vector<std::string> kinds{"ginibre", "hermitian", "psd", "unitary", "nilpotent", "normal"};
  std::vector<int> dims{2, 3, 4, 5, 6};
  int trials = 500;
  double scale = 1.0;
  std::uint64_t seed = 42;
  /// 0, 0.05, ..., 0.5.
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> alpha_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  /// Extra alpha values drawn uniformly per instance.
  int alpha_draws = 4;
  std::vector<double> r_grid{1.0, 1.5, 2.0, 3.0};
  /// Evaluate t outside t_valid too; such results become findings.
  bool probe = false;
  /// Keep one row per evaluation (CSV output).
  bool keep_rows = false;

  static std::vector<double> default_t_grid();
};

/// Enough to regenerate the evaluation: make_instance(spec) + params.
struct Recipe {
  EnsembleSpec spec;
  BoundParams params;
};

struct Evaluation {
  Recipe recipe;
  BoundResult result;
};

struct BoundSummary {
  std::size_t trials = 0;
  double min_margin = 0.0;
  /// min over evaluations of margin / scale.
  double min_relative_margin = 0.0;
  std::optional<Evaluation> argmin;
  std::size_t tight_count = 0;
  std::vector<Evaluation> violations;
};

struct SweepError {
  std::string bound;
  Recipe recipe;
  std::string what;
};

struct VerificationReport {
  /// Keyed by bound id, in id order.
  std::vector<std::pair<std::string, BoundSummary>> bounds;
  /// Probe-mode violations outside t_valid; never counted as failures.
  std::vector<Evaluation> findings;
  std::size_t probe_evaluations = 0;
  std::vector<SweepError> errors;
  std::size_t instances = 0;
  EngineStats engine;
  std::vector<Evaluation> rows;
  double runtime_seconds = 0.0;

  std::size_t violation_count() const;
  /// True when there are no in-domain violations and no evaluation errors.
  bool passed() const;
};

/// Parameter sets an entry is evaluated on for one instance. Unused
/// parameters are NaN. alpha_extra holds the per-instance uniform draws.
std::vector<BoundParams> parameter_sets(const BoundSpec &spec, const SweepConfig &cfg,
                                        const std::vector<double> &alpha_extra);

/// Throws UnknownBound / UnknownKind before any work starts.
VerificationReport run_sweep(const SweepConfig &cfg);

/// Re-evaluates one recorded evaluation from scratch.
BoundResult replay(const std::string &bound, const Recipe &recipe, bool probe = true);

struct HuntConfig {
  std::string bound;
  BoundParams params;
  int n = 2;
  int restarts = 8;
  /// Stop a descent after this many rounds without improvement.
  int steps = 20;
  std::string kind = "ginibre";
  std::uint64_t seed = 42;
  /// Cap on objective evaluations per restart.
  std::size_t max_evaluations = 20000;
};

struct HuntResult {
  BoundResult best;
  Instance instance;
  /// Starting point of the winning restart; descent from it is
  /// deterministic, so (start, config) reproduces `instance`.
  EnsembleSpec start;
  int restart = 0;
  std::size_t evaluations = 0;
};

/// Random restarts followed by coordinate-wise descent on the real and
/// imaginary parts of every input the entry reads. The objective is
/// margin / max(|lhs|, |rhs|), which is invariant under rescaling for the
/// homogeneous bounds and so cannot be lowered by shrinking the inputs.
/// Out-of-domain t is evaluated in probe mode.
HuntResult hunt(const HuntConfig &cfg);

struct TightnessConfig {
  std::string bound;
  std::vector<std::string> kinds{"ginibre"};
  std::vector<int> dims{2};
  int trials = 20;
  double scale = 1.0;
  std::uint64_t seed = 42;
  std::vector<double> t_grid = SweepConfig::default_t_grid();
  std::vector<double> alpha_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> r_grid{1.0, 1.5, 2.0, 3.0};
};

struct TightnessScan {
  std::size_t evaluated = 0;
  std::vector<Evaluation> tight;
};

TightnessScan tightness_scan(const TightnessConfig &cfg);

nlohmann::json to_json(const BoundResult &r);
nlohmann::json to_json(const Recipe &r);
nlohmann::json to_json(const EnsembleSpec &s);
/// Timing lives under "timing" only, so reports compare byte-for-byte
/// once that key is dropped.
nlohmann::json to_json(const VerificationReport &r);
/// One row per kept evaluation.
std::string to_csv(const VerificationReport &r);

EnsembleSpec ensemble_from_json(const nlohmann::json &j);
BoundParams params_from_json(const nlohmann::json &j);

} // namespace wnr
