// Command-line front end. JSON goes to stdout, prose to stderr.
// Exit status: 0 ok, 1 in-domain violation or unconverged search, 2 usage,
// parse or shape error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "wnr/block_ops.hpp"
#include "wnr/errors.hpp"
#include "wnr/harness.hpp"
#include "wnr/matrix_io.hpp"
#include "wnr/radius.hpp"
#include "wnr/registry.hpp"

namespace {

using nlohmann::json;
using namespace wnr;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Config {
  std::string target;
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "json";
  std::vector<double> t;
  std::vector<double> alpha;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  int trials = 500;
  std::vector<int> n;
  std::vector<std::string> kinds;
  std::vector<std::string> bounds;
  double scale = 1.0;
  bool probe = false;
  int restarts = 8;
  int steps = 20;
};

void emit(const Config &cfg, const std::string &text) {
  if (cfg.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream os(cfg.output);
  if (!os)
    throw ParseError("cannot open " + cfg.output + " for writing");
  os << text << '\n';
}

json radius_json(const RadiusResult &r) {
  return {{"value", r.value},
          {"certified_error", r.certified_error},
          {"theta_star", r.theta_star},
          {"converged", r.converged},
          {"evaluations", r.evaluations}};
}

double first_or(const std::vector<double> &v, double dflt) { return v.empty() ? dflt : v.front(); }

int cmd_compute(const Config &cfg) {
  const bool block = cfg.target == "block";
  const std::size_t need = block ? 4 : 1;
  if (cfg.inputs.size() != need)
    throw ParseError(cfg.target + " needs " + std::to_string(need) + " input file(s), got " +
                     std::to_string(cfg.inputs.size()));
  std::vector<ComplexMatrix> m;
  for (const auto &p : cfg.inputs) {
    m.push_back(read_matrix_file(p));
    require_square(m.back());
  }
  const Weight w(first_or(cfg.t, 0.5));

  json out;
  bool converged = true;
  auto radius = [&](const ComplexMatrix &a) {
    RadiusOptions opt;
    opt.tol = cfg.tol * std::max(spectral_norm(a), 1.0);
    const RadiusResult r = search_numerical_radius(a, opt);
    converged = converged && r.converged;
    return r;
  };

  if (cfg.target == "radius") {
    out = radius_json(radius(m[0]));
  } else if (cfg.target == "weighted-radius") {
    out = radius_json(radius(weighted_combination(m[0], w)));
    out["t"] = w.value();
  } else if (cfg.target == "weighted-norm") {
    out = {{"value", weighted_norm(m[0], w)}, {"t", w.value()}};
  } else if (cfg.target == "aluthge") {
    out = {{"matrix", matrix_to_json(aluthge(m[0]))}};
  } else if (cfg.target == "polar") {
    const PolarParts p = polar(m[0]);
    out = {{"isometry", matrix_to_json(p.isometry)}, {"modulus", matrix_to_json(p.modulus)}};
  } else if (cfg.target == "weighted-forms") {
    const WeightedRadiusForms f = compare_weighted_radius_forms(m[0], w);
    out = {{"operative", radius_json(f.operative)},
           {"sup_form", radius_json(f.sup_form)},
           {"difference", f.difference},
           {"t", w.value()}};
  } else { // block
    const ComplexMatrix b = assemble({m[0], m[1], m[2], m[3]});
    out = radius_json(radius(weighted_combination(b, w)));
    out["t"] = w.value();
    out["weighted_norm"] = weighted_norm(b, w);
    out["dimension"] = b.rows();
  }
  emit(cfg, out.dump(2));
  if (!converged) {
    std::cerr << "search stopped before reaching the requested tolerance\n";
    return kViolation;
  }
  return kOk;
}

int cmd_verify(const Config &cfg) {
  SweepConfig sc;
  sc.bounds = cfg.bounds;
  if (!cfg.kinds.empty())
    sc.kinds = cfg.kinds;
  if (!cfg.n.empty())
    sc.dims = cfg.n;
  if (!cfg.t.empty())
    sc.t_grid = cfg.t;
  if (!cfg.alpha.empty())
    sc.alpha_grid = cfg.alpha;
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  sc.scale = cfg.scale;
  sc.probe = cfg.probe;
  sc.keep_rows = cfg.format == "csv";

  const VerificationReport rep = run_sweep(sc);
  emit(cfg, cfg.format == "csv" ? to_csv(rep) : to_json(rep).dump(2));

  std::cerr << rep.instances << " instances, " << rep.bounds.size() << " bounds, "
            << rep.violation_count() << " violations, " << rep.errors.size() << " errors, "
            << rep.findings.size() << " probe findings, " << rep.runtime_seconds << " s\n";
  for (const auto &[id, s] : rep.bounds)
    for (const auto &v : s.violations)
      std::cerr << "violation: " << id << " margin " << v.result.margin << " ("
                << v.recipe.spec.kind << ", n = " << v.recipe.spec.n
                << ", seed = " << v.recipe.spec.seed << ")\n";
  for (const auto &e : rep.errors)
    std::cerr << "error: " << e.bound << ": " << e.what << '\n';
  return rep.passed() ? kOk : kViolation;
}

int cmd_hunt(const Config &cfg) {
  if (cfg.bounds.size() != 1)
    throw ParseError("hunt needs exactly one --bound");
  HuntConfig hc;
  hc.bound = cfg.bounds.front();
  hc.params.t = first_or(cfg.t, 0.5);
  hc.params.alpha = first_or(cfg.alpha, 0.5);
  hc.n = cfg.n.empty() ? 2 : cfg.n.front();
  hc.restarts = cfg.restarts;
  hc.steps = cfg.steps;
  hc.seed = cfg.seed;
  if (!cfg.kinds.empty())
    hc.kind = cfg.kinds.front();

  const HuntResult h = hunt(hc);
  json mats = json::array();
  const std::size_t used = std::max<std::size_t>(arity_matrices(Registry::get().spec(hc.bound).arity), 1);
  for (std::size_t i = 0; i < used && i < h.instance.mats.size(); ++i)
    mats.push_back(matrix_to_json(h.instance.mats[i]));
  json out{{"result", to_json(h.best)},
           {"start", to_json(h.start)},
           {"restart", h.restart},
           {"evaluations", h.evaluations},
           {"matrices", mats}};
  if (Registry::get().spec(hc.bound).arity == Arity::vectors) {
    auto vec = [](const ComplexVector &v) {
      return matrix_to_json(ComplexMatrix(v));
    };
    out["x"] = vec(h.instance.x);
    out["y"] = vec(h.instance.y);
    out["e"] = vec(h.instance.e);
  }
  emit(cfg, out.dump(2));
  std::cerr << hc.bound << ": best margin " << h.best.margin << " after " << h.evaluations
            << " evaluations\n";
  return kOk;
}

int cmd_list_bounds() {
  json out = json::array();
  for (const BoundSpec &s : Registry::get().specs())
    out.push_back({{"id", s.id},
                   {"arity", std::string(arity_name(s.arity))},
                   {"params", s.params},
                   {"t_valid", {s.t_valid.lo, s.t_valid.hi}},
                   {"kind", s.kind == BoundKind::identity ? "identity" : "inequality"},
                   {"tolerance", s.tolerance},
                   {"description", s.description}});
  std::cout << out.dump(2) << '\n';
  return kOk;
}

void apply_thread_cap() {
  const char *env = std::getenv("WNR_THREADS");
  if (env == nullptr || *env == '\0')
    return;
  char *end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0)
    throw ParseError(std::string("WNR_THREADS must be a non-negative integer, got ") + env);
  if (n > 0)
    omp_set_num_threads(static_cast<int>(n));
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Weighted numerical radius toolkit"};
  app.require_subcommand(1);
  Config cfg;

  auto *compute = app.add_subcommand("compute", "Evaluate a quantity on matrix JSON input");
  compute->add_option("target", cfg.target, "What to compute")
      ->required()
      ->check(CLI::IsMember(
          {"radius", "weighted-radius", "weighted-norm", "aluthge", "polar", "block",
           "weighted-forms"}));
  compute->add_option("-i,--input", cfg.inputs, "Matrix JSON file (block takes X Y Z W)")
      ->required();

  auto *verify = app.add_subcommand("verify", "Run a seeded verification sweep");
  auto *hunt_cmd = app.add_subcommand("hunt", "Search for a minimal-margin instance");
  auto *list = app.add_subcommand("list-bounds", "List registry entries");

  for (CLI::App *sub : {compute, verify, hunt_cmd}) {
    sub->add_option("--t", cfg.t, "Weight t (verify: t grid)")
        ->check(CLI::Range(0.0, 1.0))
        ->expected(1, 1000);
    sub->add_option("-o,--output", cfg.output, "Write output here instead of stdout");
  }
  compute->add_option("--tol", cfg.tol, "Relative tolerance")->check(CLI::PositiveNumber);

  for (CLI::App *sub : {verify, hunt_cmd}) {
    sub->add_option("--alpha", cfg.alpha, "alpha (verify: alpha grid)")
        ->check(CLI::Range(0.0, 1.0))
        ->expected(1, 1000);
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--n", cfg.n, "Dimension(s)")->check(CLI::Range(1, 64))->expected(1, 64);
    sub->add_option("--ensemble", cfg.kinds, "Ensemble kind(s)")
        ->check(CLI::IsMember(ensemble_kinds()))
        ->expected(1, 16);
    sub->add_option("--bound", cfg.bounds, "Registry id(s)")->expected(1, 1000);
  }
  verify->add_option("--trials", cfg.trials, "Trials per (kind, n)")
      ->check(CLI::Range(1, 1 << 30));
  verify->add_option("--scale", cfg.scale, "Ensemble scale")->check(CLI::PositiveNumber);
  verify->add_flag("--probe", cfg.probe, "Also evaluate t outside each entry's domain");
  verify->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  hunt_cmd->add_option("--restarts", cfg.restarts, "Random restarts")
      ->check(CLI::Range(1, 1 << 20));
  hunt_cmd->add_option("--steps", cfg.steps, "Non-improving rounds before stopping")
      ->check(CLI::Range(1, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e, std::cerr, std::cerr);
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    apply_thread_cap();
    if (*compute)
      return cmd_compute(cfg);
    if (*verify)
      return cmd_verify(cfg);
    if (*hunt_cmd)
      return cmd_hunt(cfg);
    if (*list)
      return cmd_list_bounds();
  } catch (const wnr::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
