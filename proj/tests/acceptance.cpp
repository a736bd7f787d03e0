// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "oracles.hpp"
#include "wnr/ensemble.hpp"
#include "wnr/harness.hpp"
#include "wnr/radius.hpp"
#include "wnr/registry.hpp"

using namespace wnr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

int failures = 0;

void report(int id, const std::string &name, const std::function<void(Outcome &)> &body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception &e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.pass)
    ++failures;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.str().c_str(), seconds_since(t0));
  std::fflush(stdout);
}

double rel(double margin, double scale) { return margin / scale; }

// Shared with criterion 9, which replays its argmins.
VerificationReport default_sweep;

void engine_correctness(Outcome &o) {
  double worst_gap = 0.0, worst_err = 0.0, engine_seconds = 0.0;
  int count = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 200; ++i) {
      const ComplexMatrix t = generate({"ginibre", n, 1.0, trial_seed(2024, "ginibre", n, i)});
      const auto t0 = Clock::now();
      const RadiusResult r = numerical_radius(t);
      engine_seconds += seconds_since(t0);
      const double norm = oracle::jacobi_norm(t);
      // 10^5 phases on the circle: 5 * 10^4 antipodal pairs.
      const double brute = oracle::brute_radius(t, 50000);
      worst_gap = std::max(worst_gap, std::abs(r.value - brute) / norm);
      worst_err = std::max(worst_err, r.certified_error / std::max(norm, 1.0));
      ++count;
    }
  }
  o.pass = worst_gap <= 1e-6 && worst_err <= 1e-10 && engine_seconds < 120.0;
  o.detail << count << " matrices, max |w - brute| / ||T|| = " << worst_gap
           << ", max certified_error / max(||T||,1) = " << worst_err << ", engine time "
           << engine_seconds << " s";
}

void classical_sandwiches(Outcome &o) {
  double worst = 0.0;
  std::size_t evals = 0;
  for (const auto &kind : ensemble_kinds())
    for (int n = 2; n <= 6; ++n)
      for (int i = 0; i < 40; ++i) {
        Facts facts(make_instance({kind, n, 1.0, trial_seed(7, kind, n, i)}));
        for (const char *id : {"sandwich_lower", "sandwich_upper", "kittaneh_lower", "kittaneh_upper"}) {
          const BoundResult r = Registry::get().evaluate(id, facts, {});
          worst = std::min(worst, rel(r.margin, r.scale));
          ++evals;
        }
      }
  double herm = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (int i = 0; i < 40; ++i) {
      const ComplexMatrix h = generate({"hermitian", n, 1.0, trial_seed(8, "hermitian", n, i)});
      const double norm = spectral_norm(h);
      herm = std::max(herm, std::abs(numerical_radius(h).value - norm) / std::max(norm, 1.0));
    }
  Instance j;
  j.mats = {oracle::shift(2)};
  const BoundResult kl = check_bound("kittaneh_lower", j, {});
  const double kgap = std::max(std::abs(kl.lhs - 0.25), std::abs(kl.rhs - 0.25));
  o.pass = worst >= -1e-8 && herm <= 1e-10 && kgap <= 1e-10;
  o.detail << evals << " evaluations over all ensembles, min margin/scale = " << worst
           << "; Hermitian max |w - ||T||| = " << herm << "; Kittaneh lower at [[0,1],[0,0]]: "
           << kl.lhs << " vs " << kl.rhs;
}

void half_weight(Outcome &o) {
  double gw = 0.0, gn = 0.0;
  const auto &kinds = ensemble_kinds();
  for (int i = 0; i < 500; ++i) {
    const std::string &kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    const int n = 2 + i % 5;
    const ComplexMatrix t = generate({kind, n, 1.0, trial_seed(9, kind, n, i)});
    const double scale = std::max(spectral_norm(t), 1.0);
    gw = std::max(gw, std::abs(weighted_numerical_radius(t, Weight(0.5)).value -
                               numerical_radius(t).value) / scale);
    gn = std::max(gn, std::abs(weighted_norm(t, Weight(0.5)) - spectral_norm(t)) / scale);
  }
  o.pass = gw <= 1e-10 && gn <= 1e-10;
  o.detail << "500 instances, max |w_1/2 - w| / scale = " << gw
           << ", max |norm_1/2 - norm| / scale = " << gn;
}

void identity_suite(Outcome &o) {
  const std::vector<std::string> ids{"polarization", "wop_i", "wop_ii", "wop_iii", "wop_iv"};
  std::vector<double> worst(ids.size(), 0.0);
  int instances = 0;
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i < 50; ++i) {
      Facts facts(make_instance({"ginibre", n, 1.0, trial_seed(11, "ginibre", n, i)}));
      ++instances;
      for (std::size_t b = 0; b < ids.size(); ++b) {
        const bool weighted = Registry::get().spec(ids[b]).uses("t");
        for (int k = 0; k <= (weighted ? 10 : 0); ++k) {
          BoundParams p;
          p.t = k / 10.0;
          const BoundResult r = Registry::get().evaluate(ids[b], facts, p);
          double gap = std::abs(r.margin) / r.scale;
          if (r.route_gap)
            gap = std::max(gap, std::abs(*r.route_gap) / r.scale);
          worst[b] = std::max(worst[b], gap);
        }
      }
    }
  o.pass = std::all_of(worst.begin(), worst.end(), [](double g) { return g <= 1e-6; });
  o.detail << instances << " instances, t in {0, 0.1, ..., 1}; max relative gap:";
  for (std::size_t b = 0; b < ids.size(); ++b)
    o.detail << ' ' << ids[b] << '=' << worst[b];
}

void vector_suite(Outcome &o) {
  const std::vector<std::string> ids{"buzano", "power", "mixed_schwarz", "ext_buzano", "buzano_gen"};
  SweepConfig cfg;
  cfg.alpha_draws = 0;
  std::vector<double> worst(ids.size(), std::numeric_limits<double>::infinity());
  for (int i = 0; i < 10000; ++i) {
    const int n = 2 + i % 15;
    Facts facts(make_instance({"ginibre", n, 1.0, trial_seed(13, "ginibre", n, i)}));
    for (std::size_t b = 0; b < ids.size(); ++b)
      for (const BoundParams &p : parameter_sets(Registry::get().spec(ids[b]), cfg, {}))
        worst[b] = std::min(worst[b], Registry::get().evaluate(ids[b], facts, p).margin);
  }
  o.pass = std::all_of(worst.begin(), worst.end(), [](double m) { return m >= -1e-10; });
  o.detail << "10^4 triples, dims 2-16, r in {1,1.5,2,3}, alpha grid; min margin:";
  for (std::size_t b = 0; b < ids.size(); ++b)
    o.detail << ' ' << ids[b] << '=' << worst[b];
}

void theorem_suite(Outcome &o) {
  default_sweep = run_sweep(SweepConfig{});
  double worst = 0.0;
  std::string worst_id;
  for (const auto &[id, s] : default_sweep.bounds)
    if (s.min_relative_margin < worst) {
      worst = s.min_relative_margin;
      worst_id = id;
    }
  o.pass = default_sweep.passed() && worst >= -1e-7 && default_sweep.runtime_seconds < 600.0;
  o.detail << default_sweep.instances << " instances x " << default_sweep.bounds.size()
           << " entries, " << default_sweep.violation_count() << " violations, "
           << default_sweep.errors.size() << " errors, min margin/scale = " << worst << " ("
           << worst_id << "), " << default_sweep.engine.unconverged
           << " unconverged radius calls, sweep time " << default_sweep.runtime_seconds << " s";
}

void tightness_witnesses(Outcome &o) {
  double worst = 0.0;
  auto take = [&](const BoundResult &r) { worst = std::max(worst, std::abs(r.margin)); };
  for (int n : {1, 2, 3}) {
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    take(check_th2(id, 0.0));
    for (double t : SweepConfig::default_t_grid()) {
      take(check_th3(id, t));
      take(check_th4(id, t));
      take(check_aluthge_weighted(id, t));
      take(check_op2(id, id, id, id, t));
    }
  }
  const ComplexMatrix j = oracle::shift(2);
  Instance in;
  in.mats = {j};
  take(check_bound("yamazaki", in, {}));
  take(check_aluthge_weighted(j, 0.5));
  o.pass = worst <= 1e-7;
  o.detail << "max |margin| over I (th2 t=0; th3, th4, aluthge_weighted, op2 on the t grid) "
              "and [[0,1],[0,0]] (yamazaki, aluthge_weighted t=1/2) = "
           << worst;
}

void documented_finding(Outcome &o) {
  const BoundResult r = check_th2(oracle::shift(2), 1.0, true);
  SweepConfig cfg;
  cfg.bounds = {"th2"};
  cfg.kinds = {"nilpotent"};
  cfg.dims = {2};
  cfg.trials = 50;
  cfg.t_grid.push_back(1.0);
  cfg.probe = true;
  const VerificationReport rep = run_sweep(cfg);
  o.pass = std::abs(r.lhs - 1.0) <= 1e-8 && std::abs(r.rhs - 0.25) <= 1e-8 &&
           std::abs(r.margin + 0.75) <= 1e-8 && !r.in_domain && rep.passed() &&
           rep.findings.size() == 50 && default_sweep.passed();
  o.detail << "lhs = " << r.lhs << ", rhs = " << r.rhs << ", margin = " << r.margin << "; probe sweep: "
           << rep.findings.size() << " findings, passed = " << rep.passed()
           << "; default suite passed = " << default_sweep.passed();
}

std::string run_cli(const std::string &args) {
  const std::string cmd = std::string(WNR_CLI) + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    throw std::runtime_error("cannot start the CLI");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0)
    out.append(buf.data(), got);
  const int st = pclose(p);
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0)
    throw std::runtime_error("CLI exited with status " + std::to_string(WEXITSTATUS(st)));
  return out;
}

void determinism(Outcome &o) {
  const std::string args = "verify --n 2 3 --trials 10 --seed 42";
  auto strip = [](const std::string &text) {
    auto j = nlohmann::json::parse(text);
    j.erase("timing");
    return j.dump();
  };
  const bool same = strip(run_cli(args)) == strip(run_cli(args));

  double worst = 0.0;
  std::size_t replays = 0;
  for (const auto &[id, s] : default_sweep.bounds) {
    if (s.argmin) {
      worst = std::max(worst, std::abs(replay(id, s.argmin->recipe, false).margin - s.min_margin));
      ++replays;
    }
    for (const auto &v : s.violations) {
      worst = std::max(worst, std::abs(replay(id, v.recipe, false).margin - v.result.margin));
      ++replays;
    }
  }
  o.pass = same && replays > 0 && worst <= 1e-12;
  o.detail << "two verify runs byte-identical without timing: " << (same ? "yes" : "no") << "; "
           << replays << " argmin/violation replays from the default sweep, max |margin drift| = "
           << worst;
}

} // namespace

int main() {
  report(1, "engine correctness", engine_correctness);
  report(2, "classical sandwiches", classical_sandwiches);
  report(3, "t = 1/2 reductions", half_weight);
  report(4, "identity suite", identity_suite);
  report(5, "vector lemmas", vector_suite);
  report(6, "theorem suite", theorem_suite);
  report(7, "tightness witnesses", tightness_witnesses);
  report(8, "documented out-of-domain finding", documented_finding);
  report(9, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
