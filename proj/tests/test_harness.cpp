#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "oracles.hpp"
#include "wnr/ensemble.hpp"
#include "wnr/errors.hpp"
#include "wnr/harness.hpp"
#include "wnr/rng.hpp"

using namespace wnr;

namespace {

std::string without_timing(const VerificationReport &r) {
  nlohmann::json j = to_json(r);
  j.erase("timing");
  return j.dump();
}

SweepConfig small_sweep() {
  SweepConfig c;
  c.dims = {2, 3};
  c.trials = 3;
  c.t_grid = {0.0, 0.25, 0.5};
  c.alpha_draws = 1;
  return c;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("SplitMix64 reference stream") {
  // First outputs of the reference generator seeded with 1234567.
  SplitMix64 g(1234567);
  CHECK(g.next() == 6457827717110365317ULL);
  CHECK(g.next() == 3203168211198807973ULL);
  CHECK(g.next() == 9817491932198370423ULL);
  CHECK(g.next() == 4593380528125082431ULL);
  CHECK(g.next() == 16408922859458223821ULL);
}

TEST_CASE("uniform and normal draws") {
  SplitMix64 g(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double z = g.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sum2 / n - 1.0) < 0.05);
  // Complex Gaussian has E|z|^2 = 1.
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    m += std::norm(g.complex_gaussian());
  CHECK(std::abs(m / n - 1.0) < 0.05);
}

TEST_CASE("generation is a pure function of the spec") {
  for (const auto &kind : ensemble_kinds()) {
    const EnsembleSpec s{kind, 3, 1.0, 99};
    CHECK(generate(s) == generate(s));
    EnsembleSpec other = s;
    other.seed = 100;
    CHECK(generate(s) != generate(other));
  }
}

TEST_CASE("structural classes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const ComplexMatrix h = generate({"hermitian", n, 1.0, seed});
    CHECK(h == ComplexMatrix(h.adjoint()));
    const ComplexMatrix p = generate({"psd", n, 1.0, seed});
    CHECK(p == ComplexMatrix(p.adjoint()));
    CHECK(oracle::hermitian_eigenvalues(p).front() >= -1e-10 * p.norm());
    const ComplexMatrix u = generate({"unitary", n, 1.0, seed});
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() <= 1e-12);
    const ComplexMatrix z = generate({"nilpotent", n, 1.0, seed});
    CHECK(z.isUpperTriangular());
    CHECK(z.diagonal().isZero(0.0));
    ComplexMatrix pw = ComplexMatrix::Identity(n, n);
    for (int k = 0; k < n; ++k)
      pw = pw * z;
    CHECK(pw.isZero(0.0));
    const ComplexMatrix nm = generate({"normal", n, 1.0, seed});
    CHECK((nm * nm.adjoint() - nm.adjoint() * nm).norm() <= 1e-12 * (1 + nm.squaredNorm()));
    const ComplexMatrix c = generate({"scalar", n, 1.0, seed});
    CHECK(c.imag().isZero(0.0));
    CHECK(c == c(0, 0) * ComplexMatrix::Identity(n, n));
  }
}

TEST_CASE("scale multiplies the generated matrix") {
  const EnsembleSpec a{"ginibre", 3, 1.0, 5};
  EnsembleSpec b = a;
  b.scale = 4.0;
  CHECK(generate(b) == 4.0 * generate(a));
}

TEST_CASE("ensemble errors") {
  CHECK_THROWS_AS(generate({"banana", 2, 1.0, 0}), UnknownKind);
  CHECK_THROWS_AS(generate({"ginibre", 0, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(generate({"ginibre", 2, 0.0, 0}), DomainError);
}

TEST_CASE("trial seeds are distinct and order independent") {
  CHECK(trial_seed(42, "ginibre", 2, 0) == trial_seed(42, "ginibre", 2, 0));
  CHECK(trial_seed(42, "ginibre", 2, 0) != trial_seed(42, "ginibre", 2, 1));
  CHECK(trial_seed(42, "ginibre", 2, 0) != trial_seed(42, "ginibre", 3, 0));
  CHECK(trial_seed(42, "ginibre", 2, 0) != trial_seed(42, "psd", 2, 0));
  CHECK(trial_seed(42, "ginibre", 2, 0) != trial_seed(43, "ginibre", 2, 0));
}

TEST_CASE("parameter sets respect t_valid unless probing") {
  const Registry &reg = Registry::get();
  SweepConfig c;
  c.t_grid = {0.0, 0.5, 0.75, 1.0};
  c.alpha_draws = 0;
  CHECK(parameter_sets(reg.spec("th2"), c, {}).size() == 2);
  CHECK(parameter_sets(reg.spec("op4"), c, {}).size() == 10);
  CHECK(parameter_sets(reg.spec("op4"), c, {0.1, 0.2}).size() == 14);
  CHECK(parameter_sets(reg.spec("wop_i"), c, {}).size() == 4);
  CHECK(parameter_sets(reg.spec("power"), c, {}).size() == 4);
  const auto free = parameter_sets(reg.spec("yamazaki"), c, {});
  REQUIRE(free.size() == 1);
  CHECK(std::isnan(free[0].t));
  c.probe = true;
  CHECK(parameter_sets(reg.spec("th2"), c, {}).size() == 4);
}

TEST_CASE("identity entries never fail") {
  SweepConfig c = small_sweep();
  c.bounds = {"polarization", "wop_i", "wop_ii", "wop_iii", "wop_iv"};
  c.kinds = {"ginibre", "nilpotent"};
  c.t_grid = {0.0, 0.5, 1.0};
  const VerificationReport r = run_sweep(c);
  CHECK(r.passed());
  CHECK(r.violation_count() == 0);
}

TEST_CASE("small full sweep passes") {
  const VerificationReport r = run_sweep(small_sweep());
  CHECK(r.passed());
  CHECK(r.instances == 6 * 2 * 3);
  CHECK(r.engine.unconverged == 0);
  CHECK(r.engine.max_relative_error <= 1e-10);
  for (const auto &[id, s] : r.bounds) {
    CHECK(s.trials > 0);
    CHECK(s.argmin.has_value());
  }
}

TEST_CASE("sweeps are deterministic across runs and thread counts") {
  SweepConfig c = small_sweep();
  c.kinds = {"ginibre", "nilpotent"};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string a = without_timing(run_sweep(c));
  omp_set_num_threads(3);
  const std::string b = without_timing(run_sweep(c));
  omp_set_num_threads(saved);
  const std::string d = without_timing(run_sweep(c));
  CHECK(a == b);
  CHECK(a == d);
}

TEST_CASE("probe findings are recorded but do not fail the run") {
  SweepConfig c;
  c.bounds = {"th2"};
  c.kinds = {"nilpotent"};
  c.dims = {2};
  c.trials = 4;
  c.t_grid = {0.25, 1.0};
  c.probe = true;
  const VerificationReport r = run_sweep(c);
  CHECK(r.passed());
  CHECK(r.findings.size() == 4);
  CHECK(r.probe_evaluations == 4);
  for (const auto &f : r.findings) {
    CHECK_FALSE(f.result.in_domain);
    CHECK(f.result.margin < 0.0);
    // Replays reproduce the recorded margin.
    CHECK(std::abs(replay("th2", f.recipe).margin - f.result.margin) <= 1e-12);
  }
}

TEST_CASE("argmin instances replay") {
  SweepConfig c = small_sweep();
  c.kinds = {"ginibre", "normal"};
  const VerificationReport r = run_sweep(c);
  for (const auto &[id, s] : r.bounds) {
    REQUIRE(s.argmin.has_value());
    const BoundResult again = replay(id, s.argmin->recipe, false);
    CHECK_MESSAGE(std::abs(again.margin - s.min_margin) <= 1e-12, id);
  }
}

TEST_CASE("recipes survive a JSON round trip") {
  const Recipe r{{"psd", 4, 2.0, 0xFFFFFFFFFFFFFFF1ULL}, {0.35, std::nan(""), 1.5}};
  const nlohmann::json j = nlohmann::json::parse(to_json(r).dump());
  CHECK(ensemble_from_json(j) == r.spec);
  const BoundParams p = params_from_json(j);
  CHECK(p.t == r.params.t);
  CHECK(std::isnan(p.alpha));
  CHECK(p.r == r.params.r);
  CHECK_THROWS_AS(ensemble_from_json(nlohmann::json::object()), ParseError);
}

TEST_CASE("CSV keeps one row per evaluation") {
  SweepConfig c;
  c.bounds = {"th3", "yamazaki"};
  c.kinds = {"ginibre"};
  c.dims = {2};
  c.trials = 2;
  c.t_grid = {0.0, 0.5};
  c.keep_rows = true;
  const VerificationReport r = run_sweep(c);
  const std::string csv = to_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * (2 + 1));
  CHECK(csv.rfind("bound,kind,n,", 0) == 0);
}

TEST_CASE("a recorded violation fails the report") {
  VerificationReport r;
  CHECK(r.passed());
  BoundSummary s;
  s.violations.push_back({});
  r.bounds.emplace_back("th2", s);
  CHECK_FALSE(r.passed());
  CHECK(to_json(r)["passed"] == false);
}

TEST_CASE("unknown inputs are rejected up front") {
  SweepConfig c = small_sweep();
  c.bounds = {"nope"};
  CHECK_THROWS_AS(run_sweep(c), UnknownBound);
  c.bounds = {};
  c.kinds = {"banana"};
  CHECK_THROWS_AS(run_sweep(c), UnknownKind);
}

TEST_CASE("hunting an identity cannot go below zero") {
  HuntConfig h;
  h.bound = "polarization";
  h.restarts = 2;
  h.steps = 3;
  const HuntResult r = hunt(h);
  CHECK(std::abs(r.best.margin) <= 1e-12 * r.best.scale);
}

TEST_CASE("hunting th2 beyond t = 1/2 finds a violation") {
  HuntConfig h;
  h.bound = "th2";
  h.params.t = 0.75;
  h.restarts = 2;
  h.steps = 4;
  const HuntResult r = hunt(h);
  CHECK(r.best.margin < 0.0);
  CHECK_FALSE(r.best.in_domain);
  // The reported instance evaluates to the reported margin.
  CHECK(check_bound("th2", r.instance, r.best.params, true).margin == r.best.margin);
}

TEST_CASE("hunting the Aluthge bound at t = 1/2 stays feasible") {
  HuntConfig h;
  h.bound = "aluthge_weighted";
  h.params.t = 0.5;
  h.restarts = 2;
  h.steps = 4;
  const HuntResult r = hunt(h);
  CHECK(r.best.margin >= -1e-7 * r.best.scale);
  CHECK(r.best.margin / r.best.scale <= 1e-3);
}

TEST_CASE("tightness scans") {
  TightnessConfig th3;
  th3.bound = "th3";
  th3.kinds = {"scalar"};
  th3.dims = {1, 2, 3};
  th3.trials = 5;
  const TightnessScan a = tightness_scan(th3);
  CHECK(a.evaluated == 3 * 5 * 11);
  CHECK(a.tight.size() == a.evaluated);

  TightnessConfig kl;
  kl.bound = "kittaneh_lower";
  kl.kinds = {"nilpotent"};
  kl.dims = {2};
  kl.trials = 5;
  const TightnessScan b = tightness_scan(kl);
  CHECK(b.tight.size() == 5);
}

} // TEST_SUITE
