#include "wnr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "wnr/errors.hpp"
#include "wnr/rng.hpp"

namespace wnr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrialKey {
  std::string kind;
  int n = 0;
  int trial = 0;
};

std::vector<TrialKey> trial_keys(const std::vector<std::string> &kinds,
                                 const std::vector<int> &dims, int trials) {
  std::vector<TrialKey> keys;
  for (const auto &k : kinds)
    for (int n : dims)
      for (int i = 0; i < trials; ++i)
        keys.push_back({k, n, i});
  return keys;
}

void validate_kinds(const std::vector<std::string> &kinds) {
  const auto &known = ensemble_kinds();
  for (const auto &k : kinds)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw UnknownKind(k);
}

std::vector<double> alpha_draws(std::uint64_t seed, int count) {
  SplitMix64 rng(derive_seed(seed, name_tag("alpha")));
  std::vector<double> a(static_cast<std::size_t>(std::max(count, 0)));
  for (auto &v : a)
    v = rng.uniform();
  return a;
}

// Per-trial partial result for one bound.
struct Partial {
  BoundSummary summary;
  std::vector<Evaluation> findings;
  std::size_t probe_evaluations = 0;
  std::vector<SweepError> errors;
  std::vector<Evaluation> rows;
};

void absorb(BoundSummary &s, const Evaluation &ev) {
  const BoundResult &r = ev.result;
  const double rel = r.margin / r.scale;
  if (s.trials == 0 || r.margin < s.min_margin) {
    s.min_margin = r.margin;
    s.argmin = ev;
  }
  if (s.trials == 0 || rel < s.min_relative_margin)
    s.min_relative_margin = rel;
  ++s.trials;
  if (r.tight)
    ++s.tight_count;
  if (r.violated)
    s.violations.push_back(ev);
}

void merge_summary(BoundSummary &into, BoundSummary &&from) {
  if (from.trials == 0)
    return;
  if (into.trials == 0 || from.min_margin < into.min_margin) {
    into.min_margin = from.min_margin;
    into.argmin = std::move(from.argmin);
  }
  if (into.trials == 0 || from.min_relative_margin < into.min_relative_margin)
    into.min_relative_margin = from.min_relative_margin;
  into.trials += from.trials;
  into.tight_count += from.tight_count;
  for (auto &v : from.violations)
    into.violations.push_back(std::move(v));
}

double nan_or(double v, bool used) { return used ? v : kNaN; }

} // namespace

std::vector<double> SweepConfig::default_t_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 10; ++k)
    g.push_back(k / 20.0);
  return g;
}

std::size_t VerificationReport::violation_count() const {
  std::size_t c = 0;
  for (const auto &[id, s] : bounds)
    c += s.violations.size();
  return c;
}

bool VerificationReport::passed() const { return violation_count() == 0 && errors.empty(); }

std::vector<BoundParams> parameter_sets(const BoundSpec &spec, const SweepConfig &cfg,
                                        const std::vector<double> &alpha_extra) {
  const bool ut = spec.uses("t");
  const bool ua = spec.uses("alpha");
  const bool ur = spec.uses("r");

  std::vector<double> ts{kNaN};
  if (ut) {
    ts.clear();
    for (double t : cfg.t_grid)
      if (cfg.probe ? (t >= 0.0 && t <= 1.0) : spec.t_valid.contains(t))
        ts.push_back(t);
  }
  std::vector<double> as{kNaN};
  if (ua) {
    as = cfg.alpha_grid;
    as.insert(as.end(), alpha_extra.begin(), alpha_extra.end());
  }
  std::vector<double> rs{kNaN};
  if (ur)
    rs = cfg.r_grid;

  std::vector<BoundParams> out;
  for (double t : ts)
    for (double a : as)
      for (double r : rs)
        out.push_back({nan_or(t, ut), nan_or(a, ua), nan_or(r, ur)});
  return out;
}

VerificationReport run_sweep(const SweepConfig &cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Registry &reg = Registry::get();
  const std::vector<std::string> ids = cfg.bounds.empty() ? reg.default_sweep_ids() : cfg.bounds;
  std::vector<const BoundSpec *> specs;
  for (const auto &id : ids)
    specs.push_back(&reg.spec(id));
  validate_kinds(cfg.kinds);
  if (cfg.trials < 1)
    throw DomainError("trials must be >= 1");
  for (int n : cfg.dims)
    if (n < 1)
      throw DomainError("dimension must be >= 1");

  const std::vector<TrialKey> keys = trial_keys(cfg.kinds, cfg.dims, cfg.trials);
  const auto count = static_cast<std::ptrdiff_t>(keys.size());
  std::vector<std::vector<Partial>> slots(keys.size());
  std::vector<EngineStats> stats(keys.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const TrialKey &key = keys[static_cast<std::size_t>(i)];
    EnsembleSpec es{key.kind, key.n, cfg.scale, trial_seed(cfg.seed, key.kind, key.n, key.trial)};
    Facts facts(make_instance(es));
    const std::vector<double> extra = alpha_draws(es.seed, cfg.alpha_draws);
    auto &mine = slots[static_cast<std::size_t>(i)];
    mine.resize(specs.size());
    for (std::size_t b = 0; b < specs.size(); ++b) {
      Partial &part = mine[b];
      for (const BoundParams &p : parameter_sets(*specs[b], cfg, extra)) {
        Evaluation ev{{es, p}, {}};
        try {
          ev.result = reg.evaluate(specs[b]->id, facts, p, cfg.probe);
        } catch (const std::exception &e) {
          part.errors.push_back({specs[b]->id, ev.recipe, e.what()});
          continue;
        }
        if (cfg.keep_rows)
          part.rows.push_back(ev);
        if (ev.result.in_domain) {
          absorb(part.summary, ev);
        } else {
          ++part.probe_evaluations;
          if (ev.result.violated)
            part.findings.push_back(ev);
        }
      }
    }
    stats[static_cast<std::size_t>(i)] = facts.stats();
  }

  VerificationReport rep;
  rep.instances = keys.size();
  std::vector<BoundSummary> sums(specs.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t b = 0; b < specs.size(); ++b) {
      Partial &part = slots[i][b];
      merge_summary(sums[b], std::move(part.summary));
      for (auto &f : part.findings)
        rep.findings.push_back(std::move(f));
      rep.probe_evaluations += part.probe_evaluations;
      for (auto &e : part.errors)
        rep.errors.push_back(std::move(e));
      for (auto &r : part.rows)
        rep.rows.push_back(std::move(r));
    }
    rep.engine.merge(stats[i]);
    slots[i].clear();
  }
  for (std::size_t b = 0; b < specs.size(); ++b)
    rep.bounds.emplace_back(specs[b]->id, std::move(sums[b]));
  std::sort(rep.bounds.begin(), rep.bounds.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

BoundResult replay(const std::string &bound, const Recipe &recipe, bool probe) {
  return check_bound(bound, make_instance(recipe.spec), recipe.params, probe);
}

// ------------------------------------------------------------------- hunt

namespace {

// Real coordinates of every input an entry reads.
struct Coordinates {
  Instance inst;
  std::size_t mats = 0;
  bool vectors = false;

  std::size_t size() const {
    const auto n = static_cast<std::size_t>(inst.mats[0].rows());
    return 2 * n * n * mats + (vectors ? 6 * n : 0);
  }

  double &at(std::size_t k) {
    const auto n = static_cast<std::size_t>(inst.mats[0].rows());
    const std::size_t per = 2 * n * n;
    if (k < per * mats) {
      ComplexMatrix &m = inst.mats[k / per];
      const std::size_t r = k % per;
      Complex &z = m(static_cast<Eigen::Index>((r / 2) / n), static_cast<Eigen::Index>((r / 2) % n));
      return reinterpret_cast<double (&)[2]>(z)[r % 2];
    }
    k -= per * mats;
    ComplexVector *vs[3] = {&inst.x, &inst.y, &inst.e};
    ComplexVector &v = *vs[k / (2 * n)];
    Complex &z = v(static_cast<Eigen::Index>((k % (2 * n)) / 2));
    return reinterpret_cast<double (&)[2]>(z)[k % 2];
  }
};

double objective(const BoundResult &r) {
  const double denom = std::max(std::abs(r.lhs), std::abs(r.rhs));
  return denom > 0.0 ? r.margin / denom : 0.0;
}

} // namespace

HuntResult hunt(const HuntConfig &cfg) {
  const Registry &reg = Registry::get();
  const BoundSpec &spec = reg.spec(cfg.bound);
  validate_kinds({cfg.kind});
  if (cfg.n < 1 || cfg.restarts < 1 || cfg.steps < 1)
    throw DomainError("hunt needs n, restarts and steps >= 1");

  BoundParams params = cfg.params;
  params.t = nan_or(params.t, spec.uses("t"));
  params.alpha = nan_or(params.alpha, spec.uses("alpha"));
  params.r = nan_or(params.r, spec.uses("r"));

  HuntResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  bool have = false;

  auto evaluate = [&](const Instance &inst, std::size_t &evals) {
    ++evals;
    Facts facts(inst);
    return reg.evaluate(spec.id, facts, params, true);
  };

  for (int rs = 0; rs < cfg.restarts; ++rs) {
    Coordinates c;
    c.mats = spec.arity == Arity::vectors ? 1 : arity_matrices(spec.arity);
    c.vectors = spec.arity == Arity::vectors;
    const EnsembleSpec start{cfg.kind, cfg.n, 1.0,
                             derive_seed(cfg.seed, static_cast<std::uint64_t>(rs))};
    c.inst = make_instance(start);
    c.inst.mats.resize(std::max<std::size_t>(c.mats, 1));

    std::size_t evals = 0;
    BoundResult cur = evaluate(c.inst, evals);
    double cur_obj = objective(cur);
    double step = 0.25;
    int idle = 0;
    while (idle < cfg.steps && evals < cfg.max_evaluations) {
      bool improved = false;
      for (std::size_t k = 0; k < c.size() && evals < cfg.max_evaluations; ++k) {
        double &x = c.at(k);
        const double keep = x;
        bool accepted = false;
        for (double dir : {1.0, -1.0}) {
          x = keep + dir * step;
          BoundResult trial;
          try {
            trial = evaluate(c.inst, evals);
          } catch (const Error &) {
            continue; // e.g. a lost structural precondition
          }
          const double obj = objective(trial);
          if (obj < cur_obj) {
            cur = std::move(trial);
            cur_obj = obj;
            accepted = true;
            break;
          }
        }
        if (!accepted)
          x = keep;
        improved = improved || accepted;
      }
      if (improved) {
        idle = 0;
      } else {
        ++idle;
        step *= 0.5;
      }
    }

    if (!have || cur_obj < best_obj) {
      have = true;
      best_obj = cur_obj;
      best.best = cur;
      best.instance = c.inst;
      best.start = start;
      best.restart = rs;
    }
    best.evaluations += evals;
  }
  return best;
}

// -------------------------------------------------------------- tightness

TightnessScan tightness_scan(const TightnessConfig &cfg) {
  const Registry &reg = Registry::get();
  const BoundSpec &spec = reg.spec(cfg.bound);
  validate_kinds(cfg.kinds);
  SweepConfig sc;
  sc.t_grid = cfg.t_grid;
  sc.alpha_grid = cfg.alpha_grid;
  sc.alpha_draws = 0;
  sc.r_grid = cfg.r_grid;

  const std::vector<TrialKey> keys = trial_keys(cfg.kinds, cfg.dims, cfg.trials);
  const auto count = static_cast<std::ptrdiff_t>(keys.size());
  std::vector<std::vector<Evaluation>> slots(keys.size());
  std::vector<std::size_t> evaluated(keys.size(), 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const TrialKey &key = keys[static_cast<std::size_t>(i)];
    EnsembleSpec es{key.kind, key.n, cfg.scale, trial_seed(cfg.seed, key.kind, key.n, key.trial)};
    Facts facts(make_instance(es));
    for (const BoundParams &p : parameter_sets(spec, sc, {})) {
      BoundResult r = reg.evaluate(spec.id, facts, p);
      ++evaluated[static_cast<std::size_t>(i)];
      if (r.tight)
        slots[static_cast<std::size_t>(i)].push_back({{es, p}, std::move(r)});
    }
  }

  TightnessScan out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.evaluated += evaluated[i];
    for (auto &e : slots[i])
      out.tight.push_back(std::move(e));
  }
  return out;
}

// ------------------------------------------------------------------ output

nlohmann::json to_json(const EnsembleSpec &s) {
  return {{"kind", s.kind}, {"n", s.n}, {"scale", s.scale}, {"seed", s.seed}};
}

nlohmann::json to_json(const Recipe &r) {
  nlohmann::json j = to_json(r.spec);
  j["t"] = r.params.t;
  j["alpha"] = r.params.alpha;
  j["r"] = r.params.r;
  return j;
}

nlohmann::json to_json(const BoundResult &r) {
  nlohmann::json j{{"id", r.id},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"margin", r.margin},
                   {"scale", r.scale},
                   {"t", r.params.t},
                   {"alpha", r.params.alpha},
                   {"r", r.params.r},
                   {"tight", r.tight},
                   {"in_domain", r.in_domain},
                   {"violated", r.violated}};
  if (r.route_gap)
    j["route_gap"] = *r.route_gap;
  if (r.rhs_gap)
    j["rhs_gap"] = *r.rhs_gap;
  return j;
}

namespace {

nlohmann::json evaluation_json(const Evaluation &e) {
  nlohmann::json j = to_json(e.result);
  j["recipe"] = to_json(e.recipe);
  return j;
}

} // namespace

nlohmann::json to_json(const VerificationReport &r) {
  nlohmann::json bounds = nlohmann::json::object();
  for (const auto &[id, s] : r.bounds) {
    nlohmann::json viol = nlohmann::json::array();
    for (const auto &v : s.violations)
      viol.push_back(evaluation_json(v));
    nlohmann::json b{{"trials", s.trials},
                     {"min_margin", s.trials ? nlohmann::json(s.min_margin) : nlohmann::json()},
                     {"min_relative_margin",
                      s.trials ? nlohmann::json(s.min_relative_margin) : nlohmann::json()},
                     {"argmin", s.argmin ? to_json(s.argmin->recipe) : nlohmann::json()},
                     {"tight_count", s.tight_count},
                     {"violations", viol}};
    bounds[id] = b;
  }
  nlohmann::json findings = nlohmann::json::array();
  for (const auto &f : r.findings)
    findings.push_back(evaluation_json(f));
  nlohmann::json errors = nlohmann::json::array();
  for (const auto &e : r.errors)
    errors.push_back({{"bound", e.bound}, {"recipe", to_json(e.recipe)}, {"what", e.what}});

  return {{"bounds", bounds},
          {"findings", findings},
          {"probe_evaluations", r.probe_evaluations},
          {"errors", errors},
          {"instances", r.instances},
          {"violations", r.violation_count()},
          {"passed", r.passed()},
          {"engine",
           {{"radius_calls", r.engine.radius_calls},
            {"unconverged", r.engine.unconverged},
            {"max_relative_error", r.engine.max_relative_error},
            {"phase_evaluations", r.engine.evaluations}}},
          {"timing", {{"runtime_seconds", r.runtime_seconds}}}};
}

std::string to_csv(const VerificationReport &r) {
  std::ostringstream os;
  os.precision(17);
  os << "bound,kind,n,scale,seed,t,alpha,r,lhs,rhs,margin,scale_used,tight,in_domain,violated\n";
  auto num = [&](double v) -> std::ostream & {
    if (!std::isnan(v))
      os << v;
    return os;
  };
  for (const auto &e : r.rows) {
    const auto &s = e.recipe.spec;
    const auto &b = e.result;
    os << b.id << ',' << s.kind << ',' << s.n << ',';
    num(s.scale) << ',' << s.seed << ',';
    num(b.params.t) << ',';
    num(b.params.alpha) << ',';
    num(b.params.r) << ',';
    num(b.lhs) << ',';
    num(b.rhs) << ',';
    num(b.margin) << ',';
    num(b.scale) << ',' << b.tight << ',' << b.in_domain << ',' << b.violated << '\n';
  }
  return os.str();
}

EnsembleSpec ensemble_from_json(const nlohmann::json &j) {
  try {
    return {j.at("kind").get<std::string>(), j.at("n").get<int>(), j.at("scale").get<double>(),
            j.at("seed").get<std::uint64_t>()};
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("ensemble spec: ") + e.what());
  }
}

BoundParams params_from_json(const nlohmann::json &j) {
  auto get = [&](const char *k, double dflt) {
    if (!j.contains(k) || j.at(k).is_null())
      return dflt;
    if (!j.at(k).is_number())
      throw ParseError(std::string("parameter ") + k + " is not a number");
    return j.at(k).get<double>();
  };
  return {get("t", kNaN), get("alpha", kNaN), get("r", kNaN)};
}

} // namespace wnr
