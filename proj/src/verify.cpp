#include "fuzzybm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "fuzzybm/errors.hpp"
#include "fuzzybm/monte_carlo.hpp"
#include "fuzzybm/random_sets.hpp"

namespace fuzzybm {

EstimatorResult::EstimatorResult(double estimate_, double std_error_, std::size_t n_samples_,
                                 double ci_level_)
    : estimate(estimate_), std_error(std_error_), n_samples(n_samples_), ci_level(ci_level_) {
  if (!(std_error >= 0.0)) throw InvalidArgument("EstimatorResult: std_error must be non-negative");
  if (n_samples < 2) throw InvalidArgument("EstimatorResult: need at least 2 samples");
}

CheckEntry make_check(std::string test, std::string functional, std::optional<double> t,
                      std::optional<double> s, double target, EstimatorResult result, double z,
                      double tolerance) {
  CheckEntry e{std::move(test), std::move(functional), t, s, target, result, z, tolerance, false};
  e.pass = std::abs(result.estimate - target) <= z * result.std_error + tolerance;
  return e;
}

const Verdict* VerificationReport::verdict(const std::string& verdict_name) const {
  for (const auto& v : verdicts) {
    if (v.name == verdict_name) return &v;
  }
  return nullptr;
}

std::vector<const CheckEntry*> VerificationReport::checks_named(const std::string& test) const {
  std::vector<const CheckEntry*> out;
  for (const auto& c : checks) {
    if (c.test == test) out.push_back(&c);
  }
  return out;
}

double bonferroni_z(double family_alpha, std::size_t tests) {
  if (tests == 0) return 0.0;
  const boost::math::normal standard;
  return boost::math::quantile(standard, 1.0 - family_alpha / (2.0 * static_cast<double>(tests)));
}

namespace {

constexpr std::size_t kMinSamples = 100;

void require_samples(std::size_t n) {
  if (n < kMinSamples) throw InvalidArgument("estimator: need at least 100 samples");
}

EstimatorResult to_result(const MomentAccumulator& acc) {
  return EstimatorResult(acc.mean(), acc.std_error(), acc.count());
}

void require_functional(const ProcessSampler& sampler, const GridFunctional& f) {
  for (const auto& term : f.terms()) {
    if (term.direction >= sampler.grid()->size() || term.slot >= sampler.alpha_grid().slot_count()) {
      throw InvalidArgument("functional index out of range for the sampler grids");
    }
  }
}

// Standard errors of sample skewness and excess kurtosis under normality.
double skewness_se(double n) { return std::sqrt(6.0 * n * (n - 1.0) / ((n - 2.0) * (n + 1.0) * (n + 3.0))); }
double kurtosis_se(double n) {
  return std::sqrt(24.0 * n * (n - 1.0) * (n - 1.0) / ((n - 3.0) * (n - 2.0) * (n + 3.0) * (n + 5.0)));
}

}  // namespace

EstimatorResult estimate_mean_functional(const ProcessSampler& sampler, const GridFunctional& f,
                                         double t, std::size_t n, std::uint64_t seed,
                                         EstimationOptions options) {
  require_samples(n);
  require_functional(sampler, f);
  const std::size_t k = sampler.time_index(t);
  auto observe = [&](const SampledPath&, const std::vector<SupportSurface>& surfaces,
                     std::span<double> values, std::span<double>) {
    values[0] = apply_functional(f, surfaces[k]);
  };
  const auto result =
      run_monte_carlo(sampler, 1, 0, observe, {n, seed, options.workers, 512, 2});
  return to_result(result.moments[0]);
}

EstimatorResult estimate_cov_functional(const ProcessSampler& sampler, const GridFunctional& f,
                                        const GridFunctional& g, double s, double t, std::size_t n,
                                        std::uint64_t seed, EstimationOptions options) {
  require_samples(n);
  require_functional(sampler, f);
  require_functional(sampler, g);
  const std::size_t kt = sampler.time_index(t);
  const std::size_t ks = sampler.time_index(s);
  auto observe = [&](const SampledPath&, const std::vector<SupportSurface>& surfaces,
                     std::span<double> values, std::span<double>) {
    values[0] = apply_functional(f, surfaces[kt]) * apply_functional(g, surfaces[ks]);
  };
  const auto result =
      run_monte_carlo(sampler, 1, 0, observe, {n, seed, options.workers, 512, 2});
  return to_result(result.moments[0]);
}

VerificationReport degeneracy_test(const ProcessSampler& sampler, const std::vector<double>& times,
                                   const std::vector<double>& alpha_levels, std::size_t n,
                                   std::uint64_t seed, DegeneracyOptions options) {
  require_samples(n);
  if (times.empty() || alpha_levels.empty()) {
    throw InvalidArgument("degeneracy_test: need at least one time and one alpha level");
  }
  std::vector<std::size_t> time_idx;
  for (double t : times) time_idx.push_back(sampler.time_index(t));
  std::vector<std::size_t> slots;
  for (double a : alpha_levels) slots.push_back(sampler.alpha_grid().slot_of(a));

  const std::size_t m = sampler.grid()->size();
  const std::size_t nt = times.size();
  const std::size_t ns = slots.size();
  auto moment_at = [&](std::size_t ti, std::size_t si, std::size_t i) { return (ti * ns + si) * m + i; };

  // maxima: per (t, slot) cut diameter, then per t a nestedness violation flag.
  auto observe = [&](const SampledPath& sample, const std::vector<SupportSurface>& surfaces,
                     std::span<double> values, std::span<double> maxima) {
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const auto& surface = surfaces[time_idx[ti]];
      const auto& value = sample.path.values[time_idx[ti]];
      for (std::size_t si = 0; si < ns; ++si) {
        for (std::size_t i = 0; i < m; ++i) values[moment_at(ti, si, i)] = surface.at(i, slots[si]);
        maxima[ti * ns + si] = value.cut_at_slot(slots[si]).grid_diameter();
      }
      // Cuts are nested iff each direction's support is nonincreasing in alpha;
      // checked exactly, without the construction slack.
      maxima[nt * ns + ti] = is_nested(value, 0.0) ? 0.0 : 1.0;
    }
  };
  const auto mc = run_monte_carlo(sampler, nt * ns * m, nt * ns + nt, observe,
                                  {n, seed, options.workers, 512, 2});

  VerificationReport report;
  report.name = "degeneracy";
  report.sampler = sampler.describe();
  report.seed = seed;
  report.z = options.z;

  // STEP 1: the empirical Aumann mean surface must vanish.
  std::vector<bool> step1_ok(nt * ns, false);
  bool step1_all = true;
  bool step1_excludes_zero = false;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (std::size_t si = 0; si < ns; ++si) {
      double residual = 0.0;
      double max_se = 0.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& acc = mc.moments[moment_at(ti, si, i)];
        max_se = std::max(max_se, acc.std_error());
        if (std::abs(acc.mean()) > residual) {
          residual = std::abs(acc.mean());
          arg = i;
        }
      }
      const auto& at_arg = mc.moments[moment_at(ti, si, arg)];
      const bool excludes_zero = std::abs(at_arg.mean()) > options.ci_z * at_arg.std_error();
      std::ostringstream label;
      label << "sup_u|mean s(u,a=" << alpha_levels[si] << ")|";
      auto entry = make_check("step1_mean_surface", label.str(), times[ti], std::nullopt, 0.0,
                              EstimatorResult(residual, max_se, n), options.z);
      step1_ok[ti * ns + si] = entry.pass;
      step1_all = step1_all && entry.pass;
      if (!entry.pass && excludes_zero) step1_excludes_zero = true;
      report.checks.push_back(std::move(entry));
    }
  }
  report.verdicts.push_back({"step1", step1_all,
                             step1_all ? "empirical Aumann mean is the zero surface"
                                       : (step1_excludes_zero ? "nonzero mean surface; CI excludes 0"
                                                              : "nonzero mean surface")});

  // STEP 2, only where STEP 1 held.
  bool step2_all = true;
  std::size_t evaluated = 0;
  const std::size_t atoms = std::min(options.detector_atoms, n);
  for (std::size_t ti = 0; ti < nt; ++ti) {
    bool any = false;
    for (std::size_t si = 0; si < ns; ++si) any = any || step1_ok[ti * ns + si];
    if (!any) continue;
    std::vector<FuzzySet> values;
    values.reserve(atoms);
    for (std::size_t r = 0; r < atoms; ++r) {
      values.push_back(sampler.sample(replicate_seed(seed, r)).values[time_idx[ti]]);
    }
    const DiscreteRandomFuzzySet empirical(FiniteSpace::uniform(atoms), std::move(values));
    for (std::size_t si = 0; si < ns; ++si) {
      if (!step1_ok[ti * ns + si]) continue;
      ++evaluated;
      std::ostringstream label;
      label << "cut(a=" << alpha_levels[si] << ")";
      auto diam = make_check("step2_cut_diameter", label.str(), times[ti], std::nullopt, 0.0,
                             EstimatorResult(mc.maxima[ti * ns + si], 0.0, n), options.z,
                             options.diameter_tol);
      const auto witness = is_singleton_ae(empirical, alpha_levels[si], options.diameter_tol);
      auto detector = make_check("step2_singleton_detector", label.str(), times[ti], std::nullopt, 1.0,
                                 EstimatorResult(witness.singleton ? 1.0 : 0.0, 0.0, atoms), options.z);
      step2_all = step2_all && diam.pass && detector.pass;
      report.checks.push_back(std::move(diam));
      report.checks.push_back(std::move(detector));
    }
  }
  if (evaluated == 0) {
    report.verdicts.push_back({"step2", false, "not evaluated: STEP 1 failed at every (t, alpha)"});
    step2_all = false;
  } else {
    report.verdicts.push_back({"step2", step2_all,
                               step2_all ? "all cuts are a.e. singletons"
                                         : "some cut is not an a.e. singleton"});
  }

  bool nested = true;
  for (std::size_t ti = 0; ti < nt; ++ti) nested = nested && mc.maxima[nt * ns + ti] == 0.0;
  report.verdicts.push_back({"nestedness", nested, nested ? "(B_t)_a contains (B_t)_b for a <= b"
                                                          : "nestedness violated on some sample"});
  report.pass = step1_all && step2_all && nested;
  return report;
}

VerificationReport characterization_suite(const ProcessSampler& sampler,
                                          std::size_t functional_count,
                                          const std::vector<double>& times, std::size_t n,
                                          std::uint64_t seed, CharacterizationOptions options) {
  require_samples(n);
  if (functional_count == 0 || times.empty()) {
    throw InvalidArgument("characterization_suite: need functionals and times");
  }
  std::vector<std::size_t> time_idx;
  for (double t : times) time_idx.push_back(sampler.time_index(t));

  const std::size_t m = sampler.grid()->size();
  const std::size_t slots = sampler.alpha_grid().slot_count();
  const int dim = sampler.grid()->dim();
  std::mt19937_64 rng(mix_seed(seed ^ 0x5f0c1a11ULL));
  std::uniform_int_distribution<std::size_t> pick_direction(0, m - 1);
  std::uniform_int_distribution<std::size_t> pick_slot(0, slots - 1);
  std::uniform_int_distribution<std::size_t> pick_time(0, times.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_terms(2, 3);
  std::uniform_real_distribution<double> pick_weight(-1.0, 1.0);

  // Alternate point evaluations and short linear combinations.
  std::vector<GridFunctional> functionals;
  for (std::size_t k = 0; k < functional_count; ++k) {
    if (k % 2 == 0) {
      functionals.push_back(GridFunctional::point_evaluation(pick_direction(rng), pick_slot(rng)));
    } else {
      std::vector<GridFunctional::Term> terms(pick_terms(rng));
      for (auto& term : terms) {
        double w = 0.0;
        while (std::abs(w) < 0.05) w = pick_weight(rng);
        term = {pick_direction(rng), pick_slot(rng), w};
      }
      functionals.emplace_back(std::move(terms));
    }
  }

  struct PairSpec {
    GridFunctional f;
    GridFunctional g;
    std::size_t t;  // index into `times`
    std::size_t s;
  };
  std::vector<PairSpec> covariances;
  for (std::size_t k = 0; k < options.covariance_triples; ++k) {
    auto f = GridFunctional::point_evaluation(pick_direction(rng), pick_slot(rng));
    covariances.push_back({f, f, pick_time(rng), pick_time(rng)});
  }
  std::vector<PairSpec> crosses;
  if (dim >= 2) {
    std::uniform_int_distribution<int> pick_axis(0, dim - 1);
    for (std::size_t k = 0; k < options.cross_pairs; ++k) {
      const int a = pick_axis(rng);
      int b = pick_axis(rng);
      while (b == a) b = pick_axis(rng);
      const auto& grid = *sampler.grid();
      crosses.push_back({GridFunctional::point_evaluation(grid.axis_index(a, true), pick_slot(rng)),
                         GridFunctional::point_evaluation(grid.axis_index(b, true), pick_slot(rng)),
                         pick_time(rng), pick_time(rng)});
    }
  }

  const std::size_t nf = functionals.size();
  const std::size_t nt = times.size();
  const std::size_t mean_count = nf * nt;
  const std::size_t total = mean_count + covariances.size() + crosses.size();
  auto observe = [&](const SampledPath&, const std::vector<SupportSurface>& surfaces,
                     std::span<double> values, std::span<double>) {
    for (std::size_t fi = 0; fi < nf; ++fi) {
      for (std::size_t ti = 0; ti < nt; ++ti) {
        values[fi * nt + ti] = apply_functional(functionals[fi], surfaces[time_idx[ti]]);
      }
    }
    std::size_t k = mean_count;
    for (const auto* group : {&covariances, &crosses}) {
      for (const auto& p : *group) {
        values[k++] = apply_functional(p.f, surfaces[time_idx[p.t]]) *
                      apply_functional(p.g, surfaces[time_idx[p.s]]);
      }
    }
  };
  const auto mc = run_monte_carlo(sampler, total, 0, observe, {n, seed, options.workers, 512, 4});

  VerificationReport report;
  report.name = "characterization";
  report.sampler = sampler.describe();
  report.seed = seed;

  const auto nd = static_cast<double>(n);
  for (std::size_t fi = 0; fi < nf; ++fi) {
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const auto& acc = mc.moments[fi * nt + ti];
      report.checks.push_back(make_check("mean", functionals[fi].label(), times[ti], std::nullopt, 0.0,
                                         to_result(acc), options.z));
      if (!options.normality) continue;
      // Degenerate (constant) evaluations are trivially Gaussian.
      if (!(acc.variance() > 1e-20)) continue;
      report.checks.push_back(make_check("skewness", functionals[fi].label(), times[ti], std::nullopt,
                                         0.0, EstimatorResult(acc.skewness(), skewness_se(nd), n),
                                         options.z));
      report.checks.push_back(make_check("excess_kurtosis", functionals[fi].label(), times[ti],
                                         std::nullopt, 0.0,
                                         EstimatorResult(acc.excess_kurtosis(), kurtosis_se(nd), n),
                                         options.z));
    }
  }
  std::size_t k = mean_count;
  for (const auto& p : covariances) {
    const double target = std::min(times[p.t], times[p.s]);
    report.checks.push_back(make_check("covariance", p.f.label(), times[p.t], times[p.s], target,
                                       to_result(mc.moments[k++]), options.z));
  }
  for (const auto& p : crosses) {
    report.checks.push_back(make_check("cross", p.f.label() + "x" + p.g.label(), times[p.t],
                                       times[p.s], 0.0, to_result(mc.moments[k++]), options.z));
  }

  report.z = std::max(options.z, bonferroni_z(options.family_alpha, report.checks.size()));
  auto group_pass = [&](const std::string& test) {
    bool ok = true;
    for (const auto* c : report.checks_named(test)) {
      ok = ok && std::abs(c->result.estimate - c->target) <= report.z * c->result.std_error + c->tolerance;
    }
    return ok;
  };
  report.verdicts.push_back({"zero_mean", group_pass("mean"), "E[f(s_Bt)] = 0"});
  report.verdicts.push_back({"covariance", group_pass("covariance"), "E[f(s_Bt) f(s_Bs)] = min(t, s)"});
  report.verdicts.push_back({"cross", group_pass("cross"), "distinct axis evaluations uncorrelated"});
  report.verdicts.push_back({"normality", group_pass("skewness") && group_pass("excess_kurtosis"),
                             "skewness and excess kurtosis z-tests"});
  report.pass = std::all_of(report.verdicts.begin(), report.verdicts.end(),
                            [](const Verdict& v) { return v.pass; });
  return report;
}

}  // namespace fuzzybm
